#include <doctest.h>

#include <cmath>

#include "nonlocal/harness.hpp"

using namespace nonlocal;

namespace {

std::string strip_wall(const std::string& csv)
{
    // drop the wall_seconds column (8th field)
    std::string out;
    std::size_t pos = 0;
    while (pos < csv.size()) {
        const std::size_t eol = csv.find('\n', pos);
        const std::string line = csv.substr(pos, eol - pos);
        std::size_t field = 0, start = 0;
        for (std::size_t i = 0; i <= line.size(); ++i)
            if (i == line.size() || line[i] == ',') {
                if (field != 7) out += line.substr(start, i - start) + ',';
                ++field;
                start = i + 1;
            }
        out += '\n';
        pos = eol + 1;
    }
    return out;
}

}  // namespace

TEST_CASE("names round-trip")
{
    for (Problem p : {Problem::Steady1D, Problem::CN1D, Problem::BDF4_1D, Problem::CN2DMult, Problem::BDF4_2DMult,
                      Problem::CN2DAdd, Problem::Steady2DAdd})
        CHECK(parse_problem(problem_name(p)) == p);
    for (Solution s : {Solution::Default, Solution::Quartic1D, Solution::Quartic2D, Solution::ExpTrig2D,
                       Solution::Poly2D, Solution::Zero})
        CHECK(parse_solution(solution_name(s)) == s);
    CHECK_FALSE(parse_problem("cn3d").has_value());
    CHECK(problem_name(Problem::BDF4_2DMult) == "bdf4-2d-mult");
}

TEST_CASE("format and rates")
{
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(1e-7) == "1e-07");
    CHECK(format_double(NAN) == "nan");
    std::vector<StudyRow> rows(4);
    rows[0].gamma = rows[1].gamma = rows[2].gamma = 0.5;
    rows[3].gamma = 0.8;
    rows[0].M = 8, rows[1].M = 16, rows[2].M = 64, rows[3].M = 128;
    rows[0].error_inf = 1e-3, rows[1].error_inf = 2.7e-4, rows[2].error_inf = 2e-5, rows[3].error_inf = 1e-6;
    fill_rates(rows);
    CHECK_FALSE(rows[0].rate.has_value());
    CHECK(*rows[1].rate == doctest::Approx(std::log2(1e-3 / 2.7e-4)).epsilon(1e-12));
    CHECK(*rows[2].rate == doctest::Approx(std::log(2.7e-4 / 2e-5) / std::log(4.0)).epsilon(1e-12));
    CHECK_FALSE(rows[3].rate.has_value());
}

TEST_CASE("study csv layout and determinism")
{
    StudySpec s;
    s.problem = Problem::CN1D;
    s.gammas = {0.5};
    s.Ms = {8, 16};
    const auto a = study_csv(run_study(s));
    const auto b = study_csv(run_study(s));
    CHECK(a.rfind("problem,gamma,M,tau,error_inf,rate,cgs_iters_max,wall_seconds\n", 0) == 0);
    CHECK(strip_wall(a) == strip_wall(b));
    const auto d = study_csv(run_study(s), true);
    CHECK(d.find("cgs_iters_mean,cgs_iters_final,failure\n") != std::string::npos);
    s.threads = 2;
    CHECK(strip_wall(study_csv(run_study(s))) == strip_wall(a));
}

TEST_CASE("zero solution gives zero error")
{
    for (Problem p : {Problem::CN1D, Problem::BDF4_1D, Problem::Steady1D, Problem::CN2DAdd}) {
        StudySpec s;
        s.problem = p;
        s.solution = Solution::Zero;
        s.gammas = {0.3};
        s.Ms = {4};
        for (const auto& r : run_study(s)) CHECK(r.error_inf == 0.0);
    }
}

TEST_CASE("validation")
{
    StudySpec s;
    s.problem = Problem::CN1D;
    s.gammas = {0.5};
    s.Ms = {16};
    CHECK(validate(s).empty());
    s.Ms = {12};
    CHECK_FALSE(validate(s).empty());
    s.Ms = {16};
    s.gammas = {1.0};
    CHECK_FALSE(validate(s).empty());
    s.gammas = {0.5};
    s.tau = 0.3;
    CHECK_FALSE(validate(s).empty());
    s.tau = 0.0;
    s.problem = Problem::BDF4_1D;
    s.Ms = {2};
    CHECK_FALSE(validate(s).empty());
    s.Ms = {4};
    CHECK(validate(s).empty());
    s.solution = Solution::Quartic2D;
    CHECK_FALSE(validate(s).empty());
    s.solution = Solution::Default;
    s.threads = 0;
    CHECK_FALSE(validate(s).empty());
    s.threads = 1;
    s.gammas.clear();
    CHECK_THROWS_AS(run_study(s), std::invalid_argument);
}

TEST_CASE("timing and diagnostics outputs")
{
    CHECK(timing_csv(TimingReport{}).empty());
    const auto rep = run_timing(Problem::CN1D, TimingKind::Matvec, {64, 128}, 0.5, 1, 0.0);
    REQUIRE(rep.rows.size() == 2);
    CHECK(rep.rows[1].storage_doubles > rep.rows[0].storage_doubles);
    CHECK(timing_csv(rep).rfind("M,seconds,storage_doubles,cgs_iterations\n", 0) == 0);
    const auto d = run_diagnostics(Problem::Steady1D, 0.5, 2);
    CHECK(d.h == 0.5);
    CHECK(d.inverse_inf_norm.has_value());
    CHECK(diagnostics_csv(Problem::Steady1D, 0.5, 2, d).find("steady1d,0.5,2,0.5,") != std::string::npos);
}

TEST_CASE("dense and fast paths agree on a full run")
{
    RunSpec rs;
    rs.problem = Problem::CN1D;
    rs.gamma = 0.5;
    rs.M = 128;
    rs.cgs.tol = 1e-13;
    const auto fast = run_problem(rs);
    rs.dense = true;
    const auto dense = run_problem(rs);
    double m = 0.0;
    for (std::size_t k = 0; k < fast.solution.size(); ++k)
        m = std::max(m, std::abs(fast.solution[k] - dense.solution[k]));
    CHECK(m < 1e-9);
}

TEST_CASE("cn1d error at gamma 0.8, M 512")
{
    RunSpec rs;
    rs.problem = Problem::CN1D;
    rs.gamma = 0.8;
    rs.M = 512;
    CHECK(run_problem(rs).error_inf == doctest::Approx(7.5887e-08).epsilon(0.05));
}
