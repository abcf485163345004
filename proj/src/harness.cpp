#include "nonlocal/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <thread>

#include "nonlocal/additive2d.hpp"
#include "nonlocal/multiplicative2d.hpp"
#include "nonlocal/operator1d.hpp"

namespace nonlocal {

namespace {

bool is_pow2(std::size_t m) { return m >= 2 && (m & (m - 1)) == 0; }

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::size_t interior_unknowns(Problem p, std::size_t M)
{
    const std::size_t m = 2 * M - 1;
    return is_two_dimensional(p) ? m * m : m;
}

}  // namespace

std::string validate(const StudySpec& s)
{
    if (s.gammas.empty()) return "empty gamma list";
    for (double g : s.gammas)
        if (!(g > 0.0 && g < 1.0)) return "gamma must lie in (0,1)";
    for (std::size_t M : s.Ms)
        if (!is_pow2(M)) return "M must be a power of two >= 2";
    if (!solution_fits(s.problem, s.solution)) return "solution does not fit the problem";
    if (s.tau < 0.0 || s.T < 0.0) return "tau and T must be positive";
    if (!is_steady(s.problem)) {
        const double T = s.T > 0.0 ? s.T : default_final_time(s.problem);
        const Solution sol = s.solution == Solution::Default || s.solution == Solution::Zero
                                 ? default_solution(s.problem)
                                 : s.solution;
        for (std::size_t M : s.Ms) {
            const double tau = s.tau > 0.0 ? s.tau : domain_length(sol) / static_cast<double>(M);
            const double N = std::round(T / tau);
            if (N < 1.0 || std::abs(N * tau - T) > 1e-12 * T) return "T is not an integer multiple of tau";
            if ((s.problem == Problem::BDF4_1D || s.problem == Problem::BDF4_2DMult) && N < 4.0)
                return "BDF4 needs at least four time steps";
        }
    }
    if (s.threads == 0) return "threads must be positive";
    return {};
}

void fill_rates(std::vector<StudyRow>& rows)
{
    for (std::size_t k = 0; k < rows.size(); ++k) {
        rows[k].rate.reset();
        if (k == 0 || rows[k - 1].gamma != rows[k].gamma) continue;
        const StudyRow& p = rows[k - 1];
        const StudyRow& r = rows[k];
        if (!p.failure.empty() || !r.failure.empty() || !(p.error_inf > 0.0) || !(r.error_inf > 0.0)) continue;
        const double ratio = static_cast<double>(r.M) / static_cast<double>(p.M);
        if (ratio == 2.0)
            rows[k].rate = std::log2(p.error_inf / r.error_inf);
        else
            rows[k].rate = std::log(p.error_inf / r.error_inf) / std::log(ratio);
    }
}

std::vector<StudyRow> run_study(const StudySpec& spec)
{
    if (const std::string err = validate(spec); !err.empty()) throw std::invalid_argument(err);
    std::vector<StudyRow> rows;
    for (double g : spec.gammas)
        for (std::size_t M : spec.Ms) {
            StudyRow r;
            r.problem = spec.problem;
            r.gamma = g;
            r.M = M;
            rows.push_back(r);
        }

    auto run_row = [&spec](StudyRow& row) {
        RunSpec rs;
        rs.problem = spec.problem;
        rs.solution = spec.solution;
        rs.gamma = row.gamma;
        rs.M = row.M;
        rs.tau = spec.tau;
        rs.T = spec.T;
        rs.startup = spec.startup;
        rs.cn_forcing = spec.cn_forcing;
        rs.cgs = spec.cgs;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            const RunResult res = run_problem(rs);
            row.tau = res.tau;
            row.error_inf = res.error_inf;
            row.cgs_iters_max = res.iters_max;
            row.cgs_iters_mean = res.iters_mean;
            row.cgs_iters_final = res.iters_final;
            row.wall_seconds = res.wall_seconds;
        } catch (const SolverFailure& e) {
            row.failure = e.what();
            row.error_inf = NAN;
            row.wall_seconds = seconds_since(t0);
        }
    };

    const unsigned nthreads = std::min<unsigned>(spec.threads, static_cast<unsigned>(rows.size()));
    if (nthreads <= 1) {
        for (StudyRow& r : rows) run_row(r);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < nthreads; ++t)
            pool.emplace_back([&] {
                for (std::size_t k; (k = next++) < rows.size();) run_row(rows[k]);
            });
        for (auto& th : pool) th.join();
    }
    fill_rates(rows);
    return rows;
}

std::string format_double(double v)
{
    if (std::isnan(v)) return "nan";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string study_csv(const std::vector<StudyRow>& rows, bool detail)
{
    std::string out = "problem,gamma,M,tau,error_inf,rate,cgs_iters_max,wall_seconds";
    if (detail) out += ",cgs_iters_mean,cgs_iters_final,failure";
    out += '\n';
    for (const StudyRow& r : rows) {
        out += std::string(problem_name(r.problem));
        out += ',' + format_double(r.gamma);
        out += ',' + std::to_string(r.M);
        out += ',' + format_double(r.tau);
        out += ',' + format_double(r.error_inf);
        out += ',' + (r.rate ? format_double(*r.rate) : std::string());
        out += ',' + std::to_string(r.cgs_iters_max);
        out += ',' + format_double(r.wall_seconds);
        if (detail) {
            out += ',' + format_double(r.cgs_iters_mean);
            out += ',' + std::to_string(r.cgs_iters_final);
            out += ',' + r.failure;
        }
        out += '\n';
    }
    return out;
}

TimingReport run_timing(Problem problem, TimingKind kind, const std::vector<std::size_t>& Ms, double gamma,
                        int repeats, double min_sample_seconds)
{
    struct Bench {
        ManufacturedSystem sys;
        std::vector<double> y, rhs;
        LinearOp shifted;
        std::size_t reps = 1;
        std::vector<double> samples;
    };
    std::vector<std::unique_ptr<Bench>> benches;
    TimingReport rep;
    for (std::size_t M : Ms) {
        RunSpec rs;
        rs.problem = problem;
        rs.gamma = gamma;
        rs.M = M;
        auto b = std::make_unique<Bench>();
        b->sys = build_system(rs);
        const ManufacturedSystem& sys = b->sys;
        const std::size_t n = sys.n;
        const double tau = sys.h;
        b->y.resize(n);
        b->rhs.resize(n);
        b->shifted = [&sys, tau](std::span<const double> u, std::span<double> out) {
            sys.apply(u, out);
            for (std::size_t k = 0; k < u.size(); ++k) out[k] = u[k] + 0.5 * tau * out[k];
        };
        std::size_t iterations = 0;
        if (kind == TimingKind::Step) {
            sys.apply(sys.profile, b->y);
            const double e = std::exp(0.5 * tau);
            for (std::size_t k = 0; k < n; ++k)
                b->rhs[k] = sys.profile[k] - 0.5 * tau * b->y[k] +
                            tau * e * (sys.profile[k] + sys.action[k] + sys.boundary[k]);
            iterations = cgs_solve(b->shifted, b->rhs, sys.profile).iterations;
        }
        rep.rows.push_back({M, 0.0, sys.storage_doubles, iterations});
        benches.push_back(std::move(b));
    }

    auto once = [kind](Bench& b) {
        if (kind == TimingKind::Matvec)
            b.sys.apply(b.sys.profile, b.y);
        else
            cgs_solve(b.shifted, b.rhs, b.sys.profile);
    };
    auto sample = [&once](Bench& b) {
        const auto t0 = std::chrono::steady_clock::now();
        for (std::size_t r = 0; r < b.reps; ++r) once(b);
        return seconds_since(t0);
    };
    for (auto& b : benches) {
        once(*b);
        while (sample(*b) < min_sample_seconds && b->reps < (std::size_t{1} << 20)) b->reps *= 2;
    }
    for (int s = 0; s < repeats; ++s)
        for (auto& b : benches) b->samples.push_back(sample(*b) / static_cast<double>(b->reps));
    for (std::size_t k = 0; k < benches.size(); ++k) {
        auto& v = benches[k]->samples;
        std::nth_element(v.begin(), v.begin() + static_cast<long>(v.size() / 2), v.end());
        rep.rows[k].seconds = v[v.size() / 2];
    }
    if (!rep.rows.empty()) {
        std::vector<double> x, t;
        for (const auto& r : rep.rows) {
            x.push_back(static_cast<double>(r.M));
            t.push_back(r.seconds);
        }
        std::tie(rep.c, rep.r2) = fit_nlogn(x, t);
    }
    return rep;
}

std::string timing_csv(const TimingReport& report)
{
    std::string out;
    if (report.rows.empty()) return out;
    out = "M,seconds,storage_doubles,cgs_iterations\n";
    for (const auto& r : report.rows)
        out += std::to_string(r.M) + ',' + format_double(r.seconds) + ',' + std::to_string(r.storage_doubles) + ',' +
               std::to_string(r.iterations) + '\n';
    out += "# fit t = c*M*log(M): c=" + format_double(report.c) + " R2=" + format_double(report.r2) + '\n';
    return out;
}

Eigen::MatrixXd dense_operator(Problem problem, double gamma, std::size_t M)
{
    const std::size_t n = interior_unknowns(problem, M);
    if (n > kDenseCap) throw DenseCapExceeded(n);
    const WeaklySingularKernel kernel(gamma);
    switch (problem) {
    case Problem::CN2DMult:
    case Problem::BDF4_2DMult: {
        const CollocationGrid g(0.0, 2.0, M);
        return MultiplicativeOperator2D(Grid2D{g, g}, kernel).dense();
    }
    case Problem::CN2DAdd:
    case Problem::Steady2DAdd: {
        const CollocationGrid g(0.0, 1.0, M);
        return AdditiveOperator2D(Grid2D{g, g}, kernel).dense();
    }
    default: return dense_matrix(assemble_operator(CollocationGrid(0.0, 1.0, M), kernel));
    }
}

Diagnostics run_diagnostics(Problem problem, double gamma, std::size_t M)
{
    Diagnostics d;
    const Eigen::MatrixXd A = dense_operator(problem, gamma, M);
    d.h = (is_two_dimensional(problem) && problem != Problem::CN2DAdd && problem != Problem::Steady2DAdd ? 2.0 : 1.0) /
          static_cast<double>(M);
    d.report = spectral_report(A);
    d.inverse_inf_norm = inverse_inf_norm(A);
    d.condition_inf = condition_inf(A);
    d.min_real_eigenvalue = min_real_eigenvalue(A);
    return d;
}

std::string diagnostics_csv(Problem problem, double gamma, std::size_t M, const Diagnostics& d)
{
    auto opt = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string("singular"); };
    std::string out =
        "problem,gamma,M,h,dominance_gap,inf_norm,inv_inf_norm_bound,cond_bound,inv_inf_norm,cond_inf,h_min_eig,h_max_eig,"
        "min_re_eig\n";
    out += std::string(problem_name(problem)) + ',' + format_double(gamma) + ',' + std::to_string(M) + ',' +
           format_double(d.h) + ',' + format_double(d.report.min_row_dominance_gap) + ',' +
           format_double(d.report.inf_norm) + ',' + format_double(d.report.inv_inf_norm_bound) + ',' +
           format_double(d.report.cond_bound) + ',' + opt(d.inverse_inf_norm) + ',' + opt(d.condition_inf) + ',' +
           format_double(d.report.h_min_eig) + ',' + format_double(d.report.h_max_eig) + ',' +
           format_double(d.min_real_eigenvalue) + '\n';
    return out;
}

std::vector<IndefinitenessHit> indefiniteness_scan(const std::vector<std::size_t>& Ms)
{
    std::vector<IndefinitenessHit> hits;
    for (int k = 1; k <= 9; ++k) {
        const double g = k / 10.0;
        for (std::size_t M : Ms) {
            const auto [lo, hi] = symmetric_part_extremes(dense_operator(Problem::Steady1D, g, M));
            if (lo < 0.0 && hi > 0.0) hits.push_back({g, M, lo, hi});
        }
    }
    return hits;
}

}  // namespace nonlocal
