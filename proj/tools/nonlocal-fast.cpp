#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "nonlocal/harness.hpp"

using namespace nonlocal;

namespace {

int write_output(const std::string& path, const std::string& text)
{
    if (path.empty() || path == "-") {
        std::cout << text;
        return 0;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        std::cerr << "cannot open " << path << '\n';
        return 1;
    }
    f << text;
    return 0;
}

Problem require_problem(const std::string& name)
{
    const auto p = parse_problem(name);
    if (!p) throw CLI::ValidationError("--problem", "unknown problem '" + name + "'");
    return *p;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Fast solvers for nonlocal diffusion with a weakly singular kernel"};
    app.require_subcommand(1);

    std::string problem_str, solution_str = "default", tau_str = "equal-h", startup_str = "exact", forcing_str = "midpoint", out;
    std::vector<double> gammas{0.2, 0.5, 0.8};
    std::vector<std::size_t> Ms;
    double T = 0.0, tol = 1e-9;
    std::size_t maxit = 1000;
    unsigned threads = 1;
    bool detail = false;

    auto* study = app.add_subcommand("study", "convergence study as CSV");
    study->add_option("--problem", problem_str, "steady1d|cn1d|bdf4-1d|cn2d-mult|bdf4-2d-mult|cn2d-add|steady2d-add")
        ->required();
    study->add_option("--solution", solution_str, "default|quartic1d|quartic2d|exptrig2d|poly2d|zero");
    study->add_option("--gamma", gammas, "comma-separated kernel exponents")->delimiter(',');
    study->add_option("--M", Ms, "comma-separated interval counts")->delimiter(',')->required();
    study->add_option("--tau", tau_str, "equal-h or a time step");
    study->add_option("--T", T, "final time (default per problem)");
    study->add_option("--startup", startup_str, "BDF4 startup: exact|cn-rampup");
    study->add_option("--cn-forcing", forcing_str, "Crank-Nicolson source sampling: midpoint|average");
    study->add_option("--tol", tol, "relative CGS tolerance");
    study->add_option("--maxit", maxit, "CGS iteration cap");
    study->add_option("--out", out, "output file (default stdout)");
    study->add_option("--threads", threads, "rows run in parallel");
    study->add_flag("--detail", detail, "append mean/final iteration and failure columns");

    std::string kind_str = "matvec";
    double gamma = 0.5;
    int repeats = 5;
    auto* timing = app.add_subcommand("timing", "median-of-N timings with an M log M fit");
    timing->add_option("--problem", problem_str)->required();
    timing->add_option("--kind", kind_str, "matvec|step");
    timing->add_option("--M", Ms)->delimiter(',');
    timing->add_option("--gamma", gamma);
    timing->add_option("--repeats", repeats)->check(CLI::PositiveNumber);
    timing->add_option("--out", out);

    std::size_t M = 64;
    bool scan = false;
    auto* diag = app.add_subcommand("diag", "dense spectral diagnostics");
    diag->add_option("--problem", problem_str)->required();
    diag->add_option("--gamma", gamma);
    diag->add_option("--M", M);
    diag->add_flag("--scan", scan, "scan gamma = 0.1..0.9 over M = 8,16,32,64 for an indefinite symmetric part");
    diag->add_option("--out", out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (*study) {
            StudySpec s;
            s.problem = require_problem(problem_str);
            const auto sol = parse_solution(solution_str);
            if (!sol) throw CLI::ValidationError("--solution", "unknown solution '" + solution_str + "'");
            s.solution = *sol;
            s.gammas = gammas;
            s.Ms = Ms;
            if (tau_str != "equal-h") {
                std::size_t pos = 0;
                s.tau = std::stod(tau_str, &pos);
                if (pos != tau_str.size() || !(s.tau > 0.0)) throw CLI::ValidationError("--tau", "bad value");
            }
            s.T = T;
            if (startup_str == "exact")
                s.startup = Startup::ExactHistory;
            else if (startup_str == "cn-rampup")
                s.startup = Startup::CNRampUp;
            else
                throw CLI::ValidationError("--startup", "expected exact or cn-rampup");
            if (forcing_str == "midpoint")
                s.cn_forcing = CnForcing::Midpoint;
            else if (forcing_str == "average")
                s.cn_forcing = CnForcing::Average;
            else
                throw CLI::ValidationError("--cn-forcing", "expected midpoint or average");
            s.cgs.tol = tol;
            s.cgs.maxit = maxit;
            s.threads = threads;
            if (const std::string err = validate(s); !err.empty()) {
                std::cerr << "spec error: " << err << '\n';
                return 1;
            }
            const auto rows = run_study(s);
            if (write_output(out, study_csv(rows, detail)) != 0) return 1;
            for (const auto& r : rows)
                if (!r.failure.empty()) return 2;
            return 0;
        }
        if (*timing) {
            const Problem p = require_problem(problem_str);
            TimingKind kind;
            if (kind_str == "matvec")
                kind = TimingKind::Matvec;
            else if (kind_str == "step")
                kind = TimingKind::Step;
            else
                throw CLI::ValidationError("--kind", "expected matvec or step");
            return write_output(out, timing_csv(run_timing(p, kind, Ms, gamma, repeats)));
        }
        if (*diag) {
            const Problem p = require_problem(problem_str);
            if (scan) {
                std::string text = "gamma,M,h_min_eig,h_max_eig\n";
                for (const auto& h : indefiniteness_scan({8, 16, 32, 64}))
                    text += format_double(h.gamma) + ',' + std::to_string(h.M) + ',' + format_double(h.h_min) + ',' +
                            format_double(h.h_max) + '\n';
                return write_output(out, text);
            }
            return write_output(out, diagnostics_csv(p, gamma, M, run_diagnostics(p, gamma, M)));
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << '\n';
        return 1;
    } catch (const SolverFailure& e) {
        std::cerr << "solver failure at step " << e.step() << ": " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
