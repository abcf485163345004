#include "nonlocal/timestep.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

namespace nonlocal {

std::size_t TimeStepConfig::steps() const
{
    if (!(tau > 0.0) || !(T > 0.0) || tau > T) throw std::invalid_argument("time step must satisfy 0 < tau <= T");
    const double N = std::round(T / tau);
    if (std::abs(N * tau - T) > 1e-12 * T) throw std::invalid_argument("T is not an integer multiple of tau");
    return static_cast<std::size_t>(N);
}

std::size_t SolveReport::max_iterations() const
{
    return iterations_per_step.empty() ? 0 : *std::max_element(iterations_per_step.begin(), iterations_per_step.end());
}

double SolveReport::mean_iterations() const
{
    if (iterations_per_step.empty()) return 0.0;
    const double s = std::accumulate(iterations_per_step.begin(), iterations_per_step.end(), 0.0);
    return s / static_cast<double>(iterations_per_step.size());
}

namespace {

using clock_type = std::chrono::steady_clock;

void record(SolveReport& rep, const CgsResult& r, std::size_t step)
{
    if (r.breakdown) throw SolverFailure("CGS breakdown at step " + std::to_string(step), step);
    if (!r.converged) throw SolverFailure("CGS did not converge at step " + std::to_string(step), step);
    rep.iterations_per_step.push_back(r.iterations);
    rep.residuals.push_back(r.relative_residual);
}

// One Crank-Nicolson step from t to t + tau.
std::vector<double> cn_step(const EvolutionProblem& prob, const std::vector<double>& u, double t, double tau,
                            CnForcing sampling, const CgsConfig& cgs, SolveReport& rep, std::size_t step)
{
    const std::size_t n = prob.n;
    std::vector<double> Au(n);
    prob.apply(u, Au);
    std::vector<double> g;
    if (sampling == CnForcing::Midpoint) {
        g = prob.forcing(t + 0.5 * tau);
    } else {
        g = prob.forcing(t);
        const std::vector<double> g1 = prob.forcing(t + tau);
        for (std::size_t i = 0; i < n; ++i) g[i] = 0.5 * (g[i] + g1[i]);
    }
    std::vector<double> rhs(n);
    for (std::size_t i = 0; i < n; ++i) rhs[i] = u[i] - 0.5 * tau * Au[i] + tau * g[i];

    const double h = 0.5 * tau;
    LinearOp lhs = [&](std::span<const double> v, std::span<double> y) {
        prob.apply(v, y);
        for (std::size_t i = 0; i < y.size(); ++i) y[i] = v[i] + h * y[i];
    };
    CgsResult r = cgs_solve(lhs, rhs, u, cgs);
    record(rep, r, step);
    return std::move(r.x);
}

}  // namespace

SolveReport crank_nicolson_run(const EvolutionProblem& prob, std::vector<double> u, const TimeStepConfig& cfg,
                               const CgsConfig& cgs)
{
    const auto t0 = clock_type::now();
    const std::size_t N = cfg.steps();
    if (u.size() != prob.n) throw std::invalid_argument("initial vector has wrong size");
    SolveReport rep;
    for (std::size_t k = 1; k <= N; ++k) u = cn_step(prob, u, (k - 1) * cfg.tau, cfg.tau, cfg.cn_forcing, cgs, rep, k);
    rep.solution = std::move(u);
    rep.wall_seconds = std::chrono::duration<double>(clock_type::now() - t0).count();
    return rep;
}

SolveReport bdf4_run(const EvolutionProblem& prob, std::vector<double> u0, const TimeStepConfig& cfg,
                     const CgsConfig& cgs)
{
    const auto t0 = clock_type::now();
    const std::size_t N = cfg.steps();
    const std::size_t n = prob.n;
    const double tau = cfg.tau;
    if (u0.size() != n) throw std::invalid_argument("initial vector has wrong size");
    SolveReport rep;

    std::vector<std::vector<double>> hist{std::move(u0)};
    const std::size_t start = std::min<std::size_t>(3, N);
    if (cfg.startup == Startup::ExactHistory) {
        if (!prob.exact) throw std::invalid_argument("ExactHistory startup requires the exact solution");
        for (std::size_t k = 1; k <= start; ++k) hist.push_back(prob.exact(k * tau));
    } else {
        const double sub = tau / 16.0;
        std::vector<double> u = hist.back();
        for (std::size_t k = 1; k <= start; ++k) {
            for (std::size_t s = 0; s < 16; ++s) u = cn_step(prob, u, (k - 1) * tau + s * sub, sub, cfg.cn_forcing, cgs, rep, k);
            hist.push_back(u);
        }
    }

    const double c0 = 25.0 / 12.0;
    LinearOp lhs = [&](std::span<const double> v, std::span<double> y) {
        prob.apply(v, y);
        for (std::size_t i = 0; i < y.size(); ++i) y[i] = c0 * v[i] + tau * y[i];
    };
    std::vector<double> rhs(n);
    for (std::size_t k = 4; k <= N; ++k) {
        const auto& u1 = hist[hist.size() - 1];
        const auto& u2 = hist[hist.size() - 2];
        const auto& u3 = hist[hist.size() - 3];
        const auto& u4 = hist[hist.size() - 4];
        const std::vector<double> g = prob.forcing(k * tau);
        for (std::size_t i = 0; i < n; ++i)
            rhs[i] = 4.0 * u1[i] - 3.0 * u2[i] + (4.0 / 3.0) * u3[i] - 0.25 * u4[i] + tau * g[i];
        CgsResult r = cgs_solve(lhs, rhs, u1, cgs);
        record(rep, r, k);
        hist.erase(hist.begin());
        hist.push_back(std::move(r.x));
    }
    rep.solution = hist.back();
    rep.wall_seconds = std::chrono::duration<double>(clock_type::now() - t0).count();
    return rep;
}

SolveReport steady_solve(const LinearOp& apply, const std::vector<double>& rhs, const CgsConfig& cgs)
{
    const auto t0 = clock_type::now();
    SolveReport rep;
    const std::vector<double> x0(rhs.size(), 0.0);
    CgsResult r = cgs_solve(apply, rhs, x0, cgs);
    record(rep, r, 0);
    rep.solution = std::move(r.x);
    rep.wall_seconds = std::chrono::duration<double>(clock_type::now() - t0).count();
    return rep;
}

}  // namespace nonlocal
