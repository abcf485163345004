#include "nonlocal/problems.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <functional>
#include <memory>
#include <stdexcept>

#include "nonlocal/additive2d.hpp"
#include "nonlocal/coefficients.hpp"
#include "nonlocal/multiplicative2d.hpp"
#include "nonlocal/polynomial.hpp"
#include "nonlocal/toeplitz.hpp"

namespace nonlocal {

namespace {

constexpr std::array<std::pair<Problem, std::string_view>, 7> kProblems{{
    {Problem::Steady1D, "steady1d"},
    {Problem::CN1D, "cn1d"},
    {Problem::BDF4_1D, "bdf4-1d"},
    {Problem::CN2DMult, "cn2d-mult"},
    {Problem::BDF4_2DMult, "bdf4-2d-mult"},
    {Problem::CN2DAdd, "cn2d-add"},
    {Problem::Steady2DAdd, "steady2d-add"},
}};

constexpr std::array<std::pair<Solution, std::string_view>, 6> kSolutions{{
    {Solution::Default, "default"},
    {Solution::Quartic1D, "quartic1d"},
    {Solution::Quartic2D, "quartic2d"},
    {Solution::ExpTrig2D, "exptrig2d"},
    {Solution::Poly2D, "poly2d"},
    {Solution::Zero, "zero"},
}};

enum class Kernel2D { None, Multiplicative, Additive };

Kernel2D kernel_family(Problem p)
{
    switch (p) {
    case Problem::CN2DMult:
    case Problem::BDF4_2DMult: return Kernel2D::Multiplicative;
    case Problem::CN2DAdd:
    case Problem::Steady2DAdd: return Kernel2D::Additive;
    default: return Kernel2D::None;
    }
}

LinearOp dense_op(Eigen::MatrixXd A)
{
    auto m = std::make_shared<Eigen::MatrixXd>(std::move(A));
    return [m](std::span<const double> u, std::span<double> y) {
        Eigen::Map<Eigen::VectorXd>(y.data(), static_cast<Eigen::Index>(y.size())) =
            *m * Eigen::Map<const Eigen::VectorXd>(u.data(), static_cast<Eigen::Index>(u.size()));
    };
}

ManufacturedSystem build_1d(const RunSpec& s, double b, double scale)
{
    const Polynomial P{{std::exp(-2.0), 0.0, b * b, -2.0 * b, 1.0}};
    auto op = std::make_shared<FastOperator1D>(assemble_operator(CollocationGrid(0.0, b, s.M), WeaklySingularKernel(s.gamma)));
    ManufacturedSystem d;
    d.n = op->size();
    d.storage_doubles = op->storage_doubles();
    d.profile.resize(d.n);
    d.action.resize(d.n);
    for (std::size_t k = 0; k < d.n; ++k) {
        const double x = op->op().grid.node(k);
        d.profile[k] = scale * P(x);
        d.action[k] = -scale * nonlocal_remainder(P, x, 0.0, b, s.gamma);
    }
    d.boundary = boundary_vector(op->op(), scale * P(0.0), scale * P(b));
    if (s.dense)
        d.apply = dense_op(dense_matrix(op->op()));
    else
        d.apply = [op](std::span<const double> u, std::span<double> y) { op->apply(u, y); };
    return d;
}

ManufacturedSystem build_mult(const RunSpec& s, double b, double scale)
{
    const Polynomial P{{0.0, 0.0, b * b, -2.0 * b, 1.0}};
    const double c0 = -std::sin(1.0);
    const CollocationGrid g(0.0, b, s.M);
    auto op = std::make_shared<MultiplicativeOperator2D>(Grid2D{g, g}, WeaklySingularKernel(s.gamma));
    const std::size_t m = g.unknowns();
    std::vector<double> X(m), I(m), R(m);
    for (std::size_t k = 0; k < m; ++k) {
        const double x = g.node(k);
        X[k] = P(x);
        I[k] = kernel_mass(x, 0.0, b, s.gamma);
        R[k] = nonlocal_remainder(P, x, 0.0, b, s.gamma);
    }
    ManufacturedSystem d;
    d.n = op->size();
    d.storage_doubles = op->x().storage_doubles() + op->y().storage_doubles();
    d.profile.resize(d.n);
    d.action.resize(d.n);
    // L(XY) = D_x D_y XY - (X + R_x)(Y + R_y) with D = kernel mass; constants are annihilated.
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            const std::size_t k = i * m + j;
            d.profile[k] = scale * (X[i] * X[j] + c0);
            d.action[k] = -scale * (X[i] * I[i] * R[j] + R[i] * X[j] * I[j] + R[i] * R[j]);
        }
    d.boundary = op->boundary_vector([&](double x, double y) { return scale * (P(x) * P(y) + c0); });
    if (s.dense)
        d.apply = dense_op(op->dense());
    else
        d.apply = [op](std::span<const double> u, std::span<double> y) { op->apply(u, y); };
    return d;
}

ManufacturedSystem build_add(const RunSpec& s, Solution sol, double b, double scale)
{
    std::function<double(double, double)> g;
    if (sol == Solution::ExpTrig2D)
        g = [scale](double x, double y) { return scale * (std::exp(2 * x + 4 * y) * (std::sin(2 * x) + std::cos(4 * y)) + 1.0); };
    else
        g = [scale](double x, double y) {
            return scale * (x * x * x * x - x * x * x + x * x + 1) * (y * y * y * y - 2 * y * y * y + y * y + 1);
        };
    const CollocationGrid cg(0.0, b, s.M);
    const Grid2D grid{cg, cg};
    auto op = std::make_shared<AdditiveOperator2D>(grid, WeaklySingularKernel(s.gamma), s.quadrature);
    ManufacturedSystem d;
    d.n = op->size();
    d.storage_doubles = op->storage_doubles();
    const std::size_t m = cg.unknowns();
    d.profile.resize(d.n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) d.profile[i * m + j] = g(cg.node(i), cg.node(j));
    d.action = additive_nonlocal_action(grid, s.gamma, g, s.quadrature);
    d.boundary = op->boundary_vector(g);
    if (s.dense)
        d.apply = dense_op(op->dense());
    else
        d.apply = [op](std::span<const double> u, std::span<double> y) { op->apply(u, y); };
    return d;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b)
{
    double e = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) e = std::max(e, std::abs(a[k] - b[k]));
    return e;
}

}  // namespace

std::optional<Problem> parse_problem(std::string_view name)
{
    for (const auto& [p, n] : kProblems)
        if (n == name) return p;
    return std::nullopt;
}

std::string_view problem_name(Problem p)
{
    for (const auto& [q, n] : kProblems)
        if (q == p) return n;
    return "?";
}

std::optional<Solution> parse_solution(std::string_view name)
{
    for (const auto& [s, n] : kSolutions)
        if (n == name) return s;
    return std::nullopt;
}

std::string_view solution_name(Solution s)
{
    for (const auto& [q, n] : kSolutions)
        if (q == s) return n;
    return "?";
}

bool is_two_dimensional(Problem p) { return kernel_family(p) != Kernel2D::None; }

bool is_steady(Problem p) { return p == Problem::Steady1D || p == Problem::Steady2DAdd; }

Solution default_solution(Problem p)
{
    switch (kernel_family(p)) {
    case Kernel2D::Multiplicative: return Solution::Quartic2D;
    case Kernel2D::Additive: return Solution::Poly2D;
    default: return Solution::Quartic1D;
    }
}

bool solution_fits(Problem p, Solution s)
{
    switch (s) {
    case Solution::Default:
    case Solution::Zero: return true;
    case Solution::Quartic1D: return kernel_family(p) == Kernel2D::None;
    case Solution::Quartic2D: return kernel_family(p) == Kernel2D::Multiplicative;
    case Solution::ExpTrig2D:
    case Solution::Poly2D: return kernel_family(p) == Kernel2D::Additive;
    }
    return false;
}

double domain_length(Solution s) { return s == Solution::Quartic2D ? 2.0 : 1.0; }

double default_final_time(Problem p) { return kernel_family(p) == Kernel2D::Multiplicative ? 2.0 : 1.0; }

ManufacturedSystem build_system(const RunSpec& spec)
{
    if (!(spec.gamma > 0.0 && spec.gamma < 1.0)) throw std::invalid_argument("gamma must lie in (0,1)");
    if (spec.M < 2) throw std::invalid_argument("M must be at least 2");
    if (!solution_fits(spec.problem, spec.solution)) throw std::invalid_argument("solution does not fit the problem");

    const Solution zero_shape = default_solution(spec.problem);
    const Solution sol = (spec.solution == Solution::Default || spec.solution == Solution::Zero) ? zero_shape : spec.solution;
    const double scale = spec.solution == Solution::Zero ? 0.0 : 1.0;
    const double b = domain_length(sol);
    ManufacturedSystem d;
    switch (kernel_family(spec.problem)) {
    case Kernel2D::None: d = build_1d(spec, b, scale); break;
    case Kernel2D::Multiplicative: d = build_mult(spec, b, scale); break;
    case Kernel2D::Additive: d = build_add(spec, sol, b, scale); break;
    }
    d.h = b / static_cast<double>(spec.M);
    return d;
}

RunResult run_problem(const RunSpec& spec)
{
    const auto t0 = std::chrono::steady_clock::now();
    const ManufacturedSystem d = build_system(spec);
    const double h = d.h;

    RunResult r;
    SolveReport rep;
    if (is_steady(spec.problem)) {
        std::vector<double> rhs(d.n);
        for (std::size_t k = 0; k < d.n; ++k) rhs[k] = d.action[k] + d.boundary[k];
        rep = steady_solve(d.apply, rhs, spec.cgs);
        r.exact = d.profile;
    } else {
        r.tau = spec.tau > 0.0 ? spec.tau : h;
        r.T = spec.T > 0.0 ? spec.T : default_final_time(spec.problem);
        std::vector<double> base(d.n);
        for (std::size_t k = 0; k < d.n; ++k) base[k] = d.profile[k] + d.action[k] + d.boundary[k];
        EvolutionProblem ev;
        ev.n = d.n;
        ev.apply = d.apply;
        ev.forcing = [&base](double t) {
            std::vector<double> f(base);
            const double e = std::exp(t);
            for (double& v : f) v *= e;
            return f;
        };
        ev.exact = [&d](double t) {
            std::vector<double> f(d.profile);
            const double e = std::exp(t);
            for (double& v : f) v *= e;
            return f;
        };
        TimeStepConfig cfg;
        cfg.tau = r.tau;
        cfg.T = r.T;
        cfg.startup = spec.startup;
        cfg.cn_forcing = spec.cn_forcing;
        const bool bdf = spec.problem == Problem::BDF4_1D || spec.problem == Problem::BDF4_2DMult;
        cfg.scheme = bdf ? Scheme::BDF4 : Scheme::CrankNicolson;
        rep = bdf ? bdf4_run(ev, d.profile, cfg, spec.cgs) : crank_nicolson_run(ev, d.profile, cfg, spec.cgs);
        r.exact = ev.exact(r.T);
    }
    r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r.solution = std::move(rep.solution);
    r.error_inf = max_abs_diff(r.solution, r.exact);
    r.iters_max = rep.max_iterations();
    r.iters_mean = rep.mean_iterations();
    r.iters_final = rep.iterations_per_step.empty() ? 0 : rep.iterations_per_step.back();
    return r;
}

}  // namespace nonlocal
