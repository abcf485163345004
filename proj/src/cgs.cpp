#include "nonlocal/cgs.hpp"

#include <cmath>
#include <stdexcept>

namespace nonlocal {

double dot(std::span<const double> a, std::span<const double> b)
{
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm2(std::span<const double> a)
{
    return std::sqrt(dot(a, a));
}

double norm_inf(std::span<const double> a)
{
    double m = 0.0;
    for (double v : a) m = std::max(m, std::abs(v));
    return m;
}

namespace {

void true_residual(const LinearOp& apply, std::span<const double> b, const std::vector<double>& x,
                   std::vector<double>& tmp, std::vector<double>& r)
{
    apply(x, tmp);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = b[i] - tmp[i];
}

}  // namespace

CgsResult cgs_solve(const LinearOp& apply, std::span<const double> b, std::span<const double> x0,
                    const CgsConfig& cfg)
{
    if (cfg.tol <= 0.0 || cfg.maxit < 1) throw std::invalid_argument("invalid CGS configuration");
    const std::size_t n = b.size();
    if (x0.size() != n) throw std::invalid_argument("cgs_solve: dimension mismatch");

    CgsResult res;
    res.x.assign(x0.begin(), x0.end());
    const double bnorm = norm2(b);
    if (bnorm == 0.0) {
        res.x.assign(n, 0.0);
        res.converged = true;
        return res;
    }

    std::vector<double> r(n), tmp(n), rstar, p, z, q(n), u(n), Ap(n);
    true_residual(apply, b, res.x, tmp, r);
    double rel = norm2(r) / bnorm;
    if (cfg.record_history) res.history.push_back(rel);
    if (rel <= cfg.tol) {
        res.relative_residual = rel;
        res.converged = true;
        return res;
    }
    rstar = r;
    p = r;
    z = r;
    const double r0sq = dot(r, r);
    const double scale = std::sqrt(r0sq);
    double rho = r0sq;

    for (std::size_t j = 1; j <= cfg.maxit; ++j) {
        apply(p, Ap);
        const double sigma = dot(Ap, rstar);
        if (std::abs(sigma) <= 1e-300 + 1e-30 * r0sq) {
            res.breakdown = true;
            break;
        }
        const double alpha = rho / sigma;
        for (std::size_t i = 0; i < n; ++i) {
            q[i] = z[i] - alpha * Ap[i];
            u[i] = z[i] + q[i];
            res.x[i] += alpha * u[i];
        }
        if (j % 10 == 0) {
            true_residual(apply, b, res.x, tmp, r);
        } else {
            apply(u, tmp);
            for (std::size_t i = 0; i < n; ++i) r[i] -= alpha * tmp[i];
        }
        res.iterations = j;
        rel = norm2(r) / scale;
        if (cfg.record_history) res.history.push_back(rel);
        if (rel <= cfg.tol) {
            true_residual(apply, b, res.x, tmp, r);
            rel = norm2(r) / scale;
            if (rel <= 10.0 * cfg.tol) {
                res.converged = true;
                break;
            }
        }
        const double rho_new = dot(r, rstar);
        if (std::abs(rho) <= 1e-300 + 1e-30 * r0sq) {
            res.breakdown = true;
            break;
        }
        const double beta = rho_new / rho;
        rho = rho_new;
        for (std::size_t i = 0; i < n; ++i) {
            z[i] = r[i] + beta * q[i];
            p[i] = z[i] + beta * (q[i] + beta * p[i]);
        }
    }
    true_residual(apply, b, res.x, tmp, r);
    res.relative_residual = norm2(r) / bnorm;
    if (!res.converged && !res.breakdown && norm2(r) <= 10.0 * cfg.tol * scale) res.converged = true;
    return res;
}

}  // namespace nonlocal
