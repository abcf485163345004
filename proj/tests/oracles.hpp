#pragma once

// Reference integrals computed without the library's coefficient formulas or quadrature.

#include <Eigen/Dense>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <random>
#include <span>
#include <utility>
#include <vector>

namespace oracle {

using Fn1 = std::function<double(double)>;
using Fn2 = std::function<double(double, double)>;

// Gauss-Legendre nodes/weights on [0, 1] by Newton iteration on P_n.
inline std::pair<std::vector<double>, std::vector<double>> gauss(std::size_t n)
{
    std::vector<double> x(n), w(n);
    for (std::size_t i = 0; i < n; ++i) {
        double z = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = z;
            for (std::size_t k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / static_cast<double>(k);
                p0 = p1;
                p1 = p2;
            }
            dp = static_cast<double>(n) * (z * p1 - p0) / (z * z - 1.0);
            const double dz = p1 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) break;
        }
        x[i] = 0.5 * (1.0 - z);
        w[i] = 1.0 / ((1.0 - z * z) * dp * dp);
    }
    return {x, w};
}

inline const std::pair<std::vector<double>, std::vector<double>>& gauss20()
{
    static const auto r = gauss(20);
    return r;
}

// Coefficients a_k with F(L t) = sum a_k t^k for a polynomial F of degree <= 4.
inline Eigen::Matrix<double, 5, 1> fit_quartic(const Fn1& F, double L)
{
    Eigen::Matrix<double, 5, 5> V;
    Eigen::Matrix<double, 5, 1> y;
    for (int i = 0; i < 5; ++i) {
        const double t = 0.5 * (1.0 - std::cos(std::numbers::pi * (i + 0.5) / 5.0));
        for (int k = 0; k < 5; ++k) V(i, k) = std::pow(t, k);
        y(i) = F(L * t);
    }
    return V.fullPivLu().solve(y);
}

// integral_0^L F(r) r^{-gamma} dr for polynomial F of degree <= 4, exactly.
inline double endpoint_singular(const Fn1& F, double L, double gamma)
{
    if (L <= 0.0) return 0.0;
    const auto a = fit_quartic(F, L);
    double s = 0.0;
    for (int k = 0; k < 5; ++k) s += a(k) / (k + 1.0 - gamma);
    return s * std::pow(L, 1.0 - gamma);
}

// integral_lo^hi f(y) |x - y|^{-gamma} dy with f a polynomial of degree <= 4 on [lo, hi].
inline double integral_1d(const Fn1& f, double lo, double hi, double x, double gamma)
{
    if (hi <= lo) return 0.0;
    if (x >= lo && x <= hi)
        return endpoint_singular([&](double r) { return f(x + r); }, hi - x, gamma) +
               endpoint_singular([&](double r) { return f(x - r); }, x - lo, gamma);
    const auto& [gx, gw] = gauss20();
    const int panels = 16;
    const double ph = (hi - lo) / panels;
    double s = 0.0;
    for (int p = 0; p < panels; ++p)
        for (std::size_t i = 0; i < gx.size(); ++i) {
            const double y = lo + ph * (p + gx[i]);
            s += ph * gw[i] * f(y) * std::pow(std::abs(x - y), -gamma);
        }
    return s;
}

// Quadratic Lagrange basis on the half-step lattice of [a, b] with M cells; j = 0..2M.
struct Basis1D {
    double a, b;
    std::size_t M;

    double h() const { return (b - a) / static_cast<double>(M); }
    double point(std::size_t j) const { return a + 0.5 * h() * static_cast<double>(j); }

    // Storage index (integers first, then halves) to lattice index.
    std::size_t lattice(std::size_t k) const { return k + 1 < M ? 2 * (k + 1) : 2 * (k - (M - 1)) + 1; }

    // Cells (l) in the support of basis j and the local shape on each.
    double value(std::size_t j, std::size_t cell, double y) const
    {
        const double s = (y - (a + h() * static_cast<double>(cell))) / h();
        const long rel = static_cast<long>(j) - 2 * static_cast<long>(cell);
        if (rel == 0) return (1 - s) * (1 - 2 * s);
        if (rel == 1) return 4 * s * (1 - s);
        if (rel == 2) return s * (2 * s - 1);
        return 0.0;
    }
    std::vector<std::size_t> support(std::size_t j) const
    {
        std::vector<std::size_t> cells;
        const long c0 = (static_cast<long>(j) - 2 + 1) / 2;  // ceil((j-2)/2)
        for (long c = std::max(0L, c0); c <= static_cast<long>(j) / 2 && c < static_cast<long>(M); ++c)
            if (static_cast<long>(j) - 2 * c >= 0 && static_cast<long>(j) - 2 * c <= 2) cells.push_back(static_cast<std::size_t>(c));
        return cells;
    }
    double cell_lo(std::size_t c) const { return a + h() * static_cast<double>(c); }
};

// integral phi_j(y) |x - y|^{-gamma} dy
inline double basis_integral_1d(const Basis1D& B, std::size_t j, double x, double gamma)
{
    double s = 0.0;
    for (std::size_t c : B.support(j))
        s += integral_1d([&](double y) { return B.value(j, c, y); }, B.cell_lo(c), B.cell_lo(c) + B.h(), x, gamma);
    return s;
}

// integral over the rectangle [x0,x1]x[y0,y1] of f(q) |p - q|^{-gamma} dq where p is a corner
// and f restricted to any ray from p is a polynomial of degree <= 4.
// With polynomial = false the radial integral uses geometric Gauss panels toward p, so any f smooth on the
// rectangle and vanishing at p is allowed.
inline double corner_rect(const Fn2& f, double px, double py, double ex, double ey, double gamma,
                          bool polynomial = true)
{
    // ex, ey: signed extents from the corner
    const double Lx = std::abs(ex), Ly = std::abs(ey);
    if (Lx == 0.0 || Ly == 0.0) return 0.0;
    const double sx = ex > 0 ? 1.0 : -1.0, sy = ey > 0 ? 1.0 : -1.0;
    const auto& [gx, gw] = gauss20();
    auto radial = [&](double c, double s, double R) {
        if (!polynomial) {
            double v = 0.0;
            double hi = R;
            for (int k = 0; k < 48; ++k) {
                const double lo = 0.5 * hi;
                for (std::size_t i = 0; i < gx.size(); ++i) {
                    const double r = lo + (hi - lo) * gx[i];
                    v += (hi - lo) * gw[i] * f(px + sx * r * c, py + sy * r * s) * std::pow(r, 1.0 - gamma);
                }
                hi = lo;
            }
            return v;
        }
        const auto a = fit_quartic([&](double r) { return f(px + sx * r * c, py + sy * r * s); }, R);
        double v = 0.0;
        for (int k = 0; k < 5; ++k) v += a(k) / (k + 2.0 - gamma);
        return v * std::pow(R, 2.0 - gamma);
    };
    double total = 0.0;
    // theta in [0, atan(Ly/Lx)]: t = tan(theta), R = Lx sqrt(1+t^2)
    // theta in [atan(Ly/Lx), pi/2]: t = cot(theta), R = Ly sqrt(1+t^2)
    for (int part = 0; part < 2; ++part) {
        const double tmax = part == 0 ? Ly / Lx : Lx / Ly;
        const int panels = std::max(1, static_cast<int>(std::ceil(tmax / 0.125)));
        const double ph = tmax / panels;
        for (int p = 0; p < panels; ++p)
            for (std::size_t i = 0; i < gx.size(); ++i) {
                const double t = ph * (p + gx[i]);
                const double q = std::sqrt(1.0 + t * t);
                const double c = part == 0 ? 1.0 / q : t / q;
                const double s = part == 0 ? t / q : 1.0 / q;
                const double R = (part == 0 ? Lx : Ly) * q;
                total += ph * gw[i] / (1.0 + t * t) * radial(c, s, R);
            }
    }
    return total;
}

// integral over a rectangle of f(q) |p - q|^{-gamma} dq, f biquadratic (or smoother away from p).
inline double rect_integral(const Fn2& f, double x0, double x1, double y0, double y1, double px, double py, double gamma,
                            bool polynomial = true)
{
    if (px >= x0 && px <= x1 && py >= y0 && py <= y1)
        return corner_rect(f, px, py, x1 - px, y1 - py, gamma, polynomial) +
               corner_rect(f, px, py, x0 - px, y1 - py, gamma, polynomial) +
               corner_rect(f, px, py, x1 - px, y0 - py, gamma, polynomial) +
               corner_rect(f, px, py, x0 - px, y0 - py, gamma, polynomial);
    const auto& [gx, gw] = gauss20();
    const int panels = 6;
    const double hx = (x1 - x0) / panels, hy = (y1 - y0) / panels;
    double s = 0.0;
    for (int a = 0; a < panels; ++a)
        for (int b = 0; b < panels; ++b)
            for (std::size_t i = 0; i < gx.size(); ++i)
                for (std::size_t j = 0; j < gx.size(); ++j) {
                    const double x = x0 + hx * (a + gx[i]), y = y0 + hy * (b + gx[j]);
                    s += hx * hy * gw[i] * gw[j] * f(x, y) * std::pow(std::hypot(x - px, y - py), -gamma);
                }
    return s;
}

// integral over the domain of (g(p) - g(q)) |p - q|^{-gamma} dq for g with degree <= 4 along rays.
inline double additive_action(const Fn2& g, double a, double b, double c, double d, double px, double py, double gamma,
                              bool polynomial = true)
{
    const double gp = g(px, py);
    return rect_integral([&](double x, double y) { return gp - g(x, y); }, a, b, c, d, px, py, gamma, polynomial);
}

inline std::vector<double> random_vector(std::size_t n, unsigned seed)
{
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    std::vector<double> v(n);
    for (double& x : v) x = U(rng);
    return v;
}

inline double max_abs(std::span<const double> v)
{
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

inline double max_abs_diff(std::span<const double> a, std::span<const double> b)
{
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace oracle
