#include "nonlocal/coefficients.hpp"

#include <cmath>
#include <initializer_list>
#include <stdexcept>

namespace nonlocal {

namespace {

// w * (x + shift)^(a - drop)
struct PowerTerm {
    double w;
    double shift;
    int drop;
};

constexpr double kSeriesFrom = 4.0;

double direct(std::initializer_list<PowerTerm> terms, double x, double a)
{
    double s = 0.0;
    for (const auto& t : terms) s += t.w * std::pow(x + t.shift, a - t.drop);
    return s;
}

double generalized_binomial(double e, int j)
{
    double c = 1.0;
    for (int i = 0; i < j; ++i) c *= (e - i) / (i + 1);
    return c;
}

// Expand every term in powers of 1/x. All combinations used here decay like x^{a-3},
// so the coefficients of x^a, x^{a-1}, x^{a-2} vanish identically and are skipped.
double series(std::initializer_list<PowerTerm> terms, double x, double a)
{
    const double inv = 1.0 / x;
    double sum = 0.0;
    double scale = std::pow(x, a - 3.0);
    int quiet = 0;
    for (int p = 3; p < 200; ++p) {
        double c = 0.0;
        for (const auto& t : terms) {
            int j = p - t.drop;
            if (j < 0) continue;
            if (t.shift == 0.0) {
                if (j == 0) c += t.w;
                continue;
            }
            c += t.w * generalized_binomial(a - t.drop, j) * std::pow(t.shift, j);
        }
        double term = c * scale;
        sum += term;
        quiet = std::abs(term) <= 1e-18 * std::abs(sum) ? quiet + 1 : 0;
        if (quiet == 3) break;
        scale *= inv;
    }
    return sum;
}

double evaluate(std::initializer_list<PowerTerm> terms, double x, double a)
{
    return x < kSeriesFrom ? direct(terms, x, a) : series(terms, x, a);
}

}  // namespace

double eta_h_gamma(double h, double gamma)
{
    return std::pow(h, 1.0 - gamma) / ((3.0 - gamma) * (2.0 - gamma) * (1.0 - gamma));
}

double m_scaled(double x, double gamma)
{
    const double a = 3.0 - gamma;
    return evaluate({{4.0, 1.0, 0}, {-4.0, -1.0, 0}, {-a, 1.0, 1}, {-6.0 * a, 0.0, 1}, {-a, -1.0, 1}}, x, a);
}

double q_scaled(double x, double gamma)
{
    const double a = 3.0 - gamma;
    return evaluate({{-8.0, 1.0, 0}, {8.0, 0.0, 0}, {4.0 * a, 1.0, 1}, {4.0 * a, 0.0, 1}}, x, a);
}

double beta_scaled(double x, double gamma)
{
    const double a = 3.0 - gamma;
    return evaluate(
        {{4.0, 0.0, 0}, {-4.0, -1.0, 0}, {-3.0 * a, 0.0, 1}, {-a, -1.0, 1}, {a * (a - 1.0), 0.0, 2}}, x, a);
}

double p0_scaled(double gamma)
{
    const double a = 3.0 - gamma;
    return 4.0 * (std::pow(1.5, a) + std::pow(0.5, a)) - a * (std::pow(1.5, a - 1.0) + 7.0 * std::pow(0.5, a - 1.0));
}

double n0_scaled(double gamma)
{
    return (2.0 - gamma) * std::pow(2.0, gamma + 1.0);
}

double gamma0_scaled(double gamma)
{
    return (2.0 - gamma) * (1.0 - gamma) * std::pow(2.0, gamma - 1.0);
}

double kernel_mass(double x, double a, double b, double gamma)
{
    const double e = 1.0 - gamma;
    return (std::pow(x - a, e) + std::pow(b - x, e)) / e;
}

CoefficientTable compute_coefficients(const CollocationGrid& grid, const WeaklySingularKernel& kernel)
{
    const std::size_t M = grid.M();
    const double g = kernel.gamma();
    if (M < 2) throw std::invalid_argument("coefficients require M >= 2");

    CoefficientTable t;
    const double eta = eta_h_gamma(grid.h(), g);
    t.eta_h_gamma = eta;

    t.m.resize(M - 1);
    t.p.resize(M - 1);
    t.q.resize(M - 1);
    t.beta.resize(M - 1);
    t.n.resize(M);
    t.gamma_bnd.resize(M);

    t.m[0] = 2.0 * (1.0 + g) * eta;
    t.p[0] = p0_scaled(g) * eta;
    t.n[0] = n0_scaled(g) * eta;
    t.gamma_bnd[0] = gamma0_scaled(g) * eta;
    for (std::size_t k = 1; k + 1 < M; ++k) {
        const double x = static_cast<double>(k);
        t.m[k] = m_scaled(x, g) * eta;
        t.p[k] = m_scaled(x + 0.5, g) * eta;
    }
    for (std::size_t k = 0; k + 1 < M; ++k) t.q[k] = q_scaled(static_cast<double>(k), g) * eta;
    for (std::size_t k = 1; k < M; ++k) t.n[k] = q_scaled(static_cast<double>(k) - 0.5, g) * eta;
    for (std::size_t i = 1; i < M; ++i) t.beta[i - 1] = beta_scaled(static_cast<double>(i), g) * eta;
    for (std::size_t i = 1; i < M; ++i) t.gamma_bnd[i] = beta_scaled(static_cast<double>(i) + 0.5, g) * eta;

    t.d_int.resize(2 * M - 1);
    for (std::size_t k = 0; k < 2 * M - 1; ++k) t.d_int[k] = kernel_mass(grid.node(k), grid.a(), grid.b(), g);
    return t;
}

}  // namespace nonlocal
