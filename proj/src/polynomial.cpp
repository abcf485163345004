#include "nonlocal/polynomial.hpp"

#include <cmath>

namespace nonlocal {

double Polynomial::operator()(double x) const
{
    double s = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) s = s * x + *it;
    return s;
}

std::vector<double> Polynomial::taylor(double x0) const
{
    std::vector<double> t(c.size(), 0.0);
    for (std::size_t j = 0; j < c.size(); ++j) {
        double binom = 1.0;
        for (std::size_t k = 0; k <= j; ++k) {
            t[k] += c[j] * binom * std::pow(x0, static_cast<double>(j - k));
            binom = binom * static_cast<double>(j - k) / static_cast<double>(k + 1);
        }
    }
    return t;
}

Polynomial Polynomial::operator*(const Polynomial& o) const
{
    Polynomial r;
    if (c.empty() || o.c.empty()) return r;
    r.c.assign(c.size() + o.c.size() - 1, 0.0);
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = 0; j < o.c.size(); ++j) r.c[i + j] += c[i] * o.c[j];
    return r;
}

Polynomial Polynomial::operator+(double s) const
{
    Polynomial r = *this;
    if (r.c.empty()) r.c.push_back(0.0);
    r.c[0] += s;
    return r;
}

double nonlocal_remainder(const Polynomial& p, double x, double a, double b, double gamma)
{
    const std::vector<double> t = p.taylor(x);
    double s = 0.0;
    for (std::size_t k = 1; k < t.size(); ++k) {
        const double e = static_cast<double>(k) + 1.0 - gamma;
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        s += t[k] * (std::pow(b - x, e) + sign * std::pow(x - a, e)) / e;
    }
    return s;
}

}  // namespace nonlocal
