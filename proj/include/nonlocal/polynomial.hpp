#pragma once

#include <vector>

namespace nonlocal {

// Monomial-basis polynomial c_0 + c_1 x + ...
struct Polynomial {
    std::vector<double> c;

    double operator()(double x) const;
    // Taylor coefficients of the expansion about x0: p(y) = sum_k t_k (y - x0)^k.
    std::vector<double> taylor(double x0) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial operator+(double s) const;
};

// R(x) = integral over [a,b] of (p(y) - p(x)) |x-y|^{-gamma} dy, in closed form.
double nonlocal_remainder(const Polynomial& p, double x, double a, double b, double gamma);

}  // namespace nonlocal
