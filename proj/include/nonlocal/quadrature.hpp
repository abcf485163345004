#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace nonlocal {

struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Rules on [0, 1]. The Jacobi rule integrates u^alpha f(u).
const GaussRule& gauss_legendre01(std::size_t n);
const GaussRule& gauss_jacobi01(std::size_t n, double alpha);

struct QuadratureSpec {
    std::size_t far_order = 12;
    std::size_t singular_order = 16;
    // a rectangle is treated as smooth once dist(p, R) >= far_ratio * diam(R)
    double far_ratio = 1.0;
    int max_depth = 60;
};

class QuadratureError : public std::runtime_error {
public:
    explicit QuadratureError(const std::string& what) : std::runtime_error(what) {}
};

struct Rect {
    double x0, x1, y0, y1;
};

// Visits (x, y, w) such that sum w * f(x, y) approximates the integral over r of
// f(x, y) * ((x - px)^2 + (y - py)^2)^(-gamma/2) for f smooth on r.
using WeightedPointVisitor = std::function<void(double, double, double)>;
void integrate_weakly_singular(const Rect& r, double px, double py, double gamma, const QuadratureSpec& spec,
                               const WeightedPointVisitor& visit);

}  // namespace nonlocal
