#pragma once

#include <cstddef>

namespace nonlocal {

class WeaklySingularKernel {
public:
    explicit WeaklySingularKernel(double gamma);

    double gamma() const { return gamma_; }
    double operator()(double r) const;

private:
    double gamma_;
};

class CollocationGrid {
public:
    CollocationGrid(double a, double b, std::size_t M);

    double a() const { return a_; }
    double b() const { return b_; }
    std::size_t M() const { return M_; }
    double h() const { return h_; }
    double length() const { return b_ - a_; }

    // x_{i/2}, i = 0..2M
    double point(std::size_t i) const;
    // interior unknown k in storage order: integers x_1..x_{M-1}, then halves x_{1/2}..x_{M-1/2}
    double node(std::size_t k) const;
    std::size_t unknowns() const { return 2 * M_ - 1; }

private:
    double a_, b_;
    std::size_t M_;
    double h_;
};

}  // namespace nonlocal
