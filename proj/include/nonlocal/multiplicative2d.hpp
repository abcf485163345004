#pragma once

#include <Eigen/Dense>
#include <functional>
#include <span>
#include <vector>

#include "nonlocal/toeplitz.hpp"

namespace nonlocal {

struct Grid2D {
    CollocationGrid gx;
    CollocationGrid gy;

    std::size_t unknowns() const { return gx.unknowns() * gy.unknowns(); }
};

using BoundaryTrace = std::function<double(double, double)>;

// y = (Dx (x) Dy - Gx (x) Gy) U with U stored x-major: U[i * ny + j].
void kron_apply(const FastOperator1D& ox, const FastOperator1D& oy, std::span<const double> U, std::span<double> Y);
void kron_apply_g(const FastOperator1D& ox, const FastOperator1D& oy, std::span<const double> U,
                  std::span<double> Y);

class MultiplicativeOperator2D {
public:
    MultiplicativeOperator2D(const Grid2D& grid, const WeaklySingularKernel& kernel);

    const Grid2D& grid() const { return grid_; }
    const FastOperator1D& x() const { return ox_; }
    const FastOperator1D& y() const { return oy_; }
    std::size_t size() const { return grid_.unknowns(); }

    void apply(std::span<const double> U, std::span<double> Y) const { kron_apply(ox_, oy_, U, Y); }
    double diagonal(std::size_t i, std::size_t j) const;
    std::vector<double> boundary_vector(const BoundaryTrace& g) const;

    Eigen::MatrixXd dense() const;

private:
    Grid2D grid_;
    FastOperator1D ox_, oy_;
};

}  // namespace nonlocal
