#pragma once

#include <Eigen/Dense>
#include <array>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "nonlocal/btcb.hpp"
#include "nonlocal/multiplicative2d.hpp"
#include "nonlocal/quadrature.hpp"

namespace nonlocal {

enum class NodeKind { Integer, Half, LeftEnd, RightEnd };

// Position of storage index k on the half-step lattice (1..2M-1) and its kind.
long lattice_position(std::size_t k, std::size_t M);
NodeKind node_kind(std::size_t k, std::size_t M);

// Integrals over one cell of a product of local quadratic shape functions
// (0: left end, 1: midpoint, 2: right end) against the additive kernel, indexed by
// the collocation point's offset from the cell's lower-left corner in half steps.
class ElementTable {
public:
    ElementTable(const Grid2D& grid, double gamma, const QuadratureSpec& spec);

    double operator()(int bx, int by, long ox, long oy) const
    {
        if (ox < ox_min_ || oy < oy_min_ || ox >= ox_min_ + static_cast<long>(nox_) ||
            oy >= oy_min_ + static_cast<long>(noy_))
            throw std::out_of_range("element offset outside the grid");
        return data_[((static_cast<std::size_t>(ox - ox_min_) * noy_) + static_cast<std::size_t>(oy - oy_min_)) * 9 +
                     static_cast<std::size_t>(bx * 3 + by)];
    }
    // Sum over all nine shape products (the kernel integral over the cell).
    double cell_total(long ox, long oy) const;
    std::size_t storage_doubles() const { return data_.size(); }

private:
    long ox_min_, oy_min_;
    std::size_t nox_, noy_;
    std::vector<double> data_;
};

class AdditiveOperator2D {
public:
    AdditiveOperator2D(const Grid2D& grid, const WeaklySingularKernel& kernel, const QuadratureSpec& spec = {});

    const Grid2D& grid() const { return grid_; }
    double gamma() const { return gamma_; }
    std::size_t size() const { return grid_.unknowns(); }

    // Weight of the node at lattice offset (-dx, -dy) from the collocation point.
    double coefficient(long dx, long dy, NodeKind kx, NodeKind ky) const;
    double g_entry(std::size_t row, std::size_t col) const;
    double entry(std::size_t row, std::size_t col) const;
    double diagonal(std::size_t k) const { return diag_[k]; }

    // Families M, Q, P, N in x, each block-Toeplitz with [[T_M, T_Q], [T_P, T_N]] blocks in y.
    InnerBlock inner_block(int family, long lag) const;
    const std::array<BlockToeplitzFamily, 4>& families() const { return families_; }

    void apply(std::span<const double> U, std::span<double> Y) const;
    void apply_g(std::span<const double> U, std::span<double> Y) const { btcb_.apply(U, Y); }
    std::vector<double> boundary_vector(const BoundaryTrace& g) const;

    Eigen::MatrixXd dense() const;
    std::size_t storage_doubles() const;

private:
    Grid2D grid_;
    double gamma_;
    ElementTable table_;
    std::vector<double> diag_;
    std::array<BlockToeplitzFamily, 4> families_;
    BtcbOperator btcb_;
};

// (L g)(p) = integral over the domain of (g(p) - g(q)) |p - q|^{-gamma} dq at every interior node.
std::vector<double> additive_nonlocal_action(const Grid2D& grid, double gamma,
                                             const std::function<double(double, double)>& g,
                                             const QuadratureSpec& spec = {});

}  // namespace nonlocal
