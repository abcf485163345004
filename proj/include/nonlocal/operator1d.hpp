#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

#include "nonlocal/coefficients.hpp"
#include "nonlocal/grid.hpp"

namespace nonlocal {

struct StructuredOperator1D {
    CollocationGrid grid;
    WeaklySingularKernel kernel;
    CoefficientTable coeffs;

    std::size_t size() const { return grid.unknowns(); }

    // Indices into the symbols for the two rectangular blocks.
    static std::size_t p_index(std::size_t row_half, std::size_t col_int)
    {
        return row_half > col_int ? row_half - col_int - 1 : col_int - row_half;
    }
    static std::size_t q_index(std::size_t row_int, std::size_t col_half)
    {
        return row_int >= col_half ? row_int - col_half : col_half - row_int - 1;
    }

    // Entries of G = [[M, Q], [P, N]] in storage order (all nonnegative).
    double g_entry(std::size_t r, std::size_t c) const;
    double entry(std::size_t r, std::size_t c) const;

    // Coefficient of the left / right boundary value in row r.
    double left_weight(std::size_t r) const;
    double right_weight(std::size_t r) const;

    std::size_t storage_doubles() const;
};

StructuredOperator1D assemble_operator(const CollocationGrid& grid, const WeaklySingularKernel& kernel);

std::vector<double> boundary_vector(const StructuredOperator1D& op, double u_left, double u_right);

Eigen::MatrixXd dense_matrix(const StructuredOperator1D& op);
Eigen::MatrixXd dense_g(const StructuredOperator1D& op);

}  // namespace nonlocal
