#include "nonlocal/operator1d.hpp"

namespace nonlocal {

double StructuredOperator1D::g_entry(std::size_t r, std::size_t c) const
{
    const std::size_t nm = grid.M() - 1;
    const bool row_int = r < nm;
    const bool col_int = c < nm;
    if (row_int && col_int) return coeffs.m[r > c ? r - c : c - r];
    if (!row_int && !col_int) {
        r -= nm;
        c -= nm;
        return coeffs.n[r > c ? r - c : c - r];
    }
    if (row_int) return coeffs.q[q_index(r, c - nm)];
    return coeffs.p[p_index(r - nm, c)];
}

double StructuredOperator1D::entry(std::size_t r, std::size_t c) const
{
    double v = -g_entry(r, c);
    if (r == c) v += coeffs.d_int[r];
    return v;
}

double StructuredOperator1D::left_weight(std::size_t r) const
{
    const std::size_t nm = grid.M() - 1;
    if (r < nm) return coeffs.beta[r];
    return coeffs.gamma_bnd[r - nm];
}

double StructuredOperator1D::right_weight(std::size_t r) const
{
    const std::size_t M = grid.M();
    const std::size_t nm = M - 1;
    if (r < nm) return coeffs.beta[M - 2 - r];
    return coeffs.gamma_bnd[M - 1 - (r - nm)];
}

std::size_t StructuredOperator1D::storage_doubles() const
{
    const auto& c = coeffs;
    return 1 + c.m.size() + c.n.size() + c.p.size() + c.q.size() + c.beta.size() + c.gamma_bnd.size() + c.d_int.size();
}

StructuredOperator1D assemble_operator(const CollocationGrid& grid, const WeaklySingularKernel& kernel)
{
    return StructuredOperator1D{grid, kernel, compute_coefficients(grid, kernel)};
}

std::vector<double> boundary_vector(const StructuredOperator1D& op, double u_left, double u_right)
{
    std::vector<double> k(op.size());
    for (std::size_t r = 0; r < k.size(); ++r) k[r] = op.left_weight(r) * u_left + op.right_weight(r) * u_right;
    return k;
}

Eigen::MatrixXd dense_g(const StructuredOperator1D& op)
{
    const auto n = static_cast<Eigen::Index>(op.size());
    Eigen::MatrixXd g(n, n);
    for (Eigen::Index r = 0; r < n; ++r)
        for (Eigen::Index c = 0; c < n; ++c) g(r, c) = op.g_entry(r, c);
    return g;
}

Eigen::MatrixXd dense_matrix(const StructuredOperator1D& op)
{
    Eigen::MatrixXd a = -dense_g(op);
    for (Eigen::Index r = 0; r < a.rows(); ++r) a(r, r) += op.coeffs.d_int[r];
    return a;
}

}  // namespace nonlocal
