#include "nonlocal/multiplicative2d.hpp"

#include <stdexcept>

namespace nonlocal {

void kron_apply_g(const FastOperator1D& ox, const FastOperator1D& oy, std::span<const double> U,
                  std::span<double> Y)
{
    const std::size_t nx = ox.size(), ny = oy.size();
    if (U.size() != nx * ny || Y.size() != nx * ny) throw std::invalid_argument("kron_apply: dimension mismatch");
    thread_local std::vector<double> V, col_in, col_out;
    V.resize(nx * ny);
    for (std::size_t i = 0; i < nx; ++i) oy.apply_g(U.subspan(i * ny, ny), std::span<double>(V).subspan(i * ny, ny));
    col_in.resize(nx);
    col_out.resize(nx);
    for (std::size_t j = 0; j < ny; ++j) {
        for (std::size_t i = 0; i < nx; ++i) col_in[i] = V[i * ny + j];
        ox.apply_g(col_in, col_out);
        for (std::size_t i = 0; i < nx; ++i) Y[i * ny + j] = col_out[i];
    }
}

void kron_apply(const FastOperator1D& ox, const FastOperator1D& oy, std::span<const double> U, std::span<double> Y)
{
    kron_apply_g(ox, oy, U, Y);
    const std::size_t nx = ox.size(), ny = oy.size();
    const auto& dx = ox.op().coeffs.d_int;
    const auto& dy = oy.op().coeffs.d_int;
    for (std::size_t i = 0; i < nx; ++i)
        for (std::size_t j = 0; j < ny; ++j) Y[i * ny + j] = dx[i] * dy[j] * U[i * ny + j] - Y[i * ny + j];
}

MultiplicativeOperator2D::MultiplicativeOperator2D(const Grid2D& grid, const WeaklySingularKernel& kernel)
    : grid_(grid), ox_(assemble_operator(grid.gx, kernel)), oy_(assemble_operator(grid.gy, kernel))
{
}

double MultiplicativeOperator2D::diagonal(std::size_t i, std::size_t j) const
{
    return ox_.op().coeffs.d_int[i] * oy_.op().coeffs.d_int[j] - ox_.op().g_entry(i, i) * oy_.op().g_entry(j, j);
}

std::vector<double> MultiplicativeOperator2D::boundary_vector(const BoundaryTrace& g) const
{
    const auto& gx = grid_.gx;
    const auto& gy = grid_.gy;
    const std::size_t nx = ox_.size(), ny = oy_.size();
    const double a = gx.a(), b = gx.b(), c = gy.a(), d = gy.b();

    std::vector<double> ga(ny), gb(ny), gc(nx), gd(nx);
    for (std::size_t j = 0; j < ny; ++j) {
        ga[j] = g(a, gy.node(j));
        gb[j] = g(b, gy.node(j));
    }
    for (std::size_t i = 0; i < nx; ++i) {
        gc[i] = g(gx.node(i), c);
        gd[i] = g(gx.node(i), d);
    }

    std::vector<double> sya(ny), syb(ny), sxc(nx), sxd(nx);
    oy_.apply_g(ga, sya);
    oy_.apply_g(gb, syb);
    ox_.apply_g(gc, sxc);
    ox_.apply_g(gd, sxd);
    const auto& py = oy_.op();
    const auto& px = ox_.op();
    for (std::size_t j = 0; j < ny; ++j) {
        sya[j] += py.left_weight(j) * g(a, c) + py.right_weight(j) * g(a, d);
        syb[j] += py.left_weight(j) * g(b, c) + py.right_weight(j) * g(b, d);
    }

    std::vector<double> k(nx * ny);
    for (std::size_t i = 0; i < nx; ++i) {
        const double lx = px.left_weight(i), rx = px.right_weight(i);
        for (std::size_t j = 0; j < ny; ++j)
            k[i * ny + j] = lx * sya[j] + rx * syb[j] + sxc[i] * py.left_weight(j) + sxd[i] * py.right_weight(j);
    }
    return k;
}

Eigen::MatrixXd MultiplicativeOperator2D::dense() const
{
    const Eigen::MatrixXd gxm = dense_g(ox_.op());
    const Eigen::MatrixXd gym = dense_g(oy_.op());
    const std::size_t nx = ox_.size(), ny = oy_.size();
    const auto& dx = ox_.op().coeffs.d_int;
    const auto& dy = oy_.op().coeffs.d_int;
    Eigen::MatrixXd A(nx * ny, nx * ny);
    for (std::size_t i = 0; i < nx; ++i)
        for (std::size_t l = 0; l < nx; ++l)
            A.block(i * ny, l * ny, ny, ny) = -gxm(i, l) * gym;
    for (std::size_t i = 0; i < nx; ++i)
        for (std::size_t j = 0; j < ny; ++j) A(i * ny + j, i * ny + j) += dx[i] * dy[j];
    return A;
}

}  // namespace nonlocal
