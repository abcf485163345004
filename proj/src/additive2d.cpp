#include "nonlocal/additive2d.hpp"

#include <cmath>
#include <stdexcept>

namespace nonlocal {

long lattice_position(std::size_t k, std::size_t M)
{
    return k + 1 < M ? 2 * static_cast<long>(k + 1) : 2 * static_cast<long>(k - (M - 1)) + 1;
}

NodeKind node_kind(std::size_t k, std::size_t M)
{
    return k + 1 < M ? NodeKind::Integer : NodeKind::Half;
}

namespace {

double shape(int b, double s)
{
    switch (b) {
    case 0: return (1.0 - s) * (1.0 - 2.0 * s);
    case 1: return 4.0 * s * (1.0 - s);
    default: return s * (2.0 * s - 1.0);
    }
}

// (shape, offset shift) pieces of a node's basis function: the collocation point's
// offset from the supporting cell's corner is dx + shift.
struct Piece {
    int shape;
    long shift;
};

std::size_t pieces(NodeKind k, Piece out[2])
{
    switch (k) {
    case NodeKind::Integer:
        out[0] = {2, 2};
        out[1] = {0, 0};
        return 2;
    case NodeKind::Half: out[0] = {1, 1}; return 1;
    case NodeKind::LeftEnd: out[0] = {0, 0}; return 1;
    default: out[0] = {2, 2}; return 1;
    }
}

}  // namespace

ElementTable::ElementTable(const Grid2D& grid, double gamma, const QuadratureSpec& spec)
    : ox_min_(3 - 2 * static_cast<long>(grid.gx.M())),
      oy_min_(3 - 2 * static_cast<long>(grid.gy.M())),
      nox_(4 * grid.gx.M() - 3),
      noy_(4 * grid.gy.M() - 3),
      data_(nox_ * noy_ * 9, 0.0)
{
    const double hx = grid.gx.h(), hy = grid.gy.h();
    const long oxmax = 2 * static_cast<long>(grid.gx.M()) - 1;
    const long oymax = 2 * static_cast<long>(grid.gy.M()) - 1;
    auto at = [&](long ox, long oy) {
        return data_.data() + ((static_cast<std::size_t>(ox - ox_min_) * noy_) + static_cast<std::size_t>(oy - oy_min_)) * 9;
    };
    for (long ox = 1; ox <= oxmax; ++ox) {
        for (long oy = 1; oy <= oymax; ++oy) {
            double acc[9] = {};
            integrate_weakly_singular({0.0, hx, 0.0, hy}, 0.5 * hx * static_cast<double>(ox), 0.5 * hy * static_cast<double>(oy),
                                      gamma, spec, [&](double x, double y, double w) {
                                          const double sx = x / hx, sy = y / hy;
                                          const double lx[3] = {shape(0, sx), shape(1, sx), shape(2, sx)};
                                          const double ly[3] = {shape(0, sy), shape(1, sy), shape(2, sy)};
                                          for (int a = 0; a < 3; ++a)
                                              for (int b = 0; b < 3; ++b) acc[a * 3 + b] += w * lx[a] * ly[b];
                                      });
            double* e = at(ox, oy);
            for (int k = 0; k < 9; ++k) e[k] = acc[k];
        }
    }
    // Reflection across the cell's midlines swaps the end shapes.
    for (long ox = ox_min_; ox <= oxmax; ++ox) {
        for (long oy = oy_min_; oy <= oymax; ++oy) {
            if (ox >= 1 && oy >= 1) continue;
            const bool fx = ox < 1, fy = oy < 1;
            const double* src = at(fx ? 2 - ox : ox, fy ? 2 - oy : oy);
            double* dst = at(ox, oy);
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b) dst[a * 3 + b] = src[(fx ? 2 - a : a) * 3 + (fy ? 2 - b : b)];
        }
    }
}

double ElementTable::cell_total(long ox, long oy) const
{
    const double* e = data_.data() + ((static_cast<std::size_t>(ox - ox_min_) * noy_) + static_cast<std::size_t>(oy - oy_min_)) * 9;
    double s = 0.0;
    for (int k = 0; k < 9; ++k) s += e[k];
    return s;
}

namespace {

double coefficient_from(const ElementTable& t, long dx, long dy, NodeKind kx, NodeKind ky)
{
    Piece px[2], py[2];
    const std::size_t nx = pieces(kx, px), ny = pieces(ky, py);
    double s = 0.0;
    for (std::size_t a = 0; a < nx; ++a)
        for (std::size_t b = 0; b < ny; ++b) s += t(px[a].shape, py[b].shape, dx + px[a].shift, dy + py[b].shift);
    return s;
}

InnerBlock make_inner_block(const ElementTable& t, std::size_t My, long dx, NodeKind kx)
{
    auto c = [&](long dy, NodeKind ky) { return coefficient_from(t, dx, dy, kx, ky); };
    const long my = static_cast<long>(My);
    std::vector<double> mc(My - 1), mr(My - 1), qc(My - 1), qr(My), pc(My), pr(My - 1), nc(My), nr(My);
    for (long d = 0; d < my - 1; ++d) {
        mc[d] = c(2 * d, NodeKind::Integer);
        mr[d] = c(-2 * d, NodeKind::Integer);
        qc[d] = c(2 * d + 1, NodeKind::Half);
        pr[d] = c(-2 * d - 1, NodeKind::Integer);
    }
    for (long d = 0; d < my; ++d) {
        qr[d] = c(1 - 2 * d, NodeKind::Half);
        pc[d] = c(2 * d - 1, NodeKind::Integer);
        nc[d] = c(2 * d, NodeKind::Half);
        nr[d] = c(-2 * d, NodeKind::Half);
    }
    return {ToeplitzSymbol(mc, mr), ToeplitzSymbol(qc, qr), ToeplitzSymbol(pc, pr), ToeplitzSymbol(nc, nr)};
}

std::array<BlockToeplitzFamily, 4> make_families(const ElementTable& t, std::size_t Mx, std::size_t My)
{
    // row x-kind, column x-kind and the lattice offset at block lag 0
    const std::size_t rows[4] = {Mx - 1, Mx - 1, Mx, Mx};
    const std::size_t cols[4] = {Mx - 1, Mx, Mx - 1, Mx};
    const long shift[4] = {0, 1, -1, 0};
    const NodeKind ck[4] = {NodeKind::Integer, NodeKind::Half, NodeKind::Integer, NodeKind::Half};
    std::array<BlockToeplitzFamily, 4> fam;
    for (int f = 0; f < 4; ++f) {
        fam[f].rows = rows[f];
        fam[f].cols = cols[f];
        for (long lag = -static_cast<long>(cols[f]) + 1; lag < static_cast<long>(rows[f]); ++lag)
            fam[f].blocks.push_back(make_inner_block(t, My, 2 * lag + shift[f], ck[f]));
    }
    return fam;
}

std::vector<double> make_diagonal(const ElementTable& t, const Grid2D& g)
{
    const std::size_t nx = g.gx.unknowns(), ny = g.gy.unknowns();
    const std::size_t Mx = g.gx.M(), My = g.gy.M();
    std::vector<double> d(nx * ny);
    for (std::size_t i = 0; i < nx; ++i) {
        const long pi = lattice_position(i, Mx);
        for (std::size_t j = 0; j < ny; ++j) {
            const long pj = lattice_position(j, My);
            double s = 0.0;
            for (std::size_t cx = 0; cx < Mx; ++cx)
                for (std::size_t cy = 0; cy < My; ++cy)
                    s += t.cell_total(pi - 2 * static_cast<long>(cx), pj - 2 * static_cast<long>(cy));
            d[i * ny + j] = s;
        }
    }
    return d;
}

}  // namespace

AdditiveOperator2D::AdditiveOperator2D(const Grid2D& grid, const WeaklySingularKernel& kernel,
                                       const QuadratureSpec& spec)
    : grid_(grid),
      gamma_(kernel.gamma()),
      table_(grid, kernel.gamma(), spec),
      diag_(make_diagonal(table_, grid)),
      families_(make_families(table_, grid.gx.M(), grid.gy.M())),
      btcb_(families_, grid.gx.M(), grid.gy.M())
{
}

double AdditiveOperator2D::coefficient(long dx, long dy, NodeKind kx, NodeKind ky) const
{
    return coefficient_from(table_, dx, dy, kx, ky);
}

double AdditiveOperator2D::g_entry(std::size_t row, std::size_t col) const
{
    const std::size_t ny = grid_.gy.unknowns();
    const std::size_t Mx = grid_.gx.M(), My = grid_.gy.M();
    const std::size_t i = row / ny, j = row % ny, l = col / ny, r = col % ny;
    return coefficient(lattice_position(i, Mx) - lattice_position(l, Mx), lattice_position(j, My) - lattice_position(r, My),
                       node_kind(l, Mx), node_kind(r, My));
}

double AdditiveOperator2D::entry(std::size_t row, std::size_t col) const
{
    return (row == col ? diag_[row] : 0.0) - g_entry(row, col);
}

InnerBlock AdditiveOperator2D::inner_block(int family, long lag) const
{
    const auto& f = families_.at(static_cast<std::size_t>(family));
    return f.blocks.at(static_cast<std::size_t>(lag + static_cast<long>(f.cols) - 1));
}

void AdditiveOperator2D::apply(std::span<const double> U, std::span<double> Y) const
{
    btcb_.apply(U, Y);
    for (std::size_t k = 0; k < Y.size(); ++k) Y[k] = diag_[k] * U[k] - Y[k];
}

std::vector<double> AdditiveOperator2D::boundary_vector(const BoundaryTrace& g) const
{
    const auto& gx = grid_.gx;
    const auto& gy = grid_.gy;
    const std::size_t nx = gx.unknowns(), ny = gy.unknowns();
    const long Lx = 2 * static_cast<long>(gx.M()), Ly = 2 * static_cast<long>(gy.M());
    auto kind = [](long pos, long last) {
        if (pos == 0) return NodeKind::LeftEnd;
        if (pos == last) return NodeKind::RightEnd;
        return pos % 2 == 0 ? NodeKind::Integer : NodeKind::Half;
    };

    std::vector<double> k(nx * ny, 0.0);
    for (std::size_t i = 0; i < nx; ++i) {
        const long pi = lattice_position(i, gx.M());
        for (std::size_t j = 0; j < ny; ++j) {
            const long pj = lattice_position(j, gy.M());
            double s = 0.0;
            for (long r = 0; r <= Ly; ++r) {
                const NodeKind ky = kind(r, Ly);
                const double yr = gy.point(static_cast<std::size_t>(r));
                s += coefficient(pi, pj - r, NodeKind::LeftEnd, ky) * g(gx.a(), yr);
                s += coefficient(pi - Lx, pj - r, NodeKind::RightEnd, ky) * g(gx.b(), yr);
            }
            for (long l = 1; l < Lx; ++l) {
                const NodeKind kx = kind(l, Lx);
                const double xl = gx.point(static_cast<std::size_t>(l));
                s += coefficient(pi - l, pj, kx, NodeKind::LeftEnd) * g(xl, gy.a());
                s += coefficient(pi - l, pj - Ly, kx, NodeKind::RightEnd) * g(xl, gy.b());
            }
            k[i * ny + j] = s;
        }
    }
    return k;
}

Eigen::MatrixXd AdditiveOperator2D::dense() const
{
    const auto n = static_cast<Eigen::Index>(size());
    Eigen::MatrixXd A(n, n);
    for (Eigen::Index r = 0; r < n; ++r)
        for (Eigen::Index c = 0; c < n; ++c)
            A(r, c) = entry(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
    return A;
}

std::size_t AdditiveOperator2D::storage_doubles() const
{
    return table_.storage_doubles() + diag_.size() + btcb_.storage_doubles();
}

std::vector<double> additive_nonlocal_action(const Grid2D& grid, double gamma,
                                             const std::function<double(double, double)>& g,
                                             const QuadratureSpec& spec)
{
    const auto& gx = grid.gx;
    const auto& gy = grid.gy;
    const std::size_t nx = gx.unknowns(), ny = gy.unknowns();
    std::vector<double> out(nx * ny);
    for (std::size_t i = 0; i < nx; ++i) {
        const double x = gx.node(i);
        for (std::size_t j = 0; j < ny; ++j) {
            const double y = gy.node(j);
            const double gp = g(x, y);
            double s = 0.0;
            auto visit = [&](double qx, double qy, double w) { s += w * (gp - g(qx, qy)); };
            integrate_weakly_singular({gx.a(), x, gy.a(), y}, x, y, gamma, spec, visit);
            integrate_weakly_singular({x, gx.b(), gy.a(), y}, x, y, gamma, spec, visit);
            integrate_weakly_singular({gx.a(), x, y, gy.b()}, x, y, gamma, spec, visit);
            integrate_weakly_singular({x, gx.b(), y, gy.b()}, x, y, gamma, spec, visit);
            out[i * ny + j] = s;
        }
    }
    return out;
}

}  // namespace nonlocal
