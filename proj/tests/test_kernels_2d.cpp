#include <doctest.h>

#include <cmath>
#include <set>

#include "nonlocal/additive2d.hpp"
#include "nonlocal/multiplicative2d.hpp"
#include "oracles.hpp"

using namespace nonlocal;

namespace {

double rel_inf(std::span<const double> a, std::span<const double> b)
{
    return oracle::max_abs_diff(a, b) / oracle::max_abs(b);
}

std::vector<double> matvec(const Eigen::MatrixXd& A, const std::vector<double>& u)
{
    const Eigen::VectorXd y = A * Eigen::Map<const Eigen::VectorXd>(u.data(), static_cast<Eigen::Index>(u.size()));
    return {y.data(), y.data() + y.size()};
}

ToeplitzSymbol random_symbol(std::size_t r, std::size_t c, unsigned seed)
{
    auto col = oracle::random_vector(r, seed), row = oracle::random_vector(c, seed + 7);
    row[0] = col[0];
    return ToeplitzSymbol(col, row);
}

InnerBlock random_block(std::size_t My, unsigned seed)
{
    return {random_symbol(My - 1, My - 1, seed), random_symbol(My - 1, My, seed + 1), random_symbol(My, My - 1, seed + 2),
            random_symbol(My, My, seed + 3)};
}

Eigen::MatrixXd dense_inner(const InnerBlock& b, std::size_t My)
{
    const std::size_t n = 2 * My - 1, m = My - 1;
    Eigen::MatrixXd B(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i < m && j < m) B(i, j) = b.tm(i, j);
            else if (i < m) B(i, j) = b.tq(i, j - m);
            else if (j < m) B(i, j) = b.tp(i - m, j);
            else B(i, j) = b.tn(i - m, j - m);
        }
    return B;
}

Eigen::MatrixXd dense_families(const std::array<BlockToeplitzFamily, 4>& fam, std::size_t Mx, std::size_t My)
{
    const std::size_t ny = 2 * My - 1, n = (2 * Mx - 1) * ny;
    Eigen::MatrixXd G = Eigen::MatrixXd::Zero(n, n);
    const std::size_t row0[4] = {0, 0, Mx - 1, Mx - 1}, col0[4] = {0, Mx - 1, 0, Mx - 1};
    for (int f = 0; f < 4; ++f)
        for (std::size_t i = 0; i < fam[f].rows; ++i)
            for (std::size_t l = 0; l < fam[f].cols; ++l)
                G.block((row0[f] + i) * ny, (col0[f] + l) * ny, ny, ny) = dense_inner(fam[f].block(i, l), My);
    return G;
}

std::array<BlockToeplitzFamily, 4> random_families(std::size_t Mx, std::size_t My, unsigned seed)
{
    const std::size_t shape[4][2] = {{Mx - 1, Mx - 1}, {Mx - 1, Mx}, {Mx, Mx - 1}, {Mx, Mx}};
    std::array<BlockToeplitzFamily, 4> fam;
    for (int f = 0; f < 4; ++f) {
        fam[f].rows = shape[f][0];
        fam[f].cols = shape[f][1];
        for (std::size_t k = 0; k + 1 < fam[f].rows + fam[f].cols; ++k)
            fam[f].blocks.push_back(random_block(My, seed + static_cast<unsigned>(100 * f + 10 * k)));
    }
    return fam;
}

// G entry of the additive operator from the oracle: integral of the tensor basis against the kernel.
double additive_g_oracle(const Grid2D& G, std::size_t row, std::size_t col, double gamma)
{
    const std::size_t ny = G.gy.unknowns();
    const oracle::Basis1D Bx{G.gx.a(), G.gx.b(), G.gx.M()}, By{G.gy.a(), G.gy.b(), G.gy.M()};
    const double px = G.gx.node(row / ny), py = G.gy.node(row % ny);
    const std::size_t jx = Bx.lattice(col / ny), jy = By.lattice(col % ny);
    double s = 0.0;
    for (std::size_t cx : Bx.support(jx))
        for (std::size_t cy : By.support(jy))
            s += oracle::rect_integral([&](double x, double y) { return Bx.value(jx, cx, x) * By.value(jy, cy, y); },
                                       Bx.cell_lo(cx), Bx.cell_lo(cx) + Bx.h(), By.cell_lo(cy), By.cell_lo(cy) + By.h(),
                                       px, py, gamma);
    return s;
}

}  // namespace

TEST_CASE("multiplicative operator equals Dx(x)Dy - Gx(x)Gy built from 1D integrals")
{
    for (double g : {0.2, 0.5, 0.8}) {
        const CollocationGrid gx(0.0, 2.0, 3), gy(-1.0, 0.5, 4);
        const MultiplicativeOperator2D op(Grid2D{gx, gy}, WeaklySingularKernel(g));
        const oracle::Basis1D Bx{0.0, 2.0, 3}, By{-1.0, 0.5, 4};
        const std::size_t nx = gx.unknowns(), ny = gy.unknowns();
        Eigen::MatrixXd ref(nx * ny, nx * ny);
        for (std::size_t i = 0; i < nx; ++i)
            for (std::size_t j = 0; j < ny; ++j)
                for (std::size_t l = 0; l < nx; ++l)
                    for (std::size_t r = 0; r < ny; ++r) {
                        const double gxv = oracle::basis_integral_1d(Bx, Bx.lattice(l), gx.node(i), g);
                        const double gyv = oracle::basis_integral_1d(By, By.lattice(r), gy.node(j), g);
                        double v = -gxv * gyv;
                        if (i == l && j == r) v += kernel_mass(gx.node(i), 0.0, 2.0, g) * kernel_mass(gy.node(j), -1.0, 0.5, g);
                        ref(i * ny + j, l * ny + r) = v;
                    }
        const Eigen::MatrixXd A = op.dense();
        CHECK((A - ref).cwiseAbs().maxCoeff() / ref.cwiseAbs().maxCoeff() < 1e-10);
        for (std::size_t i = 0; i < nx; ++i)
            for (std::size_t j = 0; j < ny; ++j) CHECK(std::abs(op.diagonal(i, j) - ref(i * ny + j, i * ny + j)) < 1e-12);
    }
}

TEST_CASE("Kronecker fast path matches the dense expansion")
{
    for (double g : {0.2, 0.5, 0.8})
        for (auto [mx, my] : {std::pair<std::size_t, std::size_t>{2, 2}, {3, 5}, {8, 8}, {8, 4}}) {
            const MultiplicativeOperator2D op(Grid2D{CollocationGrid(0, 2, mx), CollocationGrid(0, 1, my)},
                                              WeaklySingularKernel(g));
            const auto u = oracle::random_vector(op.size(), 21);
            std::vector<double> y(op.size());
            op.apply(u, y);
            CHECK(rel_inf(y, matvec(op.dense(), u)) < 1e-12);
        }
}

TEST_CASE("multiplicative boundary vector: exact action on biquadratic data")
{
    for (double g : {0.2, 0.5, 0.8}) {
        const double a = 0.0, b = 2.0;
        const CollocationGrid cg(a, b, 4);
        const MultiplicativeOperator2D op(Grid2D{cg, cg}, WeaklySingularKernel(g));
        auto X = [](double x) { return 1.0 + x - 0.7 * x * x; };
        auto Y = [](double y) { return 0.3 - 2.0 * y + y * y; };
        const std::size_t m = cg.unknowns();
        std::vector<double> U(op.size()), AU(op.size());
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) U[i * m + j] = X(cg.node(i)) * Y(cg.node(j)) + 2.5;
        op.apply(U, AU);
        const auto K = op.boundary_vector([&](double x, double y) { return X(x) * Y(y) + 2.5; });
        double worst = 0.0;
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) {
                const double x = cg.node(i), y = cg.node(j);
                const double Ix = kernel_mass(x, a, b, g), Iy = kernel_mass(y, a, b, g);
                const double Sx = oracle::integral_1d(X, a, b, x, g), Sy = oracle::integral_1d(Y, a, b, y, g);
                const double exact = X(x) * Y(y) * Ix * Iy - Sx * Sy;
                worst = std::max(worst, std::abs(AU[i * m + j] - K[i * m + j] - exact));
            }
        CHECK(worst < 1e-11);
    }
}

TEST_CASE("multiplicative: strict dominance and diagonal bound at small sizes")
{
    for (double g : {0.2, 0.5, 0.8})
        for (std::size_t M = 2; M <= 6; ++M) {
            const double a = 0.0, b = 2.0, c = 0.0, d = 1.5;
            const MultiplicativeOperator2D op(Grid2D{CollocationGrid(a, b, M), CollocationGrid(c, d, M)},
                                              WeaklySingularKernel(g));
            const Eigen::MatrixXd A = op.dense();
            const double Cd = 4 * std::pow(b - a, 1 - g) * std::pow(d - c, 1 - g) / ((1 - g) * (1 - g));
            for (Eigen::Index r = 0; r < A.rows(); ++r) {
                const double off = A.row(r).cwiseAbs().sum() - std::abs(A(r, r));
                CHECK(A(r, r) - off > 0.0);
                CHECK(A(r, r) <= Cd);
            }
        }
}

TEST_CASE("inner circulant: block row layout at My = 2")
{
    const std::size_t My = 2;
    const InnerBlock b = random_block(My, 31);
    const auto c = inner_circulant_column(b, My, Filler::Displayed);
    REQUIRE(c.size() == 9 * My);
    const std::size_t n = c.size();
    auto C = [&](std::size_t i, std::size_t j) { return c[(i + n - j) % n]; };
    // block row 0 = [S1 TM S2 TQ S3 TP S4 TN S5]; each T is the My x My Toeplitz matrix of its symbol
    // continued by zeros
    auto extended = [](const ToeplitzSymbol& t, std::size_t i, std::size_t j) {
        if (i >= j) return i - j < t.rows() ? t.first_col[i - j] : 0.0;
        return j - i < t.cols() ? t.first_row[j - i] : 0.0;
    };
    for (std::size_t i = 0; i < My; ++i)
        for (std::size_t j = 0; j < My; ++j) {
            CHECK(C(i, 1 * My + j) == extended(b.tm, i, j));
            CHECK(C(i, 3 * My + j) == extended(b.tq, i, j));
            CHECK(C(i, 5 * My + j) == extended(b.tp, i, j));
            CHECK(C(i, 7 * My + j) == b.tn(i, j));
            if (i + 1 < My && j + 1 < My) CHECK(extended(b.tm, i, j) == b.tm(i, j));
        }
    // S1: zero diagonal, strict lower triangle from T_M's first column
    for (std::size_t i = 0; i < My; ++i) CHECK(C(i, i) == 0.0);
    for (std::size_t d = 1; d < My; ++d) CHECK(C(d, 0) == (d < b.tm.rows() ? b.tm.first_col[d] : 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) CHECK(C(i, j) == C((i + 1) % n, (j + 1) % n));
}

TEST_CASE("filler blocks never reach the extracted slots")
{
    for (std::size_t My : {2, 3, 5}) {
        const InnerBlock b = random_block(My, 41);
        auto c = inner_circulant_column(b, My, Filler::Displayed);
        const std::size_t n = c.size();
        const long my = static_cast<long>(My);
        std::set<std::size_t> t_entries;
        for (long s = 1; s <= 7; s += 2)
            for (long d = -my + 1; d < my; ++d) t_entries.insert(static_cast<std::size_t>(((d - s * my) % (9 * my) + 9 * my) % (9 * my)));
        auto slot_product = [&](const std::vector<double>& col, const std::vector<double>& w, const std::vector<double>& v) {
            std::vector<double> x(n, 0.0), y(n, 0.0);
            for (std::size_t j = 0; j + 1 < My; ++j) x[kSlotW * My + j] = w[j];
            for (std::size_t j = 0; j < My; ++j) x[kSlotV * My + j] = v[j];
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) y[i] += col[(i + n - j) % n] * x[j];
            std::vector<double> out;
            for (std::size_t j = 0; j + 1 < My; ++j) out.push_back(y[kSlotTop * My + j]);
            for (std::size_t j = 0; j < My; ++j) out.push_back(y[kSlotBottom * My + j]);
            return out;
        };
        const auto w = oracle::random_vector(My - 1, 1), v = oracle::random_vector(My, 2);
        const auto base = slot_product(c, w, v);
        // the slots reproduce [T_M w + T_Q v; T_P w + T_N v]
        std::vector<double> wv(w);
        wv.insert(wv.end(), v.begin(), v.end());
        const auto direct = matvec(dense_inner(b, My), wv);
        CHECK(oracle::max_abs_diff(base, direct) < 1e-13);
        // randomize every non-T entry
        const auto noise = oracle::random_vector(n, 99);
        for (std::size_t k = 0; k < n; ++k)
            if (!t_entries.count(k)) c[k] = 10.0 * noise[k];
        CHECK(oracle::max_abs_diff(slot_product(c, w, v), base) < 1e-13);
    }
}

TEST_CASE("BTCB operator matches the dense block-Toeplitz product for random families")
{
    for (auto [mx, my] : {std::pair<std::size_t, std::size_t>{2, 2}, {2, 3}, {3, 2}, {4, 4}, {5, 3}}) {
        const auto fam = random_families(mx, my, 7);
        const auto G = dense_families(fam, mx, my);
        const auto u = oracle::random_vector(G.rows(), 8);
        for (Filler f : {Filler::Displayed, Filler::Zero}) {
            const BtcbOperator op(fam, mx, my, f);
            std::vector<double> y(op.size());
            op.apply(u, y);
            CHECK(rel_inf(y, matvec(G, u)) < 1e-12);
        }
        std::vector<double> y1(G.rows()), y2(G.rows());
        BtcbOperator(fam, mx, my, Filler::Displayed).apply(u, y1);
        BtcbOperator(fam, mx, my, Filler::Zero).apply(u, y2);
        CHECK(rel_inf(y1, y2) < 1e-13);
    }
}

TEST_CASE("additive G entries equal tensor basis integrals")
{
    for (double g : {0.2, 0.5, 0.8})
        for (auto [mx, my] : {std::pair<std::size_t, std::size_t>{2, 2}, {2, 3}}) {
            const Grid2D G{CollocationGrid(0.0, 1.0, mx), CollocationGrid(0.0, 1.5, my)};
            const AdditiveOperator2D op(G, WeaklySingularKernel(g));
            double worst = 0.0;
            for (std::size_t r = 0; r < op.size(); ++r)
                for (std::size_t c = 0; c < op.size(); ++c) {
                    const double ref = additive_g_oracle(G, r, c, g);
                    worst = std::max(worst, std::abs(op.g_entry(r, c) - ref) / std::abs(ref));
                }
            CAPTURE(g);
            CAPTURE(mx);
            CHECK(worst < 1e-10);
            for (std::size_t k = 0; k < op.size(); ++k) {
                const std::size_t ny = G.gy.unknowns();
                const double px = G.gx.node(k / ny), py = G.gy.node(k % ny);
                const double mass = oracle::rect_integral([](double, double) { return 1.0; }, 0.0, 1.0, 0.0, 1.5, px, py, g);
                CHECK(std::abs(op.diagonal(k) - mass) < 1e-11 * mass);
            }
        }
}

TEST_CASE("additive fast path matches dense assembly")
{
    for (double g : {0.2, 0.5, 0.8})
        for (auto [mx, my] : {std::pair<std::size_t, std::size_t>{2, 2}, {3, 2}, {4, 5}, {8, 8}}) {
            const AdditiveOperator2D op(Grid2D{CollocationGrid(0, 1, mx), CollocationGrid(0, 1.5, my)}, WeaklySingularKernel(g));
            const auto u = oracle::random_vector(op.size(), 5);
            std::vector<double> y(op.size()), yg(op.size());
            op.apply(u, y);
            op.apply_g(u, yg);
            const Eigen::MatrixXd A = op.dense();
            CHECK(rel_inf(y, matvec(A, u)) < 1e-12);
            Eigen::MatrixXd Gd = -A;
            for (std::size_t k = 0; k < op.size(); ++k) Gd(k, k) += op.diagonal(k);
            CHECK(rel_inf(yg, matvec(Gd, u)) < 1e-12);
        }
}

TEST_CASE("additive boundary vector: exact action on biquadratic data")
{
    for (double g : {0.2, 0.5, 0.8}) {
        const Grid2D G{CollocationGrid(0.0, 1.0, 3), CollocationGrid(0.0, 1.0, 4)};
        const AdditiveOperator2D op(G, WeaklySingularKernel(g));
        auto u = [](double x, double y) { return (1.0 + x - 2.0 * x * x) * (0.5 - y + 3.0 * y * y) - 1.0; };
        const std::size_t ny = G.gy.unknowns();
        std::vector<double> U(op.size()), AU(op.size());
        for (std::size_t k = 0; k < op.size(); ++k) U[k] = u(G.gx.node(k / ny), G.gy.node(k % ny));
        op.apply(U, AU);
        const auto K = op.boundary_vector(u);
        const auto lib = additive_nonlocal_action(G, g, u);
        double worst = 0.0, worst_lib = 0.0;
        for (std::size_t k = 0; k < op.size(); ++k) {
            const double exact = oracle::additive_action(u, 0, 1, 0, 1, G.gx.node(k / ny), G.gy.node(k % ny), g);
            worst = std::max(worst, std::abs(AU[k] - K[k] - exact));
            worst_lib = std::max(worst_lib, std::abs(lib[k] - exact));
        }
        CHECK(worst < 1e-11);
        CHECK(worst_lib < 1e-11);
        std::vector<double> one(op.size(), 1.0), A1(op.size());
        op.apply(one, A1);
        CHECK(oracle::max_abs_diff(A1, op.boundary_vector([](double, double) { return 1.0; })) < 1e-12);
    }
}

TEST_CASE("additive source for a non-polynomial solution")
{
    const double g = 0.5;
    const Grid2D G{CollocationGrid(0.0, 1.0, 4), CollocationGrid(0.0, 1.0, 4)};
    auto u = [](double x, double y) { return std::exp(2 * x + 4 * y) * (std::sin(2 * x) + std::cos(4 * y)) + 1.0; };
    const auto lib = additive_nonlocal_action(G, g, u);
    const std::size_t ny = G.gy.unknowns();
    for (std::size_t k : {0ul, 10ul, 24ul, 48ul}) {
        const double exact = oracle::additive_action(u, 0, 1, 0, 1, G.gx.node(k / ny), G.gy.node(k % ny), g, false);
        CHECK(std::abs(lib[k] - exact) < 1e-9 * std::max(1.0, std::abs(exact)));
    }
}

TEST_CASE("additive: dominance, diagonal bound, block structure")
{
    for (double g : {0.2, 0.5, 0.8}) {
        const double a = 0.0, b = 1.0, c = 0.0, d = 1.0;
        const std::size_t M = 4;
        const AdditiveOperator2D op(Grid2D{CollocationGrid(a, b, M), CollocationGrid(c, d, M)}, WeaklySingularKernel(g));
        const Eigen::MatrixXd A = op.dense();
        const double Cd = 2 * (b - a) * std::pow(d - c, 1 - g) / (1 - g);
        for (Eigen::Index r = 0; r < A.rows(); ++r) {
            const double off = A.row(r).cwiseAbs().sum() - std::abs(A(r, r));
            CHECK(A(r, r) - off > 0.0);
            CHECK(A(r, r) > 0.0);
            CHECK(A(r, r) <= Cd);
        }
        // outer block-Toeplitz and inner diagonal shifts
        const std::size_t ny = 2 * M - 1, nm = M - 1;
        bool outer = true, inner = true, sym = true;
        auto same_kind = [nm](std::size_t p, std::size_t q) { return (p < nm) == (q < nm); };
        for (std::size_t i = 0; i + 1 < ny; ++i)
            for (std::size_t l = 0; l + 1 < ny; ++l) {
                if (!same_kind(i, i + 1) || !same_kind(l, l + 1)) continue;
                for (std::size_t j = 0; j < ny; ++j)
                    for (std::size_t r = 0; r < ny; ++r)
                        if (op.g_entry(i * ny + j, l * ny + r) != op.g_entry((i + 1) * ny + j, (l + 1) * ny + r)) outer = false;
            }
        for (std::size_t i = 0; i < ny; ++i)
            for (std::size_t l = 0; l < ny; ++l)
                for (std::size_t j = 0; j + 1 < ny; ++j)
                    for (std::size_t r = 0; r + 1 < ny; ++r) {
                        if (!same_kind(j, j + 1) || !same_kind(r, r + 1)) continue;
                        if (op.g_entry(i * ny + j, l * ny + r) != op.g_entry(i * ny + j + 1, l * ny + r + 1)) inner = false;
                    }
        for (int f : {0, 3})
            for (long lag = 1; lag < static_cast<long>(op.families()[f].rows); ++lag) {
                const InnerBlock p = op.inner_block(f, lag), q = op.inner_block(f, -lag);
                const Eigen::MatrixXd bp = dense_inner(p, M), bq = dense_inner(q, M);
                if ((bp - bq).cwiseAbs().maxCoeff() > 1e-13 * bp.cwiseAbs().maxCoeff()) sym = false;
            }
        CHECK(outer);
        CHECK(inner);
        CHECK(sym);
    }
}

TEST_CASE("element table rejects offsets outside the grid")
{
    const Grid2D G{CollocationGrid(0, 1, 3), CollocationGrid(0, 1, 3)};
    const ElementTable t(G, 0.5, QuadratureSpec{});
    CHECK_NOTHROW(t(0, 0, 1, 1));
    CHECK_THROWS_AS(t(0, 0, 100, 1), std::out_of_range);
}
