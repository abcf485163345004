#include "nonlocal/toeplitz.hpp"

#include <algorithm>
#include <stdexcept>

namespace nonlocal {

ToeplitzSymbol::ToeplitzSymbol(std::vector<double> col, std::vector<double> row)
    : first_col(std::move(col)), first_row(std::move(row))
{
    if (first_col.empty() || first_row.empty()) throw std::invalid_argument("empty Toeplitz symbol");
    if (first_col[0] != first_row[0]) throw std::invalid_argument("Toeplitz symbol corners disagree");
}

ToeplitzSymbol ToeplitzSymbol::symmetric(const std::vector<double>& c)
{
    return ToeplitzSymbol(c, c);
}

CirculantSpectrum circulant_spectrum(const ToeplitzSymbol& t, std::size_t L)
{
    if (L < t.rows() + t.cols() - 1) throw std::invalid_argument("circulant embedding too small");
    std::vector<double> c(L, 0.0);
    for (std::size_t k = 0; k < t.rows(); ++k) c[k] = t.first_col[k];
    for (std::size_t k = 1; k < t.cols(); ++k) c[L - k] = t.first_row[k];
    CirculantSpectrum s;
    s.embed_size = L;
    s.eigenvalues.resize(L / 2);
    RealFft(L).forward(c.data(), s.eigenvalues.data());
    return s;
}

std::vector<double> toeplitz_matvec(const ToeplitzSymbol& t, std::span<const double> x)
{
    if (x.size() != t.cols()) throw std::invalid_argument("toeplitz_matvec: dimension mismatch");
    const std::size_t L = next_pow2(2 * std::max(t.rows(), t.cols()));
    const CirculantSpectrum s = circulant_spectrum(t, L);
    RealFft rf(L);
    std::vector<double> buf(L, 0.0);
    std::copy(x.begin(), x.end(), buf.begin());
    std::vector<cplx> z(L / 2);
    rf.forward(buf.data(), z.data());
    RealFft::multiply_packed(z.data(), s.eigenvalues.data(), z.data(), L / 2);
    rf.backward(z.data(), buf.data());
    buf.resize(t.rows());
    return buf;
}

std::vector<double> dense_toeplitz_matvec(const ToeplitzSymbol& t, std::span<const double> x)
{
    if (x.size() != t.cols()) throw std::invalid_argument("dense_toeplitz_matvec: dimension mismatch");
    std::vector<double> y(t.rows(), 0.0);
    for (std::size_t i = 0; i < t.rows(); ++i)
        for (std::size_t j = 0; j < t.cols(); ++j) y[i] += t(i, j) * x[j];
    return y;
}

ToeplitzSymbol p_symbol(const StructuredOperator1D& op)
{
    const std::size_t M = op.grid.M();
    std::vector<double> col(M), row(M - 1);
    for (std::size_t i = 0; i < M; ++i) col[i] = op.coeffs.p[StructuredOperator1D::p_index(i, 0)];
    for (std::size_t j = 0; j + 1 < M; ++j) row[j] = op.coeffs.p[StructuredOperator1D::p_index(0, j)];
    return ToeplitzSymbol(std::move(col), std::move(row));
}

ToeplitzSymbol q_symbol(const StructuredOperator1D& op)
{
    const std::size_t M = op.grid.M();
    std::vector<double> col(M - 1), row(M);
    for (std::size_t i = 0; i + 1 < M; ++i) col[i] = op.coeffs.q[StructuredOperator1D::q_index(i, 0)];
    for (std::size_t j = 0; j < M; ++j) row[j] = op.coeffs.q[StructuredOperator1D::q_index(0, j)];
    return ToeplitzSymbol(std::move(col), std::move(row));
}

ToeplitzSymbol embed_rectangular(const ToeplitzSymbol& t)
{
    auto col = t.first_col;
    auto row = t.first_row;
    if (t.rows() == t.cols() + 1)
        row.push_back(0.0);
    else if (t.cols() == t.rows() + 1)
        col.push_back(0.0);
    else
        throw std::invalid_argument("embed_rectangular: unsupported shape");
    return ToeplitzSymbol(std::move(col), std::move(row));
}

FastOperator1D::FastOperator1D(StructuredOperator1D op)
    : op_(std::move(op)), rfft_(next_pow2(2 * op_.grid.M()))
{
    const std::size_t L = rfft_.length();
    sm_ = circulant_spectrum(ToeplitzSymbol::symmetric(op_.coeffs.m), L).eigenvalues;
    sn_ = circulant_spectrum(ToeplitzSymbol::symmetric(op_.coeffs.n), L).eigenvalues;
    sp_ = circulant_spectrum(embed_rectangular(p_symbol(op_)), L).eigenvalues;
    sq_ = circulant_spectrum(embed_rectangular(q_symbol(op_)), L).eigenvalues;
}

void FastOperator1D::apply_g(std::span<const double> u, std::span<double> y) const
{
    const std::size_t n = op_.size();
    if (u.size() != n || y.size() != n) throw std::invalid_argument("FastOperator1D: dimension mismatch");
    const std::size_t M = op_.grid.M();
    const std::size_t L = rfft_.length();
    const std::size_t H = L / 2;

    thread_local std::vector<double> buf;
    thread_local std::vector<cplx> w, v, top;
    buf.assign(L, 0.0);
    w.resize(H);
    v.resize(H);
    top.resize(H);

    std::copy(u.begin(), u.begin() + (M - 1), buf.begin());
    rfft_.forward(buf.data(), w.data());
    std::fill(buf.begin(), buf.end(), 0.0);
    std::copy(u.begin() + (M - 1), u.end(), buf.begin());
    rfft_.forward(buf.data(), v.data());

    RealFft::multiply_packed(sm_.data(), w.data(), top.data(), H);
    RealFft::multiply_add_packed(sq_.data(), v.data(), top.data(), H);
    rfft_.backward(top.data(), buf.data());
    std::copy(buf.begin(), buf.begin() + (M - 1), y.begin());

    RealFft::multiply_packed(sp_.data(), w.data(), top.data(), H);
    RealFft::multiply_add_packed(sn_.data(), v.data(), top.data(), H);
    rfft_.backward(top.data(), buf.data());
    std::copy(buf.begin(), buf.begin() + M, y.begin() + (M - 1));
}

void FastOperator1D::apply(std::span<const double> u, std::span<double> y) const
{
    apply_g(u, y);
    const auto& d = op_.coeffs.d_int;
    for (std::size_t k = 0; k < y.size(); ++k) y[k] = d[k] * u[k] - y[k];
}

std::size_t FastOperator1D::storage_doubles() const
{
    return op_.storage_doubles() + 2 * (sm_.size() + sq_.size() + sp_.size() + sn_.size());
}

std::vector<double> apply_operator_1d(const FastOperator1D& op, std::span<const double> u)
{
    std::vector<double> y(op.size());
    op.apply(u, y);
    return y;
}

}  // namespace nonlocal
