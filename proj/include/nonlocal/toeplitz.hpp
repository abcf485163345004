#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "nonlocal/fft.hpp"
#include "nonlocal/operator1d.hpp"

namespace nonlocal {

struct ToeplitzSymbol {
    std::vector<double> first_col;
    std::vector<double> first_row;

    ToeplitzSymbol(std::vector<double> col, std::vector<double> row);
    static ToeplitzSymbol symmetric(const std::vector<double>& c);

    std::size_t rows() const { return first_col.size(); }
    std::size_t cols() const { return first_row.size(); }
    double operator()(std::size_t i, std::size_t j) const { return i >= j ? first_col[i - j] : first_row[j - i]; }
};

struct CirculantSpectrum {
    std::vector<cplx> eigenvalues;  // packed real-FFT layout, embed_size/2 slots
    std::size_t embed_size = 0;
};

CirculantSpectrum circulant_spectrum(const ToeplitzSymbol& t, std::size_t embed_size);

std::vector<double> toeplitz_matvec(const ToeplitzSymbol& t, std::span<const double> x);
std::vector<double> dense_toeplitz_matvec(const ToeplitzSymbol& t, std::span<const double> x);

ToeplitzSymbol p_symbol(const StructuredOperator1D& op);
ToeplitzSymbol q_symbol(const StructuredOperator1D& op);

// Square M x M embedding of the M x (M-1) or (M-1) x M blocks.
ToeplitzSymbol embed_rectangular(const ToeplitzSymbol& t);

class FastOperator1D {
public:
    explicit FastOperator1D(StructuredOperator1D op);

    const StructuredOperator1D& op() const { return op_; }
    std::size_t size() const { return op_.size(); }

    // y = A u
    void apply(std::span<const double> u, std::span<double> y) const;
    // y = G u
    void apply_g(std::span<const double> u, std::span<double> y) const;

    std::size_t storage_doubles() const;

private:
    StructuredOperator1D op_;
    RealFft rfft_;
    std::vector<cplx> sm_, sq_, sp_, sn_;
};

std::vector<double> apply_operator_1d(const FastOperator1D& op, std::span<const double> u);

}  // namespace nonlocal
