#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "nonlocal/fft.hpp"
#include "nonlocal/toeplitz.hpp"

namespace nonlocal {

// One (2My-1) x (2My-1) block [[T_M, T_Q], [T_P, T_N]] of a two-level operator.
struct InnerBlock {
    ToeplitzSymbol tm;  // (My-1) x (My-1)
    ToeplitzSymbol tq;  // (My-1) x My
    ToeplitzSymbol tp;  // My x (My-1)
    ToeplitzSymbol tn;  // My x My
};

// Block-Toeplitz family: block (i, l) = blocks[i - l + cols - 1].
struct BlockToeplitzFamily {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<InnerBlock> blocks;

    const InnerBlock& block(std::size_t i, std::size_t l) const { return blocks[i + cols - 1 - l]; }
};

enum class Filler { Displayed, Zero };

// First column of the 9My x 9My circulant with block row [S1 TM S2 TQ S3 TP S4 TN S5].
// TM, TQ, TP are first embedded into My x My Toeplitz matrices by zero extension.
std::vector<double> inner_circulant_column(const InnerBlock& b, std::size_t My, Filler filler = Filler::Displayed);

// Input slot of w (length My-1) and v (length My), output slots of T_M w + T_Q v and T_P w + T_N v.
inline constexpr std::size_t kSlotW = 2, kSlotV = 4, kSlotTop = 1, kSlotBottom = 6;

// G U for G = [[M, Q], [P, N]] with each family block-Toeplitz in x and [[T_M, T_Q], [T_P, T_N]] in y.
// U and Y use the 2D ordering: x-integer rows, then x-half rows, each row y-integer then y-half.
class BtcbOperator {
public:
    BtcbOperator(const std::array<BlockToeplitzFamily, 4>& families, std::size_t Mx, std::size_t My,
                 Filler filler = Filler::Displayed);

    std::size_t size() const { return (2 * Mx_ - 1) * (2 * My_ - 1); }
    void apply(std::span<const double> U, std::span<double> Y) const;
    std::size_t storage_doubles() const { return 2 * 4 * Px_ * Py_; }
    std::size_t outer_size() const { return Px_; }
    std::size_t inner_size() const { return Py_; }

private:
    std::size_t Mx_, My_, Px_, Py_;
    std::array<std::vector<cplx>, 4> spectra_;
};

}  // namespace nonlocal
