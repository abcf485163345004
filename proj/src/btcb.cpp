#include "nonlocal/btcb.hpp"

#include <stdexcept>

namespace nonlocal {

namespace {

// Value of the My x My zero-extended embedding at lag d = row - col, |d| < My.
double embedded(const ToeplitzSymbol& t, long d)
{
    if (d >= 0) return static_cast<std::size_t>(d) < t.rows() ? t.first_col[static_cast<std::size_t>(d)] : 0.0;
    const auto e = static_cast<std::size_t>(-d);
    return e < t.cols() ? t.first_row[e] : 0.0;
}

void check_block(const InnerBlock& b, std::size_t My)
{
    if (b.tm.rows() != My - 1 || b.tm.cols() != My - 1 || b.tq.rows() != My - 1 || b.tq.cols() != My ||
        b.tp.rows() != My || b.tp.cols() != My - 1 || b.tn.rows() != My || b.tn.cols() != My)
        throw std::invalid_argument("inconsistent inner block sizes");
}

std::size_t wrap(long k, std::size_t n)
{
    const long m = static_cast<long>(n);
    return static_cast<std::size_t>(((k % m) + m) % m);
}

}  // namespace

std::vector<double> inner_circulant_column(const InnerBlock& b, std::size_t My, Filler filler)
{
    check_block(b, My);
    const std::size_t n = 9 * My;
    std::vector<double> c(n, 0.0);
    const long my = static_cast<long>(My);
    const ToeplitzSymbol* T[4] = {&b.tm, &b.tq, &b.tp, &b.tn};
    // Block at block-lag s has entries c[(d - s My) mod 9My] for d = row - col.
    for (int k = 0; k < 4; ++k) {
        const long s = 2 * k + 1;
        for (long d = -my + 1; d < my; ++d) c[wrap(d - s * my, n)] = embedded(*T[k], d);
    }
    if (filler == Filler::Displayed)
        for (long d = 1; d < my; ++d) c[static_cast<std::size_t>(d)] = embedded(b.tm, d);
    return c;
}

BtcbOperator::BtcbOperator(const std::array<BlockToeplitzFamily, 4>& families, std::size_t Mx, std::size_t My,
                           Filler filler)
    : Mx_(Mx), My_(My), Px_(next_pow2(2 * Mx - 1)), Py_(next_pow2(9 * My))
{
    if (Mx < 2 || My < 2) throw std::invalid_argument("BtcbOperator: grid too small");
    const std::size_t shape[4][2] = {{Mx - 1, Mx - 1}, {Mx - 1, Mx}, {Mx, Mx - 1}, {Mx, Mx}};
    const long lo = -4 * static_cast<long>(My), hi = 5 * static_cast<long>(My);
    for (int f = 0; f < 4; ++f) {
        const auto& fam = families[f];
        if (fam.rows != shape[f][0] || fam.cols != shape[f][1] || fam.blocks.size() != fam.rows + fam.cols - 1)
            throw std::invalid_argument("inconsistent block family");
        auto& s = spectra_[f];
        s.assign(Px_ * Py_, cplx(0.0, 0.0));
        for (std::size_t k = 0; k < fam.blocks.size(); ++k) {
            const long lag = static_cast<long>(k) - static_cast<long>(fam.cols - 1);
            const std::vector<double> c = inner_circulant_column(fam.blocks[k], My, filler);
            // Only circulant lags in [-4My, 5My) connect the input slots to the output slots,
            // so the 9My circulant is re-wrapped onto the power-of-two length without aliasing.
            cplx* row = s.data() + wrap(lag, Px_) * Py_;
            for (long m = lo; m < hi; ++m) row[wrap(m, Py_)] = c[wrap(m, 9 * My)];
        }
        fft2(s, Px_, Py_, false);
    }
}

void BtcbOperator::apply(std::span<const double> U, std::span<double> Y) const
{
    const std::size_t ny = 2 * My_ - 1;
    if (U.size() != size() || Y.size() != size()) throw std::invalid_argument("btcb apply: dimension mismatch");
    thread_local std::vector<cplx> z, out;
    z.assign(Px_ * Py_, cplx(0.0, 0.0));
    // x-integer rows go to the real part, x-half rows to the imaginary part
    for (std::size_t i = 0; i + 1 < Mx_; ++i) {
        const double* u = U.data() + i * ny;
        cplx* row = z.data() + i * Py_;
        for (std::size_t j = 0; j + 1 < My_; ++j) row[kSlotW * My_ + j].real(u[j]);
        for (std::size_t j = 0; j < My_; ++j) row[kSlotV * My_ + j].real(u[My_ - 1 + j]);
    }
    for (std::size_t i = 0; i < Mx_; ++i) {
        const double* u = U.data() + (Mx_ - 1 + i) * ny;
        cplx* row = z.data() + i * Py_;
        for (std::size_t j = 0; j + 1 < My_; ++j) row[kSlotW * My_ + j].imag(u[j]);
        for (std::size_t j = 0; j < My_; ++j) row[kSlotV * My_ + j].imag(u[My_ - 1 + j]);
    }
    fft2(z, Px_, Py_, false);

    out.resize(Px_ * Py_);
    const cplx I(0.0, 1.0);
    for (std::size_t a = 0; a < Px_; ++a) {
        const std::size_t na = (Px_ - a) % Px_;
        for (std::size_t b = 0; b < Py_; ++b) {
            const std::size_t nb = (Py_ - b) % Py_;
            const std::size_t k = a * Py_ + b;
            const cplx zc = std::conj(z[na * Py_ + nb]);
            const cplx xl = 0.5 * (z[k] + zc);
            const cplx xr = -0.5 * I * (z[k] - zc);
            const cplx top = spectra_[0][k] * xl + spectra_[1][k] * xr;
            const cplx bottom = spectra_[2][k] * xl + spectra_[3][k] * xr;
            out[k] = top + I * bottom;
        }
    }
    fft2(out, Px_, Py_, true);

    for (std::size_t i = 0; i + 1 < Mx_; ++i) {
        const cplx* row = out.data() + i * Py_;
        double* y = Y.data() + i * ny;
        for (std::size_t j = 0; j + 1 < My_; ++j) y[j] = row[kSlotTop * My_ + j].real();
        for (std::size_t j = 0; j < My_; ++j) y[My_ - 1 + j] = row[kSlotBottom * My_ + j].real();
    }
    for (std::size_t i = 0; i < Mx_; ++i) {
        const cplx* row = out.data() + i * Py_;
        double* y = Y.data() + (Mx_ - 1 + i) * ny;
        for (std::size_t j = 0; j + 1 < My_; ++j) y[j] = row[kSlotTop * My_ + j].imag();
        for (std::size_t j = 0; j < My_; ++j) y[My_ - 1 + j] = row[kSlotBottom * My_ + j].imag();
    }
}

}  // namespace nonlocal
