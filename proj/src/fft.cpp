#include "nonlocal/fft.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace nonlocal {

std::size_t next_pow2(std::size_t n)
{
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

FftPlan::FftPlan(std::size_t n) : n_(n)
{
    if (n == 0 || (n & (n - 1)) != 0) throw std::invalid_argument("FFT size must be a power of two");
    twiddle_.resize(n / 2);
    for (std::size_t k = 0; k < n / 2; ++k) {
        const double t = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
        twiddle_[k] = {std::cos(t), std::sin(t)};
    }
    bitrev_.resize(n);
    std::size_t bits = 0;
    while ((std::size_t{1} << bits) < n) ++bits;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t r = 0;
        for (std::size_t b = 0; b < bits; ++b)
            if (i & (std::size_t{1} << b)) r |= std::size_t{1} << (bits - 1 - b);
        bitrev_[i] = r;
    }
}

void FftPlan::forward(cplx* data) const { run(data, false); }
void FftPlan::backward(cplx* data) const { run(data, true); }

void FftPlan::run(cplx* a, bool inverse) const
{
    const std::size_t n = n_;
    for (std::size_t i = 0; i < n; ++i)
        if (i < bitrev_[i]) std::swap(a[i], a[bitrev_[i]]);
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t half = len / 2;
        const std::size_t step = n / len;
        for (std::size_t s = 0; s < n; s += len) {
            for (std::size_t k = 0; k < half; ++k) {
                cplx w = twiddle_[k * step];
                if (inverse) w = std::conj(w);
                const cplx u = a[s + k];
                const cplx v = a[s + k + half] * w;
                a[s + k] = u + v;
                a[s + k + half] = u - v;
            }
        }
    }
}

const FftPlan& fft_plan(std::size_t n)
{
    static std::mutex mu;
    static std::map<std::size_t, std::unique_ptr<FftPlan>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[n];
    if (!slot) slot = std::make_unique<FftPlan>(n);
    return *slot;
}

void fft(std::vector<cplx>& data)
{
    fft_plan(data.size()).forward(data.data());
}

void ifft(std::vector<cplx>& data)
{
    fft_plan(data.size()).backward(data.data());
    const double s = 1.0 / static_cast<double>(data.size());
    for (auto& v : data) v *= s;
}

RealFft::RealFft(std::size_t L) : L_(L)
{
    if (L < 2 || (L & (L - 1)) != 0) throw std::invalid_argument("real FFT length must be a power of two >= 2");
    plan_ = &fft_plan(L / 2);
    w_.resize(L / 2);
    for (std::size_t k = 0; k < L / 2; ++k) {
        const double t = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(L);
        w_[k] = {std::cos(t), std::sin(t)};
    }
}

void RealFft::forward(const double* x, cplx* z) const
{
    const std::size_t N = L_ / 2;
    for (std::size_t k = 0; k < N; ++k) z[k] = {x[2 * k], x[2 * k + 1]};
    plan_->forward(z);
    const cplx z0 = z[0];
    z[0] = {z0.real() + z0.imag(), z0.real() - z0.imag()};
    for (std::size_t k = 1; k <= N / 2; ++k) {
        const std::size_t j = N - k;
        const cplx zk = z[k];
        const cplx zj = z[j];
        const cplx e = 0.5 * (zk + std::conj(zj));
        const cplx o = cplx(0.0, -0.5) * (zk - std::conj(zj));
        const cplx t = w_[k] * o;
        z[k] = e + t;
        if (j != k) z[j] = std::conj(e - t);
    }
}

void RealFft::backward(cplx* z, double* x) const
{
    const std::size_t N = L_ / 2;
    const cplx x0 = z[0];
    z[0] = {0.5 * (x0.real() + x0.imag()), 0.5 * (x0.real() - x0.imag())};
    for (std::size_t k = 1; k <= N / 2; ++k) {
        const std::size_t j = N - k;
        const cplx xk = z[k];
        const cplx xj = z[j];
        const cplx e = 0.5 * (xk + std::conj(xj));
        const cplx o = 0.5 * (xk - std::conj(xj)) * std::conj(w_[k]);
        z[k] = e + cplx(0.0, 1.0) * o;
        if (j != k) z[j] = std::conj(e) + cplx(0.0, 1.0) * std::conj(o);
    }
    plan_->backward(z);
    const double s = 1.0 / static_cast<double>(N);
    for (std::size_t k = 0; k < N; ++k) {
        x[2 * k] = z[k].real() * s;
        x[2 * k + 1] = z[k].imag() * s;
    }
}

void RealFft::multiply_packed(const cplx* a, const cplx* b, cplx* out, std::size_t half)
{
    out[0] = {a[0].real() * b[0].real(), a[0].imag() * b[0].imag()};
    for (std::size_t k = 1; k < half; ++k) out[k] = a[k] * b[k];
}

void RealFft::multiply_add_packed(const cplx* a, const cplx* b, cplx* out, std::size_t half)
{
    out[0] += cplx(a[0].real() * b[0].real(), a[0].imag() * b[0].imag());
    for (std::size_t k = 1; k < half; ++k) out[k] += a[k] * b[k];
}

void fft2(std::vector<cplx>& data, std::size_t rows, std::size_t cols, bool inverse)
{
    if (data.size() != rows * cols) throw std::invalid_argument("fft2 size mismatch");
    const FftPlan& pr = fft_plan(cols);
    const FftPlan& pc = fft_plan(rows);
    for (std::size_t r = 0; r < rows; ++r) {
        if (inverse)
            pr.backward(data.data() + r * cols);
        else
            pr.forward(data.data() + r * cols);
    }
    std::vector<cplx> col(rows);
    for (std::size_t c = 0; c < cols; ++c) {
        for (std::size_t r = 0; r < rows; ++r) col[r] = data[r * cols + c];
        if (inverse)
            pc.backward(col.data());
        else
            pc.forward(col.data());
        for (std::size_t r = 0; r < rows; ++r) data[r * cols + c] = col[r];
    }
    if (inverse) {
        const double s = 1.0 / static_cast<double>(rows * cols);
        for (auto& v : data) v *= s;
    }
}

}  // namespace nonlocal
