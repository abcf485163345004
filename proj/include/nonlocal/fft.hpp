#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace nonlocal {

using cplx = std::complex<double>;

std::size_t next_pow2(std::size_t n);

class FftPlan {
public:
    explicit FftPlan(std::size_t n);

    std::size_t size() const { return n_; }
    void forward(cplx* data) const;
    // Unnormalized; callers scale by 1/n.
    void backward(cplx* data) const;

private:
    void run(cplx* data, bool inverse) const;

    std::size_t n_;
    std::vector<cplx> twiddle_;
    std::vector<std::size_t> bitrev_;
};

// Shared immutable plan for a power-of-two size.
const FftPlan& fft_plan(std::size_t n);

void fft(std::vector<cplx>& data);
void ifft(std::vector<cplx>& data);  // normalized

// Real transforms of even power-of-two length L. The spectrum is packed into L/2
// complex slots: slot 0 holds (X_0, X_{L/2}), both real; slot k holds X_k.
class RealFft {
public:
    explicit RealFft(std::size_t L);

    std::size_t length() const { return L_; }
    void forward(const double* x, cplx* packed) const;
    // Consumes `packed` as scratch. Output is normalized.
    void backward(cplx* packed, double* x) const;

    static void multiply_packed(const cplx* a, const cplx* b, cplx* out, std::size_t half);
    static void multiply_add_packed(const cplx* a, const cplx* b, cplx* out, std::size_t half);

private:
    std::size_t L_;
    const FftPlan* plan_;
    std::vector<cplx> w_;  // exp(-2 pi i k / L), k < L/2
};

// In-place 2D transform of a row-major rows x cols array (both powers of two).
void fft2(std::vector<cplx>& data, std::size_t rows, std::size_t cols, bool inverse);

}  // namespace nonlocal
