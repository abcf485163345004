#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace nonlocal {

inline constexpr std::size_t kDenseCap = 4096;

class DenseCapExceeded : public std::length_error {
public:
    explicit DenseCapExceeded(std::size_t n);
};

struct SpectralReport {
    double min_row_dominance_gap = 0.0;
    double inf_norm = 0.0;
    double inv_inf_norm_bound = 0.0;  // 1 / gap
    double cond_bound = 0.0;          // inf_norm / gap
    double h_min_eig = 0.0;
    double h_max_eig = 0.0;
};

// min over rows of |a_ii| - sum_{j != i} |a_ij|
double min_row_dominance_gap(const Eigen::MatrixXd& A);
double inf_norm(const Eigen::MatrixXd& A);

SpectralReport dominance_report(const Eigen::MatrixXd& A);
SpectralReport spectral_report(const Eigen::MatrixXd& A);

// Extreme eigenvalues of H = (A + A^T) / 2.
std::pair<double, double> symmetric_part_extremes(const Eigen::MatrixXd& A);
double min_real_eigenvalue(const Eigen::MatrixXd& A);

// Exact ||A^{-1}||_inf from an LU factorization; empty if A is numerically singular.
std::optional<double> inverse_inf_norm(const Eigen::MatrixXd& A);
std::optional<double> condition_inf(const Eigen::MatrixXd& A);

// 4 (b - a) / ((1 - gamma) h)
double cond_bound_limit_1d(double a, double b, double gamma, double h);

// Least-squares slope of log y against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

// Fit y = c * x log x; returns (c, R^2).
std::pair<double, double> fit_nlogn(const std::vector<double>& x, const std::vector<double>& y);

// Stability constants: diagonal bounds of the 1D, multiplicative and additive operators.
double stability_constant_1d(double a, double b, double gamma);
double stability_constant_mult(double a, double b, double c, double d, double gamma);
double stability_constant_add(double a, double b, double c, double d, double gamma);

}  // namespace nonlocal
