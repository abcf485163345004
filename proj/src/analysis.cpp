#include "nonlocal/analysis.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <string>

namespace nonlocal {

DenseCapExceeded::DenseCapExceeded(std::size_t n)
    : std::length_error("dense expansion of " + std::to_string(n) + " unknowns exceeds the cap of " +
                        std::to_string(kDenseCap))
{
}

namespace {

void check_cap(const Eigen::MatrixXd& A)
{
    if (A.rows() != A.cols()) throw std::invalid_argument("square matrix required");
    if (static_cast<std::size_t>(A.rows()) > kDenseCap) throw DenseCapExceeded(static_cast<std::size_t>(A.rows()));
}

}  // namespace

double min_row_dominance_gap(const Eigen::MatrixXd& A)
{
    check_cap(A);
    double gap = INFINITY;
    for (Eigen::Index i = 0; i < A.rows(); ++i) {
        const double off = A.row(i).cwiseAbs().sum() - std::abs(A(i, i));
        gap = std::min(gap, std::abs(A(i, i)) - off);
    }
    return gap;
}

double inf_norm(const Eigen::MatrixXd& A)
{
    return A.rowwise().lpNorm<1>().maxCoeff();
}

SpectralReport dominance_report(const Eigen::MatrixXd& A)
{
    SpectralReport r;
    r.min_row_dominance_gap = min_row_dominance_gap(A);
    r.inf_norm = inf_norm(A);
    r.inv_inf_norm_bound = 1.0 / r.min_row_dominance_gap;
    r.cond_bound = r.inf_norm * r.inv_inf_norm_bound;
    return r;
}

SpectralReport spectral_report(const Eigen::MatrixXd& A)
{
    SpectralReport r = dominance_report(A);
    std::tie(r.h_min_eig, r.h_max_eig) = symmetric_part_extremes(A);
    return r;
}

std::pair<double, double> symmetric_part_extremes(const Eigen::MatrixXd& A)
{
    check_cap(A);
    const Eigen::MatrixXd H = 0.5 * (A + A.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H, Eigen::EigenvaluesOnly);
    return {es.eigenvalues().minCoeff(), es.eigenvalues().maxCoeff()};
}

double min_real_eigenvalue(const Eigen::MatrixXd& A)
{
    check_cap(A);
    Eigen::EigenSolver<Eigen::MatrixXd> es(A, false);
    return es.eigenvalues().real().minCoeff();
}

std::optional<double> inverse_inf_norm(const Eigen::MatrixXd& A)
{
    check_cap(A);
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
    const auto& U = lu.matrixLU();
    const double scale = U.diagonal().cwiseAbs().maxCoeff();
    if (!(scale > 0.0) || U.diagonal().cwiseAbs().minCoeff() <= 1e-14 * scale) return std::nullopt;
    return inf_norm(lu.inverse());
}

std::optional<double> condition_inf(const Eigen::MatrixXd& A)
{
    const auto inv = inverse_inf_norm(A);
    if (!inv) return std::nullopt;
    return inf_norm(A) * *inv;
}

double cond_bound_limit_1d(double a, double b, double gamma, double h)
{
    return 4.0 * (b - a) / ((1.0 - gamma) * h);
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y)
{
    if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("slope fit needs two or more points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::pair<double, double> fit_nlogn(const std::vector<double>& x, const std::vector<double>& y)
{
    if (x.size() != y.size() || x.empty()) throw std::invalid_argument("fit needs matching nonempty data");
    double sff = 0, sfy = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double f = x[i] * std::log(x[i]);
        sff += f * f;
        sfy += f * y[i];
        my += y[i];
    }
    my /= static_cast<double>(y.size());
    const double c = sfy / sff;
    double ss_res = 0, ss_tot = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - c * x[i] * std::log(x[i]);
        ss_res += r * r;
        ss_tot += (y[i] - my) * (y[i] - my);
    }
    return {c, ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0};
}

double stability_constant_1d(double a, double b, double gamma)
{
    return 2.0 * std::pow(b - a, 1.0 - gamma) / (1.0 - gamma);
}

double stability_constant_mult(double a, double b, double c, double d, double gamma)
{
    return 4.0 * std::pow(b - a, 1.0 - gamma) * std::pow(d - c, 1.0 - gamma) / ((1.0 - gamma) * (1.0 - gamma));
}

double stability_constant_add(double a, double b, double c, double d, double gamma)
{
    return 2.0 * (b - a) * std::pow(d - c, 1.0 - gamma) / (1.0 - gamma);
}

}  // namespace nonlocal
