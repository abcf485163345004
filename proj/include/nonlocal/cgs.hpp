#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace nonlocal {

using LinearOp = std::function<void(std::span<const double>, std::span<double>)>;

struct CgsConfig {
    double tol = 1e-9;
    std::size_t maxit = 1000;
    bool record_history = false;
};

struct CgsResult {
    std::vector<double> x;
    std::size_t iterations = 0;
    double relative_residual = 0.0;  // true residual at exit
    bool converged = false;
    bool breakdown = false;
    std::vector<double> history;
};

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);
double norm_inf(std::span<const double> a);

CgsResult cgs_solve(const LinearOp& apply, std::span<const double> rhs, std::span<const double> x0,
                    const CgsConfig& cfg = {});

}  // namespace nonlocal
