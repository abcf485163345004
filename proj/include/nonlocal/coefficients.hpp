#pragma once

#include <vector>

#include "nonlocal/grid.hpp"

namespace nonlocal {

struct CoefficientTable {
    double eta_h_gamma = 0.0;
    std::vector<double> m;          // m_0..m_{M-2}
    std::vector<double> n;          // n_0..n_{M-1}
    std::vector<double> p;          // p_0..p_{M-2}
    std::vector<double> q;          // q_0..q_{M-2}
    std::vector<double> beta;       // beta_1..beta_{M-1}
    std::vector<double> gamma_bnd;  // gamma_0..gamma_{M-1}
    std::vector<double> d_int;      // integer points then half points
};

double eta_h_gamma(double h, double gamma);

// Closed forms divided by eta, valid at real (possibly half-integer) arguments.
double m_scaled(double x, double gamma);     // x >= 1
double q_scaled(double x, double gamma);     // x >= 0
double beta_scaled(double x, double gamma);  // x >= 1
double p0_scaled(double gamma);
double n0_scaled(double gamma);
double gamma0_scaled(double gamma);

// (1/(1-gamma)) [(x-a)^{1-gamma} + (b-x)^{1-gamma}]
double kernel_mass(double x, double a, double b, double gamma);

CoefficientTable compute_coefficients(const CollocationGrid& grid, const WeaklySingularKernel& kernel);

}  // namespace nonlocal
