#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "nonlocal/analysis.hpp"
#include "nonlocal/problems.hpp"

namespace nonlocal {

struct StudySpec {
    Problem problem = Problem::CN1D;
    Solution solution = Solution::Default;
    std::vector<double> gammas;
    std::vector<std::size_t> Ms;
    double tau = 0.0;  // 0: tau = h
    double T = 0.0;    // 0: problem default
    Startup startup = Startup::ExactHistory;
    CnForcing cn_forcing = CnForcing::Midpoint;
    CgsConfig cgs{};
    unsigned threads = 1;
};

struct StudyRow {
    Problem problem = Problem::CN1D;
    double gamma = 0.0;
    std::size_t M = 0;
    double tau = 0.0;
    double error_inf = 0.0;
    std::optional<double> rate;
    std::size_t cgs_iters_max = 0;
    double cgs_iters_mean = 0.0;
    std::size_t cgs_iters_final = 0;
    double wall_seconds = 0.0;
    std::string failure;  // empty on success
};

// Empty string when the study is valid, otherwise a description of the problem.
std::string validate(const StudySpec& spec);

// Rows in (gamma, M) order. Solver failures are recorded per row; the study continues.
std::vector<StudyRow> run_study(const StudySpec& spec);

// log(e_prev / e) / log(M / M_prev) between consecutive rows of equal gamma.
void fill_rates(std::vector<StudyRow>& rows);

// Shortest round-trip decimal.
std::string format_double(double v);

std::string study_csv(const std::vector<StudyRow>& rows, bool detail = false);

enum class TimingKind { Matvec, Step };

struct TimingRow {
    std::size_t M = 0;
    double seconds = 0.0;
    std::size_t storage_doubles = 0;
    std::size_t iterations = 0;  // CGS iterations of one Step sample
};

struct TimingReport {
    std::vector<TimingRow> rows;
    double c = 0.0;   // t ~ c M log M
    double r2 = 0.0;
};

// Median of `repeats` samples per M on the structured path, taken round-robin over M so that
// slow phases of the host hit every size alike. A Step sample is one Crank-Nicolson step solve
// at tau = h, warm-started from the exact previous level.
TimingReport run_timing(Problem problem, TimingKind kind, const std::vector<std::size_t>& Ms, double gamma,
                        int repeats = 5, double min_sample_seconds = 0.02);
std::string timing_csv(const TimingReport& report);

// Dense expansion of the operator of a problem; throws DenseCapExceeded above kDenseCap unknowns.
Eigen::MatrixXd dense_operator(Problem problem, double gamma, std::size_t M);

struct Diagnostics {
    SpectralReport report;
    double h = 0.0;
    std::optional<double> inverse_inf_norm;
    std::optional<double> condition_inf;
    double min_real_eigenvalue = 0.0;
};

Diagnostics run_diagnostics(Problem problem, double gamma, std::size_t M);
std::string diagnostics_csv(Problem problem, double gamma, std::size_t M, const Diagnostics& d);

struct IndefinitenessHit {
    double gamma = 0.0;
    std::size_t M = 0;
    double h_min = 0.0;
    double h_max = 0.0;
};

// 1D scan over gamma in {0.1, ..., 0.9} and the given M for min eig(H) < 0 < max eig(H).
std::vector<IndefinitenessHit> indefiniteness_scan(const std::vector<std::size_t>& Ms);

}  // namespace nonlocal
