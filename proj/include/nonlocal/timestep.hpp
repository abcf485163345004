#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nonlocal/cgs.hpp"

namespace nonlocal {

enum class Scheme { CrankNicolson, BDF4 };
enum class Startup { ExactHistory, CNRampUp };
// Crank-Nicolson source term: F(t + tau/2), or (F(t) + F(t + tau)) / 2.
enum class CnForcing { Midpoint, Average };

struct TimeStepConfig {
    Scheme scheme = Scheme::CrankNicolson;
    double tau = 0.0;
    double T = 0.0;
    Startup startup = Startup::ExactHistory;
    CnForcing cn_forcing = CnForcing::Midpoint;

    std::size_t steps() const;
};

// du/dt + A u = F(t) + K(t) on the interior unknowns.
struct EvolutionProblem {
    std::size_t n = 0;
    LinearOp apply;
    std::function<std::vector<double>(double)> forcing;  // F(t) + K(t)
    std::function<std::vector<double>(double)> exact;    // required for ExactHistory
};

struct SolveReport {
    std::vector<double> solution;
    std::vector<std::size_t> iterations_per_step;
    std::vector<double> residuals;
    double wall_seconds = 0.0;
    bool maxit_hit = false;

    std::size_t max_iterations() const;
    double mean_iterations() const;
};

class SolverFailure : public std::runtime_error {
public:
    SolverFailure(const std::string& what, std::size_t step) : std::runtime_error(what), step_(step) {}
    std::size_t step() const { return step_; }

private:
    std::size_t step_;
};

SolveReport crank_nicolson_run(const EvolutionProblem& prob, std::vector<double> u0, const TimeStepConfig& cfg,
                               const CgsConfig& cgs = {});

SolveReport bdf4_run(const EvolutionProblem& prob, std::vector<double> u0, const TimeStepConfig& cfg,
                     const CgsConfig& cgs = {});

SolveReport steady_solve(const LinearOp& apply, const std::vector<double>& rhs, const CgsConfig& cgs = {});

}  // namespace nonlocal
