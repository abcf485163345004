#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nonlocal/cgs.hpp"
#include "nonlocal/quadrature.hpp"
#include "nonlocal/timestep.hpp"

namespace nonlocal {

enum class Problem { Steady1D, CN1D, BDF4_1D, CN2DMult, BDF4_2DMult, CN2DAdd, Steady2DAdd };

// Built-in manufactured solutions. All are e^t times a spatial profile (time-independent for steady problems).
//   Quartic1D:  x^2 (1-x)^2 + e^{-2} on [0,1]
//   Quartic2D:  x^2 (2-x)^2 y^2 (2-y)^2 - sin 1 on [0,2]^2
//   ExpTrig2D:  e^{2x+4y} (sin 2x + cos 4y) + 1 on [0,1]^2
//   Poly2D:     (x^4 - x^3 + x^2 + 1)(y^4 - 2y^3 + y^2 + 1) on [0,1]^2
//   Zero:       u = 0 on the problem's default domain
enum class Solution { Default, Quartic1D, Quartic2D, ExpTrig2D, Poly2D, Zero };

std::optional<Problem> parse_problem(std::string_view name);
std::string_view problem_name(Problem p);
std::optional<Solution> parse_solution(std::string_view name);
std::string_view solution_name(Solution s);

bool is_two_dimensional(Problem p);
bool is_steady(Problem p);
Solution default_solution(Problem p);
bool solution_fits(Problem p, Solution s);
// Right endpoint b of [0,b] (and [0,b]^2) for a solution.
double domain_length(Solution s);
double default_final_time(Problem p);

struct RunSpec {
    Problem problem = Problem::CN1D;
    Solution solution = Solution::Default;
    double gamma = 0.5;
    std::size_t M = 16;
    double tau = 0.0;  // 0 selects tau = h
    double T = 0.0;    // 0 selects the problem's default
    Startup startup = Startup::ExactHistory;
    CnForcing cn_forcing = CnForcing::Midpoint;
    CgsConfig cgs{};
    QuadratureSpec quadrature{};
    bool dense = false;  // multiply with the assembled dense matrix instead of the fast path
};

struct RunResult {
    double tau = 0.0;
    double T = 0.0;
    double error_inf = 0.0;
    std::size_t iters_max = 0;
    double iters_mean = 0.0;
    std::size_t iters_final = 0;
    double wall_seconds = 0.0;
    std::vector<double> solution;
    std::vector<double> exact;
};

// Interior system for a manufactured solution g (the spatial profile; time-dependent runs use e^t g).
struct ManufacturedSystem {
    std::size_t n = 0;
    double h = 0.0;
    LinearOp apply;                  // v -> A v
    std::vector<double> profile;     // g at the interior nodes
    std::vector<double> action;      // nonlocal operator applied to g, at the interior nodes
    std::vector<double> boundary;    // boundary vector K for the trace of g
    std::size_t storage_doubles = 0; // operator storage of the fast path
};

ManufacturedSystem build_system(const RunSpec& spec);

// Throws std::invalid_argument on an inconsistent spec and SolverFailure when CGS fails.
RunResult run_problem(const RunSpec& spec);

}  // namespace nonlocal
