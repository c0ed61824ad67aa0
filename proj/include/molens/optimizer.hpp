// Derivative-free search for sweep parameters meeting modular phase
// conditions. Bounded Nelder-Mead simplex descent with seeded random
// restarts; the mod-2pi objective has kinks, so no gradients.

#pragma once

#include "molens/dressed.hpp"
#include "molens/sweep.hpp"

#include <cstdint>
#include <vector>

namespace molens {

struct PhaseTarget {
    Branch branch = Branch::plus;
    int n = 0;
    double phase = 0.0;        // target value
    double weight = 1.0;
    double modulus = 2.0 * pi; // condition is phase mod modulus (pi for pair conditions)
};

struct PhaseConditions {
    SweepFamily family = SweepFamily::quadratic_offset;
    std::vector<PhaseTarget> targets;
    std::vector<std::pair<double, double>> bounds;  // one [lo, hi] per parameter
    double coupling = 1.0;
    double adiabaticity_weight = 0.0;
    double duration_weight = 0.0;

    // Parameter vectors: cubic_odd/linear_odd -> {delta0, T},
    // quadratic_offset -> {a, b, T}.
    int n_params() const;
    void validate() const;
};

SweepProfile profile_from_params(SweepFamily family, const std::vector<double>& params);

// Per-target dressed phases (quadrature fast path).
std::vector<double> target_phases(const std::vector<double>& params,
                                  const PhaseConditions& conditions);

// Sum of weight * wrap(phi - target, modulus)^2 plus penalty terms.
double objective(const std::vector<double>& params, const PhaseConditions& conditions);

struct SolveOptions {
    int max_iterations = 4000;
    int restarts = 5;
    std::uint64_t seed = 0;
    double objective_tolerance = 1e-6;
    double simplex_tolerance = 1e-8;  // diameter in bound-normalized coordinates
};

struct SolveResult {
    std::vector<double> params;
    std::vector<double> phases;         // achieved, one per target
    double objective = 0.0;
    bool converged = false;
    int restarts_used = 0;
    std::vector<long> branch_indices;   // floor(|phi| / 2pi) per target
};

SolveResult solve(const PhaseConditions& conditions, const std::vector<double>& initial_guess,
                  const SolveOptions& options = {});

struct GridRow {
    std::vector<double> params;
    std::vector<double> phases;
    double objective = 0.0;
};

struct GridAxis {
    double lo = 0.0;
    double hi = 0.0;
    int points = 1;
};

std::vector<GridRow> grid_scan(const PhaseConditions& conditions,
                               const std::vector<GridAxis>& axes);

}  // namespace molens
