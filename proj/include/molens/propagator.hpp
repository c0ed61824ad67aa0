// Numerically exact time evolution under time-dependent Hermitian
// Hamiltonians. Reference integrator: piecewise-constant midpoint-sampled
// matrix exponentials (first-order Magnus), which is unconditionally
// norm-preserving. Exponentials are computed via Hermitian eigendecomposition.

#pragma once

#include "molens/hilbert.hpp"

#include <functional>
#include <variant>

namespace molens {

struct FixedSteps {
    int steps = 2000;
};

// Adaptive control: start at min_steps, double until the per-amplitude
// difference between consecutive refinements is below the tolerance.
struct StepTolerance {
    double tolerance = 1e-9;
    int min_steps = 2000;
    int max_doublings = 6;
};

using StepControl = std::variant<FixedSteps, StepTolerance>;

struct EvolutionSpec {
    std::function<Mat(double)> hamiltonian;  // time -> Hermitian matrix
    double t0 = 0.0;
    double t1 = 0.0;
    StepControl control = FixedSteps{};
};

// exp(-i H t) for Hermitian H.
Mat expm_hermitian(const Mat& h, double t);

StateVector evolve(const StateVector& state, const EvolutionSpec& spec);

// Evolve several columns simultaneously (shares the per-step exponentials).
Mat evolve_block(const Mat& columns, const EvolutionSpec& spec);

// Full propagator: column k is the evolution of basis state k.
LinearOp propagator_matrix(const CompositeSpace& space, const EvolutionSpec& spec);
Mat propagator_matrix(long dim, const EvolutionSpec& spec);

}  // namespace molens
