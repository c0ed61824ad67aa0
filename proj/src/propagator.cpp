#include "molens/propagator.hpp"

#include <Eigen/Eigenvalues>

namespace molens {

Mat expm_hermitian(const Mat& h, double t) {
    Eigen::SelfAdjointEigenSolver<Mat> es(h);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("expm_hermitian: eigendecomposition failed");
    Vec phases = (Complex(0.0, -t) * es.eigenvalues().cast<Complex>()).array().exp();
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

namespace {

Mat step_block(const Mat& columns, const EvolutionSpec& spec, int steps) {
    const double dt = (spec.t1 - spec.t0) / steps;
    Mat block = columns;
    for (int k = 0; k < steps; ++k) {
        double tm = spec.t0 + (k + 0.5) * dt;
        Mat h = spec.hamiltonian(tm);
        if (h.rows() != block.rows() || h.cols() != block.rows())
            throw ValidationError("evolve: Hamiltonian dimension mismatch");
        if (hermiticity_defect(h) > 1e-12)
            throw ValidationError("evolve: provider output is not Hermitian");
        block = expm_hermitian(h, dt) * block;
    }
    return block;
}

Mat run_block(const Mat& columns, const EvolutionSpec& spec) {
    if (!(spec.t1 > spec.t0)) throw ValidationError("evolve: requires t1 > t0");
    if (!spec.hamiltonian) throw ValidationError("evolve: missing Hamiltonian provider");
    if (std::holds_alternative<FixedSteps>(spec.control)) {
        int steps = std::get<FixedSteps>(spec.control).steps;
        if (steps < 1) throw ValidationError("evolve: steps must be >= 1");
        return step_block(columns, spec, steps);
    }
    const auto& tol = std::get<StepTolerance>(spec.control);
    int steps = std::max(1, tol.min_steps);
    Mat coarse = step_block(columns, spec, steps);
    for (int d = 0; d < tol.max_doublings; ++d) {
        steps *= 2;
        Mat fine = step_block(columns, spec, steps);
        double err = (fine - coarse).cwiseAbs().maxCoeff();
        if (err < tol.tolerance) return fine;
        coarse = std::move(fine);
    }
    double err = 0.0;
    {
        Mat fine = step_block(columns, spec, steps * 2);
        err = (fine - coarse).cwiseAbs().maxCoeff();
        if (err < tol.tolerance) return fine;
    }
    throw ConvergenceError("evolve: step control failed to meet tolerance " +
                           std::to_string(tol.tolerance) + " (achieved " + std::to_string(err) +
                           ")");
}

}  // namespace

StateVector evolve(const StateVector& state, const EvolutionSpec& spec) {
    Mat block = run_block(state.amplitudes, spec);
    return StateVector{state.space, block.col(0)};
}

Mat evolve_block(const Mat& columns, const EvolutionSpec& spec) {
    return run_block(columns, spec);
}

Mat propagator_matrix(long dim, const EvolutionSpec& spec) {
    return run_block(Mat::Identity(dim, dim), spec);
}

LinearOp propagator_matrix(const CompositeSpace& space, const EvolutionSpec& spec) {
    return LinearOp{space, propagator_matrix(space.dim(), spec)};
}

}  // namespace molens
