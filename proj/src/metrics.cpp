#include "molens/metrics.hpp"

#include <sstream>

namespace molens {

double process_fidelity(const Mat& achieved, const Mat& target) {
    if (achieved.rows() != target.rows() || achieved.cols() != target.cols() ||
        achieved.rows() != achieved.cols())
        throw ValidationError("process_fidelity: dimension mismatch");
    const double d = static_cast<double>(achieved.rows());
    Complex tr = (target.adjoint() * achieved).trace();
    return std::norm(tr / d);
}

namespace {

Mat restrict_to(const Mat& full, const std::vector<long>& subspace) {
    const long d = static_cast<long>(subspace.size());
    Mat sub(d, d);
    for (long i = 0; i < d; ++i)
        for (long j = 0; j < d; ++j) sub(i, j) = full(subspace[static_cast<std::size_t>(i)],
                                                      subspace[static_cast<std::size_t>(j)]);
    return sub;
}

}  // namespace

double process_fidelity(const Mat& achieved_full, const Mat& target,
                        const std::vector<long>& subspace) {
    if (static_cast<long>(subspace.size()) != target.rows())
        throw ValidationError("process_fidelity: subspace size does not match target");
    return process_fidelity(restrict_to(achieved_full, subspace), target);
}

double leakage(const Mat& achieved_full, const std::vector<long>& subspace) {
    if (subspace.empty()) throw ValidationError("leakage: empty subspace");
    double total = 0.0;
    for (long j : subspace) {
        if (j < 0 || j >= achieved_full.cols()) throw ValidationError("leakage: index out of range");
        double inside = 0.0;
        for (long i : subspace) inside += std::norm(achieved_full(i, j));
        total += 1.0 - inside;
    }
    return total / static_cast<double>(subspace.size());
}

FeasibilityReport feasibility(const FeasibilityInput& in) {
    if (!(in.g_c > 0.0) || !(in.g_i_max > 0.0) || !(in.t2_cpb > 0.0) || !(in.t1_transmon > 0.0) ||
        !(in.photon_loss_rate > 0.0) || !(in.molecular_scatter_rate > 0.0) ||
        !(in.gate_duration_in_gc > 0.0))
        throw ValidationError("feasibility: all inputs must be positive");

    const double t_coh = in.use_transmon_t1 ? in.t1_transmon : in.t2_cpb;
    FeasibilityReport rep;
    rep.swap_ops_before_decoherence = in.g_c * t_coh;
    rep.gate_to_t2_ratio = (in.gate_duration_in_gc / in.g_c) / t_coh;
    rep.photon_gates = in.g_i_max / in.photon_loss_rate;

    std::ostringstream notes;
    notes << "coherence time " << (in.use_transmon_t1 ? "T1 (transmon)" : "T2 (CPB)") << " = "
          << t_coh << " s; photon_gates is a photon-loss-only proxy; molecular scattering rate "
          << in.molecular_scatter_rate << " rad/s is " << in.molecular_scatter_rate / in.g_i_max
          << " of g_i_max and does not further limit the budget.";
    rep.notes = notes.str();
    return rep;
}

}  // namespace molens
