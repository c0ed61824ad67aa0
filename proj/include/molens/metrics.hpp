// Gate quality measures and the decoherence-budget feasibility calculator.

#pragma once

#include "molens/common.hpp"

#include <string>
#include <vector>

namespace molens {

// |trace(target^dag achieved) / d|^2 on a d-dimensional computational
// subspace; invariant under a global phase of either argument.
double process_fidelity(const Mat& achieved, const Mat& target);

// Same, with the achieved full-space map first restricted to the subspace
// spanned by the given basis indices.
double process_fidelity(const Mat& achieved_full, const Mat& target,
                        const std::vector<long>& subspace);

// Average population left outside the subspace over the uniform ensemble of
// subspace basis inputs.
double leakage(const Mat& achieved_full, const std::vector<long>& subspace);

struct FeasibilityInput {
    double g_c = 2.0 * pi * 50e6;                  // rad/s
    double g_i_max = 2.0 * pi * 10e6;              // rad/s
    double t2_cpb = 1e-6;                          // s
    double t1_transmon = 16e-6;                    // s
    double photon_loss_rate = 2.0 * pi * 10e3;     // rad/s
    double molecular_scatter_rate = 2.0 * pi * 700;// rad/s
    double gate_duration_in_gc = 58.07;            // dimensionless
    bool use_transmon_t1 = false;                  // use T1 as the coherence time
};

struct FeasibilityReport {
    double swap_ops_before_decoherence = 0.0;  // g_c * T_coherence
    double gate_to_t2_ratio = 0.0;             // (duration / g_c) / T_coherence
    double photon_gates = 0.0;                 // g_i_max / photon_loss_rate
    std::string notes;
};

FeasibilityReport feasibility(const FeasibilityInput& input);

}  // namespace molens
