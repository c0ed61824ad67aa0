// Hamiltonian builders for the hybrid register, hbar = 1.
//
// All frequencies, detunings and couplings are expressed in units of a
// declared reference coupling (the CPB-cavity coupling for CPB protocols,
// the effective molecule-cavity coupling for molecular protocols); time is
// in inverse reference-coupling units.

#pragma once

#include "molens/hilbert.hpp"

namespace molens {

// CPB-cavity exchange coupling with tunable CPB detuning:
//   g_c (sigma^- c^dag + sigma^+ c) + delta sigma^+ sigma^-
LinearOp h_cpb(const CompositeSpace& space, int cavity_index, int cpb_index, double g_c,
               double delta);

// Effective molecule-mode/cavity coupling after Raman elimination:
//   g_i (m c^dag + m^dag c) + delta m^dag m
LinearOp h_molecule(const CompositeSpace& space, int mol_index, int cavity_index, double g_i,
                    double delta);

// Collective coupling Omega * g * sqrt(N0) / (2 Delta).
double effective_coupling(double omega, double vacuum_rabi, double n_ground,
                          double raman_detuning);

struct DriveSpec {
    double rabi = 0.0;      // Rabi frequency, >= 0
    double phase = 0.0;     // radians
    double duration = 0.0;  // time
};

// Resonant rotating-frame microwave drive on the CPB:
//   (Omega/2) (e^{-i phi} sigma^+ + e^{i phi} sigma^-)
LinearOp h_drive(const CompositeSpace& space, int cpb_index, const DriveSpec& drive);

}  // namespace molens
