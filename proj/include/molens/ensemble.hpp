// K-qubits-in-one-ensemble encoding, the bosonic approximation of the
// collective operators, and an exact small-N symmetric-subspace model that
// validates it.

#pragma once

#include "molens/hilbert.hpp"
#include "molens/sweep.hpp"

#include <vector>

namespace molens {

struct RegisterConfig {
    int n_molecules = 100;             // N
    int n_qubits = 1;                  // K, requires N > K >= 1
    double vacuum_rabi = 1.0;          // g
    double raman_detuning = 50.0;      // Delta
    std::vector<double> classical_amplitudes;  // Omega_i per qubit

    void validate() const;
};

struct LogicalState {
    std::vector<int> bits;  // a_1 ... a_K, each 0 or 1
};

// Occupation a_i in collective mode i, vacuum elsewhere.
std::vector<int> encode(const LogicalState& bits);

// N0 = N - sum(a_i): molecules left in the ground state.
int ground_count(const LogicalState& bits, int n_molecules);

// Exact symmetric-subspace model of N molecules with K excited levels,
// coupled to the cavity. The collective coupling is calibrated so that the
// single-excitation matrix element equals g_collective exactly (single-
// molecule coupling g_collective / sqrt(N)); the detuning term counts
// excited molecules. Mode ordering: [collective levels 1..K, cavity],
// occupations capped at per_level_cap, total excited molecules <= N.
class DickeModel {
  public:
    DickeModel(int n_molecules, int n_levels, int per_level_cap = 3, int cavity_cutoff = 4);

    static constexpr int max_molecules = 8;
    static constexpr int max_levels = 2;

    long dim() const { return dim_; }
    int n_molecules() const { return n_; }
    int n_levels() const { return k_; }

    // chi (S_i^+ c + S_i^- c^dag) + delta * n_excited_i, with
    // chi = g_collective / sqrt(N).
    Mat hamiltonian(int level, double g_collective, double delta) const;

    // Matched bosonic-approximation Hamiltonian on the same truncated basis.
    Mat bosonic_hamiltonian(int level, double g_collective, double delta) const;

    // [m_i, m_i^dag] for the collective operator m_i = S_i^- / sqrt(N).
    Mat commutator(int level) const;

    Vec basis_state(const std::vector<int>& level_occupations, int cavity_n) const;
    long index_of(const std::vector<int>& level_occupations, int cavity_n) const;
    std::vector<int> sector_labels() const;  // total excitation per basis index

  private:
    Mat collective_lowering(int level, bool bosonic) const;
    Mat excited_count(int level) const;

    int n_, k_, cap_, cavity_cutoff_;
    long mol_dim_ = 0, dim_ = 0;
    std::vector<std::vector<int>> mol_basis_;   // occupation tuples (n_1..n_K)
    std::vector<long> mol_index_;               // dense lookup keyed by mixed radix
};

// Comparison of the exact and bosonic models on one store sweep.
struct OracleComparison {
    double transfer_exact = 0.0;     // target-population of the exact model
    double transfer_bosonic = 0.0;
    double state_overlap_gap = 0.0;  // 1 - |<psi_exact|psi_bosonic>|^2
};

// Evolve `excitations` quanta initially in collective level 1 (plus an empty
// cavity) through the sweep in both models and compare the outcomes.
// excitations = 2 exercises the doubly occupied level where the bosonic
// approximation deviates at O(1/N).
OracleComparison compare_exact_vs_bosonic(int n_molecules, const SweepProfile& sweep,
                                          double g_collective, int excitations = 2,
                                          int steps = 2000);

// Total store+retrieve phase difference on qubit `qubit` between the couplings
// implied by two register occupancy patterns (semiclassical N0 per branch).
// backtrack_retrieve = true runs the retrieve leg along the reversed detuning
// path (the same dressed branch twice), which removes the cancellation.
double fluctuation_phase_error(const RegisterConfig& config, int qubit, const SweepProfile& sweep,
                               const LogicalState& bits_a, const LogicalState& bits_b,
                               bool backtrack_retrieve = false, int steps = 2000);

}  // namespace molens
