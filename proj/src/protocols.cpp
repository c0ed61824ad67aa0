#include "molens/protocols.hpp"

#include "molens/propagator.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>

namespace molens {

RegisterLayout make_register_layout(int n_qubits, int mol_cutoff, int cavity_cutoff) {
    if (n_qubits < 0) throw ValidationError("make_register_layout: n_qubits must be >= 0");
    std::vector<ModeSpec> modes;
    for (int q = 0; q < n_qubits; ++q)
        modes.push_back(ModeSpec::bosonic(mol_cutoff, "m" + std::to_string(q + 1)));
    modes.push_back(ModeSpec::bosonic(cavity_cutoff, "cavity"));
    modes.push_back(ModeSpec::two_level("cpb"));
    RegisterLayout layout;
    layout.space = make_space(std::move(modes));
    layout.n_qubits = n_qubits;
    layout.cavity_mode = n_qubits;
    layout.cpb_mode = n_qubits + 1;
    layout.mol_cutoff = mol_cutoff;
    layout.cavity_cutoff = cavity_cutoff;
    return layout;
}

Mat frame_alignment(const Mat& h, const std::vector<int>& sector_labels) {
    const long dim = h.rows();
    if (static_cast<long>(sector_labels.size()) != dim)
        throw ValidationError("frame_alignment: sector label count mismatch");
    Mat w = Mat::Zero(dim, dim);

    std::map<int, std::vector<long>> sectors;
    for (long i = 0; i < dim; ++i) sectors[sector_labels[static_cast<std::size_t>(i)]].push_back(i);

    for (const auto& [label, idx] : sectors) {
        const long d = static_cast<long>(idx.size());
        Mat block(d, d);
        for (long i = 0; i < d; ++i)
            for (long j = 0; j < d; ++j)
                block(i, j) = h(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
        Eigen::SelfAdjointEigenSolver<Mat> es(block);
        if (es.info() != Eigen::Success)
            throw std::runtime_error("frame_alignment: eigendecomposition failed");
        std::vector<bool> used(static_cast<std::size_t>(d), false);
        for (long j = 0; j < d; ++j) {
            Vec v = es.eigenvectors().col(j);
            long best = -1;
            double best_mag = -1.0;
            for (long i = 0; i < d; ++i) {
                if (used[static_cast<std::size_t>(i)]) continue;
                double mag = std::abs(v[i]);
                if (mag > best_mag) {
                    best_mag = mag;
                    best = i;
                }
            }
            used[static_cast<std::size_t>(best)] = true;
            Complex anchor = v[best];
            v *= std::conj(anchor) / std::abs(anchor);
            for (long i = 0; i < d; ++i) w(idx[static_cast<std::size_t>(i)],
                                          idx[static_cast<std::size_t>(best)]) = v[i];
        }
    }
    return w;
}

namespace {

// Pair space for a sweep leg: [addressed mode, cavity] for molecular swaps
// (mode slower), [cavity, CPB] for CPB swaps.
struct PairContext {
    CompositeSpace space;
    int mode_a;               // index in pair space of the non-cavity mode
    int cavity;               // index in pair space of the cavity
    std::vector<int> sectors; // total-occupation labels
};

PairContext molecular_pair(const RegisterLayout& layout) {
    PairContext ctx;
    ctx.space = make_space({ModeSpec::bosonic(layout.mol_cutoff, "m"),
                            ModeSpec::bosonic(layout.cavity_cutoff, "cavity")});
    ctx.mode_a = 0;
    ctx.cavity = 1;
    ctx.sectors = ctx.space.total_occupation_labels();
    return ctx;
}

PairContext cpb_pair(const RegisterLayout& layout) {
    PairContext ctx;
    ctx.space = make_space({ModeSpec::bosonic(layout.cavity_cutoff, "cavity"),
                            ModeSpec::two_level("cpb")});
    ctx.mode_a = 1;
    ctx.cavity = 0;
    ctx.sectors = ctx.space.total_occupation_labels();
    return ctx;
}

Mat pair_hamiltonian(const PairContext& ctx, double g, double delta) {
    if (ctx.space.mode(ctx.mode_a).kind == ModeKind::two_level)
        return h_cpb(ctx.space, ctx.cavity, ctx.mode_a, g, delta).entries;
    return h_molecule(ctx.space, ctx.mode_a, ctx.cavity, g, delta).entries;
}

// Aligned leg unitary on the pair space: W(T)^dag U W(0).
Mat aligned_leg_unitary(const PairContext& ctx, const SweepProfile& sweep, double g, int steps) {
    Mat w0 = frame_alignment(pair_hamiltonian(ctx, g, sweep_value(sweep, 0.0)), ctx.sectors);
    Mat wT = frame_alignment(pair_hamiltonian(ctx, g, sweep_value(sweep, sweep.duration)),
                             ctx.sectors);
    EvolutionSpec spec;
    spec.hamiltonian = [&](double t) { return pair_hamiltonian(ctx, g, sweep_value(sweep, t)); };
    spec.t0 = 0.0;
    spec.t1 = sweep.duration;
    spec.control = FixedSteps{steps};
    Mat u = propagator_matrix(ctx.space.dim(), spec);
    return wT.adjoint() * u * w0;
}

void check_sweep_preconditions(const SweepProfile& sweep, double g, const ProtocolOptions& opts,
                               const char* who) {
    if (!(g > 0.0)) throw ProtocolError(std::string(who) + ": coupling must be positive");
    double ratio = std::abs(sweep_value(sweep, 0.0)) / g;
    if (ratio < opts.min_detuning_ratio) {
        std::ostringstream os;
        os << who << ": |delta(0)|/g = " << ratio << " below the required "
           << opts.min_detuning_ratio;
        throw ProtocolError(os.str());
    }
    double margin = adiabaticity_margin(sweep, g, 0);
    if (margin > opts.max_adiabaticity) {
        std::ostringstream os;
        os << who << ": adiabaticity margin " << margin << " exceeds " << opts.max_adiabaticity;
        throw ProtocolError(os.str());
    }
}

// Population of basis states with more than one excitation in the addressed
// pair of register modes.
double multi_excitation_population(const StateVector& state, int mode_x, int mode_y) {
    double pop = 0.0;
    for (long i = 0; i < state.space.dim(); ++i) {
        auto occ = state.space.occupations_of(i);
        if (occ[static_cast<std::size_t>(mode_x)] + occ[static_cast<std::size_t>(mode_y)] > 1)
            pop += std::norm(state.amplitudes[i]);
    }
    return pop;
}

double mode_population(const StateVector& state, int mode) {
    double pop = 0.0;
    for (long i = 0; i < state.space.dim(); ++i) {
        auto occ = state.space.occupations_of(i);
        if (occ[static_cast<std::size_t>(mode)] > 0) pop += std::norm(state.amplitudes[i]);
    }
    return pop;
}

}  // namespace

PhaseReport swap_leg_phase(const SweepProfile& sweep, double g, bool excitation_in_mode,
                           Branch* branch_out) {
    const double d0 = sweep_value(sweep, 0.0);
    Branch branch;
    if (excitation_in_mode)
        branch = d0 > 0.0 ? Branch::plus : Branch::minus;
    else
        branch = d0 > 0.0 ? Branch::minus : Branch::plus;
    if (branch_out) *branch_out = branch;

    double dyn = phase_integral(sweep, g, 0, branch) + superadiabatic_correction(sweep, g, 0, branch);
    const double dT = sweep_value(sweep, sweep.duration);
    const bool crossing = (d0 > 0.0) != (dT > 0.0);
    // In the real-eigenvector gauge the transported branch-minus vector flips
    // sign across a resonance crossing; the pair-level result (the -pi
    // geometric phase of a closed great circle, or its absence) is gauge
    // invariant.
    double geo = (crossing && branch == Branch::minus) ? -pi : 0.0;
    return PhaseReport::make(dyn, geo);
}

namespace {

struct LegResult {
    Mat unitary_full;  // lifted to the register space
    PhaseReport phase;
    Branch branch;
    double transfer_error;
    double adiabaticity;
};

LegResult sweep_leg(const RegisterLayout& layout, const PairContext& ctx, int reg_mode_a,
                    int reg_mode_b, const SweepProfile& sweep, double g, bool excitation_in_mode,
                    const ProtocolOptions& opts, const char* who) {
    check_sweep_preconditions(sweep, g, opts, who);

    LegResult leg;
    leg.phase = swap_leg_phase(sweep, g, excitation_in_mode, &leg.branch);
    leg.adiabaticity = adiabaticity_margin(sweep, g, 0);

    Mat u_pair = aligned_leg_unitary(ctx, sweep, g, opts.steps_per_sweep);

    // Transfer error read off the single-excitation block of the leg unitary.
    std::vector<int> from(2, 0), to(2, 0);
    from[static_cast<std::size_t>(excitation_in_mode ? ctx.mode_a : ctx.cavity)] = 1;
    to[static_cast<std::size_t>(excitation_in_mode ? ctx.cavity : ctx.mode_a)] = 1;
    Complex amp = u_pair(ctx.space.index_of(to), ctx.space.index_of(from));
    leg.transfer_error = 1.0 - std::norm(amp);
    if (leg.transfer_error > opts.transfer_tolerance) {
        std::ostringstream os;
        os << who << ": population transfer error " << leg.transfer_error << " exceeds "
           << opts.transfer_tolerance;
        throw ProtocolError(os.str());
    }

    leg.unitary_full = lift_two(layout.space, reg_mode_a, reg_mode_b, u_pair);
    return leg;
}

}  // namespace

SwapResult swap_molecule_cavity(const StateVector& state, const RegisterLayout& layout, int qubit,
                                Transfer transfer, const SweepProfile& sweep, double g,
                                const ProtocolOptions& opts) {
    if (qubit < 0 || qubit >= layout.n_qubits)
        throw ProtocolError("swap_molecule_cavity: qubit index out of range");
    if (!sweep.odd_family())
        throw ProtocolError("swap_molecule_cavity: sweep must be an odd family");
    if (multi_excitation_population(state, qubit, layout.cavity_mode) > 1e-9)
        throw ProtocolError("swap_molecule_cavity: more than one excitation in the addressed pair");

    bool excitation_in_mode = (transfer == Transfer::store);
    auto leg = sweep_leg(layout, molecular_pair(layout), qubit, layout.cavity_mode, sweep, g,
                         excitation_in_mode, opts, "swap_molecule_cavity");
    return SwapResult{StateVector{state.space, leg.unitary_full * state.amplitudes}, leg.phase,
                      leg.branch, leg.transfer_error, leg.adiabaticity};
}

SwapResult swap_cavity_cpb(const StateVector& state, const RegisterLayout& layout,
                           Transfer transfer, const SweepProfile& sweep, double g,
                           const ProtocolOptions& opts) {
    if (!sweep.odd_family()) throw ProtocolError("swap_cavity_cpb: sweep must be an odd family");
    if (multi_excitation_population(state, layout.cavity_mode, layout.cpb_mode) > 1e-9)
        throw ProtocolError("swap_cavity_cpb: more than one excitation in the addressed pair");
    if (transfer == Transfer::store && mode_population(state, layout.cpb_mode) > 1e-9)
        throw ProtocolError("swap_cavity_cpb: CPB must start in its ground state for store");

    bool excitation_in_mode = (transfer == Transfer::retrieve);  // mode = CPB
    auto leg = sweep_leg(layout, cpb_pair(layout), layout.cavity_mode, layout.cpb_mode, sweep, g,
                         excitation_in_mode, opts, "swap_cavity_cpb");
    return SwapResult{StateVector{state.space, leg.unitary_full * state.amplitudes}, leg.phase,
                      leg.branch, leg.transfer_error, leg.adiabaticity};
}

StateVector cpb_rotation(const StateVector& state, const RegisterLayout& layout,
                         const DriveSpec& drive, const ProtocolOptions& opts) {
    (void)opts;
    if (mode_population(state, layout.cavity_mode) > 1e-9)
        throw ProtocolError("cpb_rotation: cavity must be in vacuum during the rotation");
    Mat h = h_drive(layout.space, layout.cpb_mode, drive).entries;
    Mat u = expm_hermitian(h, drive.duration);
    return StateVector{state.space, u * state.amplitudes};
}

namespace {

struct CondPhases {
    double p01, p10, p11;  // analytic diagonal phases on |01>, |10>, |11>
};

CondPhases conditional_phase_analytics(const SweepProfile& sweep, double g) {
    CondPhases c{};
    c.p01 = phase_integral(sweep, g, 0, Branch::minus) +
            superadiabatic_correction(sweep, g, 0, Branch::minus);
    c.p10 = phase_integral(sweep, g, 0, Branch::plus) +
            superadiabatic_correction(sweep, g, 0, Branch::plus);
    c.p11 = phase_integral(sweep, g, 1, Branch::plus) +
            superadiabatic_correction(sweep, g, 1, Branch::plus);
    return c;
}

}  // namespace

std::pair<StateVector, GateReport> conditional_phase(const StateVector& state,
                                                     const RegisterLayout& layout,
                                                     const SweepProfile& sweep, double g,
                                                     const ProtocolOptions& opts) {
    if (sweep.family != SweepFamily::quadratic_offset)
        throw ProtocolError("conditional_phase: sweep must be quadratic_offset");
    check_sweep_preconditions(sweep, g, opts, "conditional_phase");
    if (layout.cavity_cutoff < 3)
        throw ProtocolError("conditional_phase: cavity cutoff must be >= 3");

    PairContext ctx = cpb_pair(layout);
    Mat u_pair = aligned_leg_unitary(ctx, sweep, g, opts.steps_per_sweep);

    // Logical order |control target> with the control on the CPB:
    // |00>=(0,g) |01>=(1,g) |10>=(0,e) |11>=(1,e)
    std::vector<long> comp{ctx.space.index_of(std::vector<int>{0, 0}),
                           ctx.space.index_of(std::vector<int>{1, 0}),
                           ctx.space.index_of(std::vector<int>{0, 1}),
                           ctx.space.index_of(std::vector<int>{1, 1})};

    CondPhases ph = conditional_phase_analytics(sweep, g);

    GateReport report;
    report.achieved = Mat::Zero(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            report.achieved(i, j) = u_pair(comp[static_cast<std::size_t>(i)],
                                           comp[static_cast<std::size_t>(j)]);
    Vec diag(4);
    diag << 1.0, std::exp(Complex(0, ph.p01)), std::exp(Complex(0, ph.p10)),
        -std::exp(Complex(0, ph.p01 + ph.p10));
    report.target = diag.asDiagonal();  // ledgered CZ: singles * diag(1,1,1,-1)
    report.process_fidelity = process_fidelity(report.achieved, report.target);
    report.leakage = leakage(u_pair, comp);
    report.phase_ledger = {wrap_angle(ph.p10), wrap_angle(ph.p01)};  // control, target
    if (report.leakage > opts.max_leakage) {
        std::ostringstream os;
        os << "conditional_phase: leakage " << report.leakage << " exceeds " << opts.max_leakage;
        report.failure = os.str();
    }

    Mat u_full = lift_two(layout.space, layout.cavity_mode, layout.cpb_mode, u_pair);
    return {StateVector{state.space, u_full * state.amplitudes}, std::move(report)};
}

ProtocolStep ProtocolStep::mol_swap(int qubit, Transfer t, SweepProfile sweep, double g) {
    ProtocolStep s;
    s.kind = StepKind::mol_cav_swap;
    s.qubit = qubit;
    s.transfer = t;
    s.sweep = std::move(sweep);
    s.coupling = g;
    return s;
}

ProtocolStep ProtocolStep::cpb_swap(Transfer t, SweepProfile sweep, double g) {
    ProtocolStep s;
    s.kind = StepKind::cav_cpb_swap;
    s.transfer = t;
    s.sweep = std::move(sweep);
    s.coupling = g;
    return s;
}

ProtocolStep ProtocolStep::rotation(DriveSpec drive) {
    ProtocolStep s;
    s.kind = StepKind::cpb_rotation;
    s.drive = drive;
    return s;
}

ProtocolStep ProtocolStep::cond_phase(SweepProfile sweep, double g) {
    ProtocolStep s;
    s.kind = StepKind::conditional_phase;
    s.sweep = std::move(sweep);
    s.coupling = g;
    return s;
}

namespace {

constexpr int kNoToken = -1;

struct TokenState {
    std::vector<int> location;  // per qubit: 0 = molecule, 1 = cavity, 2 = cpb
    int cavity_token = kNoToken;
    int cpb_token = kNoToken;
};

[[noreturn]] void step_error(std::size_t index, const std::string& what) {
    throw ProtocolError("step " + std::to_string(index) + ": " + what);
}

}  // namespace

std::pair<StateVector, GateReport> run_sequence(const StateVector& state,
                                                const RegisterLayout& layout,
                                                const std::vector<ProtocolStep>& steps,
                                                const ProtocolOptions& opts) {
    if (!(state.space == layout.space))
        throw ProtocolError("run_sequence: state is not on the register space");
    if (mode_population(state, layout.cavity_mode) > 1e-9 ||
        mode_population(state, layout.cpb_mode) > 1e-9)
        throw ProtocolError("run_sequence: cavity and CPB must start in their ground states");

    const int K = layout.n_qubits;
    const long dim_logical = 1L << K;

    // Computational basis columns (all tokens in the molecules).
    Mat columns(layout.space.dim(), dim_logical);
    std::vector<std::vector<int>> logical_bits(static_cast<std::size_t>(dim_logical));
    for (long j = 0; j < dim_logical; ++j) {
        std::vector<int> occ(static_cast<std::size_t>(layout.space.num_modes()), 0);
        std::vector<int> bits(static_cast<std::size_t>(K), 0);
        for (int q = 0; q < K; ++q) {
            int bit = static_cast<int>((j >> (K - 1 - q)) & 1);
            bits[static_cast<std::size_t>(q)] = bit;
            occ[static_cast<std::size_t>(q)] = bit;
        }
        logical_bits[static_cast<std::size_t>(j)] = bits;
        columns(layout.space.index_of(occ), j) = 1.0;
    }

    Vec psi = state.amplitudes;
    Mat target = Mat::Identity(dim_logical, dim_logical);
    std::vector<double> ledger(static_cast<std::size_t>(K), 0.0);

    TokenState tokens;
    tokens.location.assign(static_cast<std::size_t>(K), 0);

    auto apply_logical_diag = [&](int qubit, Complex factor) {
        for (long j = 0; j < dim_logical; ++j)
            if (logical_bits[static_cast<std::size_t>(j)][static_cast<std::size_t>(qubit)])
                target.row(j) *= factor;
    };

    for (std::size_t si = 0; si < steps.size(); ++si) {
        const ProtocolStep& st = steps[si];
        Mat u_full;
        try {
            switch (st.kind) {
                case StepKind::mol_cav_swap: {
                    if (st.qubit < 0 || st.qubit >= K) step_error(si, "qubit index out of range");
                    bool store = st.transfer == Transfer::store;
                    if (store) {
                        if (tokens.location[static_cast<std::size_t>(st.qubit)] != 0)
                            step_error(si, "mol_cav_swap store: qubit is not in its molecular mode");
                        if (tokens.cavity_token != kNoToken)
                            step_error(si, "mol_cav_swap store: cavity is occupied");
                    } else {
                        if (tokens.cavity_token != st.qubit)
                            step_error(si, "mol_cav_swap retrieve: qubit is not in the cavity");
                    }
                    auto leg = sweep_leg(layout, molecular_pair(layout), st.qubit,
                                         layout.cavity_mode, st.sweep, st.coupling, store, opts,
                                         "mol_cav_swap");
                    u_full = std::move(leg.unitary_full);
                    double s = leg.phase.geometric;
                    apply_logical_diag(st.qubit,
                                       std::exp(Complex(0, leg.phase.dynamical + s)));
                    ledger[static_cast<std::size_t>(st.qubit)] += leg.phase.dynamical + s;
                    if (store) {
                        tokens.location[static_cast<std::size_t>(st.qubit)] = 1;
                        tokens.cavity_token = st.qubit;
                    } else {
                        tokens.location[static_cast<std::size_t>(st.qubit)] = 0;
                        tokens.cavity_token = kNoToken;
                    }
                    break;
                }
                case StepKind::cav_cpb_swap: {
                    bool store = st.transfer == Transfer::store;  // to the CPB
                    int q;
                    if (store) {
                        if (tokens.cavity_token == kNoToken)
                            step_error(si, "cav_cpb_swap store: cavity holds no qubit");
                        if (tokens.cpb_token != kNoToken)
                            step_error(si, "cav_cpb_swap store: CPB is occupied");
                        q = tokens.cavity_token;
                    } else {
                        if (tokens.cpb_token == kNoToken)
                            step_error(si, "cav_cpb_swap retrieve: CPB holds no qubit");
                        if (tokens.cavity_token != kNoToken)
                            step_error(si, "cav_cpb_swap retrieve: cavity is occupied");
                        q = tokens.cpb_token;
                    }
                    auto leg = sweep_leg(layout, cpb_pair(layout), layout.cavity_mode,
                                         layout.cpb_mode, st.sweep, st.coupling, !store, opts,
                                         "cav_cpb_swap");
                    u_full = std::move(leg.unitary_full);
                    double s = leg.phase.geometric;
                    apply_logical_diag(q, std::exp(Complex(0, leg.phase.dynamical + s)));
                    ledger[static_cast<std::size_t>(q)] += leg.phase.dynamical + s;
                    if (store) {
                        tokens.location[static_cast<std::size_t>(q)] = 2;
                        tokens.cpb_token = q;
                        tokens.cavity_token = kNoToken;
                    } else {
                        tokens.location[static_cast<std::size_t>(q)] = 1;
                        tokens.cavity_token = q;
                        tokens.cpb_token = kNoToken;
                    }
                    break;
                }
                case StepKind::cpb_rotation: {
                    if (tokens.cpb_token == kNoToken)
                        step_error(si, "cpb_rotation: CPB holds no qubit");
                    if (tokens.cavity_token != kNoToken)
                        step_error(si, "cpb_rotation: cavity must be empty during the rotation");
                    Mat h = h_drive(layout.space, layout.cpb_mode, st.drive).entries;
                    u_full = expm_hermitian(h, st.drive.duration);
                    // SU(2) rotation on the resident qubit.
                    int q = tokens.cpb_token;
                    double half = 0.5 * st.drive.rabi * st.drive.duration;
                    Mat rot(2, 2);
                    rot(0, 0) = std::cos(half);
                    rot(1, 1) = std::cos(half);
                    rot(0, 1) = std::sin(half) * Complex(0, -1.0) *
                                std::exp(Complex(0, -st.drive.phase));
                    rot(1, 0) = std::sin(half) * Complex(0, -1.0) *
                                std::exp(Complex(0, st.drive.phase));
                    Mat big = Mat::Zero(dim_logical, dim_logical);
                    for (long jj = 0; jj < dim_logical; ++jj) {
                        int bit = logical_bits[static_cast<std::size_t>(jj)]
                                              [static_cast<std::size_t>(q)];
                        for (int nb = 0; nb < 2; ++nb) {
                            if (rot(nb, bit) == Complex(0, 0)) continue;
                            long ii = jj;
                            if (nb != bit) ii = jj ^ (1L << (K - 1 - q));
                            big(ii, jj) = rot(nb, bit);
                        }
                    }
                    target = big * target;
                    break;
                }
                case StepKind::conditional_phase: {
                    if (tokens.cpb_token == kNoToken)
                        step_error(si, "conditional_phase: control qubit not loaded in the CPB");
                    if (tokens.cavity_token == kNoToken)
                        step_error(si, "conditional_phase: target qubit not loaded in the cavity");
                    if (st.sweep.family != SweepFamily::quadratic_offset)
                        step_error(si, "conditional_phase: sweep must be quadratic_offset");
                    check_sweep_preconditions(st.sweep, st.coupling, opts, "conditional_phase");
                    PairContext ctx = cpb_pair(layout);
                    Mat u_pair = aligned_leg_unitary(ctx, st.sweep, st.coupling,
                                                     opts.steps_per_sweep);
                    u_full = lift_two(layout.space, layout.cavity_mode, layout.cpb_mode, u_pair);
                    CondPhases ph = conditional_phase_analytics(st.sweep, st.coupling);
                    int qc = tokens.cpb_token, qt = tokens.cavity_token;
                    for (long jj = 0; jj < dim_logical; ++jj) {
                        int bc = logical_bits[static_cast<std::size_t>(jj)]
                                             [static_cast<std::size_t>(qc)];
                        int bt = logical_bits[static_cast<std::size_t>(jj)]
                                             [static_cast<std::size_t>(qt)];
                        double phase = 0.0;
                        if (bc == 0 && bt == 1) phase = ph.p01;
                        if (bc == 1 && bt == 0) phase = ph.p10;
                        if (bc == 1 && bt == 1) phase = ph.p11;
                        target.row(jj) *= std::exp(Complex(0, phase));
                    }
                    ledger[static_cast<std::size_t>(qc)] += ph.p10;
                    ledger[static_cast<std::size_t>(qt)] += ph.p01;
                    break;
                }
            }
        } catch (const ProtocolError& e) {
            std::string msg = e.what();
            if (msg.rfind("step ", 0) == 0) throw;
            step_error(si, msg);
        }
        psi = u_full * psi;
        columns = u_full * columns;
    }

    // Computational basis at the final token layout.
    GateReport report;
    report.achieved = Mat::Zero(dim_logical, dim_logical);
    std::vector<long> comp_idx(static_cast<std::size_t>(dim_logical));
    for (long i = 0; i < dim_logical; ++i) {
        std::vector<int> occ(static_cast<std::size_t>(layout.space.num_modes()), 0);
        for (int q = 0; q < K; ++q) {
            int bit = logical_bits[static_cast<std::size_t>(i)][static_cast<std::size_t>(q)];
            int loc = tokens.location[static_cast<std::size_t>(q)];
            int mode = (loc == 0) ? q : (loc == 1 ? layout.cavity_mode : layout.cpb_mode);
            occ[static_cast<std::size_t>(mode)] += bit;
        }
        comp_idx[static_cast<std::size_t>(i)] = layout.space.index_of(occ);
    }
    for (long i = 0; i < dim_logical; ++i)
        for (long j = 0; j < dim_logical; ++j)
            report.achieved(i, j) = columns(comp_idx[static_cast<std::size_t>(i)], j);

    report.target = target;
    report.process_fidelity = process_fidelity(report.achieved, report.target);
    double leak = 0.0;
    for (long j = 0; j < dim_logical; ++j) {
        double inside = 0.0;
        for (long i = 0; i < dim_logical; ++i)
            inside += std::norm(report.achieved(i, j));
        leak += 1.0 - inside;
    }
    report.leakage = leak / static_cast<double>(dim_logical);
    report.phase_ledger.resize(static_cast<std::size_t>(K));
    for (int q = 0; q < K; ++q)
        report.phase_ledger[static_cast<std::size_t>(q)] =
            wrap_angle(ledger[static_cast<std::size_t>(q)]);

    return {StateVector{state.space, std::move(psi)}, std::move(report)};
}

namespace presets {

SweepProfile mol_swap_sweep() {
    return SweepProfile::cubic(mol_swap_delta0, mol_swap_duration, SweepDirection::reversed);
}

SweepProfile cpb_store_sweep(bool refined) {
    return SweepProfile::cubic(refined ? cpb_swap_delta0_refined : cpb_swap_delta0,
                               refined ? cpb_swap_duration_refined : cpb_swap_duration,
                               SweepDirection::reversed);
}

SweepProfile cpb_retrieve_sweep(bool refined) {
    return cpb_store_sweep(refined).reversed();
}

SweepProfile cz_sweep(bool refined) {
    return SweepProfile::quadratic(refined ? cz_sweep_a_refined : cz_sweep_a,
                                   refined ? cz_sweep_b_refined : cz_sweep_b,
                                   refined ? cz_sweep_duration_refined : cz_sweep_duration);
}

}  // namespace presets

std::vector<ProtocolStep> single_qubit_gate_macro(int qubit, const DriveSpec& drive, double g_mol,
                                                  double g_cpb) {
    return {
        ProtocolStep::mol_swap(qubit, Transfer::store, presets::mol_swap_sweep(), g_mol),
        ProtocolStep::cpb_swap(Transfer::store, presets::cpb_store_sweep(), g_cpb),
        ProtocolStep::rotation(drive),
        ProtocolStep::cpb_swap(Transfer::retrieve, presets::cpb_retrieve_sweep(), g_cpb),
        ProtocolStep::mol_swap(qubit, Transfer::retrieve, presets::mol_swap_sweep(), g_mol),
    };
}

std::vector<ProtocolStep> cz_macro(int control, int target, double g_mol, double g_cpb) {
    return {
        ProtocolStep::mol_swap(control, Transfer::store, presets::mol_swap_sweep(), g_mol),
        ProtocolStep::cpb_swap(Transfer::store, presets::cpb_store_sweep(), g_cpb),
        ProtocolStep::mol_swap(target, Transfer::store, presets::mol_swap_sweep(), g_mol),
        ProtocolStep::cond_phase(presets::cz_sweep(), g_cpb),
        ProtocolStep::mol_swap(target, Transfer::retrieve, presets::mol_swap_sweep(), g_mol),
        ProtocolStep::cpb_swap(Transfer::retrieve, presets::cpb_retrieve_sweep(), g_cpb),
        ProtocolStep::mol_swap(control, Transfer::retrieve, presets::mol_swap_sweep(), g_mol),
    };
}

}  // namespace molens
