#include "molens/ensemble.hpp"

#include "molens/hamiltonians.hpp"
#include "molens/propagator.hpp"
#include "molens/protocols.hpp"

#include <numeric>

namespace molens {

void RegisterConfig::validate() const {
    if (n_qubits < 1) throw ValidationError("RegisterConfig: n_qubits must be >= 1");
    if (n_molecules <= n_qubits)
        throw ValidationError("RegisterConfig: n_molecules must exceed n_qubits");
    if (!(vacuum_rabi > 0.0)) throw ValidationError("RegisterConfig: vacuum_rabi must be positive");
    if (raman_detuning == 0.0)
        throw ValidationError("RegisterConfig: raman_detuning must be nonzero");
    if (!classical_amplitudes.empty() &&
        static_cast<int>(classical_amplitudes.size()) != n_qubits)
        throw ValidationError("RegisterConfig: one classical amplitude per qubit required");
}

std::vector<int> encode(const LogicalState& bits) {
    std::vector<int> occ;
    occ.reserve(bits.bits.size());
    for (int b : bits.bits) {
        if (b != 0 && b != 1) throw ValidationError("encode: bits must be 0 or 1");
        occ.push_back(b);
    }
    return occ;
}

int ground_count(const LogicalState& bits, int n_molecules) {
    int excited = std::accumulate(bits.bits.begin(), bits.bits.end(), 0);
    if (n_molecules < excited)
        throw ValidationError("ground_count: more excitations than molecules");
    return n_molecules - excited;
}

DickeModel::DickeModel(int n_molecules, int n_levels, int per_level_cap, int cavity_cutoff)
    : n_(n_molecules), k_(n_levels), cap_(per_level_cap), cavity_cutoff_(cavity_cutoff) {
    if (n_ < 1 || n_ > max_molecules)
        throw ValidationError("DickeModel: n_molecules must be in [1, 8]");
    if (k_ < 1 || k_ > max_levels) throw ValidationError("DickeModel: n_levels must be 1 or 2");
    if (cap_ < 2) throw ValidationError("DickeModel: per_level_cap must be >= 2");
    if (cavity_cutoff_ < 2) throw ValidationError("DickeModel: cavity cutoff must be >= 2");

    // Enumerate occupation tuples with n_i < cap and sum <= N, mixed-radix order.
    long radix_span = 1;
    for (int i = 0; i < k_; ++i) radix_span *= cap_;
    mol_index_.assign(static_cast<std::size_t>(radix_span), -1);
    std::vector<int> occ(static_cast<std::size_t>(k_), 0);
    for (long code = 0; code < radix_span; ++code) {
        long c = code;
        int total = 0;
        for (int i = k_ - 1; i >= 0; --i) {
            occ[static_cast<std::size_t>(i)] = static_cast<int>(c % cap_);
            total += occ[static_cast<std::size_t>(i)];
            c /= cap_;
        }
        if (total > n_) continue;
        mol_index_[static_cast<std::size_t>(code)] = static_cast<long>(mol_basis_.size());
        mol_basis_.push_back(occ);
    }
    mol_dim_ = static_cast<long>(mol_basis_.size());
    dim_ = mol_dim_ * cavity_cutoff_;
}

long DickeModel::index_of(const std::vector<int>& occ, int cavity_n) const {
    if (static_cast<int>(occ.size()) != k_)
        throw ValidationError("DickeModel: occupation tuple length mismatch");
    if (cavity_n < 0 || cavity_n >= cavity_cutoff_)
        throw ValidationError("DickeModel: cavity occupation out of range");
    long code = 0;
    int total = 0;
    for (int i = 0; i < k_; ++i) {
        if (occ[static_cast<std::size_t>(i)] < 0 || occ[static_cast<std::size_t>(i)] >= cap_)
            throw ValidationError("DickeModel: level occupation out of range");
        total += occ[static_cast<std::size_t>(i)];
        code = code * cap_ + occ[static_cast<std::size_t>(i)];
    }
    if (total > n_) throw ValidationError("DickeModel: more excitations than molecules");
    long mi = mol_index_[static_cast<std::size_t>(code)];
    return mi * cavity_cutoff_ + cavity_n;
}

Vec DickeModel::basis_state(const std::vector<int>& occ, int cavity_n) const {
    Vec v = Vec::Zero(dim_);
    v[index_of(occ, cavity_n)] = 1.0;
    return v;
}

Mat DickeModel::collective_lowering(int level, bool bosonic) const {
    if (level < 0 || level >= k_) throw ValidationError("DickeModel: level index out of range");
    Mat m = Mat::Zero(mol_dim_, mol_dim_);
    for (long j = 0; j < mol_dim_; ++j) {
        const auto& occ = mol_basis_[static_cast<std::size_t>(j)];
        int nl = occ[static_cast<std::size_t>(level)];
        if (nl == 0) continue;
        std::vector<int> low = occ;
        low[static_cast<std::size_t>(level)] = nl - 1;
        long code = 0;
        for (int i = 0; i < k_; ++i) code = code * cap_ + low[static_cast<std::size_t>(i)];
        long i_low = mol_index_[static_cast<std::size_t>(code)];
        int total = std::accumulate(occ.begin(), occ.end(), 0);
        // S^-/sqrt(N): sqrt(n_l (N - total + 1) / N); bosonic limit sqrt(n_l)
        double elem = bosonic ? std::sqrt(static_cast<double>(nl))
                              : std::sqrt(static_cast<double>(nl) * (n_ - total + 1) / n_);
        m(i_low, j) = elem;
    }
    return m;
}

Mat DickeModel::excited_count(int level) const {
    Mat nop = Mat::Zero(mol_dim_, mol_dim_);
    for (long j = 0; j < mol_dim_; ++j)
        nop(j, j) = mol_basis_[static_cast<std::size_t>(j)][static_cast<std::size_t>(level)];
    return nop;
}

namespace {

Mat kron(const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (long i = 0; i < a.rows(); ++i)
        for (long j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

Mat cavity_lowering(int cutoff) {
    Mat c = Mat::Zero(cutoff, cutoff);
    for (int n = 1; n < cutoff; ++n) c(n - 1, n) = std::sqrt(static_cast<double>(n));
    return c;
}

}  // namespace

Mat DickeModel::hamiltonian(int level, double g_collective, double delta) const {
    const double chi = g_collective / std::sqrt(static_cast<double>(n_));
    Mat splus = collective_lowering(level, false).adjoint() * std::sqrt(static_cast<double>(n_));
    Mat idc = Mat::Identity(cavity_cutoff_, cavity_cutoff_);
    Mat c = cavity_lowering(cavity_cutoff_);
    return chi * (kron(splus, c) + kron(splus.adjoint().eval(), c.adjoint().eval())) +
           delta * kron(excited_count(level), idc);
}

Mat DickeModel::bosonic_hamiltonian(int level, double g_collective, double delta) const {
    Mat m = collective_lowering(level, true);
    Mat idc = Mat::Identity(cavity_cutoff_, cavity_cutoff_);
    Mat c = cavity_lowering(cavity_cutoff_);
    Mat h = g_collective * (kron(m.adjoint().eval(), c) + kron(m, c.adjoint().eval())) +
            delta * kron(excited_count(level), idc);
    return h;
}

Mat DickeModel::commutator(int level) const {
    Mat m = collective_lowering(level, false);
    return m * m.adjoint() - m.adjoint() * m;
}

std::vector<int> DickeModel::sector_labels() const {
    std::vector<int> labels(static_cast<std::size_t>(dim_));
    for (long j = 0; j < mol_dim_; ++j) {
        int total = std::accumulate(mol_basis_[static_cast<std::size_t>(j)].begin(),
                                    mol_basis_[static_cast<std::size_t>(j)].end(), 0);
        for (int nc = 0; nc < cavity_cutoff_; ++nc)
            labels[static_cast<std::size_t>(j * cavity_cutoff_ + nc)] = total + nc;
    }
    return labels;
}

OracleComparison compare_exact_vs_bosonic(int n_molecules, const SweepProfile& sweep,
                                          double g_collective, int excitations, int steps) {
    if (excitations < 1) throw ValidationError("compare_exact_vs_bosonic: excitations must be >= 1");
    int cap = excitations + 1;
    int cavity_cutoff = excitations + 2;  // room for the fully transferred state plus buffer
    DickeModel model(n_molecules, 1, cap, cavity_cutoff);

    std::vector<int> start{excitations};
    std::vector<int> finish{0};
    Vec v0 = model.basis_state(start, 0);
    long target_idx = model.index_of(finish, excitations);
    auto sectors = model.sector_labels();

    auto run = [&](bool exact) {
        auto build = [&](double delta) {
            return exact ? model.hamiltonian(0, g_collective, delta)
                         : model.bosonic_hamiltonian(0, g_collective, delta);
        };
        Mat w0 = frame_alignment(build(sweep_value(sweep, 0.0)), sectors);
        Mat wT = frame_alignment(build(sweep_value(sweep, sweep.duration)), sectors);
        EvolutionSpec spec;
        spec.hamiltonian = [&](double t) { return build(sweep_value(sweep, t)); };
        spec.t0 = 0.0;
        spec.t1 = sweep.duration;
        spec.control = FixedSteps{steps};
        Mat block = evolve_block(w0 * v0, spec);
        return Vec(wT.adjoint() * block.col(0));
    };

    Vec out_exact = run(true);
    Vec out_bosonic = run(false);

    OracleComparison cmp;
    cmp.transfer_exact = std::norm(out_exact[target_idx]);
    cmp.transfer_bosonic = std::norm(out_bosonic[target_idx]);
    cmp.state_overlap_gap = 1.0 - std::norm(out_bosonic.dot(out_exact));
    return cmp;
}

double fluctuation_phase_error(const RegisterConfig& config, int qubit, const SweepProfile& sweep,
                               const LogicalState& bits_a, const LogicalState& bits_b,
                               bool backtrack_retrieve, int steps) {
    config.validate();
    if (qubit < 0 || qubit >= config.n_qubits)
        throw ValidationError("fluctuation_phase_error: qubit index out of range");
    if (!sweep.odd_family())
        throw ValidationError("fluctuation_phase_error: sweep must be an odd family");

    double omega = config.classical_amplitudes.empty()
                       ? 1.0
                       : config.classical_amplitudes[static_cast<std::size_t>(qubit)];

    auto pair_phase = [&](const LogicalState& bits) {
        double n0 = static_cast<double>(ground_count(bits, config.n_molecules));
        double g = effective_coupling(omega, config.vacuum_rabi, n0, config.raman_detuning);

        RegisterLayout layout = make_register_layout(1);
        ProtocolOptions opts;
        opts.steps_per_sweep = steps;
        StateVector psi = basis_state(layout.space, {1, 0, 0});
        auto store = swap_molecule_cavity(psi, layout, 0, Transfer::store, sweep, g, opts);
        SweepProfile back = backtrack_retrieve ? sweep.reversed() : sweep;
        auto retrieve =
            swap_molecule_cavity(store.state, layout, 0, Transfer::retrieve, back, g, opts);
        long idx = layout.space.index_of(std::vector<int>{1, 0, 0});
        return std::arg(retrieve.state.amplitudes[idx]);
    };

    return wrap_angle(pair_phase(bits_a) - pair_phase(bits_b));
}

}  // namespace molens
