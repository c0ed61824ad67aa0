#include "molens/hilbert.hpp"

#include <numeric>

namespace molens {

ModeSpec ModeSpec::bosonic(int cutoff, std::string label) {
    return ModeSpec{ModeKind::bosonic, cutoff, std::move(label)};
}

ModeSpec ModeSpec::two_level(std::string label) {
    return ModeSpec{ModeKind::two_level, 2, std::move(label)};
}

CompositeSpace::CompositeSpace(std::vector<ModeSpec> modes) : modes_(std::move(modes)) {
    if (modes_.empty()) throw ValidationError("CompositeSpace: mode list is empty");
    dim_ = 1;
    for (const auto& m : modes_) {
        if (m.cutoff < 2) throw ValidationError("CompositeSpace: cutoff must be >= 2");
        if (m.kind == ModeKind::two_level && m.cutoff != 2)
            throw ValidationError("CompositeSpace: two_level mode must have cutoff 2");
        dim_ *= m.cutoff;
    }
}

const ModeSpec& CompositeSpace::mode(int k) const {
    if (k < 0 || k >= num_modes()) throw ValidationError("CompositeSpace: mode index out of range");
    return modes_[static_cast<std::size_t>(k)];
}

long CompositeSpace::index_of(std::span<const int> occupations) const {
    if (static_cast<int>(occupations.size()) != num_modes())
        throw ValidationError("index_of: one occupation per mode required");
    long idx = 0;
    for (int k = 0; k < num_modes(); ++k) {
        int o = occupations[static_cast<std::size_t>(k)];
        if (o < 0 || o >= modes_[static_cast<std::size_t>(k)].cutoff)
            throw ValidationError("index_of: occupation out of range for mode " + std::to_string(k));
        idx = idx * modes_[static_cast<std::size_t>(k)].cutoff + o;
    }
    return idx;
}

std::vector<int> CompositeSpace::occupations_of(long index) const {
    if (index < 0 || index >= dim_) throw ValidationError("occupations_of: index out of range");
    std::vector<int> occ(static_cast<std::size_t>(num_modes()));
    for (int k = num_modes() - 1; k >= 0; --k) {
        int c = modes_[static_cast<std::size_t>(k)].cutoff;
        occ[static_cast<std::size_t>(k)] = static_cast<int>(index % c);
        index /= c;
    }
    return occ;
}

std::vector<int> CompositeSpace::total_occupation_labels() const {
    std::vector<int> labels(static_cast<std::size_t>(dim_));
    for (long i = 0; i < dim_; ++i) {
        auto occ = occupations_of(i);
        labels[static_cast<std::size_t>(i)] = std::accumulate(occ.begin(), occ.end(), 0);
    }
    return labels;
}

bool CompositeSpace::operator==(const CompositeSpace& other) const {
    if (dim_ != other.dim_ || modes_.size() != other.modes_.size()) return false;
    for (std::size_t k = 0; k < modes_.size(); ++k) {
        if (modes_[k].kind != other.modes_[k].kind || modes_[k].cutoff != other.modes_[k].cutoff)
            return false;
    }
    return true;
}

CompositeSpace make_space(std::vector<ModeSpec> modes) {
    return CompositeSpace(std::move(modes));
}

StateVector basis_state(const CompositeSpace& space, std::span<const int> occupations) {
    StateVector psi{space, Vec::Zero(space.dim())};
    psi.amplitudes[space.index_of(occupations)] = 1.0;
    return psi;
}

StateVector basis_state(const CompositeSpace& space, std::initializer_list<int> occupations) {
    std::vector<int> occ(occupations);
    return basis_state(space, std::span<const int>(occ));
}

namespace {

Mat local_lowering(const ModeSpec& mode) {
    Mat a = Mat::Zero(mode.cutoff, mode.cutoff);
    for (int n = 1; n < mode.cutoff; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return a;
}

}  // namespace

Mat lift_one(const CompositeSpace& space, int mode_index, const Mat& local) {
    const auto& modes = space.modes();
    if (mode_index < 0 || mode_index >= space.num_modes())
        throw ValidationError("lift_one: mode index out of range");
    int d = modes[static_cast<std::size_t>(mode_index)].cutoff;
    if (local.rows() != d || local.cols() != d)
        throw ValidationError("lift_one: local operator dimension mismatch");

    long left = 1, right = 1;
    for (int k = 0; k < mode_index; ++k) left *= modes[static_cast<std::size_t>(k)].cutoff;
    for (int k = mode_index + 1; k < space.num_modes(); ++k)
        right *= modes[static_cast<std::size_t>(k)].cutoff;

    Mat full = Mat::Zero(space.dim(), space.dim());
    for (long l = 0; l < left; ++l)
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                if (local(i, j) == 0.0) continue;
                long row0 = (l * d + i) * right;
                long col0 = (l * d + j) * right;
                for (long r = 0; r < right; ++r) full(row0 + r, col0 + r) = local(i, j);
            }
    return full;
}

Mat lift_two(const CompositeSpace& space, int mode_a, int mode_b, const Mat& pair_op) {
    if (mode_a == mode_b) throw ValidationError("lift_two: modes must be distinct");
    if (mode_a > mode_b) {
        // Reorder: pair_op is given with mode_a slower; swap axes accordingly.
        int da = space.mode(mode_a).cutoff, db = space.mode(mode_b).cutoff;
        Mat swapped = Mat::Zero(pair_op.rows(), pair_op.cols());
        for (int i1 = 0; i1 < da; ++i1)
            for (int i2 = 0; i2 < db; ++i2)
                for (int j1 = 0; j1 < da; ++j1)
                    for (int j2 = 0; j2 < db; ++j2)
                        swapped(i2 * da + i1, j2 * da + j1) = pair_op(i1 * db + i2, j1 * db + j2);
        return lift_two(space, mode_b, mode_a, swapped);
    }
    int da = space.mode(mode_a).cutoff;
    int db = space.mode(mode_b).cutoff;
    if (pair_op.rows() != da * db || pair_op.cols() != da * db)
        throw ValidationError("lift_two: pair operator dimension mismatch");

    const long dim = space.dim();
    Mat full = Mat::Zero(dim, dim);
    for (long col = 0; col < dim; ++col) {
        auto occ = space.occupations_of(col);
        int ja = occ[static_cast<std::size_t>(mode_a)];
        int jb = occ[static_cast<std::size_t>(mode_b)];
        for (int ia = 0; ia < da; ++ia)
            for (int ib = 0; ib < db; ++ib) {
                Complex v = pair_op(ia * db + ib, ja * db + jb);
                if (v == 0.0) continue;
                occ[static_cast<std::size_t>(mode_a)] = ia;
                occ[static_cast<std::size_t>(mode_b)] = ib;
                full(space.index_of(occ), col) = v;
            }
        occ[static_cast<std::size_t>(mode_a)] = ja;
        occ[static_cast<std::size_t>(mode_b)] = jb;
    }
    return full;
}

LinearOp lowering_op(const CompositeSpace& space, int mode_index) {
    const ModeSpec& m = space.mode(mode_index);
    return LinearOp{space, lift_one(space, mode_index, local_lowering(m))};
}

LinearOp raising_op(const CompositeSpace& space, int mode_index) {
    auto op = lowering_op(space, mode_index);
    op.entries = op.entries.adjoint().eval();
    return op;
}

LinearOp number_op(const CompositeSpace& space, int mode_index) {
    const ModeSpec& m = space.mode(mode_index);
    Mat local = local_lowering(m);
    return LinearOp{space, lift_one(space, mode_index, (local.adjoint() * local).eval())};
}

LinearOp identity_op(const CompositeSpace& space) {
    return LinearOp{space, Mat::Identity(space.dim(), space.dim())};
}

Complex expect(const StateVector& state, const LinearOp& op) {
    if (!(state.space == op.space)) throw ValidationError("expect: state and operator spaces differ");
    return state.amplitudes.dot(op.entries * state.amplitudes);
}

}  // namespace molens
