// Composite Hilbert spaces of truncated bosonic modes and two-level systems,
// basis states, and tensor-lifted mode operators.
//
// Basis ordering convention (used everywhere in this library): row-major with
// the LAST mode varying fastest, i.e. index = ((o0*c1 + o1)*c2 + o2)...

#pragma once

#include "molens/common.hpp"

#include <span>
#include <string>
#include <vector>

namespace molens {

enum class ModeKind { bosonic, two_level };

struct ModeSpec {
    ModeKind kind = ModeKind::bosonic;
    int cutoff = 2;  // local dimension; always 2 for two_level
    std::string label;

    static ModeSpec bosonic(int cutoff, std::string label = "");
    static ModeSpec two_level(std::string label = "");
};

class CompositeSpace {
  public:
    CompositeSpace() = default;
    explicit CompositeSpace(std::vector<ModeSpec> modes);

    const std::vector<ModeSpec>& modes() const { return modes_; }
    const ModeSpec& mode(int k) const;
    int num_modes() const { return static_cast<int>(modes_.size()); }
    long dim() const { return dim_; }

    // Lexicographic index of an occupation tuple (last mode fastest).
    long index_of(std::span<const int> occupations) const;
    std::vector<int> occupations_of(long index) const;

    // Total occupation per basis index (used to block operators by
    // excitation sector).
    std::vector<int> total_occupation_labels() const;

    bool operator==(const CompositeSpace& other) const;

  private:
    std::vector<ModeSpec> modes_;
    long dim_ = 0;
};

CompositeSpace make_space(std::vector<ModeSpec> modes);

struct StateVector {
    CompositeSpace space;
    Vec amplitudes;

    double norm() const { return amplitudes.norm(); }
};

struct LinearOp {
    CompositeSpace space;
    Mat entries;
};

StateVector basis_state(const CompositeSpace& space, std::span<const int> occupations);
StateVector basis_state(const CompositeSpace& space, std::initializer_list<int> occupations);

// Annihilation operator of mode k (sqrt(n) matrix elements for bosonic modes,
// sigma^- for two-level), tensor-lifted to the full space.
LinearOp lowering_op(const CompositeSpace& space, int mode_index);
LinearOp raising_op(const CompositeSpace& space, int mode_index);
LinearOp number_op(const CompositeSpace& space, int mode_index);
LinearOp identity_op(const CompositeSpace& space);

// Lift a single-mode operator to the full space.
Mat lift_one(const CompositeSpace& space, int mode_index, const Mat& local);
// Lift an operator acting jointly on two distinct modes (given on the
// two-mode product space with mode_a slower than mode_b).
Mat lift_two(const CompositeSpace& space, int mode_a, int mode_b, const Mat& pair_op);

Complex expect(const StateVector& state, const LinearOp& op);

}  // namespace molens
