#include "molens/hamiltonians.hpp"

namespace molens {

namespace {

Mat exchange_plus_detuning(const CompositeSpace& space, int exc_index, int cavity_index, double g,
                           double delta) {
    Mat m = lowering_op(space, exc_index).entries;
    Mat c = lowering_op(space, cavity_index).entries;
    Mat h = g * (m * c.adjoint() + m.adjoint() * c) + delta * (m.adjoint() * m);
    return h;
}

}  // namespace

LinearOp h_cpb(const CompositeSpace& space, int cavity_index, int cpb_index, double g_c,
               double delta) {
    if (space.mode(cavity_index).kind != ModeKind::bosonic)
        throw ValidationError("h_cpb: cavity mode must be bosonic");
    if (space.mode(cpb_index).kind != ModeKind::two_level)
        throw ValidationError("h_cpb: CPB mode must be two_level");
    return LinearOp{space, exchange_plus_detuning(space, cpb_index, cavity_index, g_c, delta)};
}

LinearOp h_molecule(const CompositeSpace& space, int mol_index, int cavity_index, double g_i,
                    double delta) {
    if (space.mode(mol_index).kind != ModeKind::bosonic)
        throw ValidationError("h_molecule: molecular mode must be bosonic");
    if (space.mode(cavity_index).kind != ModeKind::bosonic)
        throw ValidationError("h_molecule: cavity mode must be bosonic");
    return LinearOp{space, exchange_plus_detuning(space, mol_index, cavity_index, g_i, delta)};
}

double effective_coupling(double omega, double vacuum_rabi, double n_ground,
                          double raman_detuning) {
    if (raman_detuning == 0.0) throw ValidationError("effective_coupling: Raman detuning is zero");
    if (n_ground < 0.0) throw ValidationError("effective_coupling: negative ground-state count");
    return omega * vacuum_rabi * std::sqrt(n_ground) / (2.0 * raman_detuning);
}

LinearOp h_drive(const CompositeSpace& space, int cpb_index, const DriveSpec& drive) {
    if (space.mode(cpb_index).kind != ModeKind::two_level)
        throw ValidationError("h_drive: drive target must be two_level");
    if (drive.rabi < 0.0) throw ValidationError("h_drive: Rabi frequency must be >= 0");
    Mat sm = lowering_op(space, cpb_index).entries;
    Complex ph = std::exp(Complex(0.0, -drive.phase));
    Mat h = 0.5 * drive.rabi * (ph * sm.adjoint() + std::conj(ph) * sm);
    return LinearOp{space, h};
}

}  // namespace molens
