// Closed-form dressed-state analytics for the exchange-coupled two-state
// manifolds {|1,n>, |0,n+1>}: mixing angle, energies, adiabatic phase
// integrals, fictitious-field picture and adiabaticity diagnostics.

#pragma once

#include "molens/common.hpp"
#include "molens/sweep.hpp"

#include <array>

namespace molens {

enum class Branch { plus, minus };

inline double branch_sign(Branch b) { return b == Branch::plus ? 1.0 : -1.0; }

struct DressedPoint {
    double theta = 0.0;   // mixing angle, in (0, pi/2)
    double e_plus = 0.0;
    double e_minus = 0.0;
    int n = 0;            // n + 1 = excitation count of the manifold
};

struct PhaseReport {
    double dynamical = 0.0;       // radians, unwrapped
    double geometric = 0.0;       // radians
    double total_mod_2pi = 0.0;   // wrap(dynamical + geometric) in (-pi, pi]

    static PhaseReport make(double dynamical, double geometric);
};

// theta = (1/2) atan2(2 g sqrt(n+1), delta); continuous branch with
// theta -> 0 for delta -> +inf and theta -> pi/2 for delta -> -inf.
double mixing_angle(double g, double delta, int n);

// E_+- = delta/2 +- (1/2) sqrt(delta^2 + 4 g^2 (n+1))
std::pair<double, double> dressed_energies(double g, double delta, int n);

DressedPoint dressed_point(double g, double delta, int n);

// Adiabatic phase accumulated along a dressed branch over one sweep:
//   phi_{+-,n} = (1/2) int_0^T [ -delta(t) -+ sqrt(delta^2(t) + 4 g^2 (n+1)) ] dt
// computed by adaptive Simpson quadrature to abs_tol radians.
double phase_integral(const SweepProfile& profile, double g, int n, Branch branch,
                      double abs_tol = 1e-8);

// Second-order adiabatic phase shift of the same branch,
//   -+ int_0^T k^2 delta'(t)^2 / (delta^2 + 4 k^2)^{5/2} dt,  k = g sqrt(n+1),
// (minus for branch +). Adding it to phase_integral predicts the phase of the
// numerically propagated dressed amplitude to the next order in 1/T.
double superadiabatic_correction(const SweepProfile& profile, double g, int n, Branch branch,
                                 double abs_tol = 1e-10);

// B(t) = -(g, 0, delta/2): the spin-1/2 precession field of the two-state manifold.
std::array<double, 3> fictitious_field(double g, double delta);

// max over t of |d theta / dt| / (E_+ - E_-); << 1 indicates adiabatic validity.
double adiabaticity_margin(const SweepProfile& profile, double g, int n, int grid_points = 4001);

}  // namespace molens
