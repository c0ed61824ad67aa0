#include "molens/dressed.hpp"

#include "molens/quadrature.hpp"

#include <vector>

namespace molens {

PhaseReport PhaseReport::make(double dynamical, double geometric) {
    return PhaseReport{dynamical, geometric, wrap_angle(dynamical + geometric)};
}

double mixing_angle(double g, double delta, int n) {
    if (!(g > 0.0)) throw ValidationError("mixing_angle: coupling must be positive");
    if (n < 0) throw ValidationError("mixing_angle: n must be >= 0");
    return 0.5 * std::atan2(2.0 * g * std::sqrt(n + 1.0), delta);
}

std::pair<double, double> dressed_energies(double g, double delta, int n) {
    if (!(g > 0.0)) throw ValidationError("dressed_energies: coupling must be positive");
    if (n < 0) throw ValidationError("dressed_energies: n must be >= 0");
    double root = std::sqrt(delta * delta + 4.0 * g * g * (n + 1.0));
    return {0.5 * (delta + root), 0.5 * (delta - root)};
}

DressedPoint dressed_point(double g, double delta, int n) {
    auto [ep, em] = dressed_energies(g, delta, n);
    return DressedPoint{mixing_angle(g, delta, n), ep, em, n};
}

namespace {

// Integrate over the sweep, splitting at sample knots so the integrand stays
// smooth on every subinterval handed to the adaptive rule.
double integrate_profile(const SweepProfile& profile, const std::function<double(double)>& f,
                         double abs_tol) {
    std::vector<double> cuts{0.0, profile.duration};
    if (profile.family == SweepFamily::sampled) {
        for (double tk : profile.times) {
            double t = (profile.direction == SweepDirection::reversed) ? profile.duration - tk : tk;
            if (t > 0.0 && t < profile.duration) cuts.push_back(t);
        }
        std::sort(cuts.begin(), cuts.end());
    }
    double total = 0.0;
    double tol = abs_tol / static_cast<double>(cuts.size() - 1);
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k)
        total += adaptive_simpson(f, cuts[k], cuts[k + 1], tol);
    return total;
}

}  // namespace

double phase_integral(const SweepProfile& profile, double g, int n, Branch branch,
                      double abs_tol) {
    if (!(g > 0.0)) throw ValidationError("phase_integral: coupling must be positive");
    if (n < 0) throw ValidationError("phase_integral: n must be >= 0");
    const double k2 = 4.0 * g * g * (n + 1.0);
    const double s = branch_sign(branch);
    auto f = [&](double t) {
        double d = sweep_value(profile, t);
        return 0.5 * (-d - s * std::sqrt(d * d + k2));
    };
    return integrate_profile(profile, f, abs_tol);
}

double superadiabatic_correction(const SweepProfile& profile, double g, int n, Branch branch,
                                 double abs_tol) {
    if (!(g > 0.0)) throw ValidationError("superadiabatic_correction: coupling must be positive");
    const double k = g * std::sqrt(n + 1.0);
    auto f = [&](double t) {
        double d = sweep_value(profile, t);
        double dd = sweep_slope(profile, t);
        double w = d * d + 4.0 * k * k;
        return k * k * dd * dd / (w * w * std::sqrt(w));
    };
    return -branch_sign(branch) * integrate_profile(profile, f, abs_tol);
}

std::array<double, 3> fictitious_field(double g, double delta) {
    return {-g, 0.0, -0.5 * delta};
}

double adiabaticity_margin(const SweepProfile& profile, double g, int n, int grid_points) {
    if (!(g > 0.0)) throw ValidationError("adiabaticity_margin: coupling must be positive");
    if (grid_points < 2) throw ValidationError("adiabaticity_margin: need >= 2 grid points");
    const double k = g * std::sqrt(n + 1.0);
    double worst = 0.0;
    for (int i = 0; i < grid_points; ++i) {
        double t = profile.duration * i / (grid_points - 1.0);
        double d = sweep_value(profile, t);
        double dd = sweep_slope(profile, t);
        double gap2 = d * d + 4.0 * k * k;
        // |d theta/dt| = k |delta'| / gap^2 ; margin integrand = that / gap
        double m = k * std::abs(dd) / (gap2 * std::sqrt(gap2));
        worst = std::max(worst, m);
    }
    return worst;
}

}  // namespace molens
