// Shared numeric aliases and small helpers used across the library.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace molens {

using Complex = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

inline constexpr double pi = std::numbers::pi;

// Wrap an angle to (-pi, pi].
inline double wrap_angle(double x) {
    double w = std::fmod(pi - x, 2.0 * pi);
    if (w < 0.0) w += 2.0 * pi;
    return pi - w;
}

// Shortest angular distance |a - b| mod 2pi.
inline double angle_distance(double a, double b) {
    return std::abs(wrap_angle(a - b));
}

inline double hermiticity_defect(const Mat& a) {
    return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace molens
