// Detuning-versus-time sweep profiles delta(t) on [0, T].
//
// Families:
//   constant           delta(t) = delta
//   linear_odd         delta(t) = delta0 * (2t/T - 1)
//   cubic_odd          delta(t) = delta0 * (2t/T - 1)^3
//   quadratic_offset   delta(t) = a * (2t/T - 1)^2 + b
//   sampled            linear interpolation of (time, value) pairs
//
// direction = reversed evaluates the profile at T - t.

#pragma once

#include "molens/common.hpp"

#include <string>
#include <vector>

namespace molens {

enum class SweepFamily { constant, linear_odd, cubic_odd, quadratic_offset, sampled };
enum class SweepDirection { forward, reversed };

struct SweepProfile {
    SweepFamily family = SweepFamily::constant;
    double delta = 0.0;    // constant
    double delta0 = 0.0;   // linear_odd, cubic_odd
    double a = 0.0;        // quadratic_offset
    double b = 0.0;        // quadratic_offset
    std::vector<double> times;   // sampled
    std::vector<double> values;  // sampled
    double duration = 0.0;
    SweepDirection direction = SweepDirection::forward;

    static SweepProfile constant(double delta, double duration);
    static SweepProfile linear(double delta0, double duration,
                               SweepDirection dir = SweepDirection::forward);
    static SweepProfile cubic(double delta0, double duration,
                              SweepDirection dir = SweepDirection::forward);
    static SweepProfile quadratic(double a, double b, double duration);
    static SweepProfile sampled(std::vector<double> times, std::vector<double> values,
                                SweepDirection dir = SweepDirection::forward);

    SweepProfile reversed() const;
    bool odd_family() const {
        return family == SweepFamily::linear_odd || family == SweepFamily::cubic_odd;
    }
};

double sweep_value(const SweepProfile& profile, double t);
// d delta/dt; sampled profiles use the containing segment's slope.
double sweep_slope(const SweepProfile& profile, double t);

std::string to_string(SweepFamily family);
SweepFamily sweep_family_from_string(const std::string& name);

}  // namespace molens
