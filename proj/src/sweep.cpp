#include "molens/sweep.hpp"

#include <algorithm>

namespace molens {

namespace {

void check_duration(double T) {
    if (!(T > 0.0)) throw ValidationError("SweepProfile: duration must be positive");
}

void check_time(const SweepProfile& p, double t) {
    const double slack = 1e-12 * std::max(1.0, p.duration);
    if (t < -slack || t > p.duration + slack)
        throw ValidationError("sweep_value: t outside [0, duration]");
}

}  // namespace

SweepProfile SweepProfile::constant(double delta, double duration) {
    check_duration(duration);
    SweepProfile p;
    p.family = SweepFamily::constant;
    p.delta = delta;
    p.duration = duration;
    return p;
}

SweepProfile SweepProfile::linear(double delta0, double duration, SweepDirection dir) {
    check_duration(duration);
    SweepProfile p;
    p.family = SweepFamily::linear_odd;
    p.delta0 = delta0;
    p.duration = duration;
    p.direction = dir;
    return p;
}

SweepProfile SweepProfile::cubic(double delta0, double duration, SweepDirection dir) {
    check_duration(duration);
    SweepProfile p;
    p.family = SweepFamily::cubic_odd;
    p.delta0 = delta0;
    p.duration = duration;
    p.direction = dir;
    return p;
}

SweepProfile SweepProfile::quadratic(double a, double b, double duration) {
    check_duration(duration);
    SweepProfile p;
    p.family = SweepFamily::quadratic_offset;
    p.a = a;
    p.b = b;
    p.duration = duration;
    return p;
}

SweepProfile SweepProfile::sampled(std::vector<double> times, std::vector<double> values,
                                   SweepDirection dir) {
    if (times.size() < 2 || times.size() != values.size())
        throw ValidationError("SweepProfile: sampled profile needs >= 2 matching time/value pairs");
    if (!std::is_sorted(times.begin(), times.end()))
        throw ValidationError("SweepProfile: sampled times must be increasing");
    if (times.front() != 0.0)
        throw ValidationError("SweepProfile: sampled times must start at 0");
    SweepProfile p;
    p.family = SweepFamily::sampled;
    p.duration = times.back();
    check_duration(p.duration);
    p.times = std::move(times);
    p.values = std::move(values);
    p.direction = dir;
    return p;
}

SweepProfile SweepProfile::reversed() const {
    SweepProfile p = *this;
    p.direction = (direction == SweepDirection::forward) ? SweepDirection::reversed
                                                         : SweepDirection::forward;
    return p;
}

double sweep_value(const SweepProfile& p, double t) {
    check_time(p, t);
    if (p.direction == SweepDirection::reversed) t = p.duration - t;
    const double u = 2.0 * t / p.duration - 1.0;
    switch (p.family) {
        case SweepFamily::constant:
            return p.delta;
        case SweepFamily::linear_odd:
            return p.delta0 * u;
        case SweepFamily::cubic_odd:
            return p.delta0 * u * u * u;
        case SweepFamily::quadratic_offset:
            return p.a * u * u + p.b;
        case SweepFamily::sampled: {
            auto it = std::upper_bound(p.times.begin(), p.times.end(), t);
            std::size_t hi = std::min<std::size_t>(
                static_cast<std::size_t>(it - p.times.begin()), p.times.size() - 1);
            if (hi == 0) hi = 1;
            std::size_t lo = hi - 1;
            double w = (t - p.times[lo]) / (p.times[hi] - p.times[lo]);
            return p.values[lo] + w * (p.values[hi] - p.values[lo]);
        }
    }
    throw ValidationError("sweep_value: unknown family");
}

double sweep_slope(const SweepProfile& p, double t) {
    check_time(p, t);
    const double sgn = (p.direction == SweepDirection::reversed) ? -1.0 : 1.0;
    if (p.direction == SweepDirection::reversed) t = p.duration - t;
    const double u = 2.0 * t / p.duration - 1.0;
    const double du = 2.0 / p.duration;
    switch (p.family) {
        case SweepFamily::constant:
            return 0.0;
        case SweepFamily::linear_odd:
            return sgn * p.delta0 * du;
        case SweepFamily::cubic_odd:
            return sgn * 3.0 * p.delta0 * u * u * du;
        case SweepFamily::quadratic_offset:
            return sgn * 2.0 * p.a * u * du;
        case SweepFamily::sampled: {
            auto it = std::upper_bound(p.times.begin(), p.times.end(), t);
            std::size_t hi = std::min<std::size_t>(
                static_cast<std::size_t>(it - p.times.begin()), p.times.size() - 1);
            if (hi == 0) hi = 1;
            std::size_t lo = hi - 1;
            return sgn * (p.values[hi] - p.values[lo]) / (p.times[hi] - p.times[lo]);
        }
    }
    throw ValidationError("sweep_slope: unknown family");
}

std::string to_string(SweepFamily family) {
    switch (family) {
        case SweepFamily::constant: return "constant";
        case SweepFamily::linear_odd: return "linear_odd";
        case SweepFamily::cubic_odd: return "cubic_odd";
        case SweepFamily::quadratic_offset: return "quadratic_offset";
        case SweepFamily::sampled: return "sampled";
    }
    return "unknown";
}

SweepFamily sweep_family_from_string(const std::string& name) {
    if (name == "constant") return SweepFamily::constant;
    if (name == "linear_odd") return SweepFamily::linear_odd;
    if (name == "cubic_odd") return SweepFamily::cubic_odd;
    if (name == "quadratic_offset") return SweepFamily::quadratic_offset;
    if (name == "sampled") return SweepFamily::sampled;
    throw ValidationError("unknown sweep family: " + name);
}

}  // namespace molens
