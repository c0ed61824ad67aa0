#include "molens/optimizer.hpp"

#include <algorithm>
#include <random>

namespace molens {

namespace {

double wrap_mod(double x, double modulus) {
    double half = 0.5 * modulus;
    double w = std::fmod(half - x, modulus);
    if (w < 0.0) w += modulus;
    return half - w;
}

}  // namespace

int PhaseConditions::n_params() const {
    switch (family) {
        case SweepFamily::cubic_odd:
        case SweepFamily::linear_odd:
            return 2;
        case SweepFamily::quadratic_offset:
            return 3;
        default:
            throw ValidationError("PhaseConditions: unsupported sweep family for optimization");
    }
}

void PhaseConditions::validate() const {
    if (targets.empty() && bounds.empty()) return;  // degenerate case handled by solve
    for (const auto& t : targets) {
        if (!(t.weight > 0.0)) throw ValidationError("PhaseConditions: weights must be positive");
        if (!(t.modulus > 0.0)) throw ValidationError("PhaseConditions: modulus must be positive");
        if (t.n < 0) throw ValidationError("PhaseConditions: n must be >= 0");
    }
    if (!bounds.empty() && static_cast<int>(bounds.size()) != n_params())
        throw ValidationError("PhaseConditions: one bound pair per parameter required");
    for (const auto& [lo, hi] : bounds)
        if (!(hi > lo)) throw ValidationError("PhaseConditions: bounds must satisfy hi > lo");
    if (!(coupling > 0.0)) throw ValidationError("PhaseConditions: coupling must be positive");
}

SweepProfile profile_from_params(SweepFamily family, const std::vector<double>& params) {
    switch (family) {
        case SweepFamily::cubic_odd:
            if (params.size() != 2) throw ValidationError("profile_from_params: need {delta0, T}");
            return SweepProfile::cubic(params[0], params[1]);
        case SweepFamily::linear_odd:
            if (params.size() != 2) throw ValidationError("profile_from_params: need {delta0, T}");
            return SweepProfile::linear(params[0], params[1]);
        case SweepFamily::quadratic_offset:
            if (params.size() != 3) throw ValidationError("profile_from_params: need {a, b, T}");
            return SweepProfile::quadratic(params[0], params[1], params[2]);
        default:
            throw ValidationError("profile_from_params: unsupported family");
    }
}

std::vector<double> target_phases(const std::vector<double>& params,
                                  const PhaseConditions& conditions) {
    SweepProfile profile = profile_from_params(conditions.family, params);
    std::vector<double> phases;
    phases.reserve(conditions.targets.size());
    for (const auto& t : conditions.targets)
        phases.push_back(phase_integral(profile, conditions.coupling, t.n, t.branch));
    return phases;
}

double objective(const std::vector<double>& params, const PhaseConditions& conditions) {
    if (conditions.targets.empty()) return 0.0;
    SweepProfile profile = profile_from_params(conditions.family, params);
    double value = 0.0;
    int max_n = 0;
    for (const auto& t : conditions.targets) {
        double phi = phase_integral(profile, conditions.coupling, t.n, t.branch);
        double dev = wrap_mod(phi - t.phase, t.modulus);
        value += t.weight * dev * dev;
        max_n = std::max(max_n, t.n);
    }
    if (conditions.adiabaticity_weight > 0.0)
        value += conditions.adiabaticity_weight *
                 adiabaticity_margin(profile, conditions.coupling, max_n);
    if (conditions.duration_weight > 0.0) value += conditions.duration_weight * profile.duration;
    return value;
}

namespace {

struct Box {
    std::vector<std::pair<double, double>> bounds;

    std::vector<double> to_unit(const std::vector<double>& x) const {
        std::vector<double> u(x.size());
        for (std::size_t i = 0; i < x.size(); ++i)
            u[i] = (x[i] - bounds[i].first) / (bounds[i].second - bounds[i].first);
        return u;
    }
    std::vector<double> from_unit(const std::vector<double>& u) const {
        std::vector<double> x(u.size());
        for (std::size_t i = 0; i < u.size(); ++i) {
            double c = std::clamp(u[i], 0.0, 1.0);
            x[i] = bounds[i].first + c * (bounds[i].second - bounds[i].first);
        }
        return x;
    }
};

struct Vertex {
    std::vector<double> u;
    double f = 0.0;
};

double simplex_diameter(const std::vector<Vertex>& simplex) {
    double d = 0.0;
    for (std::size_t i = 1; i < simplex.size(); ++i)
        for (std::size_t k = 0; k < simplex[i].u.size(); ++k)
            d = std::max(d, std::abs(simplex[i].u[k] - simplex[0].u[k]));
    return d;
}

// One bounded Nelder-Mead run in unit coordinates.
Vertex nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                   const std::vector<double>& start_u, const SolveOptions& opts, bool* converged) {
    const std::size_t n = start_u.size();
    std::vector<Vertex> simplex;
    simplex.push_back({start_u, f(start_u)});
    for (std::size_t k = 0; k < n; ++k) {
        auto u = start_u;
        double step = 0.05;
        u[k] = (u[k] + step <= 1.0) ? u[k] + step : u[k] - step;
        simplex.push_back({u, f(u)});
    }

    auto order = [&]() {
        std::sort(simplex.begin(), simplex.end(),
                  [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
    };
    order();

    *converged = false;
    for (int it = 0; it < opts.max_iterations; ++it) {
        if (simplex.front().f < opts.objective_tolerance ||
            simplex_diameter(simplex) < opts.simplex_tolerance) {
            *converged = true;
            break;
        }
        std::vector<double> centroid(n, 0.0);
        for (std::size_t v = 0; v + 1 < simplex.size(); ++v)
            for (std::size_t k = 0; k < n; ++k) centroid[k] += simplex[v].u[k] / n;

        auto blend = [&](double coeff) {
            std::vector<double> u(n);
            for (std::size_t k = 0; k < n; ++k)
                u[k] = std::clamp(centroid[k] + coeff * (centroid[k] - simplex.back().u[k]), 0.0,
                                  1.0);
            return u;
        };

        auto reflect = blend(1.0);
        double fr = f(reflect);
        if (fr < simplex.front().f) {
            auto expand = blend(2.0);
            double fe = f(expand);
            simplex.back() = fe < fr ? Vertex{expand, fe} : Vertex{reflect, fr};
        } else if (fr < simplex[simplex.size() - 2].f) {
            simplex.back() = {reflect, fr};
        } else {
            auto contract = blend(-0.5);
            double fc = f(contract);
            if (fc < simplex.back().f) {
                simplex.back() = {contract, fc};
            } else {
                for (std::size_t v = 1; v < simplex.size(); ++v) {
                    for (std::size_t k = 0; k < n; ++k)
                        simplex[v].u[k] = 0.5 * (simplex[v].u[k] + simplex[0].u[k]);
                    simplex[v].f = f(simplex[v].u);
                }
            }
        }
        order();
    }
    return simplex.front();
}

}  // namespace

SolveResult solve(const PhaseConditions& conditions, const std::vector<double>& initial_guess,
                  const SolveOptions& options) {
    conditions.validate();
    SolveResult result;
    if (conditions.targets.empty()) {
        result.params = initial_guess;
        result.objective = 0.0;
        result.converged = true;
        return result;
    }
    const int n = conditions.n_params();
    if (static_cast<int>(initial_guess.size()) != n)
        throw ValidationError("solve: initial guess has wrong parameter count");

    Box box;
    if (!conditions.bounds.empty()) {
        box.bounds = conditions.bounds;
    } else {
        // Default box: half to double of each guess value.
        for (double v : initial_guess) box.bounds.push_back({0.5 * v, 2.0 * v});
    }
    for (int k = 0; k < n; ++k) {
        if (initial_guess[static_cast<std::size_t>(k)] < box.bounds[static_cast<std::size_t>(k)].first ||
            initial_guess[static_cast<std::size_t>(k)] > box.bounds[static_cast<std::size_t>(k)].second)
            throw ValidationError("solve: initial guess outside bounds");
    }

    auto f = [&](const std::vector<double>& u) { return objective(box.from_unit(u), conditions); };

    bool converged = false;
    Vertex best = nelder_mead(f, box.to_unit(initial_guess), options, &converged);
    result.restarts_used = 0;

    std::mt19937_64 rng(options.seed);
    std::uniform_real_distribution<double> unit(0.05, 0.95);
    int restart = 0;
    while (!converged && restart < options.restarts) {
        ++restart;
        std::vector<double> u(static_cast<std::size_t>(n));
        for (auto& v : u) v = unit(rng);
        bool ok = false;
        Vertex cand = nelder_mead(f, u, options, &ok);
        if (cand.f < best.f) {
            best = cand;
            converged = ok;
        }
        if (converged) break;
    }
    result.restarts_used = restart;
    result.converged = converged || best.f < options.objective_tolerance;

    result.params = box.from_unit(best.u);
    result.objective = best.f;
    result.phases = target_phases(result.params, conditions);
    for (double phi : result.phases)
        result.branch_indices.push_back(static_cast<long>(std::floor(std::abs(phi) / (2.0 * pi))));
    return result;
}

std::vector<GridRow> grid_scan(const PhaseConditions& conditions,
                               const std::vector<GridAxis>& axes) {
    conditions.validate();
    if (static_cast<int>(axes.size()) != conditions.n_params())
        throw ValidationError("grid_scan: one axis per parameter required");
    for (const auto& ax : axes)
        if (ax.points < 1) throw ValidationError("grid_scan: axis needs >= 1 point");

    std::vector<GridRow> rows;
    std::vector<int> counter(axes.size(), 0);
    while (true) {
        GridRow row;
        row.params.resize(axes.size());
        for (std::size_t k = 0; k < axes.size(); ++k) {
            const auto& ax = axes[k];
            row.params[k] = ax.points == 1
                                ? ax.lo
                                : ax.lo + (ax.hi - ax.lo) * counter[k] / (ax.points - 1.0);
        }
        row.phases = target_phases(row.params, conditions);
        row.objective = objective(row.params, conditions);
        rows.push_back(std::move(row));

        std::size_t k = axes.size();
        while (k > 0) {
            --k;
            if (++counter[k] < axes[k].points) break;
            counter[k] = 0;
            if (k == 0) return rows;
        }
    }
}

}  // namespace molens
