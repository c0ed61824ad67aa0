#include "molens/serialize.hpp"

#include <cstdio>

namespace molens {

void require_known_keys(const Json& j, const std::vector<std::string>& allowed,
                        const std::string& context) {
    if (!j.is_object()) throw ValidationError(context + ": expected an object");
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
            throw ValidationError(context + ": unknown field \"" + key + "\"");
    }
}

namespace {

double require_number(const Json& j, const std::string& key, const std::string& context) {
    if (!j.contains(key)) throw ValidationError(context + ": missing field \"" + key + "\"");
    if (!j[key].is_number()) throw ValidationError(context + ": field \"" + key + "\" must be a number");
    return j[key].get<double>();
}

}  // namespace

Json sweep_to_json(const SweepProfile& p) {
    Json j;
    j["family"] = to_string(p.family);
    j["duration"] = p.duration;
    j["direction"] = p.direction == SweepDirection::forward ? "forward" : "reversed";
    Json params;
    switch (p.family) {
        case SweepFamily::constant: params["delta"] = p.delta; break;
        case SweepFamily::linear_odd:
        case SweepFamily::cubic_odd: params["delta0"] = p.delta0; break;
        case SweepFamily::quadratic_offset:
            params["a"] = p.a;
            params["b"] = p.b;
            break;
        case SweepFamily::sampled:
            params["times"] = p.times;
            params["values"] = p.values;
            break;
    }
    j["params"] = params;
    return j;
}

SweepProfile sweep_from_json(const Json& j) {
    require_known_keys(j, {"family", "params", "duration", "direction"}, "sweep");
    if (!j.contains("family") || !j["family"].is_string())
        throw ValidationError("sweep: missing family");
    SweepFamily family = sweep_family_from_string(j["family"].get<std::string>());
    double duration = require_number(j, "duration", "sweep");
    SweepDirection dir = SweepDirection::forward;
    if (j.contains("direction")) {
        std::string d = j["direction"].get<std::string>();
        if (d == "forward")
            dir = SweepDirection::forward;
        else if (d == "reversed")
            dir = SweepDirection::reversed;
        else
            throw ValidationError("sweep: direction must be forward or reversed");
    }
    Json params = j.value("params", Json::object());
    switch (family) {
        case SweepFamily::constant: {
            require_known_keys(params, {"delta"}, "sweep.params");
            return SweepProfile::constant(require_number(params, "delta", "sweep.params"),
                                          duration);
        }
        case SweepFamily::linear_odd: {
            require_known_keys(params, {"delta0"}, "sweep.params");
            return SweepProfile::linear(require_number(params, "delta0", "sweep.params"), duration,
                                        dir);
        }
        case SweepFamily::cubic_odd: {
            require_known_keys(params, {"delta0"}, "sweep.params");
            return SweepProfile::cubic(require_number(params, "delta0", "sweep.params"), duration,
                                       dir);
        }
        case SweepFamily::quadratic_offset: {
            require_known_keys(params, {"a", "b"}, "sweep.params");
            return SweepProfile::quadratic(require_number(params, "a", "sweep.params"),
                                           require_number(params, "b", "sweep.params"), duration);
        }
        case SweepFamily::sampled: {
            require_known_keys(params, {"times", "values"}, "sweep.params");
            if (!params.contains("times") || !params.contains("values"))
                throw ValidationError("sweep.params: sampled needs times and values");
            auto profile = SweepProfile::sampled(params["times"].get<std::vector<double>>(),
                                                 params["values"].get<std::vector<double>>(), dir);
            if (std::abs(profile.duration - duration) > 1e-9 * std::max(1.0, duration))
                throw ValidationError("sweep: duration does not match the sampled times");
            return profile;
        }
    }
    throw ValidationError("sweep: unknown family");
}

Json step_to_json(const ProtocolStep& s) {
    Json j;
    switch (s.kind) {
        case StepKind::mol_cav_swap:
            j["kind"] = "mol_cav_swap";
            j["qubit"] = s.qubit;
            j["transfer"] = s.transfer == Transfer::store ? "store" : "retrieve";
            j["sweep"] = sweep_to_json(s.sweep);
            j["coupling"] = s.coupling;
            break;
        case StepKind::cav_cpb_swap:
            j["kind"] = "cav_cpb_swap";
            j["transfer"] = s.transfer == Transfer::store ? "store" : "retrieve";
            j["sweep"] = sweep_to_json(s.sweep);
            j["coupling"] = s.coupling;
            break;
        case StepKind::cpb_rotation:
            j["kind"] = "cpb_rotation";
            j["rabi"] = s.drive.rabi;
            j["phase"] = s.drive.phase;
            j["duration"] = s.drive.duration;
            break;
        case StepKind::conditional_phase:
            j["kind"] = "conditional_phase";
            j["sweep"] = sweep_to_json(s.sweep);
            j["coupling"] = s.coupling;
            break;
    }
    return j;
}

ProtocolStep step_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
        throw ValidationError("step: missing kind");
    std::string kind = j["kind"].get<std::string>();
    auto transfer_of = [&](const Json& sj) {
        std::string t = sj.value("transfer", "store");
        if (t == "store") return Transfer::store;
        if (t == "retrieve") return Transfer::retrieve;
        throw ValidationError("step: transfer must be store or retrieve");
    };
    if (kind == "mol_cav_swap") {
        require_known_keys(j, {"kind", "qubit", "transfer", "sweep", "coupling"}, "step");
        if (!j.contains("qubit")) throw ValidationError("mol_cav_swap step: missing qubit");
        return ProtocolStep::mol_swap(j["qubit"].get<int>(), transfer_of(j),
                                      sweep_from_json(j.at("sweep")), j.value("coupling", 1.0));
    }
    if (kind == "cav_cpb_swap") {
        require_known_keys(j, {"kind", "transfer", "sweep", "coupling"}, "step");
        return ProtocolStep::cpb_swap(transfer_of(j), sweep_from_json(j.at("sweep")),
                                      j.value("coupling", 1.0));
    }
    if (kind == "cpb_rotation") {
        require_known_keys(j, {"kind", "rabi", "phase", "duration"}, "step");
        DriveSpec d;
        d.rabi = require_number(j, "rabi", "cpb_rotation step");
        d.phase = j.value("phase", 0.0);
        d.duration = require_number(j, "duration", "cpb_rotation step");
        return ProtocolStep::rotation(d);
    }
    if (kind == "conditional_phase") {
        require_known_keys(j, {"kind", "sweep", "coupling"}, "step");
        return ProtocolStep::cond_phase(sweep_from_json(j.at("sweep")), j.value("coupling", 1.0));
    }
    throw ValidationError("step: unknown kind \"" + kind + "\"");
}

RegisterConfig register_from_json(const Json& j) {
    require_known_keys(j,
                       {"n_molecules", "n_qubits", "vacuum_rabi", "raman_detuning",
                        "classical_amplitudes"},
                       "register");
    RegisterConfig cfg;
    if (j.contains("n_molecules")) cfg.n_molecules = j["n_molecules"].get<int>();
    if (j.contains("n_qubits")) cfg.n_qubits = j["n_qubits"].get<int>();
    if (j.contains("vacuum_rabi")) cfg.vacuum_rabi = j["vacuum_rabi"].get<double>();
    if (j.contains("raman_detuning")) cfg.raman_detuning = j["raman_detuning"].get<double>();
    if (j.contains("classical_amplitudes"))
        cfg.classical_amplitudes = j["classical_amplitudes"].get<std::vector<double>>();
    cfg.validate();
    return cfg;
}

FeasibilityInput feasibility_from_json(const Json& j) {
    require_known_keys(j,
                       {"g_c", "g_i_max", "t2_cpb", "t1_transmon", "photon_loss_rate",
                        "molecular_scatter_rate", "gate_duration_in_gc", "preset"},
                       "feasibility");
    FeasibilityInput in;
    if (j.contains("g_c")) in.g_c = require_number(j, "g_c", "feasibility");
    if (j.contains("g_i_max")) in.g_i_max = require_number(j, "g_i_max", "feasibility");
    if (j.contains("t2_cpb")) in.t2_cpb = require_number(j, "t2_cpb", "feasibility");
    if (j.contains("t1_transmon")) in.t1_transmon = require_number(j, "t1_transmon", "feasibility");
    if (j.contains("photon_loss_rate"))
        in.photon_loss_rate = require_number(j, "photon_loss_rate", "feasibility");
    if (j.contains("molecular_scatter_rate"))
        in.molecular_scatter_rate = require_number(j, "molecular_scatter_rate", "feasibility");
    if (j.contains("gate_duration_in_gc"))
        in.gate_duration_in_gc = require_number(j, "gate_duration_in_gc", "feasibility");
    if (j.contains("preset")) {
        std::string p = j["preset"].get<std::string>();
        if (p == "cpb")
            in.use_transmon_t1 = false;
        else if (p == "transmon")
            in.use_transmon_t1 = true;
        else
            throw ValidationError("feasibility: preset must be cpb or transmon");
    }
    return in;
}

Json feasibility_to_json(const FeasibilityReport& r) {
    Json j;
    j["swap_ops_before_decoherence"] = r.swap_ops_before_decoherence;
    j["gate_to_t2_ratio"] = r.gate_to_t2_ratio;
    j["photon_gates"] = r.photon_gates;
    j["notes"] = r.notes;
    return j;
}

PhaseConditions conditions_from_json(const Json& j) {
    require_known_keys(j,
                       {"family", "targets", "bounds", "coupling", "adiabaticity_weight",
                        "duration_weight"},
                       "conditions");
    PhaseConditions c;
    if (!j.contains("family")) throw ValidationError("conditions: missing family");
    c.family = sweep_family_from_string(j["family"].get<std::string>());
    if (j.contains("coupling")) c.coupling = require_number(j, "coupling", "conditions");
    if (j.contains("adiabaticity_weight"))
        c.adiabaticity_weight = require_number(j, "adiabaticity_weight", "conditions");
    if (j.contains("duration_weight"))
        c.duration_weight = require_number(j, "duration_weight", "conditions");
    if (j.contains("targets")) {
        for (const auto& tj : j["targets"]) {
            require_known_keys(tj, {"branch", "n", "phase", "weight", "modulus"},
                               "conditions.target");
            PhaseTarget t;
            std::string b = tj.value("branch", "+");
            if (b == "+")
                t.branch = Branch::plus;
            else if (b == "-")
                t.branch = Branch::minus;
            else
                throw ValidationError("conditions.target: branch must be + or -");
            t.n = tj.value("n", 0);
            t.phase = require_number(tj, "phase", "conditions.target");
            t.weight = tj.value("weight", 1.0);
            t.modulus = tj.value("modulus", 2.0 * pi);
            c.targets.push_back(t);
        }
    }
    if (j.contains("bounds")) {
        for (const auto& bj : j["bounds"]) {
            auto v = bj.get<std::vector<double>>();
            if (v.size() != 2) throw ValidationError("conditions.bounds: each bound is [lo, hi]");
            c.bounds.push_back({v[0], v[1]});
        }
    }
    c.validate();
    return c;
}

Json phase_report_to_json(const PhaseReport& r) {
    Json j;
    j["dynamical"] = r.dynamical;
    j["geometric"] = r.geometric;
    j["total_mod_2pi"] = r.total_mod_2pi;
    return j;
}

Json gate_report_to_json(const GateReport& r) {
    Json j;
    j["process_fidelity"] = r.process_fidelity;
    j["leakage"] = r.leakage;
    j["phase_ledger"] = r.phase_ledger;
    if (!r.failure.empty()) j["failure"] = r.failure;
    Json rows = Json::array();
    for (long i = 0; i < r.achieved.rows(); ++i) {
        Json row = Json::array();
        for (long k = 0; k < r.achieved.cols(); ++k) {
            row.push_back(Json::array({r.achieved(i, k).real(), r.achieved(i, k).imag()}));
        }
        rows.push_back(row);
    }
    j["achieved"] = rows;
    return j;
}

std::string format_number(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.11e", value);
    return buf;
}

}  // namespace molens
