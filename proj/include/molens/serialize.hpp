// JSON schemas for the structured text records consumed and produced by the
// command line tool. Parsing is strict: unknown keys are rejected.

#pragma once

#include "molens/ensemble.hpp"
#include "molens/metrics.hpp"
#include "molens/optimizer.hpp"
#include "molens/protocols.hpp"
#include "molens/sweep.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace molens {

using Json = nlohmann::json;

// Throws ValidationError when j contains a key outside `allowed`.
void require_known_keys(const Json& j, const std::vector<std::string>& allowed,
                        const std::string& context);

Json sweep_to_json(const SweepProfile& profile);
SweepProfile sweep_from_json(const Json& j);

Json step_to_json(const ProtocolStep& step);
ProtocolStep step_from_json(const Json& j);

RegisterConfig register_from_json(const Json& j);

FeasibilityInput feasibility_from_json(const Json& j);
Json feasibility_to_json(const FeasibilityReport& report);

PhaseConditions conditions_from_json(const Json& j);

Json gate_report_to_json(const GateReport& report);
Json phase_report_to_json(const PhaseReport& report);

// 12 significant digits, scientific notation ("%.11e").
std::string format_number(double value);

}  // namespace molens
