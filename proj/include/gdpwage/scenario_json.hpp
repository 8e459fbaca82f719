#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "gdpwage/simulator.hpp"

namespace gdpwage {

using json = nlohmann::json;

// Scenario files and the service's session payload share one JSON layout.
// Parsing collects every field problem as "path: message" in a ValidationError.

json to_json(const ScenarioConfig& config);
ScenarioConfig config_from_json(const json& j);

/// Accepts {"preset": name, "steps"?: n}, {"config": {...}} or a bare config object.
ScenarioConfig config_from_payload(const json& payload);

json to_json(const PolicyAction& action);
PolicyAction action_from_json(const json& j);

json to_json(const StepRecord& record);
StepRecord record_from_json(const json& j);

/// History columns in their fixed output order.
const std::vector<std::string>& record_columns();
std::vector<double> record_values(const StepRecord& record);

void write_history_csv(std::span<const StepRecord> records, std::ostream& out);

}  // namespace gdpwage
