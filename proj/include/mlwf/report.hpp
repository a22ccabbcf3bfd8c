#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "mlwf/algebra.hpp"
#include "mlwf/wavefront.hpp"

namespace mlwf {

using Json = nlohmann::ordered_json;

// Non-finite numbers become null; callers add an explicit flag where it matters.
Json number(double v);

Json to_json(const CutoffWindow& w);
Json to_json(const ScanParams& p);
Json to_json(const ScanResult& r);
Json to_json(const std::vector<MapEntry>& map);
Json to_json(const MembershipReport& r);
Json to_json(const ModerateReport& r);
Json to_json(const YoungReport& r);
Json to_json(const LocalizationReport& r);

// One row per direction: direction components, angle (2-D), estimate, residual, verdict.
std::string to_csv(const ScanResult& r);

// Two-space indented dump with a trailing newline; identical input gives identical bytes.
std::string dump(const Json& j);

}  // namespace mlwf
