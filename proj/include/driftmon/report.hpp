#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "driftmon/metrics.hpp"
#include "driftmon/monitor.hpp"
#include "driftmon/simulate.hpp"
#include "driftmon/stats.hpp"
#include "driftmon/subgroup.hpp"

namespace driftmon::report {

using json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolName = "driftmon";
inline constexpr const char* kToolVersion = "1.0.0";

// JSON building blocks. Undefined metrics serialize as null.
json to_json(const metrics::MetricSet& m);
json to_json(const stats::TestResult& r);
json to_json(const subgroup::SubgroupReport& r);
json to_json(const subgroup::DisparityResult& r);
json to_json(const subgroup::AssociationEntry& e);
json to_json(const monitor::AlarmEvaluation& e);
json to_json(const monitor::CusumCalibration& c);
json to_json(const simulate::DriftScenario& s);

// {"schema": 1, "tool": {"name", "version"}} skeleton.
json report_skeleton();

// Atomic write (temp file + rename) of pretty-printed JSON with a trailing
// newline.
void write_json(const std::filesystem::path& path, const json& j);

// Atomic write of arbitrary text.
void write_text(const std::filesystem::path& path, const std::string& text);

} // namespace driftmon::report
