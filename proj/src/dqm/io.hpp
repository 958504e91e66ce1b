#pragma once

#include <string>

#include "json.hpp"

#include "dqm/analysis.hpp"
#include "dqm/dynamics.hpp"
#include "dqm/walk.hpp"

namespace dqm {

// Shortest decimal string that parses back to exactly the same double.
std::string fmt_double(double v);

// Trajectory export, one row per period:
// t,k,n_1..n_N,a_1..a_N,late_1..late_N,cost_1..cost_N
// A trailing comment line carries the final state.
std::string trajectory_csv(const Trajectory& traj);

nlohmann::json trajectory_json(const Trajectory& traj);

// Per-run summary: metadata (embedding the canonical config text when
// provided), stability numbers, and learner statistics.
nlohmann::json summary_json(const RunResult& result, const std::string& config_text);

nlohmann::json mixed_profile_json(const MixedProfile& m);
MixedProfile mixed_profile_from_json(const nlohmann::json& j);

nlohmann::json nash_certificate_json(const NashCertificate& cert);
nlohmann::json cce_report_json(const CceReport& report);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace dqm
