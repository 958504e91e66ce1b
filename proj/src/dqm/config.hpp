#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dqm/dynamics.hpp"
#include "dqm/model.hpp"
#include "dqm/walk.hpp"

namespace dqm {

// Flat key=value experiment description. Keys use a single dotted namespace;
// '#' starts a comment; later assignments win. parse_config rejects unknown
// keys and reports every violation, not just the first.
struct RunConfig {
  int players = 3;
  int period = 5;
  bool override_period = false;
  PenaltySchedule penalty = PenaltySchedule::constant(Rational(321));

  PolicyType policy = PolicyType::MyopicStage;
  double eta = 0.1;
  MixedProfile fixed_profile;

  long long horizon = 10'000;
  std::vector<uint64_t> seeds = {1};
  std::vector<Count> initial_counts;  // empty: one job each

  std::string output_dir = "out";
  enum class Format { Csv, Json } format = Format::Csv;
  bool write_trajectories = true;

  long long enumeration_cap = 1'000'000;
  long long run_cap = 10'000;
  int parallelism = 1;

  bool assertions = true;
  std::optional<Count> assert_max_k;

  // Cartesian sweep: key -> raw values substituted into the flat namespace.
  std::map<std::string, std::vector<std::string>> sweep;

  WalkParams walk;
  long long walk_sweep_lo = 13;
  long long walk_sweep_hi = 1000;

  ModelParams model() const;
  PolicySpec policy_spec() const;

  bool operator==(const RunConfig& o) const;
};

struct ParseOutcome {
  std::optional<RunConfig> config;  // set iff errors is empty
  std::vector<std::string> errors;
};

ParseOutcome parse_config(const std::string& text);

// Canonical text form; parse_config(serialize_config(c)) reproduces c.
std::string serialize_config(const RunConfig& config);

// Built-in experiment presets, keyed by name.
const std::map<std::string, std::string>& config_presets();

}  // namespace dqm
