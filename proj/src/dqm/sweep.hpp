#pragma once

#include <string>
#include <vector>

#include "dqm/config.hpp"

namespace dqm {

// One executed run inside a sweep.
struct SweepRow {
  long long run_id = 0;
  RunConfig config;          // fully substituted single-seed config
  uint64_t seed = 0;
  Count max_k = 0;
  long long argmax_t = 0;
  Count final_k = 0;
  bool bound_violated = false;
  long long pref0_violations = 0;
  long long init_bound_violations = 0;
  double max_level_regret = 0.0;
  std::string trajectory_path;
  std::string error;  // nonempty when the run failed
};

struct SweepResult {
  std::vector<SweepRow> rows;  // deterministic order: sweep combos outer, seeds inner
  std::string aggregate_csv;
  bool any_assertion_failed = false;
  bool any_run_failed = false;
};

// Expands the sweep axes and seed list into single runs, executes them (up to
// config.parallelism at a time), writes per-run trajectory and summary files
// plus aggregate.csv under config.output_dir, and reports per-run outcomes.
// write_files=false keeps everything in memory (used by tests).
SweepResult run_sweep(const RunConfig& config, bool write_files = true);

// Executes one run and writes its trajectory/summary files; returns the row.
SweepRow run_single(const RunConfig& config, uint64_t seed, long long run_id,
                    bool write_files);

}  // namespace dqm
