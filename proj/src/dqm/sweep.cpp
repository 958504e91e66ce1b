#include "dqm/sweep.hpp"

#include <atomic>
#include <sstream>
#include <thread>

#include "dqm/errors.hpp"
#include "dqm/io.hpp"

namespace dqm {

namespace {

// Substitutes one value combination of the sweep axes into the config by
// re-parsing its canonical text with the overrides appended.
RunConfig substitute(const RunConfig& base,
                     const std::vector<std::pair<std::string, std::string>>& overrides) {
  std::string text = serialize_config(base);
  // drop the sweep axes themselves from the substituted config
  std::istringstream in(text);
  std::ostringstream kept;
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("sweep.", 0) == 0) continue;
    kept << line << "\n";
  }
  for (const auto& [key, value] : overrides) kept << key << " = " << value << "\n";
  ParseOutcome parsed = parse_config(kept.str());
  if (!parsed.config) {
    std::string msg = "sweep substitution failed:";
    for (const auto& e : parsed.errors) msg += " " + e;
    throw ConfigError(msg);
  }
  return *parsed.config;
}

}  // namespace

SweepRow run_single(const RunConfig& config, uint64_t seed, long long run_id,
                    bool write_files) {
  SweepRow row;
  row.run_id = run_id;
  row.config = config;
  row.seed = seed;
  try {
    RunConfig single = config;
    single.seeds = {seed};
    const std::string config_text = serialize_config(single);

    RunResult result = run(config.model(), config.policy_spec(), config.horizon, seed,
                           config.initial_counts);
    row.max_k = result.summary.max_k;
    row.argmax_t = result.summary.argmax_t;
    row.final_k = result.summary.final_k;
    row.pref0_violations = result.summary.pref0_violations;
    row.init_bound_violations = result.summary.init_bound_violations;
    row.max_level_regret = result.summary.max_level_regret;
    if (config.assert_max_k) row.bound_violated = result.summary.max_k > *config.assert_max_k;

    if (write_files && config.write_trajectories) {
      const std::string stem =
          config.output_dir + "/run_" + std::to_string(run_id) + "_seed_" +
          std::to_string(seed);
      if (config.format == RunConfig::Format::Csv) {
        row.trajectory_path = stem + ".csv";
        write_file(row.trajectory_path, trajectory_csv(result.trajectory));
      } else {
        row.trajectory_path = stem + ".json";
        write_file(row.trajectory_path, trajectory_json(result.trajectory).dump(2) + "\n");
      }
      write_file(stem + ".summary.json", summary_json(result, config_text).dump(2) + "\n");
    }
  } catch (const Error& e) {
    row.error = e.what();
  }
  return row;
}

SweepResult run_sweep(const RunConfig& config, bool write_files) {
  // sweep combinations in deterministic order: axes sorted by key, values in
  // the order given, seeds innermost
  std::vector<std::pair<std::string, std::vector<std::string>>> axes(config.sweep.begin(),
                                                                     config.sweep.end());
  std::vector<std::vector<std::pair<std::string, std::string>>> combos;
  std::vector<size_t> idx(axes.size(), 0);
  for (;;) {
    std::vector<std::pair<std::string, std::string>> combo;
    combo.reserve(axes.size());
    for (size_t a = 0; a < axes.size(); ++a) {
      combo.emplace_back(axes[a].first, axes[a].second[idx[a]]);
    }
    combos.push_back(std::move(combo));
    int j = static_cast<int>(axes.size()) - 1;
    while (j >= 0 && ++idx[static_cast<size_t>(j)] == axes[static_cast<size_t>(j)].second.size()) {
      idx[static_cast<size_t>(j)] = 0;
      --j;
    }
    if (j < 0) break;
  }

  struct Job {
    RunConfig config;
    uint64_t seed;
    long long run_id;
  };
  std::vector<Job> jobs;
  long long run_id = 0;
  for (const auto& combo : combos) {
    RunConfig substituted = combo.empty() ? config : substitute(config, combo);
    for (uint64_t seed : config.seeds) {
      jobs.push_back({substituted, seed, run_id++});
    }
  }
  if (static_cast<long long>(jobs.size()) > config.run_cap)
    throw ConfigError("sweep: " + std::to_string(jobs.size()) + " runs exceed caps.runs");

  SweepResult result;
  result.rows.resize(jobs.size());
  const int workers = std::max(1, std::min<int>(config.parallelism,
                                                static_cast<int>(jobs.size())));
  if (workers == 1) {
    for (size_t j = 0; j < jobs.size(); ++j) {
      result.rows[j] = run_single(jobs[j].config, jobs[j].seed, jobs[j].run_id, write_files);
    }
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&]() {
        for (;;) {
          size_t j = next.fetch_add(1);
          if (j >= jobs.size()) return;
          result.rows[j] =
              run_single(jobs[j].config, jobs[j].seed, jobs[j].run_id, write_files);
        }
      });
    }
    for (auto& t : pool) t.join();
  }

  std::ostringstream csv;
  csv << "run_id,seed,players,period,penalty,policy,horizon,max_k,argmax_t,final_k,"
         "bound_violated,pref0_violations,init_bound_violations,max_level_regret,error\n";
  for (const auto& row : result.rows) {
    if (!row.error.empty()) result.any_run_failed = true;
    if (row.bound_violated || row.pref0_violations > 0) result.any_assertion_failed = true;
    csv << row.run_id << "," << row.seed << "," << row.config.players << ","
        << row.config.period << "," << row.config.penalty.describe() << ","
        << row.config.policy_spec().describe() << "," << row.config.horizon << ","
        << row.max_k << "," << row.argmax_t << "," << row.final_k << ","
        << (row.bound_violated ? "true" : "false") << "," << row.pref0_violations << ","
        << row.init_bound_violations << "," << fmt_double(row.max_level_regret) << ","
        << (row.error.empty() ? "" : "\"" + row.error + "\"") << "\n";
  }
  result.aggregate_csv = csv.str();
  if (write_files) write_file(config.output_dir + "/aggregate.csv", result.aggregate_csv);
  if (!config.assertions) result.any_assertion_failed = false;
  return result;
}

}  // namespace dqm
