#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "dqm/analysis.hpp"
#include "dqm/checks.hpp"
#include "dqm/config.hpp"
#include "dqm/dynamics.hpp"
#include "dqm/errors.hpp"
#include "dqm/io.hpp"
#include "dqm/sweep.hpp"
#include "dqm/walk.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitAssertion = 1;
constexpr int kExitConfig = 2;

struct ConfigSource {
  std::string config_path;
  std::string preset;
  std::vector<std::string> overrides;  // key=value
  std::string out_dir;
  std::string format;
  int jobs = 0;
  bool no_assert = false;
};

void add_config_flags(CLI::App* cmd, ConfigSource& src) {
  cmd->add_option("-c,--config", src.config_path, "config file (key = value lines)");
  cmd->add_option("-p,--preset", src.preset, "built-in preset name (see 'preset list')");
  cmd->add_option("-s,--set", src.overrides, "override, e.g. --set run.horizon=100");
  cmd->add_option("-o,--out", src.out_dir, "output directory (overrides output.dir)");
  cmd->add_option("-f,--format", src.format, "trajectory format: csv or json");
  cmd->add_option("-j,--jobs", src.jobs, "parallel runs in a sweep");
  cmd->add_flag("--no-assert", src.no_assert, "report assertion failures without exit code 1");
}

// Assembles the config text (preset/file + overrides appended; later lines
// win) and parses it.
int load_config(const ConfigSource& src, dqm::RunConfig& out) {
  std::string text;
  if (!src.preset.empty()) {
    const auto& presets = dqm::config_presets();
    auto it = presets.find(src.preset);
    if (it == presets.end()) {
      std::cerr << "unknown preset '" << src.preset << "'\n";
      return kExitConfig;
    }
    text += it->second;
  }
  if (!src.config_path.empty()) {
    try {
      text += dqm::read_file(src.config_path);
      text += "\n";
    } catch (const dqm::Error& e) {
      std::cerr << e.what() << "\n";
      return kExitConfig;
    }
  }
  for (const auto& kv : src.overrides) {
    auto eq = kv.find('=');
    if (eq == std::string::npos) {
      std::cerr << "override must be key=value: " << kv << "\n";
      return kExitConfig;
    }
    text += kv.substr(0, eq) + " = " + kv.substr(eq + 1) + "\n";
  }
  if (!src.out_dir.empty()) text += "output.dir = " + src.out_dir + "\n";
  if (!src.format.empty()) text += "output.format = " + src.format + "\n";
  if (src.jobs > 0) text += "run.parallelism = " + std::to_string(src.jobs) + "\n";
  if (src.no_assert) text += "assert.enabled = false\n";

  dqm::ParseOutcome parsed = dqm::parse_config(text);
  if (!parsed.config) {
    std::cerr << "config rejected:\n";
    for (const auto& e : parsed.errors) std::cerr << "  - " << e << "\n";
    return kExitConfig;
  }
  out = *parsed.config;
  return kExitOk;
}

int cmd_run(const ConfigSource& src, bool sweep_mode) {
  dqm::RunConfig cfg;
  if (int rc = load_config(src, cfg); rc != kExitOk) return rc;
  if (!sweep_mode && cfg.seeds.size() == 1 && cfg.sweep.empty()) {
    dqm::SweepRow row = dqm::run_single(cfg, cfg.seeds.front(), 0, true);
    if (!row.error.empty()) {
      std::cerr << "run failed: " << row.error << "\n";
      return kExitConfig;
    }
    std::cout << "seed " << row.seed << ": max_k=" << row.max_k << " (t=" << row.argmax_t
              << "), final_k=" << row.final_k;
    if (cfg.assert_max_k)
      std::cout << ", bound " << *cfg.assert_max_k
                << (row.bound_violated ? " VIOLATED" : " held");
    std::cout << "\n";
    if (!row.trajectory_path.empty())
      std::cout << "trajectory: " << row.trajectory_path << "\n";
    const bool failed = cfg.assertions && (row.bound_violated || row.pref0_violations > 0);
    return failed ? kExitAssertion : kExitOk;
  }
  try {
    dqm::SweepResult result = dqm::run_sweep(cfg);
    std::cout << result.aggregate_csv;
    std::cout << "wrote " << cfg.output_dir << "/aggregate.csv (" << result.rows.size()
              << " runs)\n";
    if (result.any_run_failed) return kExitConfig;
    return result.any_assertion_failed ? kExitAssertion : kExitOk;
  } catch (const dqm::Error& e) {
    std::cerr << e.what() << "\n";
    return kExitConfig;
  }
}

int cmd_walk(const ConfigSource& src) {
  dqm::RunConfig cfg;
  if (int rc = load_config(src, cfg); rc != kExitOk) return rc;
  try {
    dqm::validate_walk(cfg.walk);
    long long worst = 0;
    std::cout << "seed,sup_x,argmax_t,final_x\n";
    for (uint64_t seed : cfg.seeds) {
      dqm::WalkRun wr = dqm::reinforced_walk_run(cfg.walk, cfg.horizon, seed);
      worst = std::max(worst, wr.sup_x);
      std::cout << seed << "," << wr.sup_x << "," << wr.argmax_t << "," << wr.final_x
                << "\n";
    }
    auto sweep = dqm::walk_product_bound_sweep(cfg.walk, cfg.walk_sweep_lo, cfg.walk_sweep_hi);
    long long bad = 0;
    for (const auto& point : sweep) {
      if (!point.ok) ++bad;
    }
    std::cout << "sup over all seeds: " << worst << "\n";
    std::cout << "escape-probability bound: " << (sweep.size() - static_cast<size_t>(bad))
              << "/" << sweep.size() << " sweep points hold\n";
    return bad == 0 ? kExitOk : kExitAssertion;
  } catch (const dqm::Error& e) {
    std::cerr << e.what() << "\n";
    return kExitConfig;
  }
}

int cmd_certify(const ConfigSource& src, const std::string& out_path) {
  dqm::RunConfig cfg;
  if (int rc = load_config(src, cfg); rc != kExitOk) return rc;
  try {
    const dqm::ModelParams model = cfg.model();
    const dqm::State state = cfg.initial_counts.empty()
                                 ? dqm::State::all_ones(model.players)
                                 : dqm::State(cfg.initial_counts);
    nlohmann::json j;
    if (state.total() > model.period) {
      j = dqm::cce_report_json(
          dqm::cce_zero_support_certificate(model, state, cfg.enumeration_cap));
      j["kind"] = "cce-zero-support";
    } else {
      const dqm::MixedProfile eq = dqm::solve_two_point_equilibrium(model, state);
      auto cert = dqm::verify_nash(model, state, eq, 1e-9, cfg.enumeration_cap);
      j = dqm::nash_certificate_json(cert);
      j["kind"] = "two-point-nash";
      j["expected_late_jobs"] = dqm::expected_late_jobs(model, state, eq, cfg.enumeration_cap);
    }
    const std::string text = j.dump(2) + "\n";
    if (out_path.empty()) {
      std::cout << text;
    } else {
      dqm::write_file(out_path, text);
      std::cout << "wrote " << out_path << "\n";
    }
    return kExitOk;
  } catch (const dqm::Error& e) {
    std::cerr << e.what() << "\n";
    return kExitConfig;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dqm: strategic FIFO-queue game simulator and analysis harness"};
  app.require_subcommand(1);

  ConfigSource run_src;
  CLI::App* run_cmd = app.add_subcommand("run", "execute the configured runs");
  add_config_flags(run_cmd, run_src);

  ConfigSource sweep_src;
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "expand seeds/axes and run them all");
  add_config_flags(sweep_cmd, sweep_src);

  ConfigSource walk_src;
  CLI::App* walk_cmd =
      app.add_subcommand("walk", "reinforced random walk runs plus the escape bound sweep");
  add_config_flags(walk_cmd, walk_src);

  ConfigSource cert_src;
  std::string cert_out;
  CLI::App* cert_cmd = app.add_subcommand(
      "certify", "emit the stage-game equilibrium certificate for the configured state");
  add_config_flags(cert_cmd, cert_src);
  cert_cmd->add_option("--cert-out", cert_out, "write the certificate JSON here");

  CLI::App* preset_cmd = app.add_subcommand("preset", "list or show built-in presets");
  std::string preset_name;
  preset_cmd->add_option("name", preset_name, "preset to print (omit to list)");

  CLI::App* accept_cmd =
      app.add_subcommand("accept", "run the verification suite, one line per check");
  std::string accept_filter;
  std::string accept_scratch;
  accept_cmd->add_option("--only", accept_filter, "run only checks matching this id/substring");
  accept_cmd->add_option("--scratch", accept_scratch, "scratch directory for file checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;  // --help exits 0, bad usage is a config error
  }

  if (run_cmd->parsed()) return cmd_run(run_src, false);
  if (sweep_cmd->parsed()) return cmd_run(sweep_src, true);
  if (walk_cmd->parsed()) return cmd_walk(walk_src);
  if (cert_cmd->parsed()) return cmd_certify(cert_src, cert_out);
  if (preset_cmd->parsed()) {
    if (preset_name.empty()) {
      for (const auto& [name, text] : dqm::config_presets()) std::cout << name << "\n";
      return kExitOk;
    }
    auto it = dqm::config_presets().find(preset_name);
    if (it == dqm::config_presets().end()) {
      std::cerr << "unknown preset '" << preset_name << "'\n";
      return kExitConfig;
    }
    std::cout << it->second;
    return kExitOk;
  }
  if (accept_cmd->parsed()) {
    auto results = dqm::checks::run_acceptance(accept_filter, accept_scratch);
    bool all_pass = !results.empty();
    for (const auto& r : results) {
      std::cout << dqm::checks::format_result_line(r) << "\n";
      all_pass = all_pass && r.pass;
    }
    return all_pass ? kExitOk : kExitAssertion;
  }
  return kExitConfig;
}
