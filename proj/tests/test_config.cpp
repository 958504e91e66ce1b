#include <algorithm>

#include "doctest.h"

#include "dqm/config.hpp"
#include "dqm/sweep.hpp"

using namespace dqm;

TEST_CASE("a minimal config parses") {
  const auto outcome = parse_config(
      "model.players = 3\n"
      "model.period = 5\n"
      "penalty.kind = constant\n"
      "penalty.c = 321\n"
      "policy.kind = myopic\n"
      "run.horizon = 10000\n"
      "run.seeds = 1\n");
  REQUIRE(outcome.errors.empty());
  REQUIRE(outcome.config.has_value());
  CHECK(outcome.config->players == 3);
  CHECK(outcome.config->period == 5);
  CHECK(outcome.config->penalty.at(7) == Rational(321));
  CHECK(outcome.config->policy == PolicyType::MyopicStage);
  CHECK(outcome.config->horizon == 10'000);
  CHECK(outcome.config->seeds == std::vector<uint64_t>{1});
}

TEST_CASE("a short period needs the explicit override") {
  const std::string base =
      "model.players = 3\n"
      "model.period = 2\n"
      "penalty.kind = constant\n"
      "penalty.c = 19\n";
  const auto rejected = parse_config(base);
  REQUIRE(!rejected.config.has_value());
  bool mentions_override = false;
  for (const auto& e : rejected.errors) {
    if (e.find("override") != std::string::npos) mentions_override = true;
  }
  CHECK(mentions_override);

  const auto accepted = parse_config(base + "model.override_period = true\n");
  CHECK(accepted.config.has_value());
}

TEST_CASE("violations are collected, not short-circuited") {
  const auto outcome = parse_config(
      "model.players = 2\n"
      "run.horizon = 0\n"
      "penalty.kind = linear\n"
      "penalty.alpha = -1\n"
      "penalty.beta = 0\n"
      "mystery.key = 5\n");
  REQUIRE(!outcome.config.has_value());
  CHECK(outcome.errors.size() >= 4);
  const auto mentions = [&](const std::string& needle) {
    return std::any_of(outcome.errors.begin(), outcome.errors.end(),
                       [&](const std::string& e) { return e.find(needle) != std::string::npos; });
  };
  CHECK(mentions("model.players"));
  CHECK(mentions("run.horizon"));
  CHECK(mentions("nonnegative"));  // linear slope must be >= 0
  CHECK(mentions("unknown key"));
}

TEST_CASE("later assignments win") {
  const auto outcome = parse_config(
      "model.players = 3\nmodel.period = 5\npenalty.kind = constant\npenalty.c = 10\n"
      "penalty.c = 321\n");
  REQUIRE(outcome.config.has_value());
  CHECK(outcome.config->penalty.at(0) == Rational(321));
}

TEST_CASE("serialize/parse round trip") {
  RunConfig cfg;
  cfg.players = 4;
  cfg.period = 6;
  cfg.override_period = false;
  cfg.penalty = PenaltySchedule::threshold({{0, Rational(5)}, {10, Rational(101, 2)}});
  cfg.policy = PolicyType::Mlewa;
  cfg.eta = 0.05;
  cfg.horizon = 777;
  cfg.seeds = {5, 3, 9};
  cfg.initial_counts = {2, 1, 1, 1};
  cfg.output_dir = "out/some-dir";
  cfg.format = RunConfig::Format::Json;
  cfg.write_trajectories = false;
  cfg.enumeration_cap = 5000;
  cfg.run_cap = 99;
  cfg.parallelism = 4;
  cfg.assertions = false;
  cfg.assert_max_k = 11;
  cfg.sweep["policy.eta"] = {"0.05", "0.1"};
  cfg.walk.exponential.scale_b = 4.0;
  cfg.walk_sweep_hi = 500;

  const std::string text = serialize_config(cfg);
  const auto outcome = parse_config(text);
  REQUIRE(outcome.errors.empty());
  CHECK(*outcome.config == cfg);

  SUBCASE("fixed-mixed profiles round trip too") {
    RunConfig fixed = cfg;
    fixed.sweep.clear();
    fixed.policy = PolicyType::FixedMixed;
    fixed.fixed_profile.rows.assign(4, {0.25, 0.75, 0.0, 0.0, 0.0, 0.0});
    const auto back = parse_config(serialize_config(fixed));
    REQUIRE(back.errors.empty());
    CHECK(*back.config == fixed);
  }
}

TEST_CASE("every shipped preset parses cleanly") {
  for (const auto& [name, text] : config_presets()) {
    const auto outcome = parse_config(text);
    INFO(name);
    CHECK(outcome.errors.empty());
    CHECK(outcome.config.has_value());
  }
}

TEST_CASE("sweeps expand deterministically and aggregate") {
  RunConfig cfg;
  cfg.players = 3;
  cfg.period = 5;
  cfg.penalty = PenaltySchedule::constant(Rational(321));
  cfg.policy = PolicyType::MyopicStage;
  cfg.horizon = 50;
  cfg.seeds = {1, 2, 3};
  cfg.assert_max_k = 8;
  cfg.write_trajectories = false;

  const SweepResult result = run_sweep(cfg, /*write_files=*/false);
  REQUIRE(result.rows.size() == 3);
  for (size_t r = 0; r < result.rows.size(); ++r) {
    CHECK(result.rows[r].seed == cfg.seeds[r]);
    CHECK(result.rows[r].error.empty());
    CHECK_FALSE(result.rows[r].bound_violated);
  }
  CHECK_FALSE(result.any_assertion_failed);
  CHECK(result.aggregate_csv.find("run_id,seed") == 0);

  SUBCASE("axes multiply the seed list and keep their order") {
    RunConfig swept = cfg;
    swept.sweep["penalty.c"] = {"321", "400"};
    const SweepResult wide = run_sweep(swept, false);
    REQUIRE(wide.rows.size() == 6);
    CHECK(wide.rows[0].config.penalty.at(0) == Rational(321));
    CHECK(wide.rows[3].config.penalty.at(0) == Rational(400));
  }

  SUBCASE("a violated bound trips the assertion flag") {
    RunConfig cheap = cfg;
    cheap.penalty = PenaltySchedule::constant(Rational(1, 2));
    cheap.policy = PolicyType::LastSlot;
    cheap.assert_max_k = 8;
    const SweepResult bad = run_sweep(cheap, false);
    CHECK(bad.any_assertion_failed);
    for (const auto& row : bad.rows) CHECK(row.bound_violated);
  }

  SUBCASE("parallel execution returns the same rows") {
    RunConfig par = cfg;
    par.parallelism = 3;
    const SweepResult parallel = run_sweep(par, false);
    REQUIRE(parallel.rows.size() == result.rows.size());
    for (size_t r = 0; r < result.rows.size(); ++r) {
      CHECK(parallel.rows[r].max_k == result.rows[r].max_k);
      CHECK(parallel.rows[r].final_k == result.rows[r].final_k);
    }
    CHECK(parallel.aggregate_csv == result.aggregate_csv);
  }
}
