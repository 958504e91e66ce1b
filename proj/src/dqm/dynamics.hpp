#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dqm/analysis.hpp"
#include "dqm/learning.hpp"
#include "dqm/model.hpp"
#include "dqm/queue.hpp"
#include "dqm/rng.hpp"

namespace dqm {

enum class PolicyType { Mlewa, MyopicStage, AllZero, LastSlot, FixedMixed };

struct PolicySpec {
  PolicyType type = PolicyType::MyopicStage;
  double eta = 0.1;      // Mlewa
  MixedProfile fixed;    // FixedMixed

  static PolicySpec mlewa(double eta) { return {PolicyType::Mlewa, eta, {}}; }
  static PolicySpec myopic() { return {PolicyType::MyopicStage, 0.1, {}}; }
  static PolicySpec all_zero() { return {PolicyType::AllZero, 0.1, {}}; }
  static PolicySpec last_slot() { return {PolicyType::LastSlot, 0.1, {}}; }
  static PolicySpec fixed_mixed(MixedProfile m) {
    return {PolicyType::FixedMixed, 0.1, std::move(m)};
  }

  std::string describe() const;
};

// Stage-equilibrium selector for myopic play, cached per count vector.
//   k > T : the all-zero pure profile (requires penalty > k^2 * T);
//   k <= T: the symmetric two-point profile when it verifies as an exact
//           equilibrium (requires penalty > k^2), otherwise the grid oracle
//           at the coarsest step that fits the point cap.
// The selection rule is recorded per state so runs are reproducible and
// auditable.
class MyopicSolver {
 public:
  explicit MyopicSolver(ModelParams model, long long enum_cap = 1'000'000,
                        long long grid_point_cap = 40'000'000);

  const MixedProfile& profile(const State& state);
  const std::string& selection(const State& state);
  std::vector<std::pair<std::vector<Count>, std::string>> selections() const;

 private:
  struct Entry {
    MixedProfile profile;
    std::string selection;
  };
  Entry& solve(const State& state);

  ModelParams model_;
  long long enum_cap_;
  long long grid_point_cap_;
  std::map<std::vector<Count>, Entry> cache_;
};

// One period: jobs join per the profile, the server runs, late jobs return to
// their owners and each player receives one new job:
// counts_{t+1, i} = late_{t, i} + 1.
struct StepResult {
  State next;
  std::vector<Count> late;
  std::vector<Rational> costs;
};

StepResult step(const ModelParams& model, const State& state, const PureProfile& profile,
                Rng& rng);

struct TrajectoryRow {
  long long t = 0;
  std::vector<Count> counts;  // state at the start of period t
  Count k = 0;
  std::vector<Action> actions;
  std::vector<Count> late;
  std::vector<Rational> costs;
};

struct RunMeta {
  int players = 0;
  int period = 0;
  std::string penalty;
  std::string policy;
  long long horizon = 0;
  uint64_t seed = 0;
  std::vector<Count> initial_counts;
};

struct Trajectory {
  RunMeta meta;
  std::vector<TrajectoryRow> rows;
  std::vector<Count> final_counts;  // state after the last period
  Count final_k = 0;
};

struct LevelStats {
  long long visits = 0;
  double regret = 0.0;
  double max_cost = 0.0;
};

struct PlayerLearningStats {
  std::map<long long, LevelStats> levels;
  long long pref0_checked = 0;
  long long pref0_violations = 0;
  long long init_bound_violations = 0;
};

struct RunSummary {
  Count max_k = 0;
  long long argmax_t = 0;
  Count final_k = 0;
  // whether penalty(k_t) > 4 * k_t * T held at every period (the side
  // condition of the learning-regime bounds)
  bool penalty_condition_held = true;
  std::vector<PlayerLearningStats> learning;                              // Mlewa
  std::vector<std::pair<std::vector<Count>, std::string>> eq_selections;  // MyopicStage
  double max_level_regret = 0.0;                                          // Mlewa
  long long pref0_checked = 0;
  long long pref0_violations = 0;
  long long init_bound_violations = 0;
};

struct RunResult {
  Trajectory trajectory;
  RunSummary summary;
};

// Deterministic given (model, policy, horizon, seed, initial counts); the
// default initial state gives every player a single job.
RunResult run(const ModelParams& model, const PolicySpec& policy, long long horizon,
              uint64_t seed, const std::vector<Count>& initial_counts = {});

struct StabilityReport {
  Count max_k = 0;
  long long argmax_t = 0;
  Count final_k = 0;
  std::optional<Count> bound;
  bool bound_violated = false;
  Count first_half_max = 0;   // over periods t < horizon/2
  Count second_half_max = 0;  // over periods t >= horizon/2, final state included
};

StabilityReport stability_report(const Trajectory& traj, std::optional<Count> bound);

}  // namespace dqm
