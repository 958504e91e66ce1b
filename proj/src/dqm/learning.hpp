#pragma once

#include <map>
#include <span>
#include <vector>

#include "json.hpp"

#include "dqm/model.hpp"
#include "dqm/queue.hpp"
#include "dqm/rng.hpp"

namespace dqm {

// Exponential-weight learner over the T joining times. Weights live in the
// log domain: stage costs scale with the penalty times the job count, which
// would underflow multiplicative weights within a few dozen updates.
struct EwaState {
  std::vector<double> log_weights;
  double eta = 0.1;

  static EwaState uniform(int num_actions, double eta);
};

// Softmax of the log weights with max-subtraction; entries are clamped away
// from zero so the result is a strictly positive distribution even when the
// weight spread exceeds the double exponent range.
std::vector<double> ewa_strategy(const EwaState& ewa);

// log of ewa_strategy, exact up to logsumexp; used by the bound checks.
std::vector<double> ewa_log_strategy(const EwaState& ewa);

// Full-information update: log_weights[b] -= eta * costs[b] for every action.
void ewa_update(EwaState& ewa, std::span<const double> counterfactual_costs);

// One learner per level, where a player's level is its current job count.
// Only the active level's weights are updated; a newly reached level starts
// from a copy of the weights of the level the player just left.
struct MlewaLevel {
  EwaState ewa;
  long long first_visit = 0;    // period index of the first visit
  long long visits = 0;         // completed periods at this level
  double first_log_prob0 = 0.0; // log prob of action 0 at the first visit
};

class MlewaState {
 public:
  // The root level is the player's starting job count (1 in the standard
  // dynamics); its weights are initialized uniformly.
  MlewaState(int num_actions, double eta, long long root_level = 1);

  int num_actions() const { return num_actions_; }
  double eta() const { return eta_; }
  long long current_level() const { return current_level_; }
  long long period() const { return period_; }
  const std::map<long long, MlewaLevel>& levels() const { return levels_; }
  bool visited(long long level) const { return levels_.count(level) > 0; }
  const MlewaLevel& level(long long c) const;

  std::vector<double> strategy() const;  // active level's mixed action
  Action select(Rng& rng) const;

  struct ObserveResult {
    long long old_level = 0;
    long long new_level = 0;
    bool initialized_new_level = false;
  };
  // Applies the full-information update to the active level, advances the
  // period clock, and moves to level (own_late + 1), copying the just-updated
  // weights into that level if it has never been visited.
  ObserveResult observe(std::span<const double> counterfactual_costs, Count own_late);

  nlohmann::json to_json() const;
  static MlewaState from_json(const nlohmann::json& j);

 private:
  int num_actions_;
  double eta_;
  long long current_level_ = 1;
  long long period_ = 0;
  std::map<long long, MlewaLevel> levels_;
};

// Lower bound on the probability the active strategy puts on action 0 at a
// level c > 2T^2, derived from the strategy stored at the level's first visit
// and the number of visits since:
//   x(0) >= x_phi(0) / (x_phi(0) + (1 - x_phi(0)) * exp(-eta * c * n)).
// Only valid while the penalty exceeds 4kT along the run; the caller is
// responsible for that side condition. Throws PreconditionError when
// c <= 2T^2 or the level was never visited.
double pref0_lower_bound(const MlewaState& ml, long long c);
// Same bound in the log domain; exact at the first visit by construction.
double pref0_lower_bound_log(const MlewaState& ml, long long c);

// (1/x_phi(0) - 1) * exp(eta * c), the quantity whose boundedness across
// levels controls the reinforcement argument. Computed stably from the
// stored log probability.
double init_weight_statistic(const MlewaState& ml, long long c);

// Per-level cost bookkeeping: realized cost of the played action plus the
// full counterfactual vector, accumulated over exactly the periods spent at
// each level.
class RegretLedger {
 public:
  explicit RegretLedger(int num_actions);

  void record(long long level, Action played, std::span<const double> counterfactuals);

  // Realized minus best fixed action over the level's periods. Zero visits
  // is an error.
  double regret(long long level) const;
  long long visits(long long level) const;
  double max_cost(long long level) const;  // largest counterfactual seen
  std::vector<long long> visited_levels() const;
  long long most_visited_level() const;  // ties resolved to the lowest level
  double max_regret() const;

 private:
  struct Acc {
    double realized = 0.0;
    std::vector<double> counterfactual;
    long long visits = 0;
    double max_cost = 0.0;
  };
  int num_actions_;
  std::map<long long, Acc> acc_;
};

// Single-agent convenience step against known opponent joining times: select
// an action from the active level, resolve the period, update. The player's
// entry in `others` is ignored. Requires the active level to equal the
// player's job count.
struct MlewaStepOutcome {
  Action action = 0;
  std::vector<Count> late_counts;
  Rational realized_cost;
  std::vector<double> counterfactual_costs;
};

MlewaStepOutcome mlewa_step(MlewaState& ml, const ModelParams& model, const State& state,
                            Player i, const PureProfile& others, Rng& rng);

}  // namespace dqm
