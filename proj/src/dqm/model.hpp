#pragma once

#include <string>
#include <utility>
#include <vector>

#include "dqm/rational.hpp"

namespace dqm {

using Player = int;
using Action = int;
using Count = long long;

// Per-late-job penalty as a function of the total job count k.
class PenaltySchedule {
 public:
  enum class Kind { Constant, Linear, Threshold };

  static PenaltySchedule constant(Rational c);
  // alpha * k + beta
  static PenaltySchedule linear(Rational alpha, Rational beta);
  // Piecewise constant: value of the largest threshold <= k. The first
  // threshold must be 0 so every k is covered.
  static PenaltySchedule threshold(std::vector<std::pair<Count, Rational>> table);

  Kind kind() const { return kind_; }
  Rational at(Count k) const;

  Rational constant_value() const { return c_; }
  Rational linear_alpha() const { return alpha_; }
  Rational linear_beta() const { return beta_; }
  const std::vector<std::pair<Count, Rational>>& table() const { return table_; }

  // Whether the schedule satisfies C(k) > bound_factor * k for every k >= 1.
  // Used by the learning-regime checks, which need the condition to hold
  // along the whole run, not just at the current state.
  bool exceeds_linear_in_k(const Rational& bound_factor) const;

  std::string describe() const;

  bool operator==(const PenaltySchedule& o) const;

 private:
  PenaltySchedule() = default;
  Kind kind_ = Kind::Constant;
  Rational c_;
  Rational alpha_, beta_;
  std::vector<std::pair<Count, Rational>> table_;
};

// Number of players, period length, and the penalty schedule. A period has
// T time slots; one job is served per slot; jobs not served by time T are
// late. Constructing with period < players throws unless allow_short_period
// is set: with more arrivals than service slots per period no strategy can
// keep the system bounded, so that regime is opt-in.
struct ModelParams {
  ModelParams(int players, int period, PenaltySchedule penalty,
              bool allow_short_period = false);

  int players;
  int period;
  PenaltySchedule penalty;
  bool short_period_override;
};

// Per-player job counts at the start of a period. Zero counts are legal for
// one-shot analyses; the repeated dynamics always produce counts >= 1 (each
// player receives one new job per period).
class State {
 public:
  explicit State(std::vector<Count> counts);
  static State all_ones(int players);

  const std::vector<Count>& counts() const { return counts_; }
  Count count(Player i) const { return counts_[static_cast<size_t>(i)]; }
  Count total() const { return total_; }
  int players() const { return static_cast<int>(counts_.size()); }

  bool operator==(const State& o) const { return counts_ == o.counts_; }

 private:
  std::vector<Count> counts_;
  Count total_;
};

// One joining time per player, each in {0, ..., T-1}.
struct PureProfile {
  std::vector<Action> actions;

  bool all_zero() const {
    for (Action a : actions)
      if (a != 0) return false;
    return true;
  }
  bool operator==(const PureProfile& o) const { return actions == o.actions; }
};

// One distribution over joining times per player.
struct MixedProfile {
  std::vector<std::vector<double>> rows;

  static MixedProfile pure(const PureProfile& p, int period);
  static MixedProfile uniform(int players, int period);

  int players() const { return static_cast<int>(rows.size()); }
  // Throws unless every row has `period` nonnegative entries summing to 1
  // within 1e-12.
  void validate(int period) const;
};

// Shared dimension checks used by the queue and analysis layers.
void check_state(const ModelParams& model, const State& state);
void check_profile(const ModelParams& model, const State& state,
                   const PureProfile& profile);
void check_player(const ModelParams& model, Player i);

}  // namespace dqm
