#include "dqm/model.hpp"

#include <algorithm>
#include <numeric>

#include "dqm/errors.hpp"

namespace dqm {

PenaltySchedule PenaltySchedule::constant(Rational c) {
  if (c < Rational(0)) throw PreconditionError("penalty: constant must be nonnegative");
  PenaltySchedule p;
  p.kind_ = Kind::Constant;
  p.c_ = c;
  return p;
}

PenaltySchedule PenaltySchedule::linear(Rational alpha, Rational beta) {
  if (alpha < Rational(0) || beta < Rational(0))
    throw PreconditionError("penalty: linear coefficients must be nonnegative");
  PenaltySchedule p;
  p.kind_ = Kind::Linear;
  p.alpha_ = alpha;
  p.beta_ = beta;
  return p;
}

PenaltySchedule PenaltySchedule::threshold(std::vector<std::pair<Count, Rational>> table) {
  if (table.empty() || table.front().first != 0)
    throw PreconditionError("penalty: threshold table must start at k=0");
  for (size_t i = 0; i < table.size(); ++i) {
    if (table[i].second < Rational(0))
      throw PreconditionError("penalty: threshold values must be nonnegative");
    if (i > 0 && table[i].first <= table[i - 1].first)
      throw PreconditionError("penalty: threshold keys must be strictly increasing");
  }
  PenaltySchedule p;
  p.kind_ = Kind::Threshold;
  p.table_ = std::move(table);
  return p;
}

Rational PenaltySchedule::at(Count k) const {
  if (k < 0) throw PreconditionError("penalty: k must be nonnegative");
  switch (kind_) {
    case Kind::Constant:
      return c_;
    case Kind::Linear:
      return alpha_ * Rational(k) + beta_;
    case Kind::Threshold: {
      Rational value = table_.front().second;
      for (const auto& [key, v] : table_) {
        if (key <= k) value = v;
      }
      return value;
    }
  }
  throw Error("penalty: unknown kind");
}

bool PenaltySchedule::exceeds_linear_in_k(const Rational& bound_factor) const {
  switch (kind_) {
    case Kind::Constant:
      return false;  // any constant is eventually overtaken
    case Kind::Linear:
      // alpha*k + beta > f*k for all k >= 1
      return alpha_ > bound_factor || (alpha_ == bound_factor && beta_ > Rational(0));
    case Kind::Threshold:
      return false;  // bounded by its last value
  }
  return false;
}

std::string PenaltySchedule::describe() const {
  switch (kind_) {
    case Kind::Constant:
      return "constant(" + c_.to_string() + ")";
    case Kind::Linear:
      return "linear(" + alpha_.to_string() + "*k+" + beta_.to_string() + ")";
    case Kind::Threshold: {
      std::string s = "threshold(";
      for (size_t i = 0; i < table_.size(); ++i) {
        if (i > 0) s += ",";
        s += std::to_string(table_[i].first) + ":" + table_[i].second.to_string();
      }
      return s + ")";
    }
  }
  return "?";
}

bool PenaltySchedule::operator==(const PenaltySchedule& o) const {
  return kind_ == o.kind_ && c_ == o.c_ && alpha_ == o.alpha_ && beta_ == o.beta_ &&
         table_ == o.table_;
}

ModelParams::ModelParams(int players_in, int period_in, PenaltySchedule penalty_in,
                         bool allow_short_period)
    : players(players_in),
      period(period_in),
      penalty(std::move(penalty_in)),
      short_period_override(allow_short_period) {
  if (players < 3) throw PreconditionError("model: at least 3 players required");
  if (period < 2) throw PreconditionError("model: period must be at least 2");
  if (period < players && !allow_short_period)
    throw PreconditionError(
        "model: period must be at least the number of players (with more "
        "arrivals than service slots per period no strategy is stable); pass "
        "the short-period override to run such configurations deliberately");
}

State::State(std::vector<Count> counts) : counts_(std::move(counts)) {
  for (Count c : counts_) {
    if (c < 0) throw PreconditionError("state: negative job count");
  }
  total_ = std::accumulate(counts_.begin(), counts_.end(), Count{0});
}

State State::all_ones(int players) {
  return State(std::vector<Count>(static_cast<size_t>(players), 1));
}

MixedProfile MixedProfile::pure(const PureProfile& p, int period) {
  MixedProfile m;
  m.rows.resize(p.actions.size());
  for (size_t i = 0; i < p.actions.size(); ++i) {
    m.rows[i].assign(static_cast<size_t>(period), 0.0);
    m.rows[i][static_cast<size_t>(p.actions[i])] = 1.0;
  }
  return m;
}

MixedProfile MixedProfile::uniform(int players, int period) {
  MixedProfile m;
  m.rows.assign(static_cast<size_t>(players),
                std::vector<double>(static_cast<size_t>(period), 1.0 / period));
  return m;
}

void MixedProfile::validate(int period) const {
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != period)
      throw PreconditionError("mixed profile: row length does not match period");
    double sum = 0.0;
    for (double p : row) {
      if (!(p >= 0.0)) throw PreconditionError("mixed profile: negative probability");
      sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-12)
      throw PreconditionError("mixed profile: row does not sum to 1");
  }
}

void check_state(const ModelParams& model, const State& state) {
  if (state.players() != model.players)
    throw PreconditionError("state: dimension does not match player count");
}

void check_profile(const ModelParams& model, const State& state,
                   const PureProfile& profile) {
  check_state(model, state);
  if (static_cast<int>(profile.actions.size()) != model.players)
    throw PreconditionError("profile: dimension does not match player count");
  for (Action a : profile.actions) {
    if (a < 0 || a >= model.period)
      throw PreconditionError("profile: action outside {0..T-1}");
  }
}

void check_player(const ModelParams& model, Player i) {
  if (i < 0 || i >= model.players) throw PreconditionError("player index out of range");
}

}  // namespace dqm
