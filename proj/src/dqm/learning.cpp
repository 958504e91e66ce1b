#include "dqm/learning.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dqm/errors.hpp"

namespace dqm {

EwaState EwaState::uniform(int num_actions, double eta) {
  if (num_actions < 1) throw PreconditionError("ewa: need at least one action");
  if (!(eta > 0.0)) throw PreconditionError("ewa: eta must be positive");
  EwaState s;
  s.log_weights.assign(static_cast<size_t>(num_actions), 0.0);
  s.eta = eta;
  return s;
}

std::vector<double> ewa_strategy(const EwaState& ewa) {
  const double mx = *std::max_element(ewa.log_weights.begin(), ewa.log_weights.end());
  std::vector<double> probs(ewa.log_weights.size());
  double sum = 0.0;
  for (size_t b = 0; b < probs.size(); ++b) {
    double p = std::exp(ewa.log_weights[b] - mx);
    if (p < std::numeric_limits<double>::denorm_min())
      p = std::numeric_limits<double>::denorm_min();
    probs[b] = p;
    sum += p;
  }
  for (double& p : probs) p /= sum;
  return probs;
}

std::vector<double> ewa_log_strategy(const EwaState& ewa) {
  const double mx = *std::max_element(ewa.log_weights.begin(), ewa.log_weights.end());
  double sum = 0.0;
  for (double lw : ewa.log_weights) sum += std::exp(lw - mx);
  const double lse = mx + std::log(sum);
  std::vector<double> out(ewa.log_weights.size());
  for (size_t b = 0; b < out.size(); ++b) out[b] = ewa.log_weights[b] - lse;
  return out;
}

void ewa_update(EwaState& ewa, std::span<const double> counterfactual_costs) {
  if (counterfactual_costs.size() != ewa.log_weights.size())
    throw PreconditionError("ewa: cost vector length mismatch");
  for (double c : counterfactual_costs) {
    if (!std::isfinite(c)) throw PreconditionError("ewa: non-finite cost");
  }
  for (size_t b = 0; b < ewa.log_weights.size(); ++b) {
    ewa.log_weights[b] -= ewa.eta * counterfactual_costs[b];
  }
}

MlewaState::MlewaState(int num_actions, double eta, long long root_level)
    : num_actions_(num_actions), eta_(eta), current_level_(root_level) {
  if (root_level < 1) throw PreconditionError("mlewa: root level must be at least 1");
  MlewaLevel root;
  root.ewa = EwaState::uniform(num_actions, eta);
  root.first_visit = 0;
  root.first_log_prob0 = ewa_log_strategy(root.ewa)[0];
  levels_.emplace(root_level, std::move(root));
}

const MlewaLevel& MlewaState::level(long long c) const {
  auto it = levels_.find(c);
  if (it == levels_.end())
    throw PreconditionError("mlewa: level " + std::to_string(c) + " never visited");
  return it->second;
}

std::vector<double> MlewaState::strategy() const {
  return ewa_strategy(levels_.at(current_level_).ewa);
}

Action MlewaState::select(Rng& rng) const {
  auto probs = strategy();
  return rng.sample(probs);
}

MlewaState::ObserveResult MlewaState::observe(std::span<const double> counterfactual_costs,
                                              Count own_late) {
  if (own_late < 0) throw PreconditionError("mlewa: negative late count");
  ObserveResult result;
  result.old_level = current_level_;

  MlewaLevel& active = levels_.at(current_level_);
  ewa_update(active.ewa, counterfactual_costs);
  active.visits += 1;
  period_ += 1;

  const long long next_level = own_late + 1;
  result.new_level = next_level;
  if (levels_.count(next_level) == 0) {
    MlewaLevel fresh;
    fresh.ewa = active.ewa;  // copy of the just-updated weights
    fresh.first_visit = period_;
    fresh.first_log_prob0 = ewa_log_strategy(fresh.ewa)[0];
    levels_.emplace(next_level, std::move(fresh));
    result.initialized_new_level = true;
  }
  current_level_ = next_level;
  return result;
}

nlohmann::json MlewaState::to_json() const {
  nlohmann::json j;
  j["num_actions"] = num_actions_;
  j["eta"] = eta_;
  j["current_level"] = current_level_;
  j["period"] = period_;
  nlohmann::json levels = nlohmann::json::array();
  for (const auto& [c, data] : levels_) {
    nlohmann::json lv;
    lv["level"] = c;
    lv["log_weights"] = data.ewa.log_weights;
    lv["first_visit"] = data.first_visit;
    lv["visits"] = data.visits;
    lv["first_log_prob0"] = data.first_log_prob0;
    levels.push_back(std::move(lv));
  }
  j["levels"] = std::move(levels);
  return j;
}

MlewaState MlewaState::from_json(const nlohmann::json& j) {
  MlewaState ml(j.at("num_actions").get<int>(), j.at("eta").get<double>());
  ml.current_level_ = j.at("current_level").get<long long>();
  ml.period_ = j.at("period").get<long long>();
  ml.levels_.clear();
  for (const auto& lv : j.at("levels")) {
    MlewaLevel data;
    data.ewa.eta = ml.eta_;
    data.ewa.log_weights = lv.at("log_weights").get<std::vector<double>>();
    data.first_visit = lv.at("first_visit").get<long long>();
    data.visits = lv.at("visits").get<long long>();
    data.first_log_prob0 = lv.at("first_log_prob0").get<double>();
    ml.levels_.emplace(lv.at("level").get<long long>(), std::move(data));
  }
  if (ml.levels_.count(ml.current_level_) == 0)
    throw PreconditionError("mlewa snapshot: current level missing");
  return ml;
}

double pref0_lower_bound_log(const MlewaState& ml, long long c) {
  const long long t2 = 2LL * ml.num_actions() * ml.num_actions();
  if (c <= t2)
    throw PreconditionError("pref0 bound applies only to levels above 2T^2");
  const MlewaLevel& data = ml.level(c);
  const double lp0 = data.first_log_prob0;
  if (data.visits == 0) return lp0;  // exp(0) factor: the bound is the stored value
  const double decay =
      std::exp(-ml.eta() * static_cast<double>(c) * static_cast<double>(data.visits));
  // bound = 1 / (1 + (1/x0 - 1) * decay), stably via expm1/log1p
  return -std::log1p(std::expm1(-lp0) * decay);
}

double pref0_lower_bound(const MlewaState& ml, long long c) {
  return std::exp(pref0_lower_bound_log(ml, c));
}

double init_weight_statistic(const MlewaState& ml, long long c) {
  const MlewaLevel& data = ml.level(c);
  return std::expm1(-data.first_log_prob0) * std::exp(ml.eta() * static_cast<double>(c));
}

RegretLedger::RegretLedger(int num_actions) : num_actions_(num_actions) {}

void RegretLedger::record(long long level, Action played,
                          std::span<const double> counterfactuals) {
  if (static_cast<int>(counterfactuals.size()) != num_actions_)
    throw PreconditionError("regret ledger: cost vector length mismatch");
  Acc& acc = acc_[level];
  if (acc.counterfactual.empty())
    acc.counterfactual.assign(static_cast<size_t>(num_actions_), 0.0);
  acc.realized += counterfactuals[static_cast<size_t>(played)];
  for (int b = 0; b < num_actions_; ++b) {
    acc.counterfactual[static_cast<size_t>(b)] += counterfactuals[static_cast<size_t>(b)];
    acc.max_cost = std::max(acc.max_cost, counterfactuals[static_cast<size_t>(b)]);
  }
  acc.visits += 1;
}

double RegretLedger::regret(long long level) const {
  auto it = acc_.find(level);
  if (it == acc_.end() || it->second.visits == 0)
    throw PreconditionError("regret ledger: level " + std::to_string(level) +
                            " never visited");
  const Acc& acc = it->second;
  double best = *std::min_element(acc.counterfactual.begin(), acc.counterfactual.end());
  return acc.realized - best;
}

long long RegretLedger::visits(long long level) const {
  auto it = acc_.find(level);
  return it == acc_.end() ? 0 : it->second.visits;
}

double RegretLedger::max_cost(long long level) const {
  auto it = acc_.find(level);
  return it == acc_.end() ? 0.0 : it->second.max_cost;
}

std::vector<long long> RegretLedger::visited_levels() const {
  std::vector<long long> out;
  out.reserve(acc_.size());
  for (const auto& [level, acc] : acc_) out.push_back(level);
  return out;
}

long long RegretLedger::most_visited_level() const {
  if (acc_.empty()) throw PreconditionError("regret ledger: no visits recorded");
  long long best_level = 0;
  long long best_visits = -1;
  for (const auto& [level, acc] : acc_) {
    if (acc.visits > best_visits) {
      best_visits = acc.visits;
      best_level = level;
    }
  }
  return best_level;
}

double RegretLedger::max_regret() const {
  double mx = -std::numeric_limits<double>::infinity();
  for (const auto& [level, acc] : acc_) mx = std::max(mx, regret(level));
  return mx;
}

MlewaStepOutcome mlewa_step(MlewaState& ml, const ModelParams& model, const State& state,
                            Player i, const PureProfile& others, Rng& rng) {
  check_player(model, i);
  if (ml.current_level() != state.count(i))
    throw PreconditionError("mlewa: active level " + std::to_string(ml.current_level()) +
                            " does not match job count " + std::to_string(state.count(i)));

  MlewaStepOutcome out;
  out.action = ml.select(rng);

  PureProfile realized = others;
  realized.actions[static_cast<size_t>(i)] = out.action;
  check_profile(model, state, realized);

  out.counterfactual_costs.resize(static_cast<size_t>(model.period));
  PureProfile probe = realized;
  for (Action b = 0; b < model.period; ++b) {
    probe.actions[static_cast<size_t>(i)] = b;
    out.counterfactual_costs[static_cast<size_t>(b)] =
        cost_pure(model, state, probe, i).to_double();
  }
  out.realized_cost = cost_pure(model, state, realized, i);
  out.late_counts = sample_late_counts(model, state, realized, rng);

  ml.observe(out.counterfactual_costs, out.late_counts[static_cast<size_t>(i)]);
  return out;
}

}  // namespace dqm
