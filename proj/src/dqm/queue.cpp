#include "dqm/queue.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "dqm/errors.hpp"

namespace dqm {

const GroupStat* ArrivalGroupStats::find(Action arrival) const {
  for (const auto& g : groups) {
    if (g.arrival == arrival) return &g;
  }
  return nullptr;
}

ArrivalGroupStats service_schedule(const ModelParams& model, const State& state,
                                   const PureProfile& profile) {
  check_profile(model, state, profile);

  ArrivalGroupStats stats;
  stats.groups.reserve(static_cast<size_t>(model.players));
  for (Player i = 0; i < model.players; ++i) {
    const Count n = state.count(i);
    if (n == 0) continue;
    const Action a = profile.actions[static_cast<size_t>(i)];
    // insert into the arrival-sorted group list; player counts are small
    size_t pos = 0;
    while (pos < stats.groups.size() && stats.groups[pos].arrival < a) ++pos;
    if (pos < stats.groups.size() && stats.groups[pos].arrival == a) {
      stats.groups[pos].jobs += n;
    } else {
      stats.groups.insert(stats.groups.begin() + static_cast<long>(pos), {a, n, 0});
    }
  }

  Count prev_exit = 0;
  const Count deadline = model.period;
  for (auto& group : stats.groups) {
    const Count first_exit = std::max<Count>(prev_exit, group.arrival) + 1;
    group.on_time = std::clamp<Count>(deadline - first_exit + 1, 0, group.jobs);
    stats.total_jobs += group.jobs;
    stats.total_late += group.jobs - group.on_time;
    prev_exit = first_exit + group.jobs - 1;
  }
  return stats;
}

Rational late_probability(const ModelParams& model, const State& state,
                          const PureProfile& profile, Player i) {
  check_player(model, i);
  if (state.count(i) == 0) return Rational(0);
  ArrivalGroupStats stats = service_schedule(model, state, profile);
  const GroupStat* g = stats.find(profile.actions[static_cast<size_t>(i)]);
  return Rational(g->jobs - g->on_time, g->jobs);
}

Rational cost_pure(const ModelParams& model, const State& state,
                   const PureProfile& profile, Player i) {
  check_player(model, i);
  const Rational n(state.count(i));
  const Action a = profile.actions[static_cast<size_t>(i)];
  const Rational waiting = n * Rational(model.period - a);
  const Rational penalty = model.penalty.at(state.total());
  return waiting + penalty * n * late_probability(model, state, profile, i);
}

std::vector<Count> sample_late_counts(const ModelParams& model, const State& state,
                                      const PureProfile& profile, Rng& rng) {
  ArrivalGroupStats stats = service_schedule(model, state, profile);
  std::vector<Count> late(static_cast<size_t>(model.players), 0);

  std::vector<Player> owners;
  for (const auto& g : stats.groups) {
    if (g.on_time == g.jobs) continue;  // nothing late in this group
    owners.clear();
    for (Player i = 0; i < model.players; ++i) {
      if (profile.actions[static_cast<size_t>(i)] != g.arrival) continue;
      for (Count c = 0; c < state.count(i); ++c) owners.push_back(i);
    }
    // Fisher-Yates; positions >= on_time in the service order are late.
    for (size_t j = owners.size() - 1; j > 0; --j) {
      size_t pick = static_cast<size_t>(rng.bounded(j + 1));
      std::swap(owners[j], owners[pick]);
    }
    for (size_t pos = static_cast<size_t>(g.on_time); pos < owners.size(); ++pos) {
      late[static_cast<size_t>(owners[pos])] += 1;
    }
  }
  return late;
}

namespace {

// Support of each row: actions with strictly positive probability.
std::vector<std::vector<Action>> supports(const MixedProfile& mixed) {
  std::vector<std::vector<Action>> out(mixed.rows.size());
  for (size_t i = 0; i < mixed.rows.size(); ++i) {
    for (size_t a = 0; a < mixed.rows[i].size(); ++a) {
      if (mixed.rows[i][a] > 0.0) out[i].push_back(static_cast<Action>(a));
    }
    if (out[i].empty()) throw PreconditionError("mixed profile: empty support row");
  }
  return out;
}

void check_support_cap(const std::vector<std::vector<Action>>& supp, long long cap) {
  long long product = 1;
  for (const auto& s : supp) {
    product *= static_cast<long long>(s.size());
    if (product > cap)
      throw EnumerationCapError("exact enumeration exceeds cap of " + std::to_string(cap) +
                                " profiles");
  }
}

// Enumerates the support product, calling fn(profile, weight) for every
// pure profile with positive probability. `skip` (if >= 0) pins that
// player's action to profile.actions[skip] and omits its probability.
template <typename Fn>
void enumerate_support(const MixedProfile& mixed,
                       const std::vector<std::vector<Action>>& supp, Player skip,
                       PureProfile& profile, Fn&& fn) {
  const int n = static_cast<int>(mixed.rows.size());
  std::vector<size_t> idx(static_cast<size_t>(n), 0);
  for (;;) {
    double weight = 1.0;
    for (Player j = 0; j < n; ++j) {
      if (j == skip) continue;
      Action a = supp[static_cast<size_t>(j)][idx[static_cast<size_t>(j)]];
      profile.actions[static_cast<size_t>(j)] = a;
      weight *= mixed.rows[static_cast<size_t>(j)][static_cast<size_t>(a)];
    }
    fn(profile, weight);
    int j = n - 1;
    for (; j >= 0; --j) {
      if (j == skip) continue;
      if (++idx[static_cast<size_t>(j)] < supp[static_cast<size_t>(j)].size()) break;
      idx[static_cast<size_t>(j)] = 0;
    }
    if (j < 0) break;
  }
}

}  // namespace

double expected_cost_of_action(const ModelParams& model, const State& state,
                               const MixedProfile& mixed, Player i, Action b,
                               long long cap) {
  check_player(model, i);
  mixed.validate(model.period);
  if (b < 0 || b >= model.period) throw PreconditionError("action outside {0..T-1}");
  auto supp = supports(mixed);
  supp[static_cast<size_t>(i)] = {b};
  check_support_cap(supp, cap);

  PureProfile profile;
  profile.actions.assign(static_cast<size_t>(model.players), 0);
  profile.actions[static_cast<size_t>(i)] = b;

  long double total_weight = 0.0L;
  long double total_cost = 0.0L;
  enumerate_support(mixed, supp, i, profile, [&](const PureProfile& p, double w) {
    total_weight += w;
    total_cost += static_cast<long double>(w) * cost_pure(model, state, p, i).to_double();
  });
  return static_cast<double>(total_cost / total_weight);
}

MixedCostEstimate expected_cost_mixed(const ModelParams& model, const State& state,
                                      const MixedProfile& mixed, Player i,
                                      const EvalMode& mode) {
  check_player(model, i);
  mixed.validate(model.period);

  if (mode.kind == EvalMode::Kind::Exact) {
    auto supp = supports(mixed);
    check_support_cap(supp, mode.cap);
    PureProfile profile;
    profile.actions.assign(static_cast<size_t>(model.players), 0);
    long double total_weight = 0.0L;
    long double total_cost = 0.0L;
    enumerate_support(mixed, supp, /*skip=*/-1, profile, [&](const PureProfile& p, double w) {
      total_weight += w;
      total_cost += static_cast<long double>(w) * cost_pure(model, state, p, i).to_double();
    });
    return {static_cast<double>(total_cost / total_weight), 0.0};
  }

  Rng rng(mode.seed);
  PureProfile profile;
  profile.actions.assign(static_cast<size_t>(model.players), 0);
  double mean = 0.0;
  double m2 = 0.0;
  for (long long s = 1; s <= mode.samples; ++s) {
    for (Player j = 0; j < model.players; ++j) {
      profile.actions[static_cast<size_t>(j)] =
          rng.sample(mixed.rows[static_cast<size_t>(j)]);
    }
    double c = cost_pure(model, state, profile, i).to_double();
    double delta = c - mean;
    mean += delta / static_cast<double>(s);
    m2 += delta * (c - mean);
  }
  double variance = mode.samples > 1 ? m2 / static_cast<double>(mode.samples - 1) : 0.0;
  double std_error = std::sqrt(variance / static_cast<double>(mode.samples));
  return {mean, std_error};
}

double expected_late_jobs(const ModelParams& model, const State& state,
                          const MixedProfile& mixed, long long cap) {
  check_state(model, state);
  mixed.validate(model.period);
  auto supp = supports(mixed);
  check_support_cap(supp, cap);

  PureProfile profile;
  profile.actions.assign(static_cast<size_t>(model.players), 0);
  long double total_weight = 0.0L;
  long double total_late = 0.0L;
  enumerate_support(mixed, supp, /*skip=*/-1, profile, [&](const PureProfile& p, double w) {
    total_weight += w;
    total_late += static_cast<long double>(w) *
                  static_cast<long double>(service_schedule(model, state, p).total_late);
  });
  return static_cast<double>(total_late / total_weight);
}

}  // namespace dqm
