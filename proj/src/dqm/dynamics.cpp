#include "dqm/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dqm/errors.hpp"

namespace dqm {

std::string PolicySpec::describe() const {
  switch (type) {
    case PolicyType::Mlewa:
      return "mlewa(eta=" + std::to_string(eta) + ")";
    case PolicyType::MyopicStage:
      return "myopic";
    case PolicyType::AllZero:
      return "all-zero";
    case PolicyType::LastSlot:
      return "last-slot";
    case PolicyType::FixedMixed:
      return "fixed-mixed";
  }
  return "?";
}

MyopicSolver::MyopicSolver(ModelParams model, long long enum_cap, long long grid_point_cap)
    : model_(std::move(model)), enum_cap_(enum_cap), grid_point_cap_(grid_point_cap) {}

MyopicSolver::Entry& MyopicSolver::solve(const State& state) {
  check_state(model_, state);
  auto it = cache_.find(state.counts());
  if (it != cache_.end()) return it->second;

  const Count k = state.total();
  const Rational penalty = model_.penalty.at(k);
  Entry entry;

  if (k > model_.period) {
    const Rational threshold = Rational(k) * Rational(k) * Rational(model_.period);
    if (!(penalty > threshold))
      throw PreconditionError("myopic: k=" + std::to_string(k) + " > T requires penalty > " +
                              threshold.to_string() + ", got " + penalty.to_string());
    PureProfile zeros;
    zeros.actions.assign(static_cast<size_t>(model_.players), 0);
    entry.profile = MixedProfile::pure(zeros, model_.period);
    entry.selection = "all-zero";
  } else {
    const Rational threshold = Rational(k) * Rational(k);
    if (!(penalty > threshold))
      throw PreconditionError("myopic: k=" + std::to_string(k) +
                              " <= T requires penalty > k^2 = " + threshold.to_string() +
                              ", got " + penalty.to_string());
    MixedProfile candidate = two_point_profile(model_, state);
    NashCertificate cert = verify_nash(model_, state, candidate, 1e-9, enum_cap_);
    if (cert.is_eps_nash()) {
      entry.profile = std::move(candidate);
      entry.selection = "two-point";
    } else {
      // coarsen the grid until the point budget fits
      const double steps[] = {0.02, 0.025, 0.05, 0.1};
      bool solved = false;
      for (double step : steps) {
        const double eps =
            static_cast<double>(model_.players - 1) * penalty.to_double() * step;
        GridEquilibria grid;
        try {
          grid = brute_force_nash(model_, state, step, eps, grid_point_cap_);
        } catch (const EnumerationCapError&) {
          continue;
        }
        if (!grid.profiles.empty()) {
          entry.profile = grid.profiles.front();  // lexicographically smallest
          entry.selection = "grid(step=" + std::to_string(step) + ")";
          solved = true;
          break;
        }
      }
      if (!solved)
        throw PreconditionError("myopic: no stage equilibrium found at grid resolution for "
                                "k=" + std::to_string(k));
    }
  }
  return cache_.emplace(state.counts(), std::move(entry)).first->second;
}

const MixedProfile& MyopicSolver::profile(const State& state) { return solve(state).profile; }

const std::string& MyopicSolver::selection(const State& state) {
  return solve(state).selection;
}

std::vector<std::pair<std::vector<Count>, std::string>> MyopicSolver::selections() const {
  std::vector<std::pair<std::vector<Count>, std::string>> out;
  out.reserve(cache_.size());
  for (const auto& [counts, entry] : cache_) out.emplace_back(counts, entry.selection);
  return out;
}

StepResult step(const ModelParams& model, const State& state, const PureProfile& profile,
                Rng& rng) {
  check_profile(model, state, profile);
  std::vector<Count> late = sample_late_counts(model, state, profile, rng);
  std::vector<Rational> costs(static_cast<size_t>(model.players));
  for (Player i = 0; i < model.players; ++i) {
    costs[static_cast<size_t>(i)] = cost_pure(model, state, profile, i);
  }
  std::vector<Count> next(static_cast<size_t>(model.players));
  for (Player i = 0; i < model.players; ++i) {
    next[static_cast<size_t>(i)] = late[static_cast<size_t>(i)] + 1;
  }
  return {State(std::move(next)), std::move(late), std::move(costs)};
}

namespace {

struct MlewaRuntime {
  std::vector<MlewaState> minds;
  std::vector<RegretLedger> ledgers;
  std::vector<PlayerLearningStats> stats;
  std::vector<double> max_low_level_stat;  // max init statistic over levels <= 2T^2
  bool penalty_ok_so_far = true;
};

}  // namespace

RunResult run(const ModelParams& model, const PolicySpec& policy, long long horizon,
              uint64_t seed, const std::vector<Count>& initial_counts) {
  if (horizon < 1) throw PreconditionError("run: horizon must be at least 1");

  State state = initial_counts.empty() ? State::all_ones(model.players)
                                       : State(initial_counts);
  check_state(model, state);
  if (policy.type == PolicyType::FixedMixed) {
    policy.fixed.validate(model.period);
    if (policy.fixed.players() != model.players)
      throw PreconditionError("run: fixed profile dimension mismatch");
  }

  RunResult result;
  result.trajectory.meta = {model.players,       model.period, model.penalty.describe(),
                            policy.describe(),   horizon,      seed,
                            state.counts()};
  result.trajectory.rows.reserve(static_cast<size_t>(horizon));

  Rng rng(seed);
  MyopicSolver myopic(model);
  MlewaRuntime learn;
  const long long level_cap = 2LL * model.period * model.period;
  if (policy.type == PolicyType::Mlewa) {
    for (Player i = 0; i < model.players; ++i) {
      const long long root = state.count(i);
      learn.minds.emplace_back(model.period, policy.eta, root);
      learn.ledgers.emplace_back(model.period);
      learn.stats.emplace_back();
      // the initialization statistic is only tracked over low levels; a run
      // that starts above 2T^2 has no low-level baseline yet
      learn.max_low_level_stat.push_back(
          root <= level_cap ? init_weight_statistic(learn.minds.back(), root)
                            : -std::numeric_limits<double>::infinity());
    }
  }

  Count max_k = state.total();
  long long argmax_t = 0;

  PureProfile actions;
  actions.actions.assign(static_cast<size_t>(model.players), 0);
  std::vector<double> counterfactual(static_cast<size_t>(model.period), 0.0);

  for (long long t = 0; t < horizon; ++t) {
    const Count k = state.total();
    if (k > max_k) {
      max_k = k;
      argmax_t = t;
    }

    try {
      switch (policy.type) {
        case PolicyType::AllZero:
          std::fill(actions.actions.begin(), actions.actions.end(), 0);
          break;
        case PolicyType::LastSlot:
          std::fill(actions.actions.begin(), actions.actions.end(), model.period - 1);
          break;
        case PolicyType::FixedMixed: {
          for (Player i = 0; i < model.players; ++i) {
            actions.actions[static_cast<size_t>(i)] =
                rng.sample(policy.fixed.rows[static_cast<size_t>(i)]);
          }
          break;
        }
        case PolicyType::MyopicStage: {
          const MixedProfile& prof = myopic.profile(state);
          for (Player i = 0; i < model.players; ++i) {
            actions.actions[static_cast<size_t>(i)] =
                rng.sample(prof.rows[static_cast<size_t>(i)]);
          }
          break;
        }
        case PolicyType::Mlewa: {
          if (learn.penalty_ok_so_far &&
              !(model.penalty.at(k) > Rational(4) * Rational(k) * Rational(model.period))) {
            learn.penalty_ok_so_far = false;
          }
          for (Player i = 0; i < model.players; ++i) {
            MlewaState& ml = learn.minds[static_cast<size_t>(i)];
            const long long level = ml.current_level();
            if (level != state.count(i))
              throw Error("mlewa: level/count bookkeeping diverged");
            if (learn.penalty_ok_so_far && level > level_cap) {
              auto& st = learn.stats[static_cast<size_t>(i)];
              st.pref0_checked += 1;
              const double bound_log = pref0_lower_bound_log(ml, level);
              const double actual_log = ewa_log_strategy(ml.level(level).ewa)[0];
              if (actual_log < bound_log) st.pref0_violations += 1;
            }
            actions.actions[static_cast<size_t>(i)] = ml.select(rng);
          }
          break;
        }
      }

      StepResult sr = step(model, state, actions, rng);

      if (policy.type == PolicyType::Mlewa) {
        for (Player i = 0; i < model.players; ++i) {
          PureProfile probe = actions;
          for (Action b = 0; b < model.period; ++b) {
            probe.actions[static_cast<size_t>(i)] = b;
            counterfactual[static_cast<size_t>(b)] =
                cost_pure(model, state, probe, i).to_double();
          }
          MlewaState& ml = learn.minds[static_cast<size_t>(i)];
          learn.ledgers[static_cast<size_t>(i)].record(
              ml.current_level(), actions.actions[static_cast<size_t>(i)], counterfactual);
          auto obs = ml.observe(counterfactual, sr.late[static_cast<size_t>(i)]);
          if (obs.initialized_new_level) {
            const double stat = init_weight_statistic(ml, obs.new_level);
            auto& st = learn.stats[static_cast<size_t>(i)];
            double& low_max = learn.max_low_level_stat[static_cast<size_t>(i)];
            if (obs.new_level <= level_cap) {
              low_max = std::max(low_max, stat);
            } else if (std::isfinite(low_max) && stat > low_max * (1.0 + 1e-12)) {
              st.init_bound_violations += 1;
            }
          }
        }
      }

      // spillover law: counts_{t+1} = late_t + 1, checked on every step
      for (Player i = 0; i < model.players; ++i) {
        if (sr.next.count(i) != sr.late[static_cast<size_t>(i)] + 1)
          throw Error("spillover law violated");
      }

      TrajectoryRow row;
      row.t = t;
      row.counts = state.counts();
      row.k = k;
      row.actions = actions.actions;
      row.late = sr.late;
      row.costs = sr.costs;
      result.trajectory.rows.push_back(std::move(row));
      state = sr.next;
    } catch (const Error& e) {
      throw Error("period " + std::to_string(t) + ": " + e.what());
    }
  }

  result.trajectory.final_counts = state.counts();
  result.trajectory.final_k = state.total();
  if (state.total() > max_k) {
    max_k = state.total();
    argmax_t = horizon;
  }

  RunSummary& summary = result.summary;
  summary.max_k = max_k;
  summary.argmax_t = argmax_t;
  summary.final_k = state.total();
  summary.penalty_condition_held =
      policy.type == PolicyType::Mlewa ? learn.penalty_ok_so_far : true;
  if (policy.type == PolicyType::MyopicStage) summary.eq_selections = myopic.selections();
  if (policy.type == PolicyType::Mlewa) {
    double max_regret = -std::numeric_limits<double>::infinity();
    for (Player i = 0; i < model.players; ++i) {
      auto& st = learn.stats[static_cast<size_t>(i)];
      const RegretLedger& ledger = learn.ledgers[static_cast<size_t>(i)];
      for (long long level : ledger.visited_levels()) {
        st.levels[level] = {ledger.visits(level), ledger.regret(level),
                            ledger.max_cost(level)};
        max_regret = std::max(max_regret, ledger.regret(level));
      }
      summary.pref0_checked += st.pref0_checked;
      summary.pref0_violations += st.pref0_violations;
      summary.init_bound_violations += st.init_bound_violations;
      summary.learning.push_back(std::move(st));
    }
    summary.max_level_regret = max_regret;
  }
  return result;
}

StabilityReport stability_report(const Trajectory& traj, std::optional<Count> bound) {
  StabilityReport report;
  report.bound = bound;
  report.final_k = traj.final_k;
  const long long horizon = static_cast<long long>(traj.rows.size());
  report.max_k = traj.final_k;
  report.argmax_t = horizon;
  for (const auto& row : traj.rows) {
    if (row.k > report.max_k) {
      report.max_k = row.k;
      report.argmax_t = row.t;
    }
  }
  // rows carry states for t < horizon; the final state counts toward the
  // second half
  const long long half = horizon / 2;
  report.second_half_max = traj.final_k;
  for (const auto& row : traj.rows) {
    if (row.t < half) {
      report.first_half_max = std::max(report.first_half_max, row.k);
    } else {
      report.second_half_max = std::max(report.second_half_max, row.k);
    }
  }
  if (bound) report.bound_violated = report.max_k > *bound;
  return report;
}

}  // namespace dqm
