#include "dqm/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dqm/errors.hpp"

namespace dqm {

namespace {

constexpr double kProbTol = 1e-12;  // mass below this counts as zero support
constexpr double kEqualTol = 1e-9;  // tolerance for equality of mixed actions

}  // namespace

std::vector<Action> best_response(const ModelParams& model, const State& state,
                                  const MixedProfile& mixed, Player i,
                                  long long cap, double tie_tol) {
  check_player(model, i);
  double best = std::numeric_limits<double>::infinity();
  std::vector<double> costs(static_cast<size_t>(model.period), 0.0);
  for (Action b = 0; b < model.period; ++b) {
    costs[static_cast<size_t>(b)] = expected_cost_of_action(model, state, mixed, i, b, cap);
    best = std::min(best, costs[static_cast<size_t>(b)]);
  }
  std::vector<Action> out;
  for (Action b = 0; b < model.period; ++b) {
    if (costs[static_cast<size_t>(b)] <= best + tie_tol) out.push_back(b);
  }
  return out;
}

NashCertificate verify_nash(const ModelParams& model, const State& state,
                            const MixedProfile& mixed, double eps, long long cap) {
  check_state(model, state);
  mixed.validate(model.period);
  if (mixed.players() != model.players)
    throw PreconditionError("verify_nash: profile dimension mismatch");

  NashCertificate cert;
  cert.profile = mixed;
  cert.eps = eps;

  const Count k = state.total();
  const int period = model.period;

  double max_gain = -std::numeric_limits<double>::infinity();
  double social = 0.0;
  for (Player i = 0; i < model.players; ++i) {
    double mix_cost = expected_cost_mixed(model, state, mixed, i, EvalMode::exact(cap)).value;
    double best = std::numeric_limits<double>::infinity();
    for (Action b = 0; b < period; ++b) {
      best = std::min(best, expected_cost_of_action(model, state, mixed, i, b, cap));
    }
    max_gain = std::max(max_gain, mix_cost - best);
    social += mix_cost;
  }
  cert.max_deviation_gain = max_gain;
  cert.social_cost = social;

  if (k > period || k < 2) return cert;  // structure flags defined for 2 <= k <= T
  cert.structure_checked = true;

  const Action safe = static_cast<Action>(period - k);
  const auto& rows = mixed.rows;
  auto mass = [&](Player j, Action a) { return rows[static_cast<size_t>(j)][static_cast<size_t>(a)]; };

  cert.zero_mass_before_safe_slot = true;
  for (Player j = 0; j < model.players; ++j) {
    for (Action a = 0; a < safe; ++a) {
      if (mass(j, a) > kProbTol) cert.zero_mass_before_safe_slot = false;
    }
  }

  // anchor candidates: mass on the safe slot, nothing above safe+1
  std::vector<Player> anchors;
  for (Player j = 0; j < model.players; ++j) {
    if (mass(j, safe) <= kProbTol) continue;
    bool clean_tail = true;
    for (Action a = safe + 2; a < period; ++a) {
      if (mass(j, a) > kProbTol) clean_tail = false;
    }
    if (clean_tail) anchors.push_back(j);
  }
  cert.anchor_player_exists = !anchors.empty();

  for (Player cand : anchors) {
    bool ok = true;
    for (Player j = 0; j < model.players; ++j) {
      if (j != cand && mass(j, safe + 1) <= kProbTol) ok = false;
    }
    if (ok) {
      cert.others_mix_on_second_slot = true;
      cert.anchor = cand;
      break;
    }
  }
  if (cert.anchor < 0 && !anchors.empty()) cert.anchor = anchors.front();

  if (!anchors.empty()) {
    cert.anchor_group_identical = true;
    const auto& ref = rows[static_cast<size_t>(anchors.front())];
    for (Player j = 0; j < model.players; ++j) {
      if (mass(j, safe) <= kProbTol) continue;
      for (Action a = 0; a < period; ++a) {
        if (std::abs(rows[static_cast<size_t>(j)][static_cast<size_t>(a)] -
                     ref[static_cast<size_t>(a)]) > kEqualTol) {
          cert.anchor_group_identical = false;
        }
      }
    }
  }

  const double k_d = static_cast<double>(k);
  cert.social_cost_within_bounds =
      social >= k_d * k_d - k_d + 1.0 - kEqualTol && social <= k_d * k_d + kEqualTol;
  return cert;
}

MixedProfile two_point_profile(const ModelParams& model, const State& state) {
  check_state(model, state);
  const Count k = state.total();
  if (k < 2 || k > model.period)
    throw PreconditionError("two-point profile requires 2 <= k <= T");
  const Rational penalty = model.penalty.at(k);
  if (!(penalty > Rational(k) * Rational(k)))
    throw PreconditionError(
        "two-point profile requires penalty > k^2 (indifference weight would "
        "leave the unit interval)");

  const double x_hi = std::pow(static_cast<double>(k) / penalty.to_double(),
                               1.0 / static_cast<double>(model.players - 1));
  MixedProfile m;
  m.rows.assign(static_cast<size_t>(model.players),
                std::vector<double>(static_cast<size_t>(model.period), 0.0));
  const size_t safe = static_cast<size_t>(model.period - k);
  for (auto& row : m.rows) {
    row[safe] = 1.0 - x_hi;
    row[safe + 1] = x_hi;
  }
  return m;
}

MixedProfile solve_two_point_equilibrium(const ModelParams& model, const State& state) {
  check_state(model, state);
  for (Player i = 0; i < model.players; ++i) {
    if (state.count(i) != 1)
      throw PreconditionError("two-point equilibrium requires unit job counts");
  }
  return two_point_profile(model, state);
}

CceReport cce_zero_support_certificate(const ModelParams& model, const State& state,
                                       long long cap) {
  check_state(model, state);
  const Count k = state.total();
  if (k <= model.period)
    throw PreconditionError("zero-support certificate requires k > T");
  for (Player i = 0; i < model.players; ++i) {
    if (state.count(i) < 1)
      throw PreconditionError("zero-support certificate requires counts >= 1");
  }
  long long profiles = 1;
  for (Player i = 0; i < model.players; ++i) {
    profiles *= model.period;
    if (profiles > cap)
      throw EnumerationCapError("profile enumeration exceeds cap of " + std::to_string(cap));
  }

  CceReport report;
  const Rational penalty = model.penalty.at(k);
  report.penalty = penalty;
  report.crude_margin_bound =
      -(penalty / Rational(k)) + Rational(model.period) * Rational(k);
  report.crude_bound_conclusive = report.crude_margin_bound < Rational(0);
  report.all_margins_negative = true;
  report.gap_holds_everywhere = true;
  report.sum_bound_holds_everywhere = true;

  PureProfile profile;
  profile.actions.assign(static_cast<size_t>(model.players), 0);
  const Rational minus_inv_k = -Rational(1, k);

  for (;;) {
    // next profile in lexicographic order (rightmost player fastest)
    int j = model.players - 1;
    while (j >= 0 && profile.actions[static_cast<size_t>(j)] == model.period - 1) {
      profile.actions[static_cast<size_t>(j)] = 0;
      --j;
    }
    if (j < 0) break;
    profile.actions[static_cast<size_t>(j)] += 1;

    CceProfileEntry entry;
    entry.profile = profile;

    std::vector<Rational> p(static_cast<size_t>(model.players));
    std::vector<Rational> p0(static_cast<size_t>(model.players));
    for (Player i = 0; i < model.players; ++i) {
      p[static_cast<size_t>(i)] = late_probability(model, state, profile, i);
      if (profile.actions[static_cast<size_t>(i)] == 0) {
        p0[static_cast<size_t>(i)] = p[static_cast<size_t>(i)];
      } else {
        PureProfile dev = profile;
        dev.actions[static_cast<size_t>(i)] = 0;
        p0[static_cast<size_t>(i)] = late_probability(model, state, dev, i);
      }
    }

    Rational dev_sum(0);
    Rational waiting(0);
    for (Player i = 0; i < model.players; ++i) {
      const Rational n(state.count(i));
      dev_sum += n * (p0[static_cast<size_t>(i)] - p[static_cast<size_t>(i)]);
      waiting += n * Rational(profile.actions[static_cast<size_t>(i)]);
    }
    entry.deviation_sum = dev_sum;
    entry.margin = penalty * dev_sum + waiting;
    entry.sum_ok = dev_sum <= minus_inv_k;

    const Action max_action =
        *std::max_element(profile.actions.begin(), profile.actions.end());
    Count group_jobs = 0;
    for (Player i = 0; i < model.players; ++i) {
      if (profile.actions[static_cast<size_t>(i)] == max_action) group_jobs += state.count(i);
    }
    entry.required_gap = Rational(1, group_jobs * k);
    bool first = true;
    entry.gap_ok = true;
    for (Player i = 0; i < model.players; ++i) {
      if (profile.actions[static_cast<size_t>(i)] != max_action) continue;
      Rational gap = p[static_cast<size_t>(i)] - p0[static_cast<size_t>(i)];
      if (first || gap < entry.min_gap) entry.min_gap = gap;
      first = false;
      if (gap < entry.required_gap) entry.gap_ok = false;
    }

    if (!(entry.margin < Rational(0))) report.all_margins_negative = false;
    if (!entry.gap_ok) report.gap_holds_everywhere = false;
    if (!entry.sum_ok) report.sum_bound_holds_everywhere = false;
    report.entries.push_back(std::move(entry));
  }

  report.certifies_unique_zero_cce = report.all_margins_negative;
  return report;
}

namespace {

// All compositions of `g` into `parts` nonnegative integers, as probability
// vectors with resolution 1/g.
void grid_points(int g, int parts, std::vector<std::vector<double>>& out) {
  std::vector<int> comp(static_cast<size_t>(parts), 0);
  std::vector<double> probs(static_cast<size_t>(parts), 0.0);
  // iterate compositions in lexicographic order
  comp[static_cast<size_t>(parts - 1)] = g;
  for (;;) {
    for (int r = 0; r < parts; ++r) {
      probs[static_cast<size_t>(r)] =
          static_cast<double>(comp[static_cast<size_t>(r)]) / static_cast<double>(g);
    }
    out.push_back(probs);
    // next composition: move one unit from the tail to the left
    int j = parts - 2;
    while (j >= 0) {
      int tail = 0;
      for (int r = j + 1; r < parts; ++r) tail += comp[static_cast<size_t>(r)];
      if (tail > 0) break;
      --j;
    }
    if (j < 0) break;
    comp[static_cast<size_t>(j)] += 1;
    int remaining = 0;
    for (int r = j + 1; r < parts; ++r) {
      remaining += comp[static_cast<size_t>(r)];
      comp[static_cast<size_t>(r)] = 0;
    }
    comp[static_cast<size_t>(parts - 1)] = remaining - 1;
  }
}

}  // namespace

GridEquilibria brute_force_nash(const ModelParams& model, const State& state,
                                double grid_step, double eps, long long point_cap) {
  check_state(model, state);
  if (model.players > 4)
    throw PreconditionError("grid oracle supports at most 4 players");
  if (grid_step < 0.02 - 1e-12)
    throw PreconditionError("grid oracle requires grid_step >= 0.02");

  const Count k = state.total();
  const Action lo = static_cast<Action>(std::max<Count>(0, model.period - k));
  const int reduced = model.period - lo;  // undominated actions {lo..T-1}
  if (reduced > 4)
    throw PreconditionError("grid oracle supports at most 4 undominated actions");

  const int n = model.players;
  const int g = static_cast<int>(std::lround(1.0 / grid_step));

  std::vector<std::vector<double>> points;
  grid_points(g, reduced, points);
  double total_points = 1.0;
  for (int i = 0; i < n; ++i) total_points *= static_cast<double>(points.size());
  if (total_points > static_cast<double>(point_cap))
    throw EnumerationCapError("grid would visit " + std::to_string(total_points) +
                              " points, above the cap");

  // cost tensor over reduced joint profiles, player-major
  int joint = 1;
  for (int i = 0; i < n; ++i) joint *= reduced;
  std::vector<std::vector<double>> cost(static_cast<size_t>(n),
                                        std::vector<double>(static_cast<size_t>(joint)));
  PureProfile profile;
  profile.actions.assign(static_cast<size_t>(n), 0);
  for (int flat = 0; flat < joint; ++flat) {
    int rem = flat;
    for (int i = n - 1; i >= 0; --i) {
      profile.actions[static_cast<size_t>(i)] = lo + rem % reduced;
      rem /= reduced;
    }
    for (Player i = 0; i < n; ++i) {
      cost[static_cast<size_t>(i)][static_cast<size_t>(flat)] =
          cost_pure(model, state, profile, i).to_double();
    }
  }

  const int opp_joint = joint / reduced;
  std::vector<size_t> idx(static_cast<size_t>(n), 0);
  std::vector<int> opp_actions(static_cast<size_t>(n - 1), 0);
  std::vector<double> action_cost(static_cast<size_t>(reduced), 0.0);

  std::vector<std::pair<std::vector<double>, double>> found;  // flattened rows, gain
  for (;;) {
    double worst_gain = 0.0;
    for (Player i = 0; i < n && worst_gain <= eps; ++i) {
      std::fill(action_cost.begin(), action_cost.end(), 0.0);
      for (int of = 0; of < opp_joint; ++of) {
        int rem = of;
        double w = 1.0;
        for (int pos = n - 2; pos >= 0; --pos) {
          opp_actions[static_cast<size_t>(pos)] = rem % reduced;
          rem /= reduced;
        }
        for (int pos = 0, pj = 0; pj < n; ++pj) {
          if (pj == i) continue;
          w *= points[idx[static_cast<size_t>(pj)]][static_cast<size_t>(
              opp_actions[static_cast<size_t>(pos)])];
          ++pos;
        }
        if (w == 0.0) continue;
        // expand opponent flat index back into the player-major joint index
        for (int b = 0; b < reduced; ++b) {
          int flat = 0;
          for (int pos = 0, pj = 0; pj < n; ++pj) {
            int a = (pj == i) ? b : opp_actions[static_cast<size_t>(pos++)];
            flat = flat * reduced + a;
          }
          action_cost[static_cast<size_t>(b)] +=
              w * cost[static_cast<size_t>(i)][static_cast<size_t>(flat)];
        }
      }
      double mix = 0.0;
      double best = std::numeric_limits<double>::infinity();
      const auto& row = points[idx[static_cast<size_t>(i)]];
      for (int b = 0; b < reduced; ++b) {
        mix += row[static_cast<size_t>(b)] * action_cost[static_cast<size_t>(b)];
        best = std::min(best, action_cost[static_cast<size_t>(b)]);
      }
      worst_gain = std::max(worst_gain, mix - best);
    }

    if (worst_gain <= eps) {
      std::vector<double> flat_rows;
      flat_rows.reserve(static_cast<size_t>(n * model.period));
      for (Player i = 0; i < n; ++i) {
        for (Action a = 0; a < model.period; ++a) {
          double p = (a < lo) ? 0.0
                              : points[idx[static_cast<size_t>(i)]][static_cast<size_t>(a - lo)];
          flat_rows.push_back(p);
        }
      }
      found.emplace_back(std::move(flat_rows), worst_gain);
    }

    int j = n - 1;
    while (j >= 0 && ++idx[static_cast<size_t>(j)] == points.size()) {
      idx[static_cast<size_t>(j)] = 0;
      --j;
    }
    if (j < 0) break;
  }

  std::sort(found.begin(), found.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  GridEquilibria out;
  out.grid_step = grid_step;
  out.eps = eps;
  for (auto& [flat, gain] : found) {
    MixedProfile m;
    m.rows.resize(static_cast<size_t>(n));
    for (Player i = 0; i < n; ++i) {
      m.rows[static_cast<size_t>(i)].assign(
          flat.begin() + static_cast<long>(i) * model.period,
          flat.begin() + static_cast<long>(i + 1) * model.period);
    }
    out.profiles.push_back(std::move(m));
    out.gains.push_back(gain);
  }
  return out;
}

}  // namespace dqm
