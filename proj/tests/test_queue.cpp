#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "doctest.h"

#include "dqm/errors.hpp"
#include "dqm/queue.hpp"
#include "dqm/rng.hpp"

using namespace dqm;

namespace {

ModelParams make_model(int players, int period, long long penalty_num,
                       long long penalty_den = 1) {
  return ModelParams(players, period,
                     PenaltySchedule::constant(Rational(penalty_num, penalty_den)),
                     /*allow_short_period=*/true);
}

PureProfile prof(std::vector<Action> a) { return PureProfile{std::move(a)}; }

// Independent tie-break oracle used by the equivalence property: enumerate
// every permutation of the job list, serve in arrival order with the
// permutation breaking ties, and average the per-player late counts.
Rational permutation_oracle(const ModelParams& model, const State& state,
                            const PureProfile& profile, Player target) {
  std::vector<Player> owner;
  for (Player i = 0; i < model.players; ++i) {
    for (Count c = 0; c < state.count(i); ++c) owner.push_back(i);
  }
  const int jobs = static_cast<int>(owner.size());
  std::vector<int> perm(owner.size());
  std::iota(perm.begin(), perm.end(), 0);
  long long perms = 0;
  long long late_sum = 0;
  do {
    std::vector<int> order = perm;
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
      return profile.actions[static_cast<size_t>(owner[static_cast<size_t>(x)])] <
             profile.actions[static_cast<size_t>(owner[static_cast<size_t>(y)])];
    });
    Count prev_exit = 0;
    for (int job : order) {
      const Action arrival =
          profile.actions[static_cast<size_t>(owner[static_cast<size_t>(job)])];
      const Count exit = std::max<Count>(prev_exit, arrival) + 1;
      prev_exit = exit;
      if (exit > model.period && owner[static_cast<size_t>(job)] == target) ++late_sum;
    }
    ++perms;
  } while (std::next_permutation(perm.begin(), perm.end()));
  (void)jobs;
  return Rational(late_sum, perms * state.count(target));
}

}  // namespace

TEST_CASE("service schedule: staggered arrivals all make the deadline") {
  const auto model = make_model(3, 3, 10);
  const State state = State::all_ones(3);
  const auto stats = service_schedule(model, state, prof({0, 1, 2}));
  REQUIRE(stats.groups.size() == 3);
  for (const auto& g : stats.groups) {
    CHECK(g.jobs == 1);
    CHECK(g.on_time == 1);
  }
  CHECK(stats.total_late == 0);
}

TEST_CASE("service schedule: simultaneous arrivals lose exactly one job") {
  const auto model = make_model(3, 3, 10);
  const auto stats = service_schedule(model, State::all_ones(3), prof({1, 1, 1}));
  REQUIRE(stats.groups.size() == 1);
  CHECK(stats.groups[0].arrival == 1);
  CHECK(stats.groups[0].jobs == 3);
  CHECK(stats.groups[0].on_time == 2);
  CHECK(stats.total_late == 1);
}

TEST_CASE("service schedule: everyone at zero with k <= T is served") {
  const auto model = make_model(4, 5, 10);
  const auto stats = service_schedule(model, State::all_ones(4), prof({0, 0, 0, 0}));
  REQUIRE(stats.groups.size() == 1);
  CHECK(stats.groups[0].jobs == 4);
  CHECK(stats.groups[0].on_time == 4);
  CHECK(stats.total_late == 0);
}

TEST_CASE("late probability matches the grouped form") {
  const auto model = make_model(3, 3, 10);
  const State ones = State::all_ones(3);
  for (Player i = 0; i < 3; ++i) {
    CHECK(late_probability(model, ones, prof({1, 1, 1}), i) == Rational(1, 3));
    CHECK(late_probability(model, ones, prof({0, 1, 2}), i) == Rational(0));
  }
  // four jobs at time zero, three service slots: everyone's per-job chance is 1/4
  const State heavy(std::vector<Count>{2, 1, 1});
  for (Player i = 0; i < 3; ++i) {
    CHECK(late_probability(model, heavy, prof({0, 0, 0}), i) == Rational(1, 4));
  }
}

TEST_CASE("pure stage cost") {
  SUBCASE("joining at T-k always costs n_i * k") {
    const auto model = make_model(3, 5, 10);
    const State state = State::all_ones(3);
    Rng rng(3);
    for (int trial = 0; trial < 50; ++trial) {
      PureProfile p = prof({2, 0, 0});
      p.actions[1] = static_cast<Action>(rng.bounded(5));
      p.actions[2] = static_cast<Action>(rng.bounded(5));
      CHECK(cost_pure(model, state, p, 0) == Rational(3));
    }
  }
  SUBCASE("waiting plus expected penalty, exactly") {
    const auto model = make_model(3, 3, 10);
    CHECK(cost_pure(model, State::all_ones(3), prof({1, 1, 1}), 0) == Rational(16, 3));
  }
  SUBCASE("no lateness leaves only the waiting cost") {
    const auto model = make_model(3, 4, 99);
    const State state(std::vector<Count>{2, 1, 1});
    for (Player i = 0; i < 3; ++i) {
      CHECK(cost_pure(model, state, prof({0, 0, 0}), i) ==
            Rational(state.count(i)) * Rational(4));
    }
  }
}

TEST_CASE("conservation: job-weighted late probabilities sum to the late count") {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int players = 3 + static_cast<int>(rng.bounded(3));
    const int period = 2 + static_cast<int>(rng.bounded(4));
    std::vector<Count> counts;
    for (int i = 0; i < players; ++i) counts.push_back(1 + static_cast<Count>(rng.bounded(3)));
    const auto model = make_model(players, period, 7);
    const State state(counts);
    PureProfile p;
    for (int i = 0; i < players; ++i)
      p.actions.push_back(static_cast<Action>(rng.bounded(static_cast<uint64_t>(period))));

    Rational weighted(0);
    for (Player i = 0; i < players; ++i) {
      weighted += Rational(state.count(i)) * late_probability(model, state, p, i);
    }
    const auto stats = service_schedule(model, state, p);
    CHECK(weighted == Rational(stats.total_late));
  }
}

TEST_CASE("deviating to zero never increases the late probability") {
  Rng rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    const int players = 3;
    const int period = 2 + static_cast<int>(rng.bounded(4));
    std::vector<Count> counts;
    for (int i = 0; i < players; ++i) counts.push_back(1 + static_cast<Count>(rng.bounded(4)));
    const auto model = make_model(players, period, 7);
    const State state(counts);
    PureProfile p;
    for (int i = 0; i < players; ++i)
      p.actions.push_back(static_cast<Action>(rng.bounded(static_cast<uint64_t>(period))));
    for (Player i = 0; i < players; ++i) {
      PureProfile dev = p;
      dev.actions[static_cast<size_t>(i)] = 0;
      CHECK(late_probability(model, state, p, i) >= late_probability(model, state, dev, i));
    }
  }
}

TEST_CASE("group gap at the latest joining time when k > T") {
  Rng rng(17);
  int checked = 0;
  while (checked < 100) {
    const int period = 2 + static_cast<int>(rng.bounded(3));
    std::vector<Count> counts{1 + static_cast<Count>(rng.bounded(3)),
                              1 + static_cast<Count>(rng.bounded(3)),
                              1 + static_cast<Count>(rng.bounded(3))};
    const State state(counts);
    const Count k = state.total();
    if (k <= period) continue;
    const auto model = make_model(3, period, 5);
    PureProfile p;
    for (int i = 0; i < 3; ++i)
      p.actions.push_back(static_cast<Action>(rng.bounded(static_cast<uint64_t>(period))));
    if (p.all_zero()) continue;

    const Action top = *std::max_element(p.actions.begin(), p.actions.end());
    Count group = 0;
    for (Player i = 0; i < 3; ++i) {
      if (p.actions[static_cast<size_t>(i)] == top) group += state.count(i);
    }
    for (Player i = 0; i < 3; ++i) {
      if (p.actions[static_cast<size_t>(i)] != top) continue;
      PureProfile dev = p;
      dev.actions[static_cast<size_t>(i)] = 0;
      const Rational gap =
          late_probability(model, state, p, i) - late_probability(model, state, dev, i);
      CHECK(gap >= Rational(1, group * k));
    }
    ++checked;
  }
}

TEST_CASE("late probability equals the permutation-average oracle on small cases") {
  Rng rng(19);
  for (int trial = 0; trial < 40; ++trial) {
    const int period = 2 + static_cast<int>(rng.bounded(4));
    std::vector<Count> counts{1, 1, 1};
    counts[rng.bounded(3)] += static_cast<Count>(rng.bounded(3));  // k <= 5
    const auto model = make_model(3, period, 3);
    const State state(counts);
    PureProfile p;
    for (int i = 0; i < 3; ++i)
      p.actions.push_back(static_cast<Action>(rng.bounded(static_cast<uint64_t>(period))));
    for (Player i = 0; i < 3; ++i) {
      CHECK(late_probability(model, state, p, i) == permutation_oracle(model, state, p, i));
    }
  }
}

TEST_CASE("sampled late counts") {
  const auto model = make_model(3, 3, 10);
  const State ones = State::all_ones(3);

  SUBCASE("no lateness means all zeros for every seed") {
    for (uint64_t seed = 0; seed < 20; ++seed) {
      Rng rng(seed);
      const auto late = sample_late_counts(model, ones, prof({0, 1, 2}), rng);
      CHECK(late == std::vector<Count>{0, 0, 0});
    }
  }

  SUBCASE("exactly one job is late when all three collide") {
    Rng rng(5);
    for (int draw = 0; draw < 50; ++draw) {
      const auto late = sample_late_counts(model, ones, prof({1, 1, 1}), rng);
      CHECK(std::accumulate(late.begin(), late.end(), Count{0}) == 1);
    }
  }

  SUBCASE("empirical mean tracks the exact probability") {
    const State heavy(std::vector<Count>{2, 1, 1});
    const PureProfile p = prof({0, 0, 0});
    Rng rng(99);
    const int draws = 100'000;
    std::vector<long long> late_total(3, 0);
    for (int d = 0; d < draws; ++d) {
      const auto late = sample_late_counts(model, heavy, p, rng);
      for (size_t i = 0; i < 3; ++i) late_total[i] += late[i];
    }
    for (Player i = 0; i < 3; ++i) {
      const double exact = late_probability(model, heavy, p, i).to_double();
      const double mean = static_cast<double>(late_total[static_cast<size_t>(i)]) /
                          (static_cast<double>(draws) * static_cast<double>(heavy.count(i)));
      const double sigma = std::sqrt(exact * (1.0 - exact) / draws);
      CHECK(std::abs(mean - exact) <= 3.0 * sigma);
    }
  }
}

TEST_CASE("expected cost under a mixed profile") {
  const auto model = make_model(3, 3, 10);
  const State ones = State::all_ones(3);

  SUBCASE("a point mass reproduces the pure cost") {
    const PureProfile p = prof({1, 2, 0});
    const MixedProfile m = MixedProfile::pure(p, 3);
    for (Player i = 0; i < 3; ++i) {
      CHECK(expected_cost_mixed(model, ones, m, i, EvalMode::exact()).value ==
            cost_pure(model, ones, p, i).to_double());
    }
  }

  SUBCASE("the two-point indifference profile costs k per job") {
    const double hi = std::sqrt(0.3);
    MixedProfile m;
    m.rows.assign(3, {1.0 - hi, hi, 0.0});
    for (Player i = 0; i < 3; ++i) {
      CHECK(expected_cost_mixed(model, ones, m, i, EvalMode::exact()).value ==
            doctest::Approx(3.0).epsilon(1e-12));
    }
  }

  SUBCASE("monte carlo agrees with exact within four standard errors") {
    Rng rng(23);
    for (int trial = 0; trial < 10; ++trial) {
      MixedProfile m;
      for (int i = 0; i < 3; ++i) {
        std::vector<double> row(3);
        double sum = 0.0;
        for (auto& x : row) {
          x = 0.05 + rng.uniform01();
          sum += x;
        }
        for (auto& x : row) x /= sum;
        m.rows.push_back(row);
      }
      const double exact = expected_cost_mixed(model, ones, m, 0, EvalMode::exact()).value;
      const auto mc =
          expected_cost_mixed(model, ones, m, 0, EvalMode::monte_carlo(1000 + trial, 20'000));
      CHECK(std::abs(mc.value - exact) <= 4.0 * mc.std_error + 1e-12);
    }
  }

  SUBCASE("the exact-enumeration cap is enforced") {
    const MixedProfile m = MixedProfile::uniform(3, 3);
    CHECK_THROWS_AS(expected_cost_mixed(model, ones, m, 0, EvalMode::exact(8)),
                    EnumerationCapError);
  }
}
