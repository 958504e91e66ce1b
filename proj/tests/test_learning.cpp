#include <cmath>
#include <vector>

#include "doctest.h"

#include "dqm/errors.hpp"
#include "dqm/learning.hpp"

using namespace dqm;

TEST_CASE("exponential-weight strategy") {
  SUBCASE("uniform weights give the uniform strategy") {
    const EwaState ewa = EwaState::uniform(4, 0.1);
    for (double p : ewa_strategy(ewa)) CHECK(p == doctest::Approx(0.25).epsilon(1e-15));
  }
  SUBCASE("softmax of a concrete weight vector") {
    EwaState ewa = EwaState::uniform(3, 0.1);
    ewa.log_weights = {0.0, -0.1, -0.2};
    const auto probs = ewa_strategy(ewa);
    const double z = 1.0 + std::exp(-0.1) + std::exp(-0.2);
    CHECK(probs[0] == doctest::Approx(1.0 / z).epsilon(1e-15));
    CHECK(probs[1] == doctest::Approx(std::exp(-0.1) / z).epsilon(1e-15));
    CHECK(probs[2] == doctest::Approx(std::exp(-0.2) / z).epsilon(1e-15));
    CHECK(probs[0] == doctest::Approx(0.36717).epsilon(1e-4));
    CHECK(probs[1] == doctest::Approx(0.33223).epsilon(1e-4));
    CHECK(probs[2] == doctest::Approx(0.30061).epsilon(1e-4));
  }
  SUBCASE("adding a constant to every weight changes nothing") {
    EwaState a = EwaState::uniform(3, 0.1);
    a.log_weights = {-1.0, 2.5, 0.25};
    EwaState b = a;
    for (auto& w : b.log_weights) w += 123.0;
    CHECK(ewa_strategy(a) == ewa_strategy(b));
  }
}

TEST_CASE("exponential-weight update") {
  SUBCASE("one update from uniform") {
    EwaState ewa = EwaState::uniform(3, 0.1);
    const std::vector<double> costs = {3.0, 2.0, 4.0};
    ewa_update(ewa, costs);
    const auto probs = ewa_strategy(ewa);
    CHECK(probs[0] == doctest::Approx(0.33223).epsilon(1e-4));
    CHECK(probs[1] == doctest::Approx(0.36717).epsilon(1e-4));
    CHECK(probs[2] == doctest::Approx(0.30061).epsilon(1e-4));
  }
  SUBCASE("zero costs leave the state untouched") {
    EwaState ewa = EwaState::uniform(3, 0.1);
    const EwaState before = ewa;
    ewa_update(ewa, std::vector<double>{0.0, 0.0, 0.0});
    CHECK(ewa.log_weights == before.log_weights);
  }
  SUBCASE("two updates equal one update of the summed costs") {
    EwaState twice = EwaState::uniform(3, 0.1);
    ewa_update(twice, std::vector<double>{3.0, 2.0, 4.0});
    ewa_update(twice, std::vector<double>{1.0, 5.0, 0.5});
    EwaState once = EwaState::uniform(3, 0.1);
    ewa_update(once, std::vector<double>{4.0, 7.0, 4.5});
    for (size_t b = 0; b < 3; ++b) {
      CHECK(twice.log_weights[b] == doctest::Approx(once.log_weights[b]).epsilon(1e-15));
    }
  }
  SUBCASE("non-finite costs are rejected") {
    EwaState ewa = EwaState::uniform(3, 0.1);
    CHECK_THROWS_AS(
        ewa_update(ewa, std::vector<double>{1.0, std::numeric_limits<double>::infinity(), 0.0}),
        PreconditionError);
  }
}

TEST_CASE("strategies stay positive and finite after a million harsh updates") {
  EwaState ewa = EwaState::uniform(5, 0.1);
  Rng rng(31);
  for (int step = 0; step < 1'000'000; ++step) {
    std::vector<double> costs(5);
    for (auto& c : costs) c = rng.uniform01() * 10'000.0;
    ewa_update(ewa, costs);
    if (step % 100'000 == 0 || step == 999'999) {
      double sum = 0.0;
      for (double p : ewa_strategy(ewa)) {
        CHECK(p > 0.0);
        CHECK(std::isfinite(p));
        sum += p;
      }
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("multi-level bookkeeping") {
  SUBCASE("a run that never changes level is plain exponential weights") {
    MlewaState ml(4, 0.2);
    EwaState plain = EwaState::uniform(4, 0.2);
    Rng rng(1);
    for (int step = 0; step < 50; ++step) {
      std::vector<double> costs(4);
      for (auto& c : costs) c = rng.uniform01() * 5.0;
      ml.observe(costs, /*own_late=*/0);  // next level stays 1
      ewa_update(plain, costs);
      CHECK(ml.current_level() == 1);
      CHECK(ml.level(1).ewa.log_weights == plain.log_weights);
    }
    CHECK(ml.level(1).visits == 50);
  }

  SUBCASE("a new level starts from a verbatim copy of the one just left") {
    MlewaState ml(4, 0.2);
    const std::vector<double> costs = {1.0, 2.0, 3.0, 4.0};
    const auto result = ml.observe(costs, /*own_late=*/1);
    CHECK(result.initialized_new_level);
    CHECK(result.new_level == 2);
    CHECK(ml.current_level() == 2);
    CHECK(ml.level(2).ewa.log_weights == ml.level(1).ewa.log_weights);
    CHECK(ml.level(2).first_visit == 1);
    CHECK(ml.level(2).visits == 0);
    CHECK(ml.level(1).visits == 1);
  }

  SUBCASE("an inactive level is frozen while other levels play") {
    MlewaState ml(4, 0.2);
    ml.observe(std::vector<double>{1, 1, 1, 1}, 1);  // to level 2
    const auto snapshot2 = ml.level(2).ewa.log_weights;
    ml.observe(std::vector<double>{9, 9, 9, 9}, 0);  // level 2 updates, back to 1
    const auto snapshot1 = ml.level(1).ewa.log_weights;
    CHECK(ml.level(2).ewa.log_weights != snapshot2);  // active level moved
    const auto snapshot2b = ml.level(2).ewa.log_weights;
    ml.observe(std::vector<double>{5, 4, 3, 2}, 1);  // level 1 updates, to level 2
    CHECK(ml.level(2).ewa.log_weights == snapshot2b);  // untouched while inactive
    CHECK(ml.level(1).ewa.log_weights != snapshot1);
    // revisiting resumes the stored weights, no re-initialization
    CHECK(ml.current_level() == 2);
    CHECK(ml.level(2).first_visit == 1);
  }

  SUBCASE("snapshots round-trip through json") {
    MlewaState ml(5, 0.1);
    Rng rng(3);
    for (int step = 0; step < 30; ++step) {
      std::vector<double> costs(5);
      for (auto& c : costs) c = rng.uniform01() * 50.0;
      ml.observe(costs, static_cast<Count>(rng.bounded(
                            static_cast<uint64_t>(ml.current_level()) + 1)));
    }
    const MlewaState back = MlewaState::from_json(ml.to_json());
    CHECK(back.current_level() == ml.current_level());
    CHECK(back.period() == ml.period());
    REQUIRE(back.levels().size() == ml.levels().size());
    for (const auto& [c, data] : ml.levels()) {
      CHECK(back.level(c).ewa.log_weights == data.ewa.log_weights);
      CHECK(back.level(c).first_visit == data.first_visit);
      CHECK(back.level(c).visits == data.visits);
      CHECK(back.level(c).first_log_prob0 == data.first_log_prob0);
    }
  }
}

TEST_CASE("weight-on-zero lower bound") {
  // T = 2 keeps 2T^2 at 8 so high levels are easy to reach in a test
  const int t2 = 8;

  auto climb = [&](int target_level) {
    MlewaState ml(2, 0.1);
    for (long long level = 1; level < target_level; ++level) {
      ml.observe(std::vector<double>{0.0, 0.0}, ml.current_level());
    }
    REQUIRE(ml.current_level() == target_level);
    return ml;
  };

  SUBCASE("levels at or below 2T^2 are refused") {
    MlewaState ml = climb(t2);
    CHECK_THROWS_AS(pref0_lower_bound(ml, t2), PreconditionError);
    CHECK_THROWS_AS(pref0_lower_bound(climb(t2 + 1), t2 + 2), PreconditionError);
  }

  SUBCASE("at the first visit the bound equals the stored strategy") {
    MlewaState ml = climb(t2 + 1);
    const double x0 = ewa_strategy(ml.level(t2 + 1).ewa)[0];
    CHECK(pref0_lower_bound(ml, t2 + 1) == doctest::Approx(x0).epsilon(1e-15));
    CHECK(pref0_lower_bound_log(ml, t2 + 1) == ml.level(t2 + 1).first_log_prob0);
  }

  SUBCASE("the concrete value from the closed form") {
    // x_phi(0) = 0.5, eta = 0.1, level 51, one visit:
    // 0.5 / (0.5 + 0.5 * exp(-5.1)) = 0.9939402...
    nlohmann::json j;
    j["num_actions"] = 5;
    j["eta"] = 0.1;
    j["current_level"] = 51;
    j["period"] = 60;
    j["levels"] = nlohmann::json::array();
    j["levels"].push_back({{"level", 51},
                           {"log_weights", std::vector<double>{0, 0, 0, 0, 0}},
                           {"first_visit", 55},
                           {"visits", 1},
                           {"first_log_prob0", std::log(0.5)}});
    const MlewaState ml = MlewaState::from_json(j);
    const double bound = pref0_lower_bound(ml, 51);
    CHECK(bound == doctest::Approx(0.5 / (0.5 + 0.5 * std::exp(-5.1))).epsilon(1e-12));
    CHECK(bound == doctest::Approx(0.99394).epsilon(1e-4));
  }

  SUBCASE("the bound is nondecreasing in the visit count") {
    auto with_visits = [](long long visits) {
      nlohmann::json j;
      j["num_actions"] = 3;
      j["eta"] = 0.1;
      j["current_level"] = 19;
      j["period"] = 30;
      j["levels"] = nlohmann::json::array();
      j["levels"].push_back({{"level", 19},
                             {"log_weights", std::vector<double>{0, 0, 0}},
                             {"first_visit", 20},
                             {"visits", visits},
                             {"first_log_prob0", std::log(0.25)}});
      return MlewaState::from_json(j);
    };
    double prev = 0.0;
    for (long long visits = 0; visits <= 5; ++visits) {
      const double bound = pref0_lower_bound(with_visits(visits), 19);
      CHECK(bound >= prev);
      prev = bound;
    }
    CHECK(prev > 0.999);
  }
}

TEST_CASE("per-level regret") {
  SUBCASE("playing the best action leaves zero regret") {
    RegretLedger ledger(3);
    ledger.record(1, 1, std::vector<double>{5.0, 2.0, 7.0});
    CHECK(ledger.regret(1) == doctest::Approx(0.0));
  }
  SUBCASE("constant costs leave zero regret whatever is played") {
    RegretLedger ledger(3);
    for (int step = 0; step < 10; ++step) {
      ledger.record(2, step % 3, std::vector<double>{4.0, 4.0, 4.0});
    }
    CHECK(ledger.regret(2) == doctest::Approx(0.0));
    CHECK(ledger.visits(2) == 10);
  }
  SUBCASE("an unvisited level is an error") {
    RegretLedger ledger(3);
    CHECK_THROWS_AS(ledger.regret(4), PreconditionError);
    CHECK_THROWS_AS(ledger.most_visited_level(), PreconditionError);
  }
  SUBCASE("frozen-environment harness obeys the exponential-weights bound") {
    // adversarial random cost vectors with a fixed range; the learner's
    // realized regret per step must stay below log(K)/(eta*m) + eta*c^2/8
    const int actions = 5;
    const double eta = 0.1;
    const double c_max = 10.0;
    for (uint64_t seed = 1; seed <= 5; ++seed) {
      EwaState ewa = EwaState::uniform(actions, eta);
      RegretLedger ledger(actions);
      Rng rng(seed);
      const long long m = 2'000;
      for (long long step = 0; step < m; ++step) {
        std::vector<double> costs(actions);
        for (auto& c : costs) c = rng.uniform01() * c_max;
        const Action played = rng.sample(ewa_strategy(ewa));
        ledger.record(1, played, costs);
        ewa_update(ewa, costs);
      }
      const double bound = std::log(actions) / (eta * static_cast<double>(m)) +
                           eta * c_max * c_max / 8.0;
      CHECK(ledger.regret(1) / static_cast<double>(m) <= bound);
    }
  }
}

TEST_CASE("single-agent step against fixed opponents") {
  const ModelParams model(3, 3, PenaltySchedule::constant(Rational(10)));
  const State ones = State::all_ones(3);
  MlewaState ml(3, 0.1);
  Rng rng(9);
  PureProfile others{{0, 1, 2}};  // own slot overwritten by the step

  const auto outcome = mlewa_step(ml, model, ones, 0, others, rng);
  CHECK(outcome.counterfactual_costs.size() == 3);
  CHECK(outcome.realized_cost ==
        cost_pure(model, ones, PureProfile{{outcome.action, 1, 2}}, 0));
  CHECK(ml.period() == 1);

  SUBCASE("level/count mismatch is rejected") {
    MlewaState fresh(3, 0.1);
    const State heavy(std::vector<Count>{2, 1, 1});
    CHECK_THROWS_AS(mlewa_step(fresh, model, heavy, 0, others, rng), PreconditionError);
  }
}
