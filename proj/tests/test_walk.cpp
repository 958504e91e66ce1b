#include <cmath>

#include "doctest.h"

#include "dqm/errors.hpp"
#include "dqm/walk.hpp"

using namespace dqm;

TEST_CASE("walk validation derives the reinforcement constants") {
  WalkParams params;  // b=5, eta=0.1, d=3, M=3, z0=10
  const WalkBounds bounds = validate_walk(params);
  CHECK(bounds.p_max == doctest::Approx(5.0 * std::exp(-2.0)).epsilon(1e-12));
  // sup over z >= 10 of z * sum_m r(z, m) sits at z = 10
  const double row10 = 5.0 * std::exp(-2.0) / (1.0 - std::exp(-1.0));
  CHECK(bounds.sum_bound == doctest::Approx(10.0 * row10).epsilon(1e-6));
}

TEST_CASE("walk validation rejects broken hypotheses") {
  SUBCASE("d must exceed one") {
    WalkParams params;
    params.d = 1.0;
    CHECK_THROWS_AS(validate_walk(params), PreconditionError);
  }
  SUBCASE("reinforcement must stay below one at the threshold") {
    WalkParams params;
    params.exponential.scale_b = 5.0;
    params.exponential.eta = 0.05;  // r(10, 1) = 5*exp(-1) > 1
    CHECK_THROWS_AS(validate_walk(params), PreconditionError);
  }
  SUBCASE("a supplied sum bound below the actual sup is rejected") {
    WalkParams params;
    params.sum_bound = 1.0;  // actual sup is about 10.7
    CHECK_THROWS_AS(validate_walk(params), PreconditionError);
  }
  SUBCASE("table entries must be finite probabilities") {
    WalkParams params;
    params.table[12] = {0.5, 1.5};
    CHECK_THROWS_AS(validate_walk(params), PreconditionError);
  }
}

TEST_CASE("zero reinforcement above the threshold blocks every climb there") {
  WalkParams params;
  params.table.clear();
  for (long long z = 0; z < 10; ++z) {
    params.table[z] = std::vector<double>(200, 0.8);  // free to climb below z0
  }
  params.z0 = 10;
  params.d = 3.0;
  params.max_move = 3;
  params.x0 = 5;

  bool climbed_above_threshold = false;
  const auto trace = [&](long long, long long, long long z, bool up) {
    if (up && z >= params.z0) climbed_above_threshold = true;
  };
  const WalkRun run = reinforced_walk_run(params, 20'000, 123, trace);
  CHECK_FALSE(climbed_above_threshold);
  // pivots at or above z0 never move the walk up, so X cannot outrun the
  // window where pivots below z0 are still possible
  CHECK(run.sup_x <= 3 * (params.z0 - 1) + params.max_move);
}

TEST_CASE("default walk stays low and is seed-deterministic") {
  WalkParams params;
  const WalkRun a = reinforced_walk_run(params, 200'000, 7);
  const WalkRun b = reinforced_walk_run(params, 200'000, 7);
  CHECK(a.sup_x == b.sup_x);
  CHECK(a.final_x == b.final_x);
  CHECK(a.argmax_t == b.argmax_t);
  CHECK(a.sup_x < 10'000);
}

TEST_CASE("escape-probability bound holds on a short sweep") {
  WalkParams params;
  const auto sweep = walk_product_bound_sweep(params, 13, 120);
  REQUIRE(sweep.size() == 108);
  for (const auto& point : sweep) {
    CHECK(point.ok);
    CHECK(point.log_product <= 0.0);
    CHECK(point.bound_exponent > 0.0);
  }
  // the product over a wider pivot window can only shrink, and the bound
  // exponent decreases toward its asymptote, so spot-check monotonicity of ok
  CHECK(sweep.front().bound_exponent > sweep.back().bound_exponent);
}

TEST_CASE("sweep preconditions") {
  WalkParams params;
  CHECK_THROWS_AS(walk_product_bound_sweep(params, 3, 10), PreconditionError);
  CHECK_THROWS_AS(walk_product_bound_sweep(params, 50, 40), PreconditionError);
}
