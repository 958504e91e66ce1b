#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "dqm/rng.hpp"

namespace dqm {

// A nonnegative integer walk X_t with bounded increments whose up-moves are
// throttled by a reinforcement function r(z, m): at each step a pivot Z_t is
// drawn uniformly from [X_t/d, X_t], and the probability of moving up on the
// m-th occurrence of that pivot value is at most r(Z_t, m). Visit counts
// include the current occurrence, so m >= 1 everywhere.
//
// The harness implements the weakest coupling consistent with those
// hypotheses: up by a uniform jump in {1..M} with probability
// min(1, r(Z_t, m)), otherwise down by one (floored at zero).
struct WalkParams {
  // r(z, m) = scale_b * exp(-eta * ceil(z / divisor) * (m + 1))
  struct Exponential {
    double scale_b = 5.0;
    double eta = 0.1;
    long long divisor = 1;
  };

  Exponential exponential;
  // Optional explicit reinforcement: z -> (r(z,1), r(z,2), ...), zero for
  // missing z or exhausted m. When non-empty it replaces the exponential
  // form.
  std::map<long long, std::vector<double>> table;

  long long max_move = 3;  // M: largest single increment
  double d = 3.0;          // pivot window divisor, > 1
  long long z0 = 10;       // reinforcement threshold
  double sum_bound = 0.0;  // A with sum_m r(z,m) < A/z for z >= z0; <= 0: derive
  long long x0 = 10;

  double r(long long z, long long m) const;
  double row_sum(long long z) const;  // sum over m >= 1
};

struct WalkBounds {
  double p_max = 0.0;     // sup of r over z >= z0, m >= 1
  double sum_bound = 0.0; // validated A
};

// Checks the hypotheses (d > 1, max_move >= 1, p_max < 1, row sums below
// A/z for z >= z0) and returns the derived constants. Throws
// PreconditionError on violation.
WalkBounds validate_walk(const WalkParams& params);

struct WalkRun {
  long long sup_x = 0;
  long long argmax_t = 0;
  long long final_x = 0;
  long long steps = 0;
};

using WalkTraceSink =
    std::function<void(long long t, long long x, long long z, bool up)>;

WalkRun reinforced_walk_run(const WalkParams& params, long long steps, uint64_t seed,
                            const WalkTraceSink& trace = nullptr);

// Numeric evaluation of the escape-probability bound: for each x in the
// sweep, the product of (1 - r(z, m)) over pivot values z in
// [max(z0, (x - M)/d), x] and all m >= 1 must be at least exp(-B(x)) with
//   B(x) = A / (1 - p_max) * ((d - 1) x + M + d) / (x - M).
struct WalkBoundPoint {
  long long x = 0;
  double log_product = 0.0;
  double bound_exponent = 0.0;  // B(x)
  bool ok = false;              // log_product >= -B(x)
};

std::vector<WalkBoundPoint> walk_product_bound_sweep(const WalkParams& params,
                                                     long long x_lo, long long x_hi);

}  // namespace dqm
