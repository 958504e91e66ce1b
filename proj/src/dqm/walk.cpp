#include "dqm/walk.hpp"

#include <algorithm>
#include <cmath>

#include "dqm/errors.hpp"

namespace dqm {

double WalkParams::r(long long z, long long m) const {
  if (z < 0 || m < 1) return 0.0;
  if (!table.empty()) {
    auto it = table.find(z);
    if (it == table.end()) return 0.0;
    const auto& row = it->second;
    if (m > static_cast<long long>(row.size())) return 0.0;
    return row[static_cast<size_t>(m - 1)];
  }
  const double block =
      std::ceil(static_cast<double>(z) / static_cast<double>(exponential.divisor));
  return exponential.scale_b *
         std::exp(-exponential.eta * block * static_cast<double>(m + 1));
}

double WalkParams::row_sum(long long z) const {
  if (!table.empty()) {
    auto it = table.find(z);
    if (it == table.end()) return 0.0;
    double sum = 0.0;
    for (double v : it->second) sum += v;
    return sum;
  }
  const double block =
      std::ceil(static_cast<double>(z) / static_cast<double>(exponential.divisor));
  const double rho = std::exp(-exponential.eta * block);
  // sum_{m>=1} b * rho^{m+1} = b * rho^2 / (1 - rho)
  return exponential.scale_b * rho * rho / (1.0 - rho);
}

WalkBounds validate_walk(const WalkParams& params) {
  if (!(params.d > 1.0)) throw PreconditionError("walk: d must exceed 1");
  if (params.max_move < 1) throw PreconditionError("walk: max_move must be at least 1");
  if (params.z0 < 1) throw PreconditionError("walk: z0 must be at least 1");
  if (params.x0 < 0) throw PreconditionError("walk: x0 must be nonnegative");
  if (params.table.empty()) {
    if (!(params.exponential.scale_b >= 0.0) || !(params.exponential.eta > 0.0) ||
        params.exponential.divisor < 1)
      throw PreconditionError("walk: bad exponential reinforcement parameters");
  } else {
    for (const auto& [z, row] : params.table) {
      for (double v : row) {
        if (!(v >= 0.0) || !std::isfinite(v))
          throw PreconditionError("walk: reinforcement values must be finite and >= 0");
      }
    }
  }

  WalkBounds bounds;
  double sup_zsum = 0.0;
  if (!params.table.empty()) {
    for (const auto& [z, row] : params.table) {
      if (z < params.z0) continue;
      for (double v : row) bounds.p_max = std::max(bounds.p_max, v);
      sup_zsum = std::max(sup_zsum, static_cast<double>(z) * params.row_sum(z));
    }
  } else {
    // r decreases in m and is constant on ceil-blocks, so the sup over
    // z >= z0 of r(z, 1) sits in z0's block; z * row_sum(z) grows linearly
    // inside a block and decays exponentially across blocks, so a bounded
    // scan finds its sup.
    bounds.p_max = params.r(params.z0, 1);
    double best = 0.0;
    long long stale = 0;
    for (long long z = params.z0; z < params.z0 + 2'000'000; ++z) {
      const double v = static_cast<double>(z) * params.row_sum(z);
      if (v > best) {
        best = v;
        stale = 0;
      } else if (++stale > 4 * params.exponential.divisor &&
                 v < best * 1e-9) {
        break;
      }
    }
    sup_zsum = best;
  }

  if (!(bounds.p_max < 1.0))
    throw PreconditionError("walk: reinforcement must stay below 1 for z >= z0 (sup is " +
                            std::to_string(bounds.p_max) + ")");

  if (params.sum_bound > 0.0) {
    if (!(sup_zsum < params.sum_bound))
      throw PreconditionError("walk: supplied sum bound " +
                              std::to_string(params.sum_bound) +
                              " is not above sup z*sum_m r(z,m) = " +
                              std::to_string(sup_zsum));
    bounds.sum_bound = params.sum_bound;
  } else {
    bounds.sum_bound = sup_zsum * (1.0 + 1e-9) + 1e-12;
  }
  return bounds;
}

WalkRun reinforced_walk_run(const WalkParams& params, long long steps, uint64_t seed,
                            const WalkTraceSink& trace) {
  validate_walk(params);
  if (steps < 1) throw PreconditionError("walk: need at least one step");

  Rng rng(seed);
  std::map<long long, long long> visit_counts;
  long long x = params.x0;

  WalkRun out;
  out.sup_x = x;
  out.argmax_t = 0;
  out.steps = steps;

  for (long long t = 0; t < steps; ++t) {
    long long lo = static_cast<long long>(
        std::ceil(static_cast<double>(x) / params.d - 1e-12));
    lo = std::clamp<long long>(lo, 0, x);
    const long long z = lo + static_cast<long long>(rng.bounded(
                                 static_cast<uint64_t>(x - lo + 1)));
    const long long m = ++visit_counts[z];
    const double p_up = std::min(1.0, params.r(z, m));
    const bool up = rng.uniform01() < p_up;
    if (up) {
      x += 1 + static_cast<long long>(rng.bounded(static_cast<uint64_t>(params.max_move)));
    } else {
      x = std::max<long long>(0, x - 1);
    }
    if (trace) trace(t, x, z, up);
    if (x > out.sup_x) {
      out.sup_x = x;
      out.argmax_t = t + 1;
    }
  }
  out.final_x = x;
  return out;
}

std::vector<WalkBoundPoint> walk_product_bound_sweep(const WalkParams& params,
                                                     long long x_lo, long long x_hi) {
  WalkBounds bounds = validate_walk(params);
  if (x_lo > x_hi) throw PreconditionError("walk: empty sweep range");
  if (x_lo <= params.max_move)
    throw PreconditionError("walk: sweep must start above max_move");

  std::vector<WalkBoundPoint> out;
  out.reserve(static_cast<size_t>(x_hi - x_lo + 1));
  for (long long x = x_lo; x <= x_hi; ++x) {
    WalkBoundPoint point;
    point.x = x;
    long long z_lo = static_cast<long long>(
        std::ceil(static_cast<double>(x - params.max_move) / params.d - 1e-12));
    z_lo = std::max(z_lo, params.z0);

    double log_product = 0.0;
    for (long long z = z_lo; z <= x; ++z) {
      if (!params.table.empty()) {
        auto it = params.table.find(z);
        if (it == params.table.end()) continue;
        for (double v : it->second) log_product += std::log1p(-v);
      } else {
        for (long long m = 1;; ++m) {
          const double v = params.r(z, m);
          if (v < 1e-300) break;
          log_product += std::log1p(-v);
        }
      }
    }
    point.log_product = log_product;
    point.bound_exponent = bounds.sum_bound / (1.0 - bounds.p_max) *
                           ((params.d - 1.0) * static_cast<double>(x) +
                            static_cast<double>(params.max_move) + params.d) /
                           static_cast<double>(x - params.max_move);
    point.ok = log_product >= -point.bound_exponent;
    out.push_back(point);
  }
  return out;
}

}  // namespace dqm
