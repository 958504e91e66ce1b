#pragma once

#include <cstdint>
#include <vector>

#include "dqm/model.hpp"
#include "dqm/rng.hpp"

namespace dqm {

// Outcome of one period of FIFO service for one arrival-time group: m_a jobs
// joined at `arrival`, of which `on_time` leave the queue by time T. Which
// specific jobs make the cut is random (uniform order within a group), but
// the count is determined by the schedule.
struct GroupStat {
  Action arrival;
  Count jobs;     // m_a
  Count on_time;  // q_a
};

struct ArrivalGroupStats {
  std::vector<GroupStat> groups;  // ascending arrival time, occupied groups only
  Count total_jobs = 0;
  Count total_late = 0;

  const GroupStat* find(Action arrival) const;
};

// Simulates the single server: one job per unit time starting at time 0,
// jobs taken in arrival order. The exit time of the p-th job overall is
// e_p = max(e_{p-1}, arrival_p) + 1 with e_0 = 0; a job is on time iff its
// exit is <= T.
ArrivalGroupStats service_schedule(const ModelParams& model, const State& state,
                                   const PureProfile& profile);

// Probability that one given job of player i misses the deadline, over the
// uniform tie-break: (m_a - q_a) / m_a at the player's arrival time. Every
// job of the same player has the same late probability. Zero for players
// holding no jobs.
Rational late_probability(const ModelParams& model, const State& state,
                          const PureProfile& profile, Player i);

// Stage cost n_i*(T - a_i) + C(k)*n_i*late_probability. The waiting cost is
// T - a_i per job regardless of actual service time, and the penalty is
// evaluated at the period-start total k.
Rational cost_pure(const ModelParams& model, const State& state,
                   const PureProfile& profile, Player i);

// Draws a uniformly random service order within each arrival group and
// returns per-player late counts. The sum equals the deterministic total
// late count of the schedule.
std::vector<Count> sample_late_counts(const ModelParams& model, const State& state,
                                      const PureProfile& profile, Rng& rng);

struct MixedCostEstimate {
  double value = 0.0;
  double std_error = 0.0;  // zero in exact mode
};

struct EvalMode {
  enum class Kind { Exact, MonteCarlo };
  Kind kind = Kind::Exact;
  long long cap = 1'000'000;   // exact mode: max profiles in the support product
  uint64_t seed = 0;           // monte carlo
  long long samples = 10'000;  // monte carlo

  static EvalMode exact(long long cap = 1'000'000) { return {Kind::Exact, cap, 0, 0}; }
  static EvalMode monte_carlo(uint64_t seed, long long samples) {
    return {Kind::MonteCarlo, 0, seed, samples};
  }
};

// Expected stage cost of player i under a mixed profile. Exact mode
// enumerates the support product (throws EnumerationCapError above the cap);
// Monte Carlo mode returns an unbiased seeded estimate with its standard
// error.
MixedCostEstimate expected_cost_mixed(const ModelParams& model, const State& state,
                                      const MixedProfile& mixed, Player i,
                                      const EvalMode& mode);

// Exact expected cost of player i playing action b while everyone else
// follows the mixed profile (player i's own row is ignored).
double expected_cost_of_action(const ModelParams& model, const State& state,
                               const MixedProfile& mixed, Player i, Action b,
                               long long cap = 1'000'000);

// Exact expected number of late jobs under a mixed profile,
// sum_i n_i * E[late_probability_i].
double expected_late_jobs(const ModelParams& model, const State& state,
                          const MixedProfile& mixed, long long cap = 1'000'000);

}  // namespace dqm
