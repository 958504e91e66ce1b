#pragma once

#include <vector>

#include "dqm/model.hpp"
#include "dqm/queue.hpp"

namespace dqm {

// Machine-checkable record of a Nash verification. Writing s = T - k for the
// earliest joining time that always meets the deadline, the structure flags
// assert, for the regime k <= T with penalty above k^2:
//   - zero_mass_before_safe_slot:   no player puts mass below s
//   - anchor_player_exists:         some player mixes on s and on nothing
//                                   above s+1 (the "anchor")
//   - others_mix_on_second_slot:    all non-anchor players put positive mass
//                                   on s+1
//   - anchor_group_identical:       every player with mass on s plays the
//                                   same mixed action as the anchor
//   - social_cost_within_bounds:    k^2 - k + 1 <= social cost <= k^2
// The flags are only evaluated when k <= T (structure_checked); the epsilon
// test runs in every regime.
struct NashCertificate {
  MixedProfile profile;
  double eps = 0.0;
  double max_deviation_gain = 0.0;
  double social_cost = 0.0;

  bool structure_checked = false;
  bool zero_mass_before_safe_slot = false;
  bool anchor_player_exists = false;
  bool others_mix_on_second_slot = false;
  bool anchor_group_identical = false;
  bool social_cost_within_bounds = false;
  Player anchor = -1;

  bool is_eps_nash() const { return max_deviation_gain <= eps; }
  bool all_structure_flags() const {
    return zero_mass_before_safe_slot && anchor_player_exists &&
           others_mix_on_second_slot && anchor_group_identical &&
           social_cost_within_bounds;
  }
};

// All actions minimizing player i's exact expected cost against the fixed
// opponent rows of `mixed` (player i's own row is ignored). Ties within
// tie_tol are all reported, never broken.
std::vector<Action> best_response(const ModelParams& model, const State& state,
                                  const MixedProfile& mixed, Player i,
                                  long long cap = 1'000'000, double tie_tol = 1e-9);

// Exhaustive deviation check plus the structure flags described above.
NashCertificate verify_nash(const ModelParams& model, const State& state,
                            const MixedProfile& mixed, double eps,
                            long long cap = 1'000'000);

// The symmetric two-point profile for the state's totals: mass on T-k and
// T-k+1 with x(T-k+1) = (k/C)^(1/(N-1)), the unique weight making everyone
// indifferent between the two slots. Whether it is an equilibrium depends on
// the count vector; confirm with verify_nash.
MixedProfile two_point_profile(const ModelParams& model, const State& state);

// The closed-form stage equilibrium for unit job counts (every n_i = 1) with
// k <= T and penalty above k^2. Callers should confirm via verify_nash.
MixedProfile solve_two_point_equilibrium(const ModelParams& model, const State& state);

// Per-profile deviation ledger certifying that the all-zero profile is the
// unique coarse correlated equilibrium of a stage game with k > T. For each
// pure profile a != 0:
//   deviation_sum = sum_i n_i * (p_i(0, a_-i) - p_i(a))        (exact)
//   margin        = C * deviation_sum + sum_i n_i * a_i        (exact)
// A coarse correlated equilibrium must put weight only where margin >= 0 in
// aggregate, so margins all strictly negative certify the all-zero support.
// Additionally checks, per profile, the group gap at the latest joining time
// (p_j(a) - p_j(0, a_-j) >= 1/(m*k) for every player j at the max action,
// where m is that group's job count) and the sum bound deviation_sum <= -1/k.
struct CceProfileEntry {
  PureProfile profile;
  Rational deviation_sum;
  Rational margin;
  Rational min_gap;       // min over players at the max action
  Rational required_gap;  // 1/(m*k)
  bool gap_ok = false;
  bool sum_ok = false;  // deviation_sum <= -1/k
};

struct CceReport {
  std::vector<CceProfileEntry> entries;  // lexicographic profile order
  Rational penalty;
  Rational crude_margin_bound;          // -C/k + T*k
  bool crude_bound_conclusive = false;  // crude bound < 0, i.e. C > k^2*T
  bool all_margins_negative = false;
  bool gap_holds_everywhere = false;
  bool sum_bound_holds_everywhere = false;
  // margins are the operative test; the crude bound is only the a-priori
  // sufficient condition
  bool certifies_unique_zero_cce = false;
};

// Requires k > T and all counts >= 1; enumerates all T^N - 1 nonzero pure
// profiles (cap-checked).
CceReport cce_zero_support_certificate(const ModelParams& model, const State& state,
                                       long long cap = 1'000'000);

// Grid oracle: scans the product of discretized simplices over the
// undominated actions {max(0, T-k), ..., T-1} and returns every grid profile
// whose maximum deviation gain is at most eps, in lexicographic order.
// Desk-scale tool: requires players <= 4, at most 4 undominated actions and
// grid_step >= 0.02.
struct GridEquilibria {
  std::vector<MixedProfile> profiles;
  std::vector<double> gains;
  double grid_step = 0.0;
  double eps = 0.0;
};

GridEquilibria brute_force_nash(const ModelParams& model, const State& state,
                                double grid_step, double eps,
                                long long point_cap = 40'000'000);

}  // namespace dqm
