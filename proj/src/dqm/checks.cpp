#include "dqm/checks.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <numeric>
#include <sstream>
#include <thread>

#include "dqm/analysis.hpp"
#include "dqm/config.hpp"
#include "dqm/dynamics.hpp"
#include "dqm/errors.hpp"
#include "dqm/io.hpp"
#include "dqm/sweep.hpp"
#include "dqm/walk.hpp"

namespace dqm::checks {

namespace {

using Clock = std::chrono::steady_clock;

struct Failure {
  std::string what;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw Failure{what};
}

long long factorial(int n) {
  long long f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// All count vectors of the given length with entries >= 1 summing to total.
void compositions(int length, Count total, std::vector<Count>& prefix,
                  const std::function<void(const std::vector<Count>&)>& emit) {
  if (length == 1) {
    if (total >= 1) {
      prefix.push_back(total);
      emit(prefix);
      prefix.pop_back();
    }
    return;
  }
  for (Count first = 1; first + (length - 1) <= total; ++first) {
    prefix.push_back(first);
    compositions(length - 1, total - first, prefix, emit);
    prefix.pop_back();
  }
}

// Exhaustive tie-break oracle: averages per-player late counts over all k!
// service orders (stable-sorted by arrival, so the draw is uniform within
// every arrival group) and compares the exact fraction with
// late_probability.
std::string check_tie_order_oracle() {
  long long states_checked = 0;
  long long comparisons = 0;

  for (int players = 3; players <= 6; ++players) {
    for (Count total = players; total <= 6; ++total) {
      std::vector<Count> prefix;
      compositions(players, total, prefix, [&](const std::vector<Count>& counts) {
        const State state(counts);
        const Count k = state.total();
        ++states_checked;
        for (int period = 2; period <= 5; ++period) {
          const ModelParams model(players, period, PenaltySchedule::constant(Rational(1)),
                                  /*allow_short_period=*/true);

          std::vector<Player> owner_of_job;
          for (Player i = 0; i < players; ++i) {
            for (Count c = 0; c < counts[static_cast<size_t>(i)]; ++c)
              owner_of_job.push_back(i);
          }

          PureProfile profile;
          profile.actions.assign(static_cast<size_t>(players), 0);
          const long long perms = factorial(static_cast<int>(k));
          std::vector<int> perm(static_cast<size_t>(k));
          std::vector<int> order(static_cast<size_t>(k));
          std::vector<Action> arrival(static_cast<size_t>(k));
          std::vector<long long> late_sum(static_cast<size_t>(players), 0);

          for (;;) {
            for (size_t job = 0; job < arrival.size(); ++job) {
              arrival[job] = profile.actions[static_cast<size_t>(owner_of_job[job])];
            }
            std::fill(late_sum.begin(), late_sum.end(), 0);
            std::iota(perm.begin(), perm.end(), 0);
            do {
              order = perm;
              // stable insertion sort by arrival keeps the permutation order
              // within each arrival group
              for (size_t a = 1; a < order.size(); ++a) {
                const int key = order[a];
                size_t b = a;
                while (b > 0 && arrival[static_cast<size_t>(order[b - 1])] >
                                    arrival[static_cast<size_t>(key)]) {
                  order[b] = order[b - 1];
                  --b;
                }
                order[b] = key;
              }
              Count prev_exit = 0;
              for (int job : order) {
                const Count exit =
                    std::max<Count>(prev_exit, arrival[static_cast<size_t>(job)]) + 1;
                prev_exit = exit;
                if (exit > period)
                  late_sum[static_cast<size_t>(owner_of_job[static_cast<size_t>(job)])] += 1;
              }
            } while (std::next_permutation(perm.begin(), perm.end()));

            for (Player i = 0; i < players; ++i) {
              const Rational oracle(late_sum[static_cast<size_t>(i)],
                                    perms * counts[static_cast<size_t>(i)]);
              const Rational direct = late_probability(model, state, profile, i);
              require(oracle == direct,
                      "mismatch at N=" + std::to_string(players) + " T=" +
                          std::to_string(period) + " player " + std::to_string(i));
              ++comparisons;
            }

            int j = players - 1;
            while (j >= 0 && profile.actions[static_cast<size_t>(j)] == period - 1) {
              profile.actions[static_cast<size_t>(j)] = 0;
              --j;
            }
            if (j < 0) break;
            profile.actions[static_cast<size_t>(j)] += 1;
          }
        }
      });
    }
  }
  return std::to_string(comparisons) + " exact comparisons over " +
         std::to_string(states_checked) + " states, zero tolerance";
}

std::string check_dominated_slot_cost() {
  Rng rng(42);
  long long cases = 0;
  while (cases < 1000) {
    const int period = 3 + static_cast<int>(rng.bounded(4));   // 3..6
    const int players = 3 + static_cast<int>(rng.bounded(3));  // 3..5
    std::vector<Count> counts(static_cast<size_t>(players));
    Count k = 0;
    for (auto& c : counts) {
      c = static_cast<Count>(rng.bounded(3));  // 0..2, zeros allowed
      k += c;
    }
    if (k < 1 || k >= period) continue;
    std::vector<Player> holders;
    for (Player i = 0; i < players; ++i) {
      if (counts[static_cast<size_t>(i)] > 0) holders.push_back(i);
    }
    const Player i = holders[static_cast<size_t>(rng.bounded(holders.size()))];

    const ModelParams model(
        players, period,
        PenaltySchedule::constant(Rational(1 + static_cast<long long>(rng.bounded(50)))),
        /*allow_short_period=*/true);
    const State state(counts);
    PureProfile profile;
    profile.actions.resize(static_cast<size_t>(players));
    for (auto& a : profile.actions)
      a = static_cast<Action>(rng.bounded(static_cast<uint64_t>(period)));

    const Action safe = static_cast<Action>(period - k);
    profile.actions[static_cast<size_t>(i)] = safe;
    const Rational expected = Rational(counts[static_cast<size_t>(i)]) * Rational(k);
    require(cost_pure(model, state, profile, i) == expected,
            "cost at the safe slot must equal n_i * k exactly");
    for (Action a = 0; a < safe; ++a) {
      profile.actions[static_cast<size_t>(i)] = a;
      require(cost_pure(model, state, profile, i) > expected,
              "every earlier slot must cost strictly more");
    }
    ++cases;
  }
  return "1000 random states, exact rational comparison";
}

std::string check_stage_equilibrium_structure() {
  std::ostringstream detail;
  for (int k : {3, 4}) {
    for (long long c : {static_cast<long long>(k) * k + 1, 2LL * k * k, 10LL * k * k}) {
      const ModelParams model(k, k, PenaltySchedule::constant(Rational(c)));
      const State state = State::all_ones(k);
      const MixedProfile eq = solve_two_point_equilibrium(model, state);
      const NashCertificate cert = verify_nash(model, state, eq, 1e-9);
      require(cert.is_eps_nash(), "two-point profile must be a 1e-9 equilibrium");
      require(cert.structure_checked && cert.all_structure_flags(),
              "all structure flags must hold at N=T=k=" + std::to_string(k) +
                  " C=" + std::to_string(c));
      const double kk = static_cast<double>(k) * k;
      require(cert.social_cost >= kk - k + 1 - 1e-9 && cert.social_cost <= kk + 1e-9,
              "social cost outside [k^2-k+1, k^2]");
      const double late = expected_late_jobs(model, state, eq);
      require(late > 0.0, "expected late jobs must be strictly positive");
      detail << "k=" << k << ",C=" << c << ":gain=" << fmt_double(cert.max_deviation_gain)
             << " ";
    }
  }
  return detail.str();
}

std::string check_cce_certificate() {
  const ModelParams model(3, 2, PenaltySchedule::constant(Rational(19)),
                          /*allow_short_period=*/true);
  const State state = State::all_ones(3);
  const CceReport report = cce_zero_support_certificate(model, state);
  require(report.entries.size() == 7, "expected 7 nonzero profiles");
  require(report.all_margins_negative, "every deviation margin must be negative");
  require(report.gap_holds_everywhere, "the 1/(m*k) group gap must hold on every profile");
  require(report.sum_bound_holds_everywhere, "the -1/k sum bound must hold on every profile");
  require(report.crude_bound_conclusive, "-C/k + T*k must be negative at C = k^2*T + 1");
  require(report.certifies_unique_zero_cce, "certificate must conclude");
  Rational worst = report.entries.front().margin;
  for (const auto& e : report.entries) worst = std::max(worst, e.margin);
  return "7 profiles, worst margin " + worst.to_string() + ", exact";
}

std::string check_myopic_stability() {
  const ModelParams model(3, 5, PenaltySchedule::constant(Rational(321)));
  Count max_seen = 0;
  for (uint64_t seed = 1; seed <= 10; ++seed) {
    const RunResult rr = run(model, PolicySpec::myopic(), 10'000, seed);
    for (const auto& row : rr.trajectory.rows) {
      require(row.k <= 8, "k exceeded T+N=8 at seed " + std::to_string(seed) +
                              " t=" + std::to_string(row.t));
    }
    require(rr.trajectory.final_k <= 8, "final k exceeded T+N=8");
    max_seen = std::max(max_seen, rr.summary.max_k);
  }
  return "k_t <= 8 exactly at every step of every run; max observed " +
         std::to_string(max_seen);
}

std::string check_last_slot_growth() {
  const ModelParams model(3, 5, PenaltySchedule::constant(Rational(1, 2)));
  const RunResult rr = run(model, PolicySpec::last_slot(), 1'000, 1);
  for (const auto& row : rr.trajectory.rows) {
    require(row.k == 3 + 2 * row.t, "expected k_t = 3 + 2t, got k=" + std::to_string(row.k) +
                                        " at t=" + std::to_string(row.t));
  }
  require(rr.trajectory.final_k == 3 + 2 * 1000, "final k must be 3 + 2*horizon");
  return "k_t = 3 + 2t exactly for t = 0..1000";
}

std::string check_mlewa_regime() {
  const int players = 3;
  const int period = 5;
  const ModelParams model(players, period,
                          PenaltySchedule::linear(Rational(4LL * period), Rational(1)));
  const long long horizon = 100'000;
  const int seeds = 20;

  std::vector<RunResult> results(static_cast<size_t>(seeds));
  {
    std::atomic<int> next{0};
    int workers = static_cast<int>(std::thread::hardware_concurrency());
    workers = std::min(seeds, std::max(1, workers));
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&]() {
        for (;;) {
          int j = next.fetch_add(1);
          if (j >= seeds) return;
          results[static_cast<size_t>(j)] =
              run(model, PolicySpec::mlewa(0.1), horizon, static_cast<uint64_t>(j + 1));
        }
      });
    }
    for (auto& t : pool) t.join();
  }

  long long pref0_checked = 0;
  int non_divergent = 0;
  Count max_seen = 0;
  for (int j = 0; j < seeds; ++j) {
    const RunResult& rr = results[static_cast<size_t>(j)];
    require(rr.summary.penalty_condition_held, "penalty condition must hold along the run");
    require(rr.summary.pref0_violations == 0,
            "weight-on-zero lower bound violated at seed " + std::to_string(j + 1));
    require(rr.summary.init_bound_violations == 0,
            "initialization statistic bound violated at seed " + std::to_string(j + 1));
    pref0_checked += rr.summary.pref0_checked;
    max_seen = std::max(max_seen, rr.summary.max_k);

    const StabilityReport sr = stability_report(rr.trajectory, std::nullopt);
    if (sr.second_half_max <= sr.first_half_max + players) ++non_divergent;

    for (const auto& player_stats : rr.summary.learning) {
      long long best_level = 0;
      long long best_visits = -1;
      for (const auto& [level, stats] : player_stats.levels) {
        if (stats.visits > best_visits) {
          best_visits = stats.visits;
          best_level = level;
        }
      }
      const LevelStats& stats = player_stats.levels.at(best_level);
      const double m = static_cast<double>(stats.visits);
      const double bound = std::log(static_cast<double>(period)) / (0.1 * m) +
                           0.1 * stats.max_cost * stats.max_cost / 8.0;
      require(stats.regret / m <= bound + 1e-9,
              "per-visit regret above the exponential-weights bound at seed " +
                  std::to_string(j + 1));
    }
  }
  require(non_divergent >= 18, "fewer than 18/20 seeds were non-divergent (" +
                                   std::to_string(non_divergent) + ")");
  return std::to_string(non_divergent) + "/20 seeds non-divergent, max k " +
         std::to_string(max_seen) + ", " + std::to_string(pref0_checked) +
         " weight-bound checks above level 2T^2";
}

std::string check_zero_dominates_at_large_counts() {
  Rng rng(7);
  long long cases = 0;
  long long profiles_checked = 0;
  while (cases < 1000) {
    const int period = 2 + static_cast<int>(rng.bounded(2));  // 2..3
    const Count big_floor = 2LL * period * period + 2;
    std::vector<Count> counts(3);
    for (auto& c : counts) c = 1 + static_cast<Count>(rng.bounded(12));
    counts[static_cast<size_t>(rng.bounded(3))] = big_floor + static_cast<Count>(rng.bounded(30));
    const State state(counts);
    const Count k = state.total();
    const ModelParams model(3, period, PenaltySchedule::constant(Rational(4 * k * period + 1)),
                            /*allow_short_period=*/true);

    for (Player i = 0; i < 3; ++i) {
      if (counts[static_cast<size_t>(i)] <= 2LL * period * period + 1) continue;
      const Rational n_i(counts[static_cast<size_t>(i)]);
      PureProfile profile;
      profile.actions.assign(3, 0);
      for (Action a0 = 0; a0 < period; ++a0) {
        for (Action a1 = 0; a1 < period; ++a1) {
          for (Action ai = 1; ai < period; ++ai) {
            int pos = 0;
            for (Player j = 0; j < 3; ++j) {
              if (j == i) {
                profile.actions[static_cast<size_t>(j)] = ai;
              } else {
                profile.actions[static_cast<size_t>(j)] = (pos++ == 0) ? a0 : a1;
              }
            }
            PureProfile dev = profile;
            dev.actions[static_cast<size_t>(i)] = 0;
            require(cost_pure(model, state, dev, i) <
                        cost_pure(model, state, profile, i) - n_i,
                    "domination margin n_i failed at k=" + std::to_string(k));
            ++profiles_checked;
          }
        }
      }
    }
    ++cases;
  }
  return std::to_string(profiles_checked) + " exact dominance comparisons";
}

std::string check_reinforced_walk() {
  WalkParams params;  // defaults: b=5, eta=0.1, d=3, M=3, z0=10, x0=10
  long long worst_sup = 0;
  for (uint64_t seed = 1; seed <= 100; ++seed) {
    const WalkRun wr = reinforced_walk_run(params, 1'000'000, seed);
    require(wr.sup_x < 10'000, "walk exceeded 10^4 at seed " + std::to_string(seed));
    worst_sup = std::max(worst_sup, wr.sup_x);
  }
  const auto sweep = walk_product_bound_sweep(params, params.z0 + params.max_move, 1'000);
  for (const auto& point : sweep) {
    require(point.ok, "product bound failed at x=" + std::to_string(point.x));
  }
  return "100 runs of 10^6 steps, sup X <= " + std::to_string(worst_sup) +
         "; product bound holds for x in [13, 1000]";
}

std::string check_determinism(const std::string& scratch_dir) {
  namespace fs = std::filesystem;
  const fs::path base = scratch_dir.empty() ? fs::temp_directory_path() / "dqm-determinism"
                                            : fs::path(scratch_dir) / "determinism";
  fs::remove_all(base);

  const char* preset_names[] = {"myopic-stability", "instability", "mlewa-subcritical"};
  int files_compared = 0;
  for (const char* name : preset_names) {
    ParseOutcome parsed = parse_config(config_presets().at(name));
    require(parsed.config.has_value(), std::string("preset must parse: ") + name);
    RunConfig cfg = *parsed.config;
    cfg.output_dir = (base / name).string();
    cfg.format = std::string(name) == "instability" ? RunConfig::Format::Json
                                                    : RunConfig::Format::Csv;
    const uint64_t seed = cfg.seeds.front();

    SweepRow first = run_single(cfg, seed, 0, /*write_files=*/true);
    require(first.error.empty(), std::string(name) + ": " + first.error);
    const std::string summary_path =
        first.trajectory_path.substr(0, first.trajectory_path.rfind('.')) + ".summary.json";
    const std::string traj1 = read_file(first.trajectory_path);
    const std::string sum1 = read_file(summary_path);

    SweepRow second = run_single(cfg, seed, 0, /*write_files=*/true);
    require(second.error.empty(), std::string(name) + ": " + second.error);
    require(second.trajectory_path == first.trajectory_path, "path must be stable");
    require(read_file(first.trajectory_path) == traj1,
            std::string(name) + ": trajectory bytes differ between reruns");
    require(read_file(summary_path) == sum1,
            std::string(name) + ": summary bytes differ between reruns");
    files_compared += 2;
  }
  fs::remove_all(base);
  return std::to_string(files_compared) + " files byte-compared across reruns";
}

}  // namespace

std::vector<CheckResult> run_acceptance(const std::string& filter,
                                        const std::string& scratch_dir) {
  struct Spec {
    const char* id;
    const char* name;
    std::function<std::string()> body;
  };
  const std::vector<Spec> specs = {
      {"1", "tie-order oracle vs permutation average (k <= 6, T <= 5)",
       [] { return check_tie_order_oracle(); }},
      {"2", "early slots strictly dominated when k < T (1000 cases)",
       [] { return check_dominated_slot_cost(); }},
      {"3", "two-point stage equilibrium: epsilon, structure flags, social cost",
       [] { return check_stage_equilibrium_structure(); }},
      {"4", "unique zero-support coarse equilibrium certificate (k=3 > T=2)",
       [] { return check_cce_certificate(); }},
      {"5", "myopic stage play stays bounded (10 seeds x 10^4 periods)",
       [] { return check_myopic_stability(); }},
      {"6", "last-slot play under a cheap penalty grows linearly",
       [] { return check_last_slot_growth(); }},
      {"7", "multi-level learning: weight bounds, non-divergence, per-level regret",
       [] { return check_mlewa_regime(); }},
      {"8", "action 0 dominates by margin n_i at large counts (1000 cases)",
       [] { return check_zero_dominates_at_large_counts(); }},
      {"9", "reinforced walk: empirical boundedness and escape-probability bound",
       [] { return check_reinforced_walk(); }},
      {"10", "identical seeds reproduce byte-identical trajectory files",
       [&] { return check_determinism(scratch_dir); }},
  };

  const bool numeric_filter =
      !filter.empty() && filter.find_first_not_of("0123456789") == std::string::npos;
  std::vector<CheckResult> results;
  for (const auto& spec : specs) {
    if (!filter.empty()) {
      const bool id_match = std::string(spec.id) == filter;
      const bool name_match =
          !numeric_filter && std::string(spec.name).find(filter) != std::string::npos;
      if (!id_match && !name_match) continue;
    }
    CheckResult r;
    r.id = spec.id;
    r.name = spec.name;
    const auto start = Clock::now();
    try {
      r.detail = spec.body();
      r.pass = true;
    } catch (const Failure& f) {
      r.pass = false;
      r.detail = f.what;
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = std::string("error: ") + e.what();
    }
    r.seconds =
        std::chrono::duration_cast<std::chrono::duration<double>>(Clock::now() - start)
            .count();
    results.push_back(std::move(r));
  }
  return results;
}

std::string format_result_line(const CheckResult& result) {
  std::ostringstream out;
  out << (result.pass ? "[PASS] " : "[FAIL] ") << result.id << ". " << result.name << " ("
      << fmt_double(result.seconds) << "s)";
  if (!result.detail.empty()) out << " -- " << result.detail;
  return out.str();
}

}  // namespace dqm::checks
