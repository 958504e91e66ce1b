#include "dqm/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "dqm/errors.hpp"

namespace dqm {

std::string fmt_double(double v) {
  char buf[64];
  for (int precision = 15; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof(buf), "%.*g", precision, v);
    if (std::strtod(buf, nullptr) == v) return buf;
  }
  return buf;
}

std::string trajectory_csv(const Trajectory& traj) {
  std::ostringstream out;
  const int n = traj.meta.players;
  out << "t,k";
  for (int i = 1; i <= n; ++i) out << ",n_" << i;
  for (int i = 1; i <= n; ++i) out << ",a_" << i;
  for (int i = 1; i <= n; ++i) out << ",late_" << i;
  for (int i = 1; i <= n; ++i) out << ",cost_" << i;
  out << "\n";
  for (const auto& row : traj.rows) {
    out << row.t << "," << row.k;
    for (auto c : row.counts) out << "," << c;
    for (auto a : row.actions) out << "," << a;
    for (auto l : row.late) out << "," << l;
    for (const auto& c : row.costs) out << "," << fmt_double(c.to_double());
    out << "\n";
  }
  out << "# final_k=" << traj.final_k << " final_counts=";
  for (size_t i = 0; i < traj.final_counts.size(); ++i) {
    if (i > 0) out << ";";
    out << traj.final_counts[i];
  }
  out << "\n";
  return out.str();
}

namespace {

nlohmann::json meta_json(const RunMeta& meta) {
  nlohmann::json j;
  j["players"] = meta.players;
  j["period"] = meta.period;
  j["penalty"] = meta.penalty;
  j["policy"] = meta.policy;
  j["horizon"] = meta.horizon;
  j["seed"] = meta.seed;
  j["initial_counts"] = meta.initial_counts;
  return j;
}

}  // namespace

nlohmann::json trajectory_json(const Trajectory& traj) {
  nlohmann::json j;
  j["meta"] = meta_json(traj.meta);
  j["schema"] = "rows[t] = {t, k, counts[i], actions[i], late[i], costs[i]}";
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : traj.rows) {
    nlohmann::json r;
    r["t"] = row.t;
    r["k"] = row.k;
    r["counts"] = row.counts;
    r["actions"] = row.actions;
    r["late"] = row.late;
    nlohmann::json costs = nlohmann::json::array();
    for (const auto& c : row.costs) costs.push_back(c.to_double());
    r["costs"] = std::move(costs);
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  j["final_counts"] = traj.final_counts;
  j["final_k"] = traj.final_k;
  return j;
}

nlohmann::json summary_json(const RunResult& result, const std::string& config_text) {
  nlohmann::json j;
  j["meta"] = meta_json(result.trajectory.meta);
  if (!config_text.empty()) j["config"] = config_text;
  j["max_k"] = result.summary.max_k;
  j["argmax_t"] = result.summary.argmax_t;
  j["final_k"] = result.summary.final_k;
  j["penalty_condition_held"] = result.summary.penalty_condition_held;
  if (!result.summary.eq_selections.empty()) {
    nlohmann::json sel = nlohmann::json::array();
    for (const auto& [counts, rule] : result.summary.eq_selections) {
      sel.push_back({{"counts", counts}, {"selection", rule}});
    }
    j["equilibrium_selections"] = std::move(sel);
  }
  if (!result.summary.learning.empty()) {
    nlohmann::json players = nlohmann::json::array();
    for (const auto& st : result.summary.learning) {
      nlohmann::json p;
      nlohmann::json levels = nlohmann::json::array();
      for (const auto& [level, stats] : st.levels) {
        levels.push_back({{"level", level},
                          {"visits", stats.visits},
                          {"regret", stats.regret},
                          {"max_cost", stats.max_cost}});
      }
      p["levels"] = std::move(levels);
      p["pref0_checked"] = st.pref0_checked;
      p["pref0_violations"] = st.pref0_violations;
      p["init_bound_violations"] = st.init_bound_violations;
      players.push_back(std::move(p));
    }
    j["learning"] = std::move(players);
    j["max_level_regret"] = result.summary.max_level_regret;
    j["pref0_checked"] = result.summary.pref0_checked;
    j["pref0_violations"] = result.summary.pref0_violations;
    j["init_bound_violations"] = result.summary.init_bound_violations;
  }
  return j;
}

nlohmann::json mixed_profile_json(const MixedProfile& m) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& row : m.rows) j.push_back(row);
  return j;
}

MixedProfile mixed_profile_from_json(const nlohmann::json& j) {
  MixedProfile m;
  for (const auto& row : j) m.rows.push_back(row.get<std::vector<double>>());
  return m;
}

nlohmann::json nash_certificate_json(const NashCertificate& cert) {
  nlohmann::json j;
  j["profile"] = mixed_profile_json(cert.profile);
  j["eps"] = cert.eps;
  j["max_deviation_gain"] = cert.max_deviation_gain;
  j["is_eps_nash"] = cert.is_eps_nash();
  j["social_cost"] = cert.social_cost;
  j["structure_checked"] = cert.structure_checked;
  j["flags"] = {{"zero_mass_before_safe_slot", cert.zero_mass_before_safe_slot},
                {"anchor_player_exists", cert.anchor_player_exists},
                {"others_mix_on_second_slot", cert.others_mix_on_second_slot},
                {"anchor_group_identical", cert.anchor_group_identical},
                {"social_cost_within_bounds", cert.social_cost_within_bounds}};
  j["anchor"] = cert.anchor;
  return j;
}

nlohmann::json cce_report_json(const CceReport& report) {
  nlohmann::json j;
  j["penalty"] = report.penalty.to_string();
  j["crude_margin_bound"] = report.crude_margin_bound.to_string();
  j["crude_bound_conclusive"] = report.crude_bound_conclusive;
  j["all_margins_negative"] = report.all_margins_negative;
  j["gap_holds_everywhere"] = report.gap_holds_everywhere;
  j["sum_bound_holds_everywhere"] = report.sum_bound_holds_everywhere;
  j["certifies_unique_zero_cce"] = report.certifies_unique_zero_cce;
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : report.entries) {
    entries.push_back({{"profile", e.profile.actions},
                       {"deviation_sum", e.deviation_sum.to_string()},
                       {"margin", e.margin.to_string()},
                       {"min_gap", e.min_gap.to_string()},
                       {"required_gap", e.required_gap.to_string()},
                       {"gap_ok", e.gap_ok},
                       {"sum_ok", e.sum_ok}});
  }
  j["margins"] = std::move(entries);
  return j;
}

void write_file(const std::string& path, const std::string& content) {
  std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw Error("cannot open for writing: " + path);
  out << content;
  if (!out) throw Error("write failed: " + path);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open for reading: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace dqm
