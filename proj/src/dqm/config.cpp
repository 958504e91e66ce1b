#include "dqm/config.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "dqm/errors.hpp"
#include "dqm/io.hpp"

namespace dqm {

namespace {

std::string trim(const std::string& s) {
  size_t b = 0;
  size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "model.players",     "model.period",      "model.override_period",
      "penalty.kind",      "penalty.c",         "penalty.alpha",
      "penalty.beta",      "penalty.table",     "policy.kind",
      "policy.eta",        "policy.profile",    "run.horizon",
      "run.seeds",         "run.parallelism",   "init.counts",
      "output.dir",        "output.format",     "output.trajectories",
      "caps.enumeration",  "caps.runs",         "assert.enabled",
      "assert.max_k",      "walk.b",            "walk.eta",
      "walk.divisor",      "walk.d",            "walk.m",
      "walk.z0",           "walk.a",            "walk.x0",
      "walk.sweep"};
  return keys;
}

class Builder {
 public:
  explicit Builder(std::vector<std::string>& errors) : errors_(errors) {}

  void fail(const std::string& key, const std::string& why) {
    errors_.push_back(key + ": " + why);
  }

  bool parse_bool(const std::string& key, const std::string& v, bool& out) {
    if (v == "true") {
      out = true;
      return true;
    }
    if (v == "false") {
      out = false;
      return true;
    }
    fail(key, "expected true or false, got '" + v + "'");
    return false;
  }

  bool parse_ll(const std::string& key, const std::string& v, long long& out) {
    try {
      size_t pos = 0;
      out = std::stoll(v, &pos);
      if (pos != v.size()) throw std::invalid_argument(v);
      return true;
    } catch (const std::exception&) {
      fail(key, "expected an integer, got '" + v + "'");
      return false;
    }
  }

  bool parse_double(const std::string& key, const std::string& v, double& out) {
    try {
      size_t pos = 0;
      out = std::stod(v, &pos);
      if (pos != v.size()) throw std::invalid_argument(v);
      return true;
    } catch (const std::exception&) {
      fail(key, "expected a number, got '" + v + "'");
      return false;
    }
  }

  bool parse_rational(const std::string& key, const std::string& v, Rational& out) {
    try {
      out = Rational::parse(v);
      return true;
    } catch (const Error& e) {
      fail(key, e.what());
      return false;
    }
  }

  bool parse_seed_list(const std::string& key, const std::string& v,
                       std::vector<uint64_t>& out) {
    out.clear();
    auto range = v.find("..");
    try {
      if (range != std::string::npos) {
        uint64_t lo = std::stoull(trim(v.substr(0, range)));
        uint64_t hi = std::stoull(trim(v.substr(range + 2)));
        if (hi < lo) throw std::invalid_argument(v);
        for (uint64_t s = lo; s <= hi; ++s) out.push_back(s);
      } else {
        for (const auto& part : split(v, ',')) out.push_back(std::stoull(trim(part)));
      }
      if (out.empty()) throw std::invalid_argument(v);
      return true;
    } catch (const std::exception&) {
      fail(key, "expected a seed, a comma list, or lo..hi, got '" + v + "'");
      return false;
    }
  }

 private:
  std::vector<std::string>& errors_;
};

}  // namespace

ModelParams RunConfig::model() const {
  return ModelParams(players, period, penalty, override_period);
}

PolicySpec RunConfig::policy_spec() const {
  switch (policy) {
    case PolicyType::Mlewa:
      return PolicySpec::mlewa(eta);
    case PolicyType::MyopicStage:
      return PolicySpec::myopic();
    case PolicyType::AllZero:
      return PolicySpec::all_zero();
    case PolicyType::LastSlot:
      return PolicySpec::last_slot();
    case PolicyType::FixedMixed:
      return PolicySpec::fixed_mixed(fixed_profile);
  }
  throw Error("unknown policy");
}

bool RunConfig::operator==(const RunConfig& o) const {
  // the walk table has no text form and is excluded from config identity
  return players == o.players && period == o.period &&
         override_period == o.override_period && penalty == o.penalty &&
         policy == o.policy && eta == o.eta && fixed_profile.rows == o.fixed_profile.rows &&
         horizon == o.horizon && seeds == o.seeds && initial_counts == o.initial_counts &&
         output_dir == o.output_dir && format == o.format &&
         write_trajectories == o.write_trajectories &&
         enumeration_cap == o.enumeration_cap && run_cap == o.run_cap &&
         parallelism == o.parallelism && assertions == o.assertions &&
         assert_max_k == o.assert_max_k && sweep == o.sweep &&
         walk.exponential.scale_b == o.walk.exponential.scale_b &&
         walk.exponential.eta == o.walk.exponential.eta &&
         walk.exponential.divisor == o.walk.exponential.divisor &&
         walk.max_move == o.walk.max_move && walk.d == o.walk.d && walk.z0 == o.walk.z0 &&
         walk.sum_bound == o.walk.sum_bound && walk.x0 == o.walk.x0 &&
         walk_sweep_lo == o.walk_sweep_lo && walk_sweep_hi == o.walk_sweep_hi;
}

ParseOutcome parse_config(const std::string& text) {
  ParseOutcome outcome;
  Builder b(outcome.errors);

  std::map<std::string, std::string> kv;
  std::map<std::string, std::vector<std::string>> sweep;

  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      outcome.errors.push_back("line " + std::to_string(lineno) + ": expected key = value");
      continue;
    }
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.rfind("sweep.", 0) == 0) {
      std::string target = key.substr(6);
      if (!known_keys().count(target)) {
        outcome.errors.push_back(key + ": unknown sweep target '" + target + "'");
        continue;
      }
      if (target == "run.seeds" || target.rfind("sweep.", 0) == 0) {
        outcome.errors.push_back(key + ": this key cannot be swept");
        continue;
      }
      std::vector<std::string> values;
      for (const auto& part : split(value, '|')) values.push_back(trim(part));
      if (values.empty() || values.front().empty()) {
        outcome.errors.push_back(key + ": expected values separated by |");
        continue;
      }
      sweep[target] = std::move(values);
      continue;
    }
    if (!known_keys().count(key)) {
      outcome.errors.push_back("unknown key '" + key + "'");
      continue;
    }
    kv[key] = value;  // later assignments win
  }

  RunConfig cfg;
  cfg.sweep = std::move(sweep);

  auto get = [&](const char* key) -> const std::string* {
    auto it = kv.find(key);
    return it == kv.end() ? nullptr : &it->second;
  };

  if (auto* v = get("model.players")) {
    long long n;
    if (b.parse_ll("model.players", *v, n)) cfg.players = static_cast<int>(n);
  }
  if (auto* v = get("model.period")) {
    long long n;
    if (b.parse_ll("model.period", *v, n)) cfg.period = static_cast<int>(n);
  }
  if (auto* v = get("model.override_period")) {
    b.parse_bool("model.override_period", *v, cfg.override_period);
  }

  std::string penalty_kind = "constant";
  if (auto* v = get("penalty.kind")) penalty_kind = *v;
  if (penalty_kind == "constant") {
    Rational c(321);
    bool ok = true;
    if (auto* v = get("penalty.c")) ok = b.parse_rational("penalty.c", *v, c);
    if (ok) {
      try {
        cfg.penalty = PenaltySchedule::constant(c);
      } catch (const Error& e) {
        b.fail("penalty.c", e.what());
      }
    }
  } else if (penalty_kind == "linear") {
    Rational alpha(0), beta(0);
    bool ok = true;
    if (auto* v = get("penalty.alpha")) {
      ok = b.parse_rational("penalty.alpha", *v, alpha) && ok;
    } else {
      b.fail("penalty.alpha", "required for penalty.kind = linear");
      ok = false;
    }
    if (auto* v = get("penalty.beta")) ok = b.parse_rational("penalty.beta", *v, beta) && ok;
    if (ok) {
      try {
        cfg.penalty = PenaltySchedule::linear(alpha, beta);
      } catch (const Error& e) {
        b.fail("penalty.alpha/beta", e.what());
      }
    }
  } else if (penalty_kind == "threshold") {
    if (auto* v = get("penalty.table")) {
      std::vector<std::pair<Count, Rational>> table;
      bool ok = true;
      for (const auto& part : split(*v, ',')) {
        auto colon = part.find(':');
        if (colon == std::string::npos) {
          b.fail("penalty.table", "expected k:value pairs, got '" + part + "'");
          ok = false;
          break;
        }
        long long key;
        Rational value;
        if (!b.parse_ll("penalty.table", trim(part.substr(0, colon)), key) ||
            !b.parse_rational("penalty.table", trim(part.substr(colon + 1)), value)) {
          ok = false;
          break;
        }
        table.emplace_back(key, value);
      }
      if (ok) {
        try {
          cfg.penalty = PenaltySchedule::threshold(std::move(table));
        } catch (const Error& e) {
          b.fail("penalty.table", e.what());
        }
      }
    } else {
      b.fail("penalty.table", "required for penalty.kind = threshold");
    }
  } else {
    b.fail("penalty.kind", "expected constant, linear or threshold, got '" + penalty_kind + "'");
  }

  if (auto* v = get("policy.kind")) {
    if (*v == "mlewa") {
      cfg.policy = PolicyType::Mlewa;
    } else if (*v == "myopic") {
      cfg.policy = PolicyType::MyopicStage;
    } else if (*v == "all-zero") {
      cfg.policy = PolicyType::AllZero;
    } else if (*v == "last-slot") {
      cfg.policy = PolicyType::LastSlot;
    } else if (*v == "fixed-mixed") {
      cfg.policy = PolicyType::FixedMixed;
    } else {
      b.fail("policy.kind", "expected mlewa, myopic, all-zero, last-slot or fixed-mixed");
    }
  }
  if (auto* v = get("policy.eta")) b.parse_double("policy.eta", *v, cfg.eta);
  if (auto* v = get("policy.profile")) {
    cfg.fixed_profile.rows.clear();
    for (const auto& row_text : split(*v, ';')) {
      std::vector<double> row;
      for (const auto& cell : split(row_text, ',')) {
        double p;
        if (!b.parse_double("policy.profile", trim(cell), p)) {
          row.clear();
          break;
        }
        row.push_back(p);
      }
      cfg.fixed_profile.rows.push_back(std::move(row));
    }
  }

  if (auto* v = get("run.horizon")) b.parse_ll("run.horizon", *v, cfg.horizon);
  if (auto* v = get("run.seeds")) b.parse_seed_list("run.seeds", *v, cfg.seeds);
  if (auto* v = get("run.parallelism")) {
    long long n;
    if (b.parse_ll("run.parallelism", *v, n)) cfg.parallelism = static_cast<int>(n);
  }
  if (auto* v = get("init.counts")) {
    cfg.initial_counts.clear();
    for (const auto& cell : split(*v, ',')) {
      long long n;
      if (!b.parse_ll("init.counts", trim(cell), n)) {
        cfg.initial_counts.clear();
        break;
      }
      cfg.initial_counts.push_back(n);
    }
  }
  if (auto* v = get("output.dir")) cfg.output_dir = *v;
  if (auto* v = get("output.format")) {
    if (*v == "csv") {
      cfg.format = RunConfig::Format::Csv;
    } else if (*v == "json") {
      cfg.format = RunConfig::Format::Json;
    } else {
      b.fail("output.format", "expected csv or json");
    }
  }
  if (auto* v = get("output.trajectories")) {
    b.parse_bool("output.trajectories", *v, cfg.write_trajectories);
  }
  if (auto* v = get("caps.enumeration")) b.parse_ll("caps.enumeration", *v, cfg.enumeration_cap);
  if (auto* v = get("caps.runs")) b.parse_ll("caps.runs", *v, cfg.run_cap);
  if (auto* v = get("assert.enabled")) b.parse_bool("assert.enabled", *v, cfg.assertions);
  if (auto* v = get("assert.max_k")) {
    long long n;
    if (b.parse_ll("assert.max_k", *v, n)) cfg.assert_max_k = n;
  }

  if (auto* v = get("walk.b")) b.parse_double("walk.b", *v, cfg.walk.exponential.scale_b);
  if (auto* v = get("walk.eta")) b.parse_double("walk.eta", *v, cfg.walk.exponential.eta);
  if (auto* v = get("walk.divisor")) b.parse_ll("walk.divisor", *v, cfg.walk.exponential.divisor);
  if (auto* v = get("walk.d")) b.parse_double("walk.d", *v, cfg.walk.d);
  if (auto* v = get("walk.m")) b.parse_ll("walk.m", *v, cfg.walk.max_move);
  if (auto* v = get("walk.z0")) b.parse_ll("walk.z0", *v, cfg.walk.z0);
  if (auto* v = get("walk.a")) b.parse_double("walk.a", *v, cfg.walk.sum_bound);
  if (auto* v = get("walk.x0")) b.parse_ll("walk.x0", *v, cfg.walk.x0);
  if (auto* v = get("walk.sweep")) {
    auto range = v->find("..");
    bool ok = range != std::string::npos;
    if (ok) {
      ok = b.parse_ll("walk.sweep", trim(v->substr(0, range)), cfg.walk_sweep_lo) &&
           b.parse_ll("walk.sweep", trim(v->substr(range + 2)), cfg.walk_sweep_hi);
    }
    if (!ok) b.fail("walk.sweep", "expected lo..hi");
  }

  // cross-field validation; every precondition a run would hit is checked here
  if (cfg.players < 3) outcome.errors.push_back("model.players: at least 3 players required");
  if (cfg.period < 2) outcome.errors.push_back("model.period: must be at least 2");
  if (cfg.players >= 3 && cfg.period >= 2) {
    try {
      (void)cfg.model();
    } catch (const Error& e) {
      outcome.errors.push_back(std::string("model: ") + e.what());
    }
  }
  if (!(cfg.eta > 0.0)) outcome.errors.push_back("policy.eta: must be positive");
  if (cfg.policy == PolicyType::FixedMixed) {
    if (static_cast<int>(cfg.fixed_profile.rows.size()) != cfg.players) {
      outcome.errors.push_back("policy.profile: expected one row per player");
    } else {
      try {
        cfg.fixed_profile.validate(cfg.period);
      } catch (const Error& e) {
        outcome.errors.push_back(std::string("policy.profile: ") + e.what());
      }
    }
  }
  if (cfg.horizon < 1) outcome.errors.push_back("run.horizon: must be at least 1");
  if (cfg.parallelism < 1) outcome.errors.push_back("run.parallelism: must be at least 1");
  if (!cfg.initial_counts.empty()) {
    if (static_cast<int>(cfg.initial_counts.size()) != cfg.players)
      outcome.errors.push_back("init.counts: expected one count per player");
    for (Count c : cfg.initial_counts) {
      if (c < 1) {
        outcome.errors.push_back("init.counts: counts must be at least 1");
        break;
      }
    }
  }
  if (cfg.enumeration_cap < 1) outcome.errors.push_back("caps.enumeration: must be positive");
  if (cfg.run_cap < 1) outcome.errors.push_back("caps.runs: must be positive");
  long long total_runs = static_cast<long long>(cfg.seeds.size());
  for (const auto& [key, values] : cfg.sweep)
    total_runs *= static_cast<long long>(values.size());
  if (total_runs > cfg.run_cap)
    outcome.errors.push_back("sweep: " + std::to_string(total_runs) +
                             " runs exceed caps.runs = " + std::to_string(cfg.run_cap));

  if (outcome.errors.empty()) outcome.config = std::move(cfg);
  return outcome;
}

namespace {

std::string seeds_to_string(const std::vector<uint64_t>& seeds) {
  bool contiguous = seeds.size() >= 3;
  for (size_t i = 1; contiguous && i < seeds.size(); ++i) {
    if (seeds[i] != seeds[i - 1] + 1) contiguous = false;
  }
  if (contiguous) {
    return std::to_string(seeds.front()) + ".." + std::to_string(seeds.back());
  }
  std::string out;
  for (size_t i = 0; i < seeds.size(); ++i) {
    if (i > 0) out += ",";
    out += std::to_string(seeds[i]);
  }
  return out;
}

}  // namespace

std::string serialize_config(const RunConfig& c) {
  std::ostringstream out;
  out << "model.players = " << c.players << "\n";
  out << "model.period = " << c.period << "\n";
  out << "model.override_period = " << (c.override_period ? "true" : "false") << "\n";
  switch (c.penalty.kind()) {
    case PenaltySchedule::Kind::Constant:
      out << "penalty.kind = constant\n";
      out << "penalty.c = " << c.penalty.constant_value().to_string() << "\n";
      break;
    case PenaltySchedule::Kind::Linear:
      out << "penalty.kind = linear\n";
      out << "penalty.alpha = " << c.penalty.linear_alpha().to_string() << "\n";
      out << "penalty.beta = " << c.penalty.linear_beta().to_string() << "\n";
      break;
    case PenaltySchedule::Kind::Threshold: {
      out << "penalty.kind = threshold\n";
      out << "penalty.table = ";
      const auto& table = c.penalty.table();
      for (size_t i = 0; i < table.size(); ++i) {
        if (i > 0) out << ",";
        out << table[i].first << ":" << table[i].second.to_string();
      }
      out << "\n";
      break;
    }
  }
  switch (c.policy) {
    case PolicyType::Mlewa:
      out << "policy.kind = mlewa\n";
      break;
    case PolicyType::MyopicStage:
      out << "policy.kind = myopic\n";
      break;
    case PolicyType::AllZero:
      out << "policy.kind = all-zero\n";
      break;
    case PolicyType::LastSlot:
      out << "policy.kind = last-slot\n";
      break;
    case PolicyType::FixedMixed:
      out << "policy.kind = fixed-mixed\n";
      break;
  }
  out << "policy.eta = " << fmt_double(c.eta) << "\n";
  if (c.policy == PolicyType::FixedMixed) {
    out << "policy.profile = ";
    for (size_t i = 0; i < c.fixed_profile.rows.size(); ++i) {
      if (i > 0) out << ";";
      for (size_t a = 0; a < c.fixed_profile.rows[i].size(); ++a) {
        if (a > 0) out << ",";
        out << fmt_double(c.fixed_profile.rows[i][a]);
      }
    }
    out << "\n";
  }
  if (!c.initial_counts.empty()) {
    out << "init.counts = ";
    for (size_t i = 0; i < c.initial_counts.size(); ++i) {
      if (i > 0) out << ",";
      out << c.initial_counts[i];
    }
    out << "\n";
  }
  out << "run.horizon = " << c.horizon << "\n";
  out << "run.seeds = " << seeds_to_string(c.seeds) << "\n";
  out << "run.parallelism = " << c.parallelism << "\n";
  out << "caps.enumeration = " << c.enumeration_cap << "\n";
  out << "caps.runs = " << c.run_cap << "\n";
  out << "assert.enabled = " << (c.assertions ? "true" : "false") << "\n";
  if (c.assert_max_k) out << "assert.max_k = " << *c.assert_max_k << "\n";
  out << "output.dir = " << c.output_dir << "\n";
  out << "output.format = " << (c.format == RunConfig::Format::Csv ? "csv" : "json") << "\n";
  out << "output.trajectories = " << (c.write_trajectories ? "true" : "false") << "\n";
  for (const auto& [key, values] : c.sweep) {
    out << "sweep." << key << " = ";
    for (size_t i = 0; i < values.size(); ++i) {
      if (i > 0) out << "|";
      out << values[i];
    }
    out << "\n";
  }
  const RunConfig defaults;
  const WalkParams& w = c.walk;
  const WalkParams& dw = defaults.walk;
  if (w.exponential.scale_b != dw.exponential.scale_b)
    out << "walk.b = " << fmt_double(w.exponential.scale_b) << "\n";
  if (w.exponential.eta != dw.exponential.eta)
    out << "walk.eta = " << fmt_double(w.exponential.eta) << "\n";
  if (w.exponential.divisor != dw.exponential.divisor)
    out << "walk.divisor = " << w.exponential.divisor << "\n";
  if (w.d != dw.d) out << "walk.d = " << fmt_double(w.d) << "\n";
  if (w.max_move != dw.max_move) out << "walk.m = " << w.max_move << "\n";
  if (w.z0 != dw.z0) out << "walk.z0 = " << w.z0 << "\n";
  if (w.sum_bound != dw.sum_bound) out << "walk.a = " << fmt_double(w.sum_bound) << "\n";
  if (w.x0 != dw.x0) out << "walk.x0 = " << w.x0 << "\n";
  if (c.walk_sweep_lo != defaults.walk_sweep_lo || c.walk_sweep_hi != defaults.walk_sweep_hi)
    out << "walk.sweep = " << c.walk_sweep_lo << ".." << c.walk_sweep_hi << "\n";
  return out.str();
}

const std::map<std::string, std::string>& config_presets() {
  static const std::map<std::string, std::string> presets = {
      {"myopic-stability",
       "# myopic stage play under a heavy constant penalty; backlog stays bounded\n"
       "model.players = 3\n"
       "model.period = 5\n"
       "penalty.kind = constant\n"
       "penalty.c = 321\n"
       "policy.kind = myopic\n"
       "run.horizon = 10000\n"
       "run.seeds = 1..10\n"
       "assert.max_k = 8\n"
       "output.dir = out/myopic-stability\n"},
      {"instability",
       "# a penalty below 1 makes the last slot dominant; one job served per period\n"
       "model.players = 3\n"
       "model.period = 5\n"
       "penalty.kind = constant\n"
       "penalty.c = 1/2\n"
       "policy.kind = last-slot\n"
       "run.horizon = 1000\n"
       "run.seeds = 1\n"
       "output.dir = out/instability\n"},
      {"mlewa-subcritical",
       "# multi-level exponential weights; penalty grows linearly with the backlog\n"
       "model.players = 3\n"
       "model.period = 5\n"
       "penalty.kind = linear\n"
       "penalty.alpha = 20\n"
       "penalty.beta = 1\n"
       "policy.kind = mlewa\n"
       "policy.eta = 0.1\n"
       "run.horizon = 100000\n"
       "run.seeds = 1..20\n"
       "output.dir = out/mlewa-subcritical\n"},
      {"mlewa-unproven-nt",
       "# unproven regime: as many players as slots; no stability guarantee known\n"
       "model.players = 3\n"
       "model.period = 3\n"
       "penalty.kind = linear\n"
       "penalty.alpha = 12\n"
       "penalty.beta = 1\n"
       "policy.kind = mlewa\n"
       "policy.eta = 0.1\n"
       "run.horizon = 100000\n"
       "run.seeds = 1..10\n"
       "output.dir = out/mlewa-unproven-nt\n"},
      {"mlewa-constant-penalty",
       "# unproven regime: constant penalty under learning; stability is an open\n"
       "# question, this preset only probes it empirically\n"
       "model.players = 3\n"
       "model.period = 5\n"
       "penalty.kind = constant\n"
       "penalty.c = 500\n"
       "policy.kind = mlewa\n"
       "policy.eta = 0.1\n"
       "run.horizon = 100000\n"
       "run.seeds = 1..10\n"
       "output.dir = out/mlewa-constant-penalty\n"},
      {"walk-appendix",
       "# reinforced random walk harness with the documented default coupling\n"
       "walk.b = 5\n"
       "walk.eta = 0.1\n"
       "walk.d = 3\n"
       "walk.m = 3\n"
       "walk.z0 = 10\n"
       "walk.x0 = 10\n"
       "walk.sweep = 13..1000\n"
       "run.horizon = 1000000\n"
       "run.seeds = 1..100\n"
       "output.dir = out/walk-appendix\n"},
      {"certify-nash",
       "# one-shot certificate: unit jobs, k = T = 3, penalty 10\n"
       "model.players = 3\n"
       "model.period = 3\n"
       "penalty.kind = constant\n"
       "penalty.c = 10\n"
       "run.horizon = 1\n"
       "run.seeds = 1\n"
       "output.dir = out/certify-nash\n"},
      {"certify-cce",
       "# one-shot certificate: k = 3 above T = 2 forces lateness every period\n"
       "model.players = 3\n"
       "model.period = 2\n"
       "model.override_period = true\n"
       "penalty.kind = constant\n"
       "penalty.c = 19\n"
       "run.horizon = 1\n"
       "run.seeds = 1\n"
       "output.dir = out/certify-cce\n"}};
  return presets;
}

}  // namespace dqm
