#pragma once

// Scenario files.
//
// Scenarios are YAML documents with a strict schema: unknown keys, missing
// required keys and invalid values are all reported, each with its key path
// and line number. See README.md for the full format. Requires yaml-cpp.

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <fmt/format.h>

#include "compadv/econ.hpp"
#include "compadv/estimation.hpp"
#include "compadv/random.hpp"

namespace compadv {

enum class EfficiencyFamily { uniform, lognormal, pareto };

struct PopulationGenerator {
  std::int64_t count = 0;
  EfficiencyFamily family = EfficiencyFamily::uniform;
  // uniform: low, high; lognormal: mu, sigma; pareto: scale, shape.
  std::map<std::string, double> params;

  bool operator==(const PopulationGenerator&) const = default;
};

struct PlayerSpec {
  std::string id;
  std::map<std::string, double> efficiencies;  // job id -> efficiency
  std::optional<double> money;

  bool operator==(const PlayerSpec&) const = default;
};

using PopulationSpec = std::variant<std::vector<PlayerSpec>, PopulationGenerator>;
// Either one constant for every (player, job) or player -> job -> units
// (absent entries are zero).
using DemandSpec = std::variant<std::int64_t, std::map<std::string, std::map<std::string, std::int64_t>>>;

struct WalkSpec {
  WalkParams params;
  std::int64_t steps = 0;
  std::int64_t traces = 1;

  bool operator==(const WalkSpec&) const = default;
};

inline const std::vector<std::string>& known_outputs() {
  static const std::vector<std::string> k{"trades", "wealth", "savings", "density", "walk"};
  return k;
}

struct ScenarioConfig {
  PopulationSpec population;
  std::vector<JobSpec> jobs;
  double conversion = 1.0;
  double price_quantum = 0.01;
  DemandSpec demand = std::int64_t{1};
  std::int64_t rounds = 1;
  std::uint64_t master_seed = 0;
  double initial_money = 1'000'000.0;
  EnergyModel energy_model = EnergyModel::conserved;
  std::vector<std::string> outputs;
  std::optional<WalkSpec> walk;

  bool operator==(const ScenarioConfig&) const = default;
};

struct ConfigIssue {
  std::string path;  // dotted key path, e.g. population.players[0].efficiencies.x
  int line = 0;      // 1-based; 0 when unknown
  std::string message;
};

class ConfigError : public std::runtime_error {
 public:
  enum class Kind { missing_file, parse, validation };

  ConfigError(Kind kind, std::string file, std::vector<ConfigIssue> issues)
      : std::runtime_error(render(kind, file, issues)),
        kind_(kind),
        file_(std::move(file)),
        issues_(std::move(issues)) {}

  Kind kind() const { return kind_; }
  const std::string& file() const { return file_; }
  const std::vector<ConfigIssue>& issues() const { return issues_; }

  static const char* kind_name(Kind k) {
    switch (k) {
      case Kind::missing_file: return "missing_file";
      case Kind::parse: return "parse_error";
      case Kind::validation: return "validation_error";
    }
    return "unknown";
  }

 private:
  static std::string render(Kind kind, const std::string& file, const std::vector<ConfigIssue>& issues) {
    std::string s = fmt::format("{}: {}", file, kind_name(kind));
    for (const auto& i : issues) {
      s += fmt::format("\n  {}:{}: ", file, i.line);
      if (!i.path.empty()) s += i.path + ": ";
      s += i.message;
    }
    return s;
  }

  Kind kind_;
  std::string file_;
  std::vector<ConfigIssue> issues_;
};

inline const char* family_name(EfficiencyFamily f) {
  switch (f) {
    case EfficiencyFamily::uniform: return "uniform";
    case EfficiencyFamily::lognormal: return "log-normal";
    case EfficiencyFamily::pareto: return "pareto";
  }
  return "?";
}

namespace detail {

class ConfigReader {
 public:
  std::vector<ConfigIssue> issues;

  void error(const YAML::Node& n, const std::string& path, const std::string& msg) {
    issues.push_back({path, n.IsDefined() ? n.Mark().line + 1 : 0, msg});
  }

  // Reports keys of `map` not in `allowed`.
  void strict_keys(const YAML::Node& map, const std::string& path, const std::set<std::string>& allowed) {
    for (const auto& kv : map) {
      const auto key = kv.first.as<std::string>();
      if (!allowed.count(key)) error(kv.first, join(path, key), "unknown key '" + key + "'");
    }
  }

  static std::string join(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
  }

  template <typename T>
  std::optional<T> scalar(const YAML::Node& n, const std::string& path, const char* what) {
    if (!n.IsScalar()) {
      error(n, path, fmt::format("expected {}", what));
      return std::nullopt;
    }
    try {
      return n.as<T>();
    } catch (const YAML::Exception&) {
      error(n, path, fmt::format("expected {}, got '{}'", what, n.Scalar()));
      return std::nullopt;
    }
  }

  std::optional<double> number(const YAML::Node& n, const std::string& path) {
    auto v = scalar<double>(n, path, "a number");
    if (v && !std::isfinite(*v)) {
      error(n, path, "must be finite");
      return std::nullopt;
    }
    return v;
  }

  std::optional<double> positive(const YAML::Node& n, const std::string& path) {
    auto v = number(n, path);
    if (v && !(*v > 0.0)) {
      error(n, path, "must be > 0");
      return std::nullopt;
    }
    return v;
  }

  YAML::Node required(const YAML::Node& map, const std::string& key, const std::string& path) {
    YAML::Node n = map[key];
    if (!n.IsDefined() || n.IsNull()) {
      issues.push_back({join(path, key), map.Mark().line + 1, "missing required key"});
      return YAML::Node(YAML::NodeType::Undefined);
    }
    return n;
  }
};

inline ScenarioConfig read_scenario(const YAML::Node& root, ConfigReader& r) {
  ScenarioConfig cfg;
  if (!root.IsMap()) {
    r.error(root, "", "top level must be a mapping");
    return cfg;
  }
  r.strict_keys(root, "",
                {"population", "jobs", "conversion", "price_quantum", "demand", "rounds", "master_seed",
                 "initial_money", "energy_model", "outputs", "walk"});

  // jobs
  std::set<std::string> job_ids;
  if (auto jobs = r.required(root, "jobs", ""); jobs.IsDefined()) {
    if (!jobs.IsSequence() || jobs.size() == 0) {
      r.error(jobs, "jobs", "expected a non-empty list of jobs");
    } else {
      for (std::size_t k = 0; k < jobs.size(); ++k) {
        const auto path = fmt::format("jobs[{}]", k);
        const auto& j = jobs[k];
        if (!j.IsMap()) {
          r.error(j, path, "expected a mapping with id and workload");
          continue;
        }
        r.strict_keys(j, path, {"id", "workload"});
        JobSpec spec;
        if (auto id = r.required(j, "id", path); id.IsDefined())
          if (auto v = r.scalar<std::string>(id, path + ".id", "a string")) {
            spec.id = *v;
            if (!job_ids.insert(*v).second) r.error(id, path + ".id", "duplicate job id '" + *v + "'");
          }
        if (auto w = r.required(j, "workload", path); w.IsDefined())
          if (auto v = r.positive(w, path + ".workload")) spec.workload = *v;
        cfg.jobs.push_back(spec);
      }
    }
  }

  if (auto n = r.required(root, "conversion", ""); n.IsDefined())
    if (auto v = r.positive(n, "conversion")) cfg.conversion = *v;
  if (auto n = r.required(root, "price_quantum", ""); n.IsDefined())
    if (auto v = r.positive(n, "price_quantum")) cfg.price_quantum = *v;
  if (auto n = r.required(root, "rounds", ""); n.IsDefined())
    if (auto v = r.scalar<std::int64_t>(n, "rounds", "an integer")) {
      if (*v < 1) r.error(n, "rounds", "must be >= 1");
      cfg.rounds = *v;
    }
  if (auto n = r.required(root, "master_seed", ""); n.IsDefined())
    if (auto v = r.scalar<std::uint64_t>(n, "master_seed", "a 64-bit unsigned integer")) cfg.master_seed = *v;
  if (auto n = root["initial_money"]; n.IsDefined())
    if (auto v = r.number(n, "initial_money")) {
      if (*v < 0.0) r.error(n, "initial_money", "must be >= 0");
      cfg.initial_money = *v;
    }
  if (auto n = root["energy_model"]; n.IsDefined())
    if (auto v = r.scalar<std::string>(n, "energy_model", "a string")) {
      if (*v == "conserved")
        cfg.energy_model = EnergyModel::conserved;
      else if (*v == "free")
        cfg.energy_model = EnergyModel::free;
      else
        r.error(n, "energy_model", "must be 'conserved' or 'free'");
    }

  // population
  std::set<std::string> player_ids;
  bool explicit_players = false;
  if (auto pop = r.required(root, "population", ""); pop.IsDefined()) {
    if (!pop.IsMap()) {
      r.error(pop, "population", "expected a mapping with either 'players' or 'generator'");
    } else {
      r.strict_keys(pop, "population", {"players", "generator"});
      const bool has_players = pop["players"].IsDefined();
      const bool has_gen = pop["generator"].IsDefined();
      if (has_players == has_gen) {
        r.error(pop, "population", "specify exactly one of 'players' or 'generator'");
      } else if (has_players) {
        explicit_players = true;
        std::vector<PlayerSpec> players;
        const auto& list = pop["players"];
        if (!list.IsSequence() || list.size() == 0) r.error(list, "population.players", "expected a non-empty list");
        for (std::size_t k = 0; list.IsSequence() && k < list.size(); ++k) {
          const auto path = fmt::format("population.players[{}]", k);
          const auto& p = list[k];
          if (!p.IsMap()) {
            r.error(p, path, "expected a mapping");
            continue;
          }
          r.strict_keys(p, path, {"id", "efficiencies", "money"});
          PlayerSpec spec;
          if (auto id = r.required(p, "id", path); id.IsDefined())
            if (auto v = r.scalar<std::string>(id, path + ".id", "a string")) {
              spec.id = *v;
              if (!player_ids.insert(*v).second) r.error(id, path + ".id", "duplicate player id '" + *v + "'");
            }
          if (auto m = p["money"]; m.IsDefined())
            if (auto v = r.number(m, path + ".money")) {
              if (*v < 0.0) r.error(m, path + ".money", "must be >= 0");
              spec.money = *v;
            }
          if (auto eff = r.required(p, "efficiencies", path); eff.IsDefined()) {
            if (!eff.IsMap()) {
              r.error(eff, path + ".efficiencies", "expected a mapping job -> efficiency");
            } else {
              for (const auto& kv : eff) {
                const auto job = kv.first.as<std::string>();
                const auto epath = path + ".efficiencies." + job;
                if (!job_ids.count(job)) {
                  r.error(kv.first, epath, "unknown job '" + job + "'");
                  continue;
                }
                auto v = r.number(kv.second, epath);
                if (v && !(*v > 0.0))
                  r.error(kv.second, epath,
                          fmt::format("efficiency of player '{}' for job '{}' must be > 0", spec.id, job));
                if (v) spec.efficiencies[job] = *v;
              }
              for (const auto& job : job_ids)
                if (!eff[job].IsDefined())
                  r.error(eff, path + ".efficiencies",
                          fmt::format("player '{}' has no efficiency for job '{}'", spec.id, job));
            }
          }
          players.push_back(std::move(spec));
        }
        cfg.population = std::move(players);
      } else {
        const auto& g = pop["generator"];
        const std::string path = "population.generator";
        PopulationGenerator gen;
        if (!g.IsMap()) {
          r.error(g, path, "expected a mapping");
        } else {
          if (auto c = r.required(g, "count", path); c.IsDefined())
            if (auto v = r.scalar<std::int64_t>(c, path + ".count", "an integer")) {
              if (*v < 1) r.error(c, path + ".count", "must be >= 1");
              gen.count = *v;
            }
          std::set<std::string> param_keys;
          if (auto d = r.required(g, "distribution", path); d.IsDefined())
            if (auto v = r.scalar<std::string>(d, path + ".distribution", "a string")) {
              if (*v == "uniform") {
                gen.family = EfficiencyFamily::uniform;
                param_keys = {"low", "high"};
              } else if (*v == "log-normal") {
                gen.family = EfficiencyFamily::lognormal;
                param_keys = {"mu", "sigma"};
              } else if (*v == "pareto") {
                gen.family = EfficiencyFamily::pareto;
                param_keys = {"scale", "shape"};
              } else {
                r.error(d, path + ".distribution", "must be one of uniform, log-normal, pareto");
              }
            }
          std::set<std::string> allowed{"count", "distribution"};
          allowed.insert(param_keys.begin(), param_keys.end());
          if (!param_keys.empty()) r.strict_keys(g, path, allowed);
          for (const auto& key : param_keys)
            if (auto n = r.required(g, key, path); n.IsDefined())
              if (auto v = r.number(n, path + "." + key)) gen.params[key] = *v;
          const auto& pm = gen.params;
          if (gen.family == EfficiencyFamily::uniform && pm.count("low") && pm.count("high")) {
            if (!(pm.at("low") > 0.0)) r.error(g["low"], path + ".low", "must be > 0");
            if (!(pm.at("high") >= pm.at("low"))) r.error(g["high"], path + ".high", "must be >= low");
          }
          if (gen.family == EfficiencyFamily::lognormal && pm.count("sigma") && !(pm.at("sigma") >= 0.0))
            r.error(g["sigma"], path + ".sigma", "must be >= 0");
          if (gen.family == EfficiencyFamily::pareto) {
            if (pm.count("scale") && !(pm.at("scale") > 0.0)) r.error(g["scale"], path + ".scale", "must be > 0");
            if (pm.count("shape") && !(pm.at("shape") > 0.0)) r.error(g["shape"], path + ".shape", "must be > 0");
          }
        }
        cfg.population = gen;
      }
    }
  }

  // demand
  if (auto d = root["demand"]; d.IsDefined()) {
    if (d.IsScalar()) {
      if (auto v = r.scalar<std::int64_t>(d, "demand", "an integer")) {
        if (*v < 0) r.error(d, "demand", "must be >= 0");
        cfg.demand = *v;
      }
    } else if (d.IsMap()) {
      std::map<std::string, std::map<std::string, std::int64_t>> m;
      if (!explicit_players) r.error(d, "demand", "a demand matrix requires an explicit player list");
      for (const auto& row : d) {
        const auto pid = row.first.as<std::string>();
        const auto ppath = "demand." + pid;
        if (explicit_players && !player_ids.count(pid)) r.error(row.first, ppath, "unknown player '" + pid + "'");
        if (!row.second.IsMap()) {
          r.error(row.second, ppath, "expected a mapping job -> units");
          continue;
        }
        for (const auto& cell : row.second) {
          const auto jid = cell.first.as<std::string>();
          const auto cpath = ppath + "." + jid;
          if (!job_ids.count(jid)) r.error(cell.first, cpath, "unknown job '" + jid + "'");
          if (auto v = r.scalar<std::int64_t>(cell.second, cpath, "an integer")) {
            if (*v < 0) r.error(cell.second, cpath, "must be >= 0");
            m[pid][jid] = *v;
          }
        }
      }
      cfg.demand = std::move(m);
    } else {
      r.error(d, "demand", "expected an integer or a player -> job -> units mapping");
    }
  }

  if (auto o = root["outputs"]; o.IsDefined()) {
    if (!o.IsSequence()) {
      r.error(o, "outputs", "expected a list");
    } else {
      std::set<std::string> seen;
      for (std::size_t k = 0; k < o.size(); ++k) {
        const auto path = fmt::format("outputs[{}]", k);
        auto v = r.scalar<std::string>(o[k], path, "a string");
        if (!v) continue;
        const auto& ok = known_outputs();
        if (std::find(ok.begin(), ok.end(), *v) == ok.end())
          r.error(o[k], path, "unknown output '" + *v + "' (expected trades, wealth, savings, density or walk)");
        else if (!seen.insert(*v).second)
          r.error(o[k], path, "duplicate output '" + *v + "'");
        else
          cfg.outputs.push_back(*v);
      }
    }
  }

  if (auto w = root["walk"]; w.IsDefined()) {
    WalkSpec ws;
    const std::string path = "walk";
    if (!w.IsMap()) {
      r.error(w, path, "expected a mapping");
    } else {
      r.strict_keys(w, path, {"true_price", "eta", "sigma", "steps", "traces"});
      if (auto n = r.required(w, "true_price", path); n.IsDefined())
        if (auto v = r.number(n, path + ".true_price")) {
          if (*v < 0.0) r.error(n, path + ".true_price", "must be >= 0");
          ws.params.true_price = *v;
        }
      if (auto n = r.required(w, "eta", path); n.IsDefined())
        if (auto v = r.number(n, path + ".eta")) {
          if (!(*v > 0.0 && *v < 2.0)) r.error(n, path + ".eta", "must lie in (0, 2)");
          ws.params.eta = *v;
        }
      if (auto n = r.required(w, "sigma", path); n.IsDefined())
        if (auto v = r.number(n, path + ".sigma")) {
          if (*v < 0.0) r.error(n, path + ".sigma", "must be >= 0");
          ws.params.sigma = *v;
        }
      if (auto n = r.required(w, "steps", path); n.IsDefined())
        if (auto v = r.scalar<std::int64_t>(n, path + ".steps", "an integer")) {
          if (*v < 1) r.error(n, path + ".steps", "must be >= 1");
          ws.steps = *v;
        }
      if (auto n = w["traces"]; n.IsDefined())
        if (auto v = r.scalar<std::int64_t>(n, path + ".traces", "an integer")) {
          if (*v < 1) r.error(n, path + ".traces", "must be >= 1");
          ws.traces = *v;
        }
    }
    cfg.walk = ws;
  }
  if (!cfg.walk && std::find(cfg.outputs.begin(), cfg.outputs.end(), "walk") != cfg.outputs.end())
    r.error(root["outputs"], "outputs", "output 'walk' requires a 'walk' section");
  return cfg;
}

}  // namespace detail

// Parses and validates scenario text; `name` labels errors.
inline ScenarioConfig parse_config(const std::string& text, const std::string& name = "<string>") {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ConfigError(ConfigError::Kind::parse, name, {{"", e.mark.line + 1, e.msg}});
  }
  detail::ConfigReader r;
  ScenarioConfig cfg = detail::read_scenario(root, r);
  if (!r.issues.empty()) throw ConfigError(ConfigError::Kind::validation, name, std::move(r.issues));
  return cfg;
}

inline ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(ConfigError::Kind::missing_file, path.string(), {{"", 0, "cannot open file"}});
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path.string());
}

// Canonical YAML text; parse_config(serialize_config(c)) == c.
inline std::string serialize_config(const ScenarioConfig& c) {
  auto num = [](double v) { return fmt::format("{}", v); };
  YAML::Emitter out;
  out << YAML::BeginMap;
  out << YAML::Key << "jobs" << YAML::Value << YAML::BeginSeq;
  for (const auto& j : c.jobs)
    out << YAML::Flow << YAML::BeginMap << YAML::Key << "id" << YAML::Value << YAML::DoubleQuoted << j.id
        << YAML::Key << "workload" << YAML::Value << num(j.workload) << YAML::EndMap;
  out << YAML::EndSeq;

  out << YAML::Key << "population" << YAML::Value << YAML::BeginMap;
  if (const auto* players = std::get_if<std::vector<PlayerSpec>>(&c.population)) {
    out << YAML::Key << "players" << YAML::Value << YAML::BeginSeq;
    for (const auto& p : *players) {
      out << YAML::BeginMap << YAML::Key << "id" << YAML::Value << YAML::DoubleQuoted << p.id;
      out << YAML::Key << "efficiencies" << YAML::Value << YAML::Flow << YAML::BeginMap;
      for (const auto& [job, e] : p.efficiencies)
        out << YAML::Key << YAML::DoubleQuoted << job << YAML::Value << num(e);
      out << YAML::EndMap;
      if (p.money) out << YAML::Key << "money" << YAML::Value << num(*p.money);
      out << YAML::EndMap;
    }
    out << YAML::EndSeq;
  } else {
    const auto& g = std::get<PopulationGenerator>(c.population);
    out << YAML::Key << "generator" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "count" << YAML::Value << g.count;
    out << YAML::Key << "distribution" << YAML::Value << family_name(g.family);
    for (const auto& [k, v] : g.params) out << YAML::Key << k << YAML::Value << num(v);
    out << YAML::EndMap;
  }
  out << YAML::EndMap;

  out << YAML::Key << "conversion" << YAML::Value << num(c.conversion);
  out << YAML::Key << "price_quantum" << YAML::Value << num(c.price_quantum);
  out << YAML::Key << "demand" << YAML::Value;
  if (const auto* k = std::get_if<std::int64_t>(&c.demand)) {
    out << *k;
  } else {
    out << YAML::BeginMap;
    for (const auto& [pid, row] : std::get<1>(c.demand)) {
      out << YAML::Key << YAML::DoubleQuoted << pid << YAML::Value << YAML::Flow << YAML::BeginMap;
      for (const auto& [jid, u] : row) out << YAML::Key << YAML::DoubleQuoted << jid << YAML::Value << u;
      out << YAML::EndMap;
    }
    out << YAML::EndMap;
  }
  out << YAML::Key << "rounds" << YAML::Value << c.rounds;
  out << YAML::Key << "master_seed" << YAML::Value << c.master_seed;
  out << YAML::Key << "initial_money" << YAML::Value << num(c.initial_money);
  out << YAML::Key << "energy_model" << YAML::Value
      << (c.energy_model == EnergyModel::free ? "free" : "conserved");
  out << YAML::Key << "outputs" << YAML::Value << YAML::Flow << YAML::BeginSeq;
  for (const auto& o : c.outputs) out << o;
  out << YAML::EndSeq;
  if (c.walk) {
    out << YAML::Key << "walk" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "true_price" << YAML::Value << num(c.walk->params.true_price);
    out << YAML::Key << "eta" << YAML::Value << num(c.walk->params.eta);
    out << YAML::Key << "sigma" << YAML::Value << num(c.walk->params.sigma);
    out << YAML::Key << "steps" << YAML::Value << c.walk->steps;
    out << YAML::Key << "traces" << YAML::Value << c.walk->traces;
    out << YAML::EndMap;
  }
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

// Zero-padded ids so that lexicographic order equals generation order.
inline std::string generated_player_id(std::int64_t index, std::int64_t count) {
  const auto width = std::to_string(count > 0 ? count - 1 : 0).size();
  return fmt::format("P{:0{}}", index, width);
}

// Materializes the economy. Generated efficiencies for player k (job x in
// order) come from the stream ("population", k).
inline EconomyConfig build_economy(const ScenarioConfig& s) {
  EconomyConfig e;
  e.jobs = s.jobs;
  e.conversion = s.conversion;
  e.price_quantum = s.price_quantum;
  e.energy_model = s.energy_model;

  if (const auto* players = std::get_if<std::vector<PlayerSpec>>(&s.population)) {
    for (const auto& p : *players) {
      Player pl;
      pl.id = p.id;
      for (const auto& j : s.jobs) pl.efficiencies.push_back(p.efficiencies.at(j.id));
      pl.money = to_money(p.money.value_or(s.initial_money), s.price_quantum);
      e.players.push_back(std::move(pl));
    }
  } else {
    const auto& g = std::get<PopulationGenerator>(s.population);
    for (std::int64_t k = 0; k < g.count; ++k) {
      Rng rng(derive_seed(s.master_seed, "population", static_cast<std::uint64_t>(k)));
      Player pl;
      pl.id = generated_player_id(k, g.count);
      for (std::size_t x = 0; x < s.jobs.size(); ++x) {
        double eps = 0.0;
        switch (g.family) {
          case EfficiencyFamily::uniform: eps = rng.uniform(g.params.at("low"), g.params.at("high")); break;
          case EfficiencyFamily::lognormal: eps = rng.lognormal(g.params.at("mu"), g.params.at("sigma")); break;
          case EfficiencyFamily::pareto: eps = rng.pareto(g.params.at("scale"), g.params.at("shape")); break;
        }
        pl.efficiencies.push_back(eps);
      }
      pl.money = to_money(s.initial_money, s.price_quantum);
      e.players.push_back(std::move(pl));
    }
  }

  const std::size_t np = e.players.size();
  const std::size_t nj = e.jobs.size();
  if (const auto* k = std::get_if<std::int64_t>(&s.demand)) {
    e.demand = constant_demand(np, nj, *k);
  } else {
    e.demand = constant_demand(np, nj, 0);
    for (const auto& [pid, row] : std::get<1>(s.demand))
      for (const auto& [jid, u] : row) e.demand[*e.player_index(pid)][*e.job_index(jid)] = u;
  }
  validate(e);
  return e;
}

}  // namespace compadv
