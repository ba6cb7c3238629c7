#include "prefnet/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace prefnet {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& path) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) {
      throw ConfigError("unknown key '" + key + "' at " + path);
    }
  }
}

const json& require(const json& obj, const std::string& key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ConfigError("missing required key '" + key + "' at " + path);
  return *it;
}

double as_number(const json& v, const std::string& path) {
  if (!v.is_number()) throw ConfigError(path + ": expected a number");
  return v.get<double>();
}

int as_int(const json& v, const std::string& path) {
  if (!v.is_number_integer()) throw ConfigError(path + ": expected an integer");
  return v.get<int>();
}

std::string as_string(const json& v, const std::string& path) {
  if (!v.is_string()) throw ConfigError(path + ": expected a string");
  return v.get<std::string>();
}

TopologySpec parse_topology(const json& v, const std::string& path) {
  if (!v.is_object()) throw ConfigError(path + ": expected an object");
  reject_unknown_keys(v, {"kind", "n", "mean_degree", "m_attach"}, path);
  const std::string kind = as_string(require(v, "kind", path), path + ".kind");
  const int n = as_int(require(v, "n", path), path + ".n");
  try {
    if (kind == "er") {
      if (v.contains("m_attach")) throw ConfigError(path + ": m_attach is not an ER parameter");
      return TopologySpec::er(n, as_number(require(v, "mean_degree", path), path + ".mean_degree"));
    }
    if (kind == "ba") {
      if (v.contains("mean_degree")) throw ConfigError(path + ": mean_degree is not a BA parameter");
      return TopologySpec::ba(n, as_int(require(v, "m_attach", path), path + ".m_attach"));
    }
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
  throw ConfigError(path + ".kind: expected \"er\" or \"ba\"");
}

GameKind parse_game(const std::string& s, const std::string& path) {
  if (s == "cg") return GameKind::Coordination;
  if (s == "ag") return GameKind::Anticoordination;
  throw ConfigError(path + ": expected \"cg\" or \"ag\"");
}

std::vector<double> parse_number_list(const json& v, const std::string& path) {
  if (!v.is_array() || v.empty()) throw ConfigError(path + ": expected a nonempty array");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(as_number(v[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

}  // namespace

SweepConfig parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config: top level must be an object");

  reject_unknown_keys(doc,
                      {"schema_version", "base_seed", "topologies", "games", "dynamics", "info",
                       "init", "alpha_grid", "betas_per_alpha", "beta_count", "rho0_grid",
                       "realizations"},
                      "config");

  const int schema = as_int(require(doc, "schema_version", "config"), "config.schema_version");
  if (schema != 1) throw ConfigError("config.schema_version: only version 1 is supported");

  // All randomness flows from this one key; a missing seed is an error, not
  // a time-based default.
  const json& seed = require(doc, "base_seed", "config");
  if (!seed.is_number_integer() ||
      (!seed.is_number_unsigned() && seed.get<std::int64_t>() < 0)) {
    throw ConfigError("config.base_seed: expected a nonnegative integer");
  }

  // Dynamics rule first: the defaults depend on it.
  DynamicsRule rule = DynamicsRule::BestResponseComplete;
  bool imitation = false;
  std::string info = "complete";
  if (doc.contains("info")) {
    info = as_string(doc["info"], "config.info");
    if (info != "complete" && info != "incomplete") {
      throw ConfigError("config.info: expected \"complete\" or \"incomplete\"");
    }
  }
  json dynamics = doc.contains("dynamics") ? doc["dynamics"] : json::object();
  if (!dynamics.is_object()) throw ConfigError("config.dynamics: expected an object");
  reject_unknown_keys(dynamics, {"rule", "update_fraction", "max_steps", "convergence_window"},
                      "config.dynamics");
  if (dynamics.contains("rule")) {
    const std::string r = as_string(dynamics["rule"], "config.dynamics.rule");
    if (r == "best_response") {
      imitation = false;
    } else if (r == "proportional_imitation") {
      imitation = true;
    } else {
      throw ConfigError("config.dynamics.rule: expected \"best_response\" or \"proportional_imitation\"");
    }
  }
  if (imitation && info == "incomplete") {
    throw ConfigError("config: proportional imitation cannot run under incomplete information "
                      "(neighbor payoffs are unobservable)");
  }
  rule = imitation ? DynamicsRule::ProportionalImitation
                   : (info == "incomplete" ? DynamicsRule::BestResponseIncomplete
                                           : DynamicsRule::BestResponseComplete);

  SweepConfig cfg = default_paper_grid(rule);
  cfg.base_seed = seed.get<std::uint64_t>();

  if (dynamics.contains("update_fraction")) {
    cfg.update_fraction = as_number(dynamics["update_fraction"], "config.dynamics.update_fraction");
  }
  if (dynamics.contains("max_steps")) {
    cfg.max_steps = as_int(dynamics["max_steps"], "config.dynamics.max_steps");
  }
  if (dynamics.contains("convergence_window")) {
    cfg.convergence_window =
        as_int(dynamics["convergence_window"], "config.dynamics.convergence_window");
  }

  if (doc.contains("init")) {
    const std::string init = as_string(doc["init"], "config.init");
    if (init == "uniform_random") {
      cfg.init = InitPolicy::UniformRandomAction;
    } else if (init == "all_preferred") {
      cfg.init = InitPolicy::AllPreferred;
    } else {
      throw ConfigError("config.init: expected \"uniform_random\" or \"all_preferred\"");
    }
  }

  if (doc.contains("topologies")) {
    const json& ts = doc["topologies"];
    if (!ts.is_array() || ts.empty()) throw ConfigError("config.topologies: expected a nonempty array");
    cfg.topologies.clear();
    for (std::size_t i = 0; i < ts.size(); ++i) {
      cfg.topologies.push_back(parse_topology(ts[i], "config.topologies[" + std::to_string(i) + "]"));
    }
  }

  if (doc.contains("games")) {
    const json& gs = doc["games"];
    if (!gs.is_array() || gs.empty()) throw ConfigError("config.games: expected a nonempty array");
    cfg.games.clear();
    for (std::size_t i = 0; i < gs.size(); ++i) {
      cfg.games.push_back(parse_game(as_string(gs[i], "config.games[" + std::to_string(i) + "]"),
                                     "config.games[" + std::to_string(i) + "]"));
    }
  }

  if (doc.contains("beta_count") && doc.contains("betas_per_alpha")) {
    throw ConfigError("config: beta_count and betas_per_alpha are mutually exclusive");
  }
  if (doc.contains("alpha_grid")) {
    cfg.alpha_grid = parse_number_list(doc["alpha_grid"], "config.alpha_grid");
    if (!doc.contains("betas_per_alpha")) {
      const int count = doc.contains("beta_count")
                            ? as_int(doc["beta_count"], "config.beta_count")
                            : 8;
      if (count < 1) throw ConfigError("config.beta_count: must be at least 1");
      cfg.betas_per_alpha.clear();
      for (const double alpha : cfg.alpha_grid) {
        cfg.betas_per_alpha.push_back(default_beta_grid(alpha, count));
      }
    }
  } else if (doc.contains("beta_count")) {
    const int count = as_int(doc["beta_count"], "config.beta_count");
    if (count < 1) throw ConfigError("config.beta_count: must be at least 1");
    cfg.betas_per_alpha.clear();
    for (const double alpha : cfg.alpha_grid) {
      cfg.betas_per_alpha.push_back(default_beta_grid(alpha, count));
    }
  }
  if (doc.contains("betas_per_alpha")) {
    const json& bs = doc["betas_per_alpha"];
    if (!bs.is_array()) throw ConfigError("config.betas_per_alpha: expected an array of arrays");
    cfg.betas_per_alpha.clear();
    for (std::size_t i = 0; i < bs.size(); ++i) {
      cfg.betas_per_alpha.push_back(
          parse_number_list(bs[i], "config.betas_per_alpha[" + std::to_string(i) + "]"));
    }
  }

  if (doc.contains("rho0_grid")) {
    cfg.rho0_grid = parse_number_list(doc["rho0_grid"], "config.rho0_grid");
  }
  if (doc.contains("realizations")) {
    cfg.realizations = as_int(doc["realizations"], "config.realizations");
  }

  cfg.validate();
  return cfg;
}

SweepConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string serialize_config(const SweepConfig& cfg) {
  json doc;
  doc["schema_version"] = cfg.schema_version;
  doc["base_seed"] = cfg.base_seed;
  json topologies = json::array();
  for (const auto& t : cfg.topologies) {
    json obj;
    if (t.kind == TopologyKind::ER) {
      obj["kind"] = "er";
      obj["n"] = t.n;
      obj["mean_degree"] = t.mean_degree;
    } else {
      obj["kind"] = "ba";
      obj["n"] = t.n;
      obj["m_attach"] = t.m_attach;
    }
    topologies.push_back(obj);
  }
  doc["topologies"] = topologies;
  json games = json::array();
  for (const auto g : cfg.games) {
    games.push_back(g == GameKind::Coordination ? "cg" : "ag");
  }
  doc["games"] = games;
  doc["dynamics"] = {
      {"rule", cfg.rule == DynamicsRule::ProportionalImitation ? "proportional_imitation"
                                                               : "best_response"},
      {"update_fraction", cfg.update_fraction},
      {"max_steps", cfg.max_steps},
      {"convergence_window", cfg.convergence_window},
  };
  doc["info"] = cfg.rule == DynamicsRule::BestResponseIncomplete ? "incomplete" : "complete";
  doc["init"] = cfg.init == InitPolicy::AllPreferred ? "all_preferred" : "uniform_random";
  doc["alpha_grid"] = cfg.alpha_grid;
  doc["betas_per_alpha"] = cfg.betas_per_alpha;
  doc["rho0_grid"] = cfg.rho0_grid;
  doc["realizations"] = cfg.realizations;
  return doc.dump(2) + "\n";
}

void write_config_file(const SweepConfig& cfg, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write config file: " + path);
  out << serialize_config(cfg);
}

}  // namespace prefnet
