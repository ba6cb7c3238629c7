#include "prefnet/results.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace prefnet {

namespace {

constexpr const char* kResultsHeader =
    "schema_version,topology,n,mean_degree_or_m,game,dynamics,info,alpha,beta,ratio,rho0,"
    "realization,seed,steps,termination,d1,df,class";

constexpr const char* kAggregateHeader =
    "schema_version,topology,n,mean_degree_or_m,game,dynamics,info,alpha,beta,ratio,rho0,"
    "realizations,mean_d1,std_d1,mean_df,std_df,n_ss,n_fs,n_sh,n_fh,n_unclassified,"
    "n_fixed_point,n_two_cycle,n_step_budget";

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (const char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  fields.push_back(cur);
  return fields;
}

[[noreturn]] void row_error(std::size_t row, const std::string& what) {
  throw ParseError("results row " + std::to_string(row) + ": " + what);
}

double parse_double(const std::string& s, std::size_t row, const char* field) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) row_error(row, std::string(field) + ": trailing characters in '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    row_error(row, std::string(field) + ": expected a number, got '" + s + "'");
  }
}

long long parse_int(const std::string& s, std::size_t row, const char* field) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(s, &used);
    if (used != s.size()) row_error(row, std::string(field) + ": trailing characters in '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    row_error(row, std::string(field) + ": expected an integer, got '" + s + "'");
  }
}

std::uint64_t parse_u64(const std::string& s, std::size_t row, const char* field) {
  try {
    std::size_t used = 0;
    const std::uint64_t v = std::stoull(s, &used);
    if (used != s.size()) row_error(row, std::string(field) + ": trailing characters in '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    row_error(row, std::string(field) + ": expected an integer, got '" + s + "'");
  }
}

Termination parse_termination(const std::string& s, std::size_t row) {
  if (s == "fixed_point") return Termination::FixedPoint;
  if (s == "two_cycle") return Termination::TwoCycle;
  if (s == "step_budget") return Termination::StepBudgetExhausted;
  row_error(row, "unknown termination '" + s + "'");
}

std::optional<EquilibriumClass> parse_class(const std::string& s, std::size_t row) {
  if (s == "none") return std::nullopt;
  if (s == "SS") return EquilibriumClass::SatisfactorySpecialized;
  if (s == "FS") return EquilibriumClass::FrustratedSpecialized;
  if (s == "SH") return EquilibriumClass::SatisfactoryHybrid;
  if (s == "FH") return EquilibriumClass::FrustratedHybrid;
  row_error(row, "unknown class '" + s + "'");
}

void append_coordinate_fields(std::ostream& os, const Coordinate& c) {
  os << 1 << ',' << to_string(c.topology.kind) << ',' << c.topology.n << ','
     << format_g9(c.topology.degree_param()) << ',' << to_string(c.game) << ','
     << dynamics_name(c.rule) << ',' << info_name(c.rule) << ',' << format_g9(c.alpha) << ','
     << format_g9(c.beta) << ',' << format_g9(c.ratio()) << ',' << format_g9(c.rho0);
}

// Writes text to path via a temporary sibling plus rename.
void write_atomically(const std::string& text, const std::string& path) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path() && !target.parent_path().empty() &&
      !fs::exists(target.parent_path())) {
    throw ConfigError("output directory does not exist: " + target.parent_path().string());
  }
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write file: " + tmp.string());
    out << text;
    if (!out) {
      out.close();
      fs::remove(tmp);
      throw ConfigError("write failed: " + tmp.string());
    }
  }
  fs::rename(tmp, target);
}

}  // namespace

std::string to_string(TopologyKind k) { return k == TopologyKind::ER ? "er" : "ba"; }

std::string to_string(GameKind g) { return g == GameKind::Coordination ? "cg" : "ag"; }

std::string to_string(Termination t) {
  switch (t) {
    case Termination::FixedPoint: return "fixed_point";
    case Termination::TwoCycle: return "two_cycle";
    case Termination::StepBudgetExhausted: return "step_budget";
  }
  return "?";
}

std::string to_string(EquilibriumClass c) {
  switch (c) {
    case EquilibriumClass::SatisfactorySpecialized: return "SS";
    case EquilibriumClass::FrustratedSpecialized: return "FS";
    case EquilibriumClass::SatisfactoryHybrid: return "SH";
    case EquilibriumClass::FrustratedHybrid: return "FH";
    case EquilibriumClass::NotAnEquilibrium: return "none";
  }
  return "?";
}

std::string dynamics_name(DynamicsRule r) {
  return r == DynamicsRule::ProportionalImitation ? "pi" : "br";
}

std::string info_name(DynamicsRule r) {
  return r == DynamicsRule::BestResponseIncomplete ? "incomplete" : "complete";
}

std::string format_g9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

std::string results_to_csv(const std::vector<SweepRecord>& records) {
  std::ostringstream os;
  os << kResultsHeader << '\n';
  for (const auto& rec : records) {
    for (const auto& run : rec.runs) {
      append_coordinate_fields(os, rec.coord);
      os << ',' << run.realization << ',' << run.seed << ',' << run.steps << ','
         << to_string(run.termination) << ',' << format_g9(run.d1) << ',' << format_g9(run.df)
         << ',' << (run.cls ? to_string(*run.cls) : std::string("none")) << '\n';
    }
  }
  return os.str();
}

std::vector<SweepRecord> results_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kResultsHeader) {
    throw ParseError("results row 1: header does not match the version-1 schema");
  }
  std::vector<ResultRow> rows;
  std::size_t rowno = 1;
  while (std::getline(in, line)) {
    ++rowno;
    if (line.empty()) continue;
    const auto f = split_fields(line);
    if (f.size() != 18) {
      row_error(rowno, "expected 18 fields, got " + std::to_string(f.size()));
    }
    if (parse_int(f[0], rowno, "schema_version") != 1) {
      row_error(rowno, "unsupported schema_version");
    }
    ResultRow row;
    const int n = static_cast<int>(parse_int(f[2], rowno, "n"));
    const double param = parse_double(f[3], rowno, "mean_degree_or_m");
    if (f[1] == "er") {
      row.coord.topology = TopologySpec::er(n, param);
    } else if (f[1] == "ba") {
      row.coord.topology = TopologySpec::ba(n, static_cast<int>(param));
    } else {
      row_error(rowno, "unknown topology '" + f[1] + "'");
    }
    if (f[4] == "cg") {
      row.coord.game = GameKind::Coordination;
    } else if (f[4] == "ag") {
      row.coord.game = GameKind::Anticoordination;
    } else {
      row_error(rowno, "unknown game '" + f[4] + "'");
    }
    if (f[5] == "pi") {
      row.coord.rule = DynamicsRule::ProportionalImitation;
      if (f[6] != "complete") row_error(rowno, "imitation rows must be complete-information");
    } else if (f[5] == "br") {
      if (f[6] == "complete") {
        row.coord.rule = DynamicsRule::BestResponseComplete;
      } else if (f[6] == "incomplete") {
        row.coord.rule = DynamicsRule::BestResponseIncomplete;
      } else {
        row_error(rowno, "unknown info '" + f[6] + "'");
      }
    } else {
      row_error(rowno, "unknown dynamics '" + f[5] + "'");
    }
    row.coord.alpha = parse_double(f[7], rowno, "alpha");
    row.coord.beta = parse_double(f[8], rowno, "beta");
    parse_double(f[9], rowno, "ratio");  // derived column; validated as numeric only
    row.coord.rho0 = parse_double(f[10], rowno, "rho0");
    row.run.realization = static_cast<int>(parse_int(f[11], rowno, "realization"));
    row.run.seed = parse_u64(f[12], rowno, "seed");
    row.run.steps = static_cast<int>(parse_int(f[13], rowno, "steps"));
    row.run.termination = parse_termination(f[14], rowno);
    row.run.d1 = parse_double(f[15], rowno, "d1");
    row.run.df = parse_double(f[16], rowno, "df");
    row.run.cls = parse_class(f[17], rowno);
    rows.push_back(std::move(row));
  }
  return aggregate(rows);
}

void write_results(const std::vector<SweepRecord>& records, const std::string& path) {
  write_atomically(results_to_csv(records), path);
}

std::vector<SweepRecord> read_results(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open results file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return results_from_csv(buf.str());
}

std::string aggregate_to_csv(const std::vector<SweepRecord>& records) {
  std::ostringstream os;
  os << kAggregateHeader << '\n';
  for (const auto& rec : records) {
    const auto& a = rec.agg;
    append_coordinate_fields(os, rec.coord);
    os << ',' << a.realizations << ',' << format_g9(a.mean_d1) << ',' << format_g9(a.std_d1)
       << ',' << format_g9(a.mean_df) << ',' << format_g9(a.std_df);
    for (const int c : a.class_counts) os << ',' << c;
    os << ',' << a.unclassified;
    for (const int t : a.termination_counts) os << ',' << t;
    os << '\n';
  }
  return os.str();
}

void write_aggregate_csv(const std::vector<SweepRecord>& records, const std::string& path) {
  write_atomically(aggregate_to_csv(records), path);
}

std::string aggregate_to_json(const std::vector<SweepRecord>& records) {
  nlohmann::json doc;
  doc["schema_version"] = 1;
  nlohmann::json surfaces = nlohmann::json::array();
  for (const auto& rec : records) {
    const auto& c = rec.coord;
    const auto& a = rec.agg;
    nlohmann::json row;
    row["topology"] = to_string(c.topology.kind);
    row["n"] = c.topology.n;
    row["mean_degree_or_m"] = c.topology.degree_param();
    row["game"] = to_string(c.game);
    row["dynamics"] = dynamics_name(c.rule);
    row["info"] = info_name(c.rule);
    row["alpha"] = c.alpha;
    row["beta"] = c.beta;
    row["ratio"] = c.ratio();
    row["rho0"] = c.rho0;
    row["realizations"] = a.realizations;
    row["mean_d1"] = a.mean_d1;
    row["std_d1"] = a.std_d1;
    row["mean_df"] = a.mean_df;
    row["std_df"] = a.std_df;
    row["classes"] = {{"SS", a.class_counts[0]},
                      {"FS", a.class_counts[1]},
                      {"SH", a.class_counts[2]},
                      {"FH", a.class_counts[3]},
                      {"unclassified", a.unclassified}};
    row["terminations"] = {{"fixed_point", a.termination_counts[0]},
                           {"two_cycle", a.termination_counts[1]},
                           {"step_budget", a.termination_counts[2]}};
    surfaces.push_back(row);
  }
  doc["surfaces"] = surfaces;
  return doc.dump(2) + "\n";
}

void write_aggregate_json(const std::vector<SweepRecord>& records, const std::string& path) {
  write_atomically(aggregate_to_json(records), path);
}

}  // namespace prefnet
