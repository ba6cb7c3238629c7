#pragma once

#include <string>
#include <vector>

#include "prefnet/experiments.hpp"

namespace prefnet {

// Names used across the CSV files and the CLI.
std::string to_string(TopologyKind k);
std::string to_string(GameKind g);
std::string to_string(Termination t);
std::string to_string(EquilibriumClass c);
std::string dynamics_name(DynamicsRule r);  // "br" or "pi"
std::string info_name(DynamicsRule r);      // "complete" or "incomplete"
std::string format_g9(double v);            // 9 significant digits

// Per-realization CSV. Header:
//   schema_version,topology,n,mean_degree_or_m,game,dynamics,info,alpha,
//   beta,ratio,rho0,realization,seed,steps,termination,d1,df,class
std::string results_to_csv(const std::vector<SweepRecord>& records);
std::vector<SweepRecord> results_from_csv(const std::string& text);

// Files are written to a temporary sibling and renamed into place, so a
// failed run never leaves a partial results file behind.
void write_results(const std::vector<SweepRecord>& records, const std::string& path);
std::vector<SweepRecord> read_results(const std::string& path);

// Per-coordinate aggregate surface (one row per grid coordinate).
std::string aggregate_to_csv(const std::vector<SweepRecord>& records);
void write_aggregate_csv(const std::vector<SweepRecord>& records, const std::string& path);

// The same surface as a hierarchical JSON document.
std::string aggregate_to_json(const std::vector<SweepRecord>& records);
void write_aggregate_json(const std::vector<SweepRecord>& records, const std::string& path);

}  // namespace prefnet
