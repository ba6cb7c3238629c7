#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "prefnet/dynamics.hpp"
#include "prefnet/equilibrium.hpp"
#include "prefnet/graph.hpp"

namespace prefnet {

// One point of the experimental grid. The best-response/imitation split and
// the information regime are both carried by `rule`.
struct Coordinate {
  TopologySpec topology;
  GameKind game = GameKind::Coordination;
  DynamicsRule rule = DynamicsRule::BestResponseComplete;
  double update_fraction = 1.0;
  double alpha = 0.0;
  double beta = 0.0;
  double rho0 = 0.0;  // fraction of 0-preference agents; rho = 1 - rho0

  double ratio() const { return alpha / beta; }
  double rho() const { return 1.0 - rho0; }
};

struct RealizationRecord {
  int realization = 0;
  std::uint64_t seed = 0;  // child seed; graph/run streams derive from it
  int steps = 0;
  Termination termination = Termination::StepBudgetExhausted;
  double d1 = 0.0;
  double df = 0.0;
  // Set only for fixed-point terminations; cycles and exhausted budgets are
  // tallied, not classified.
  std::optional<EquilibriumClass> cls;
};

struct AggregateStats {
  int realizations = 0;
  double mean_d1 = 0.0, std_d1 = 0.0;
  double mean_df = 0.0, std_df = 0.0;
  // SS, FS, SH, FH among classified runs; unclassified covers the rest so
  // the counts always sum to `realizations`.
  std::array<int, 4> class_counts{};
  int unclassified = 0;
  std::array<int, 3> termination_counts{};  // FixedPoint, TwoCycle, StepBudget
};

// Everything recorded for one grid coordinate.
struct SweepRecord {
  Coordinate coord;
  std::vector<RealizationRecord> runs;
  AggregateStats agg;
};

// The full experimental grid. `betas_per_alpha[i]` pairs with
// `alpha_grid[i]`; every pair must satisfy 0 < beta < alpha < 2*beta.
struct SweepConfig {
  int schema_version = 1;
  std::uint64_t base_seed = 0;
  std::vector<TopologySpec> topologies;
  std::vector<GameKind> games;
  DynamicsRule rule = DynamicsRule::BestResponseComplete;
  double update_fraction = 1.0;
  int max_steps = 100;
  int convergence_window = 20;
  InitPolicy init = InitPolicy::UniformRandomAction;
  std::vector<double> alpha_grid;
  std::vector<std::vector<double>> betas_per_alpha;
  std::vector<double> rho0_grid;
  int realizations = 50;

  void validate() const;
  DynamicsSpec dynamics_spec() const;
  // Cartesian product in canonical order: topology, game, alpha, beta, rho0.
  std::vector<Coordinate> coordinates() const;
};

// The protocol behind the published surfaces: n = 100 networks (ER mean
// degrees 5/10/20/40 and BA with 3 attachments), both games, an 8x8 reward
// grid with alpha in [0.2, 0.9] and beta evenly placed inside
// (alpha/2, alpha), an 11-point rho0 grid, 100-step budget, and 50
// realizations for best response or 10 for imitation.
SweepConfig default_paper_grid(DynamicsRule rule = DynamicsRule::BestResponseComplete);

// Evenly spaced interior beta values for one alpha: beta_j =
// alpha*(10+j)/18 for j = 0..count-1 when count = 8.
std::vector<double> default_beta_grid(double alpha, int count);

// Child seed for one realization; a pure function of the base seed, the
// coordinate's values and the realization index, so splitting or reordering
// a sweep cannot change any record.
std::uint64_t realization_seed(std::uint64_t base_seed, const Coordinate& c, int realization);

struct RealizationSeeds {
  std::uint64_t graph_seed = 0;
  std::uint64_t run_seed = 0;
};
RealizationSeeds split_realization_seed(std::uint64_t child_seed);

// Build graph + population, run the dynamics and analyze the final state.
RealizationRecord run_realization(const Coordinate& c, const DynamicsSpec& spec, InitPolicy init,
                                  int realization, std::uint64_t child_seed);

// Full sweep; coordinates execute on up to `threads` workers (0 = one per
// hardware thread) and the result is identical for any worker count.
std::vector<SweepRecord> run_sweep(const SweepConfig& cfg, int threads = 0);

// Recomputes per-coordinate aggregates from flat realization rows, grouping
// by coordinate in first-appearance order.
struct ResultRow {
  Coordinate coord;
  RealizationRecord run;
};
std::vector<ResultRow> flatten(const std::vector<SweepRecord>& records);
std::vector<SweepRecord> aggregate(const std::vector<ResultRow>& rows);

AggregateStats aggregate_stats(const std::vector<RealizationRecord>& runs);

}  // namespace prefnet
