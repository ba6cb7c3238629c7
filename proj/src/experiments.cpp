#include "prefnet/experiments.hpp"

#include <atomic>
#include <bit>
#include <cmath>
#include <exception>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <unordered_map>

namespace prefnet {

namespace {

constexpr std::uint64_t kGraphStream = 0x67726170ULL;
constexpr std::uint64_t kRunStream = 0x72756e00ULL;

std::uint64_t bits(double v) { return std::bit_cast<std::uint64_t>(v); }

std::string coordinate_label(const Coordinate& c) {
  std::ostringstream os;
  os << (c.topology.kind == TopologyKind::ER ? "er" : "ba") << " n=" << c.topology.n
     << " param=" << c.topology.degree_param() << " game="
     << (c.game == GameKind::Coordination ? "cg" : "ag") << " alpha=" << c.alpha
     << " beta=" << c.beta << " rho0=" << c.rho0;
  return os.str();
}

}  // namespace

void SweepConfig::validate() const {
  if (schema_version != 1) throw ConfigError("unsupported schema_version");
  if (topologies.empty()) throw ConfigError("topologies: at least one entry required");
  if (games.empty()) throw ConfigError("games: at least one entry required");
  if (alpha_grid.empty()) throw ConfigError("alpha_grid: at least one value required");
  if (betas_per_alpha.size() != alpha_grid.size()) {
    throw ConfigError("betas_per_alpha must pair with alpha_grid, got " +
                      std::to_string(betas_per_alpha.size()) + " rows for " +
                      std::to_string(alpha_grid.size()) + " alphas");
  }
  for (std::size_t i = 0; i < alpha_grid.size(); ++i) {
    if (betas_per_alpha[i].empty()) {
      throw ConfigError("betas_per_alpha[" + std::to_string(i) + "]: at least one value required");
    }
    for (std::size_t j = 0; j < betas_per_alpha[i].size(); ++j) {
      try {
        PayoffParams check(alpha_grid[i], betas_per_alpha[i][j]);
      } catch (const ConfigError& e) {
        throw ConfigError("alpha_grid[" + std::to_string(i) + "] x betas_per_alpha[" +
                          std::to_string(i) + "][" + std::to_string(j) + "]: " + e.what());
      }
    }
  }
  if (rho0_grid.empty()) throw ConfigError("rho0_grid: at least one value required");
  for (std::size_t i = 0; i < rho0_grid.size(); ++i) {
    if (!(rho0_grid[i] >= 0.0 && rho0_grid[i] <= 1.0)) {
      throw ConfigError("rho0_grid[" + std::to_string(i) + "]: values must lie in [0, 1]");
    }
  }
  if (realizations < 1) throw ConfigError("realizations must be at least 1");
  dynamics_spec().validate();
  for (const auto& t : topologies) {
    // Re-run the named-constructor checks so hand-built configs are covered.
    if (t.kind == TopologyKind::ER) {
      TopologySpec::er(t.n, t.mean_degree);
    } else {
      TopologySpec::ba(t.n, t.m_attach);
    }
  }
}

DynamicsSpec SweepConfig::dynamics_spec() const {
  DynamicsSpec spec;
  spec.rule = rule;
  spec.update_fraction = update_fraction;
  spec.max_steps = max_steps;
  spec.convergence_window = convergence_window;
  return spec;
}

std::vector<Coordinate> SweepConfig::coordinates() const {
  std::vector<Coordinate> coords;
  for (const auto& topology : topologies) {
    for (const auto game : games) {
      for (std::size_t a = 0; a < alpha_grid.size(); ++a) {
        for (const double beta : betas_per_alpha[a]) {
          for (const double rho0 : rho0_grid) {
            Coordinate c;
            c.topology = topology;
            c.game = game;
            c.rule = rule;
            c.update_fraction = update_fraction;
            c.alpha = alpha_grid[a];
            c.beta = beta;
            c.rho0 = rho0;
            coords.push_back(c);
          }
        }
      }
    }
  }
  return coords;
}

std::vector<double> default_beta_grid(double alpha, int count) {
  std::vector<double> betas;
  betas.reserve(static_cast<std::size_t>(count));
  for (int j = 0; j < count; ++j) {
    betas.push_back(alpha * (count + 2 + j) / (2.0 * (count + 1)));
  }
  return betas;
}

SweepConfig default_paper_grid(DynamicsRule rule) {
  SweepConfig cfg;
  cfg.rule = rule;
  cfg.topologies = {TopologySpec::er(100, 5.0), TopologySpec::er(100, 10.0),
                    TopologySpec::er(100, 20.0), TopologySpec::er(100, 40.0),
                    TopologySpec::ba(100, 3)};
  cfg.games = {GameKind::Coordination, GameKind::Anticoordination};
  cfg.realizations = rule == DynamicsRule::ProportionalImitation ? 10 : 50;
  cfg.max_steps = 100;
  for (int i = 0; i < 8; ++i) {
    cfg.alpha_grid.push_back((2.0 + i) / 10.0);
    cfg.betas_per_alpha.push_back(default_beta_grid(cfg.alpha_grid.back(), 8));
  }
  for (int i = 0; i <= 10; ++i) {
    cfg.rho0_grid.push_back(i / 10.0);
  }
  return cfg;
}

std::uint64_t realization_seed(std::uint64_t base_seed, const Coordinate& c, int realization) {
  SeedChain chain(base_seed);
  chain.fold(c.topology.kind == TopologyKind::ER ? 1 : 2)
      .fold(static_cast<std::uint64_t>(c.topology.n))
      .fold(c.topology.kind == TopologyKind::ER ? bits(c.topology.mean_degree)
                                                : static_cast<std::uint64_t>(c.topology.m_attach))
      .fold(c.game == GameKind::Coordination ? 1 : 2)
      .fold(static_cast<std::uint64_t>(c.rule))
      .fold(bits(c.update_fraction))
      .fold(bits(c.alpha))
      .fold(bits(c.beta))
      .fold(bits(c.rho0))
      .fold(static_cast<std::uint64_t>(realization));
  return chain.value();
}

RealizationSeeds split_realization_seed(std::uint64_t child_seed) {
  return {derive_seed(child_seed, kGraphStream), derive_seed(child_seed, kRunStream)};
}

RealizationRecord run_realization(const Coordinate& c, const DynamicsSpec& spec, InitPolicy init,
                                  int realization, std::uint64_t child_seed) {
  const auto seeds = split_realization_seed(child_seed);
  const Graph graph = generate_graph(c.topology, seeds.graph_seed);
  const PayoffParams params(c.alpha, c.beta);
  const RunResult rr = run(graph, spec, params, c.game, c.rho(), init, seeds.run_seed);

  RealizationRecord rec;
  rec.realization = realization;
  rec.seed = child_seed;
  rec.steps = rr.steps_taken;
  rec.termination = rr.termination;
  const Observables obs = observables(rr.final_state);
  rec.d1 = obs.d1;
  rec.df = obs.df;
  if (rr.termination == Termination::FixedPoint) {
    rec.cls = classify(rr.final_state, params, c.game);
  }
  return rec;
}

AggregateStats aggregate_stats(const std::vector<RealizationRecord>& runs) {
  AggregateStats agg;
  agg.realizations = static_cast<int>(runs.size());
  if (runs.empty()) return agg;

  double sum_d1 = 0.0, sum_df = 0.0;
  for (const auto& r : runs) {
    sum_d1 += r.d1;
    sum_df += r.df;
    agg.termination_counts[static_cast<std::size_t>(r.termination)] += 1;
    if (r.cls.has_value()) {
      agg.class_counts[static_cast<std::size_t>(*r.cls)] += 1;
    } else {
      agg.unclassified += 1;
    }
  }
  const double n = static_cast<double>(runs.size());
  agg.mean_d1 = sum_d1 / n;
  agg.mean_df = sum_df / n;
  double ss_d1 = 0.0, ss_df = 0.0;
  for (const auto& r : runs) {
    ss_d1 += (r.d1 - agg.mean_d1) * (r.d1 - agg.mean_d1);
    ss_df += (r.df - agg.mean_df) * (r.df - agg.mean_df);
  }
  agg.std_d1 = std::sqrt(ss_d1 / n);
  agg.std_df = std::sqrt(ss_df / n);
  return agg;
}

std::vector<SweepRecord> run_sweep(const SweepConfig& cfg, int threads) {
  cfg.validate();
  const std::vector<Coordinate> coords = cfg.coordinates();
  const DynamicsSpec spec = cfg.dynamics_spec();
  std::vector<SweepRecord> records(coords.size());

  const int hw = static_cast<int>(std::thread::hardware_concurrency());
  int workers = threads > 0 ? threads : std::max(hw, 1);
  workers = std::min<int>(workers, static_cast<int>(coords.size()));
  workers = std::max(workers, 1);

  std::atomic<std::size_t> cursor{0};
  std::mutex error_mutex;
  std::string first_error;

  auto work = [&]() {
    for (;;) {
      const std::size_t at = cursor.fetch_add(1);
      if (at >= coords.size()) return;
      const Coordinate& c = coords[at];
      try {
        SweepRecord rec;
        rec.coord = c;
        rec.runs.reserve(static_cast<std::size_t>(cfg.realizations));
        for (int r = 0; r < cfg.realizations; ++r) {
          rec.runs.push_back(
              run_realization(c, spec, cfg.init, r, realization_seed(cfg.base_seed, c, r)));
        }
        rec.agg = aggregate_stats(rec.runs);
        records[at] = std::move(rec);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (first_error.empty()) {
          first_error = "sweep failed at coordinate [" + coordinate_label(c) + "]: " + e.what();
        }
        cursor.store(coords.size());  // stop other workers
        return;
      }
    }
  };

  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (!first_error.empty()) throw ConfigError(first_error);
  return records;
}

std::vector<ResultRow> flatten(const std::vector<SweepRecord>& records) {
  std::vector<ResultRow> rows;
  for (const auto& rec : records) {
    for (const auto& run : rec.runs) rows.push_back({rec.coord, run});
  }
  return rows;
}

std::vector<SweepRecord> aggregate(const std::vector<ResultRow>& rows) {
  std::vector<SweepRecord> grouped;
  std::unordered_map<std::string, std::size_t> index;
  for (const auto& row : rows) {
    std::ostringstream key;
    key << static_cast<int>(row.coord.topology.kind) << '|' << row.coord.topology.n << '|'
        << bits(row.coord.topology.degree_param()) << '|' << static_cast<int>(row.coord.game)
        << '|' << static_cast<int>(row.coord.rule) << '|' << bits(row.coord.update_fraction)
        << '|' << bits(row.coord.alpha) << '|' << bits(row.coord.beta) << '|'
        << bits(row.coord.rho0);
    const auto [it, inserted] = index.emplace(key.str(), grouped.size());
    if (inserted) {
      grouped.push_back({row.coord, {}, {}});
    }
    grouped[it->second].runs.push_back(row.run);
  }
  for (auto& rec : grouped) rec.agg = aggregate_stats(rec.runs);
  return grouped;
}

}  // namespace prefnet
