#include "prefnet/selfcheck.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "prefnet/equilibrium.hpp"
#include "prefnet/experiments.hpp"
#include "prefnet/results.hpp"

namespace prefnet {

namespace {

// The published reward grid: alpha = 0.2..0.9, eight beta values evenly
// placed inside (alpha/2, alpha). Spelled out here rather than reusing the
// sweep defaults so the check does not lean on the code it validates.
std::vector<PayoffParams> reward_grid() {
  std::vector<PayoffParams> grid;
  for (int i = 0; i < 8; ++i) {
    const double alpha = (2.0 + i) / 10.0;
    for (int j = 0; j < 8; ++j) {
      grid.emplace_back(alpha, alpha * (10 + j) / 18.0);
    }
  }
  return grid;
}

long double oracle_payoff(int theta, int x, int k, int chi, const PayoffParams& p, GameKind g) {
  const long double lam = x == theta ? static_cast<long double>(p.alpha)
                                     : static_cast<long double>(p.beta);
  const int matches = x == 1 ? chi : k - chi;
  const int relevant = g == GameKind::Coordination ? matches : k - matches;
  return lam * (1.0L + relevant);
}

}  // namespace

int oracle_best_response(int theta, int k, int chi, const PayoffParams& p, GameKind g) {
  const long double u1 = oracle_payoff(theta, 1, k, chi, p, g);
  const long double u0 = oracle_payoff(theta, 0, k, chi, p, g);
  const long double scale = std::max(std::abs(u1), std::abs(u0));
  if (std::abs(u1 - u0) <= static_cast<long double>(kPayoffTieTolerance) * scale) {
    return theta;  // tie: the preferred action wins
  }
  return u1 > u0 ? 1 : 0;
}

CheckResult check_threshold_argmax_equivalence(int max_k) {
  const auto grid = reward_grid();
  long checked = 0;
  for (const auto& p : grid) {
    for (const GameKind g : {GameKind::Coordination, GameKind::Anticoordination}) {
      for (int theta = 0; theta <= 1; ++theta) {
        for (int k = 0; k <= max_k; ++k) {
          for (int chi = 0; chi <= k; ++chi) {
            ++checked;
            const int got = best_response_complete(theta, {k, chi}, p, g);
            const int want = oracle_best_response(theta, k, chi, p, g);
            if (got != want) {
              std::ostringstream os;
              os << "mismatch at theta=" << theta << " k=" << k << " chi=" << chi
                 << " alpha=" << p.alpha << " beta=" << p.beta
                 << " game=" << (g == GameKind::Coordination ? "cg" : "ag") << ": rule gives "
                 << got << ", payoff argmax gives " << want;
              return {"threshold_argmax_equivalence", false, os.str()};
            }
          }
        }
      }
    }
  }
  return {"threshold_argmax_equivalence", true,
          std::to_string(checked) + " cases, zero mismatches"};
}

CheckResult check_threshold_identity(int max_k) {
  const auto grid = reward_grid();
  double worst = 0.0;
  for (const auto& p : grid) {
    for (int k = 0; k <= max_k; ++k) {
      const double gap = std::abs(lower_threshold(k, p) + upper_threshold(k, p) - k);
      worst = std::max(worst, gap);
    }
  }
  std::ostringstream os;
  os << "largest |lower+upper-k| = " << worst;
  return {"threshold_identity", worst <= 1e-12, os.str()};
}

CheckResult check_nash_fixed_points(int fixed_points_required, std::uint64_t seed) {
  int found = 0;
  int attempts = 0;
  const int max_attempts = fixed_points_required * 20;
  const auto grid = reward_grid();
  Rng pick(seed);
  while (found < fixed_points_required && attempts < max_attempts) {
    ++attempts;
    const std::uint64_t inst = derive_seed(seed, static_cast<std::uint64_t>(attempts));
    const int n = 4 + static_cast<int>(pick.uniform_int(9));  // 4..12
    const bool use_ba = pick.bernoulli(0.5);
    const GameKind game =
        pick.bernoulli(0.5) ? GameKind::Coordination : GameKind::Anticoordination;
    const double rho = 0.1 + 0.8 * pick.uniform01();
    const double mean_degree = 1.0 + pick.uniform01() * std::min(2.5, n - 2.0);
    const Graph g = use_ba ? generate_ba(n, 1 + static_cast<int>(pick.uniform_int(2)), inst)
                           : generate_er(n, mean_degree, inst);
    const PayoffParams params = grid[pick.uniform_int(grid.size())];

    DynamicsSpec spec;
    spec.rule = DynamicsRule::BestResponseComplete;
    spec.max_steps = 200;
    const RunResult rr = run(g, spec, params, game, rho, InitPolicy::UniformRandomAction,
                             derive_seed(inst, 7));
    if (rr.termination != Termination::FixedPoint) continue;
    ++found;

    const NashCheck nash = verify_nash_bruteforce(rr.final_state, params, game);
    if (!nash.is_nash) {
      std::ostringstream os;
      os << "fixed point violates Nash at instance " << attempts << " (n=" << n
         << "): agent " << nash.violators.front() << " gains by deviating";
      return {"nash_fixed_points", false, os.str()};
    }
    const auto all = enumerate_equilibria(g, rr.final_state.preferences, params, game);
    const bool listed = std::any_of(all.begin(), all.end(), [&](const EnumeratedEquilibrium& e) {
      return e.actions == rr.final_state.actions;
    });
    if (!listed) {
      return {"nash_fixed_points", false,
              "fixed point missing from exhaustive enumeration at instance " +
                  std::to_string(attempts)};
    }
  }
  if (found < fixed_points_required) {
    return {"nash_fixed_points", false,
            "only " + std::to_string(found) + " fixed points in " + std::to_string(attempts) +
                " instances"};
  }
  return {"nash_fixed_points", true,
          std::to_string(found) + " fixed points verified against brute force and enumeration"};
}

CheckResult check_imitation_bounds(std::uint64_t seed) {
  const auto grid = reward_grid();
  Rng pick(seed);
  for (int trial = 0; trial < 50; ++trial) {
    const std::uint64_t inst = derive_seed(seed, 1000 + static_cast<std::uint64_t>(trial));
    const Graph g = generate_er(30, 4.0, inst);
    const PayoffParams params = grid[pick.uniform_int(grid.size())];
    const GameKind game =
        pick.bernoulli(0.5) ? GameKind::Coordination : GameKind::Anticoordination;
    const double phi = imitation_phi(g, params);
    PopulationState s = init_population(g, 0.5, InitPolicy::UniformRandomAction,
                                        derive_seed(inst, 3));
    // Every attainable pairwise probability must stay in [0, 1].
    std::vector<double> payoffs(static_cast<std::size_t>(g.n()));
    for (int i = 0; i < g.n(); ++i) {
      payoffs[static_cast<std::size_t>(i)] =
          payoff(s.preferences[static_cast<std::size_t>(i)],
                 s.actions[static_cast<std::size_t>(i)], s.stats(i), params, game);
    }
    for (int i = 0; i < g.n(); ++i) {
      for (int j : g.neighbors(i)) {
        const double prob = adoption_probability(payoffs[static_cast<std::size_t>(i)],
                                                 payoffs[static_cast<std::size_t>(j)], phi);
        if (!(prob >= 0.0 && prob <= 1.0)) {
          std::ostringstream os;
          os << "adoption probability " << prob << " outside [0,1] at trial " << trial;
          return {"imitation_bounds", false, os.str()};
        }
      }
    }
    // Homogeneous action profile: no step may change anything.
    std::fill(s.actions.begin(), s.actions.end(), std::uint8_t{1});
    Rng rng(derive_seed(inst, 4));
    for (int step = 0; step < 100; ++step) {
      auto [next, changed] = step_proportional_imitation(s, params, game, phi, 1.0, rng);
      if (changed != 0) {
        return {"imitation_bounds", false,
                "homogeneous profile changed at trial " + std::to_string(trial)};
      }
      s = std::move(next);
    }
  }
  return {"imitation_bounds", true, "probabilities bounded; homogeneous profiles absorbing"};
}

CheckResult check_incomplete_one_step(std::uint64_t seed) {
  const auto grid = reward_grid();
  Rng pick(seed);
  for (int trial = 0; trial < 50; ++trial) {
    const std::uint64_t inst = derive_seed(seed, 2000 + static_cast<std::uint64_t>(trial));
    const Graph g = pick.bernoulli(0.5) ? generate_er(50, 6.0, inst) : generate_ba(50, 3, inst);
    const PayoffParams params = grid[pick.uniform_int(grid.size())];
    const GameKind game =
        pick.bernoulli(0.5) ? GameKind::Coordination : GameKind::Anticoordination;
    const double rho = pick.uniform01();
    DynamicsSpec spec;
    spec.rule = DynamicsRule::BestResponseIncomplete;
    const RunResult rr = run(g, spec, params, game, rho, InitPolicy::UniformRandomAction,
                             derive_seed(inst, 5), true);
    if (rr.termination != Termination::FixedPoint || rr.steps_taken > 2) {
      return {"incomplete_one_step", false,
              "run did not settle by step 2 at trial " + std::to_string(trial)};
    }
    if (rr.steps_taken == 2 && rr.trajectory->at(2).changed != 0) {
      return {"incomplete_one_step", false,
              "second step still changed actions at trial " + std::to_string(trial)};
    }
  }
  return {"incomplete_one_step", true, "all incomplete-information runs settled by step 2"};
}

CheckResult check_sweep_determinism(std::uint64_t seed) {
  SweepConfig cfg = default_paper_grid();
  cfg.base_seed = seed;
  cfg.topologies = {TopologySpec::er(30, 4.0)};
  cfg.games = {GameKind::Coordination};
  cfg.alpha_grid = {0.6};
  cfg.betas_per_alpha = {{0.4, 0.55}};
  cfg.rho0_grid = {0.3, 0.5};
  cfg.realizations = 5;
  const std::string once = results_to_csv(run_sweep(cfg, 2));
  const std::string twice = results_to_csv(run_sweep(cfg, 1));
  if (once != twice) {
    return {"sweep_determinism", false, "two identical sweeps serialized differently"};
  }
  return {"sweep_determinism", true, "identical CSV across repeated sweeps and worker counts"};
}

std::vector<CheckResult> run_all_checks(std::uint64_t seed) {
  return {
      check_threshold_argmax_equivalence(),
      check_threshold_identity(),
      check_nash_fixed_points(100, seed),
      check_imitation_bounds(seed),
      check_incomplete_one_step(seed),
      check_sweep_determinism(seed),
  };
}

}  // namespace prefnet
