#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "prefnet/game.hpp"
#include "prefnet/graph.hpp"
#include "prefnet/rng.hpp"

namespace prefnet {

enum class DynamicsRule : std::uint8_t {
  BestResponseComplete,    // synchronous response to last round's actions
  BestResponseIncomplete,  // response to the expected neighborhood only
  ProportionalImitation,   // stochastic copy of a random neighbor
};

enum class InitPolicy : std::uint8_t {
  UniformRandomAction,  // each action 0/1 with probability 1/2
  AllPreferred,         // x_i = theta_i
};

enum class Termination : std::uint8_t {
  FixedPoint,
  TwoCycle,
  StepBudgetExhausted,
};

// Preference and action assignment joined to a graph. The graph outlives
// the state and is shared, not owned.
struct PopulationState {
  const Graph* graph = nullptr;
  std::vector<std::uint8_t> preferences;
  std::vector<std::uint8_t> actions;

  int n() const { return static_cast<int>(preferences.size()); }

  // Neighbors of i playing action 1.
  int chi(int i) const {
    int c = 0;
    for (int j : graph->neighbors(i)) c += actions[static_cast<std::size_t>(j)];
    return c;
  }

  NeighborhoodStats stats(int i) const { return {graph->degree(i), chi(i)}; }

  double preference_one_fraction() const;
};

struct DynamicsSpec {
  DynamicsRule rule = DynamicsRule::BestResponseComplete;
  double update_fraction = 1.0;  // imitation only
  int max_steps = 100;
  int convergence_window = 20;  // imitation only: quiet steps before stopping

  void validate() const;
};

struct StepStat {
  double d1 = 0.0;
  double df = 0.0;
  int changed = 0;
};

struct RunResult {
  PopulationState final_state;
  int steps_taken = 0;
  Termination termination = Termination::StepBudgetExhausted;
  // Entry t holds the state after t steps; entry 0 is the initial state.
  std::optional<std::vector<StepStat>> trajectory;
};

// Exactly llround(rho*n) agents get preference 1, placed by a seeded
// shuffle; actions follow the init policy.
PopulationState init_population(const Graph& g, double rho, InitPolicy init,
                                std::uint64_t rng_seed);

// One synchronous best-response round; every new action responds to the
// previous round's profile. Returns the updated state and how many agents
// changed action. With rule == BestResponseIncomplete the responses ignore
// observed actions (rho is taken from the state's preferences), so a single
// step lands on the fixed point.
std::pair<PopulationState, int> step_best_response(const PopulationState& s,
                                                   const PayoffParams& p, GameKind g,
                                                   DynamicsRule rule);

// Smallest phi making every imitation probability at most 1 on this graph:
// alpha*(1 + max degree) - beta.
double imitation_phi(const Graph& g, const PayoffParams& p);

// P{adopt} = (pi_neighbor - pi_own)/phi when the neighbor earns more, 0
// otherwise.
double adoption_probability(double pi_own, double pi_neighbor, double phi);

// One proportional-imitation round: a seeded subset of
// llround(update_fraction*n) agents each draws one uniform neighbor and
// adopts its current action with the probability above. Payoffs come from
// the pre-step profile; adoptions apply simultaneously. Degree-0 agents
// never update.
std::pair<PopulationState, int> step_proportional_imitation(const PopulationState& s,
                                                            const PayoffParams& p, GameKind g,
                                                            double phi, double update_fraction,
                                                            Rng& rng);

// Iterates the chosen rule from a fresh population until a fixed point, a
// synchronous two-cycle (best response only) or the step budget. The seed
// splits internally into one stream for the population draw and one for the
// imitation dynamics.
RunResult run(const Graph& g, const DynamicsSpec& spec, const PayoffParams& p, GameKind kind,
              double rho, InitPolicy init, std::uint64_t rng_seed,
              bool record_trajectory = false);

}  // namespace prefnet
