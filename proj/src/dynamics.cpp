#include "prefnet/dynamics.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numeric>

namespace prefnet {

namespace {

constexpr std::uint64_t kPopulationStream = 0x706f7075ULL;  // population draw
constexpr std::uint64_t kDynamicsStream = 0x64796e61ULL;    // in-run randomness

int count_ones(const std::vector<std::uint8_t>& v) {
  return static_cast<int>(std::count(v.begin(), v.end(), std::uint8_t{1}));
}

StepStat state_stat(const PopulationState& s, int changed) {
  const int n = s.n();
  int ones = 0, frustrated = 0;
  for (int i = 0; i < n; ++i) {
    ones += s.actions[static_cast<std::size_t>(i)];
    frustrated += s.actions[static_cast<std::size_t>(i)] != s.preferences[static_cast<std::size_t>(i)];
  }
  return {n > 0 ? static_cast<double>(ones) / n : 0.0,
          n > 0 ? static_cast<double>(frustrated) / n : 0.0, changed};
}

// Writes every agent's best-response target into `out`; returns the number
// of agents whose action changes.
int best_response_targets(const PopulationState& s, const PayoffParams& p, GameKind g,
                          DynamicsRule rule, double rho_hat, std::vector<std::uint8_t>& out) {
  const int n = s.n();
  out.resize(static_cast<std::size_t>(n));
  int changed = 0;
  for (int i = 0; i < n; ++i) {
    const int theta = s.preferences[static_cast<std::size_t>(i)];
    int target;
    if (rule == DynamicsRule::BestResponseIncomplete) {
      target = best_response_incomplete(theta, s.graph->degree(i), rho_hat, p, g);
    } else {
      target = best_response_complete(theta, s.stats(i), p, g);
    }
    out[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(target);
    changed += target != s.actions[static_cast<std::size_t>(i)];
  }
  return changed;
}

void all_payoffs(const PopulationState& s, const PayoffParams& p, GameKind g,
                 std::vector<double>& out) {
  const int n = s.n();
  out.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] =
        payoff(s.preferences[static_cast<std::size_t>(i)], s.actions[static_cast<std::size_t>(i)],
               s.stats(i), p, g);
  }
}

// Imitation round over preallocated scratch buffers; returns changed count.
int imitation_targets(const PopulationState& s, const PayoffParams& p, GameKind g, double phi,
                      double update_fraction, Rng& rng, std::vector<double>& payoffs,
                      std::vector<int>& selected, std::vector<std::uint8_t>& out) {
  const int n = s.n();
  all_payoffs(s, p, g, payoffs);
  out = s.actions;

  const int m = static_cast<int>(std::llround(update_fraction * n));
  selected.resize(static_cast<std::size_t>(n));
  std::iota(selected.begin(), selected.end(), 0);
  if (m < n) {
    // Partial Fisher-Yates, then sorted so agents process in index order.
    for (int t = 0; t < m; ++t) {
      const auto pick = t + static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(n - t)));
      std::swap(selected[static_cast<std::size_t>(t)], selected[static_cast<std::size_t>(pick)]);
    }
    selected.resize(static_cast<std::size_t>(m));
    std::sort(selected.begin(), selected.end());
  }

  int changed = 0;
  for (int i : selected) {
    const auto& nb = s.graph->neighbors(i);
    if (nb.empty()) continue;  // nobody to imitate
    const int j = nb[static_cast<std::size_t>(rng.uniform_int(nb.size()))];
    const double prob = adoption_probability(payoffs[static_cast<std::size_t>(i)],
                                             payoffs[static_cast<std::size_t>(j)], phi);
    assert(prob >= 0.0 && prob <= 1.0);
    if (prob > 0.0 && rng.uniform01() < prob) {
      const std::uint8_t adopted = s.actions[static_cast<std::size_t>(j)];
      changed += adopted != s.actions[static_cast<std::size_t>(i)];
      out[static_cast<std::size_t>(i)] = adopted;
    }
  }
  return changed;
}

}  // namespace

double PopulationState::preference_one_fraction() const {
  return n() > 0 ? static_cast<double>(count_ones(preferences)) / n() : 0.0;
}

void DynamicsSpec::validate() const {
  if (!(update_fraction > 0.0 && update_fraction <= 1.0)) {
    throw ConfigError("update_fraction must lie in (0, 1]");
  }
  if (max_steps < 1) throw ConfigError("max_steps must be at least 1");
  if (convergence_window < 1) throw ConfigError("convergence_window must be at least 1");
}

PopulationState init_population(const Graph& g, double rho, InitPolicy init,
                                std::uint64_t rng_seed) {
  if (!(rho >= 0.0 && rho <= 1.0)) throw ConfigError("rho must lie in [0, 1]");
  const int n = g.n();
  Rng rng(rng_seed);

  PopulationState s;
  s.graph = &g;
  s.preferences.assign(static_cast<std::size_t>(n), 0);
  const int ones = static_cast<int>(std::llround(rho * n));
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(order);
  for (int t = 0; t < ones; ++t) {
    s.preferences[static_cast<std::size_t>(order[static_cast<std::size_t>(t)])] = 1;
  }

  if (init == InitPolicy::AllPreferred) {
    s.actions = s.preferences;
  } else {
    s.actions.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      s.actions[static_cast<std::size_t>(i)] = rng.uniform01() < 0.5 ? 1 : 0;
    }
  }
  return s;
}

std::pair<PopulationState, int> step_best_response(const PopulationState& s,
                                                   const PayoffParams& p, GameKind g,
                                                   DynamicsRule rule) {
  PopulationState next = s;
  const double rho_hat = s.preference_one_fraction();
  const int changed = best_response_targets(s, p, g, rule, rho_hat, next.actions);
  return {std::move(next), changed};
}

double imitation_phi(const Graph& g, const PayoffParams& p) {
  return p.alpha * (1.0 + g.max_degree()) - p.beta;
}

double adoption_probability(double pi_own, double pi_neighbor, double phi) {
  if (!(pi_neighbor > pi_own)) return 0.0;
  return (pi_neighbor - pi_own) / phi;
}

std::pair<PopulationState, int> step_proportional_imitation(const PopulationState& s,
                                                            const PayoffParams& p, GameKind g,
                                                            double phi, double update_fraction,
                                                            Rng& rng) {
  if (!(update_fraction > 0.0 && update_fraction <= 1.0)) {
    throw ConfigError("update_fraction must lie in (0, 1]");
  }
  if (phi < imitation_phi(*s.graph, p)) {
    throw ConfigError("phi below the worst-case payoff gap; probabilities could exceed 1");
  }
  PopulationState next = s;
  std::vector<double> payoffs;
  std::vector<int> selected;
  const int changed =
      imitation_targets(s, p, g, phi, update_fraction, rng, payoffs, selected, next.actions);
  return {std::move(next), changed};
}

RunResult run(const Graph& g, const DynamicsSpec& spec, const PayoffParams& p, GameKind kind,
              double rho, InitPolicy init, std::uint64_t rng_seed, bool record_trajectory) {
  spec.validate();
  PopulationState state =
      init_population(g, rho, init, derive_seed(rng_seed, kPopulationStream));
  Rng rng(derive_seed(rng_seed, kDynamicsStream));

  RunResult result;
  if (record_trajectory) {
    result.trajectory.emplace();
    result.trajectory->push_back(state_stat(state, 0));
  }

  const bool imitation = spec.rule == DynamicsRule::ProportionalImitation;
  const double rho_hat = state.preference_one_fraction();
  const double phi = imitation ? imitation_phi(g, p) : 0.0;

  std::vector<double> payoffs;
  std::vector<int> selected;
  std::vector<std::uint8_t> next;
  std::vector<std::uint8_t> two_back;  // actions two steps ago (best response)

  int quiet_steps = 0;
  result.termination = Termination::StepBudgetExhausted;
  for (int step = 1; step <= spec.max_steps; ++step) {
    int changed;
    if (imitation) {
      changed = imitation_targets(state, p, kind, phi, spec.update_fraction, rng, payoffs,
                                  selected, next);
    } else {
      changed = best_response_targets(state, p, kind, spec.rule, rho_hat, next);
    }
    result.steps_taken = step;

    const bool repeats_two_back = !imitation && step >= 2 && next == two_back;
    if (!imitation) two_back = state.actions;
    state.actions.swap(next);
    if (record_trajectory) result.trajectory->push_back(state_stat(state, changed));

    if (changed == 0) {
      if (imitation) {
        if (++quiet_steps >= spec.convergence_window) {
          result.termination = Termination::FixedPoint;
          break;
        }
      } else {
        result.termination = Termination::FixedPoint;
        break;
      }
    } else {
      quiet_steps = 0;
      if (repeats_two_back) {
        result.termination = Termination::TwoCycle;
        break;
      }
    }
  }
  result.final_state = std::move(state);
  return result;
}

}  // namespace prefnet
