#include "prefnet/equilibrium.hpp"

#include <algorithm>
#include <string>

namespace prefnet {

Observables observables(const PopulationState& s) {
  const int n = s.n();
  if (n == 0) return {};
  int ones = 0, frustrated = 0;
  for (int i = 0; i < n; ++i) {
    ones += s.actions[static_cast<std::size_t>(i)];
    frustrated += s.actions[static_cast<std::size_t>(i)] != s.preferences[static_cast<std::size_t>(i)];
  }
  return {static_cast<double>(ones) / n, static_cast<double>(frustrated) / n};
}

EquilibriumClass classify(const PopulationState& s, const PayoffParams& p, GameKind g,
                          bool require_nash) {
  const int n = s.n();
  if (require_nash) {
    for (int i = 0; i < n; ++i) {
      if (s.actions[static_cast<std::size_t>(i)] !=
          best_response_complete(s.preferences[static_cast<std::size_t>(i)], s.stats(i), p, g)) {
        return EquilibriumClass::NotAnEquilibrium;
      }
    }
  }
  bool specialized = true;
  bool satisfied = true;
  for (int i = 0; i < n; ++i) {
    specialized &= s.actions[static_cast<std::size_t>(i)] == s.actions[0];
    satisfied &= s.actions[static_cast<std::size_t>(i)] == s.preferences[static_cast<std::size_t>(i)];
  }
  if (specialized) {
    return satisfied ? EquilibriumClass::SatisfactorySpecialized
                     : EquilibriumClass::FrustratedSpecialized;
  }
  return satisfied ? EquilibriumClass::SatisfactoryHybrid : EquilibriumClass::FrustratedHybrid;
}

NashCheck verify_nash_bruteforce(const PopulationState& s, const PayoffParams& p, GameKind g) {
  NashCheck check;
  const int n = s.n();
  for (int i = 0; i < n; ++i) {
    const int x = s.actions[static_cast<std::size_t>(i)];
    const int theta = s.preferences[static_cast<std::size_t>(i)];
    if (compare_action_payoffs(theta, s.stats(i), p, g, x, 1 - x) < 0) {
      check.violators.push_back(i);
    }
  }
  check.is_nash = check.violators.empty();
  return check;
}

std::vector<EnumeratedEquilibrium> enumerate_equilibria(
    const Graph& g, const std::vector<std::uint8_t>& preferences, const PayoffParams& p,
    GameKind kind) {
  const int n = g.n();
  if (n > 20) {
    throw ConfigError("equilibrium enumeration over 2^n profiles refused for n = " +
                      std::to_string(n) + " (limit 20)");
  }
  if (static_cast<int>(preferences.size()) != n) {
    throw ConfigError("preference vector length does not match graph size");
  }
  PopulationState s;
  s.graph = &g;
  s.preferences = preferences;
  s.actions.assign(static_cast<std::size_t>(n), 0);

  std::vector<EnumeratedEquilibrium> found;
  const std::uint32_t profiles = n >= 1 ? (1u << n) : 1u;
  for (std::uint32_t mask = 0; mask < profiles; ++mask) {
    for (int i = 0; i < n; ++i) {
      s.actions[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>((mask >> i) & 1u);
    }
    if (verify_nash_bruteforce(s, p, kind).is_nash) {
      found.push_back({s.actions, classify(s, p, kind)});
    }
  }
  return found;
}

}  // namespace prefnet
