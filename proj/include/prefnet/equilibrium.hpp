#pragma once

#include <cstdint>
#include <vector>

#include "prefnet/dynamics.hpp"

namespace prefnet {

// The four static equilibrium classes: (Satisfactory|Frustrated) x
// (Specialized|Hybrid). NotAnEquilibrium is only produced when a Nash
// check was requested and failed.
enum class EquilibriumClass : std::uint8_t {
  SatisfactorySpecialized,
  FrustratedSpecialized,
  SatisfactoryHybrid,
  FrustratedHybrid,
  NotAnEquilibrium,
};

struct Observables {
  double d1 = 0.0;  // fraction of agents playing action 1
  double df = 0.0;  // fraction of frustrated agents (x != theta)
};

Observables observables(const PopulationState& s);

// Specialized iff all actions equal; satisfactory iff nobody is frustrated.
// With require_nash the profile must also be a best-response fixed point.
EquilibriumClass classify(const PopulationState& s, const PayoffParams& p, GameKind g,
                          bool require_nash = false);

struct NashCheck {
  bool is_nash = false;
  std::vector<int> violators;  // agents that strictly gain by deviating
};

// Unilateral-deviation check of every agent against its current
// neighborhood.
NashCheck verify_nash_bruteforce(const PopulationState& s, const PayoffParams& p, GameKind g);

struct EnumeratedEquilibrium {
  std::vector<std::uint8_t> actions;
  EquilibriumClass cls;
};

// All 2^n action profiles that pass the Nash check, in ascending bitmask
// order (agent i is bit i). Refused for n > 20.
std::vector<EnumeratedEquilibrium> enumerate_equilibria(const Graph& g,
                                                        const std::vector<std::uint8_t>& preferences,
                                                        const PayoffParams& p, GameKind kind);

}  // namespace prefnet
