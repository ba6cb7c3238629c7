#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "prefnet/game.hpp"

namespace prefnet {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

// Brute-force payoff argmax evaluated in extended precision, with ties
// resolved to the preferred action. Kept independent of the threshold code
// in game.cpp; it exists to cross-check it.
int oracle_best_response(int theta, int k, int chi, const PayoffParams& p, GameKind g);

// best_response_complete == payoff argmax for all theta, both games,
// k <= max_k, 0 <= chi <= k and the full 8x8 reward grid. Exhaustive.
CheckResult check_threshold_argmax_equivalence(int max_k = 30);

// lower_threshold + upper_threshold == k to 1e-12 across the grid.
CheckResult check_threshold_identity(int max_k = 30);

// Every fixed point reached by run() on random small instances passes the
// unilateral-deviation check and appears in the exhaustive equilibrium
// enumeration.
CheckResult check_nash_fixed_points(int fixed_points_required = 100, std::uint64_t seed = 1);

// Imitation probabilities stay in [0, 1] under the worst-case phi, and
// homogeneous action profiles never change.
CheckResult check_imitation_bounds(std::uint64_t seed = 1);

// Incomplete-information best response reaches its fixed point within one
// step (the second step changes nothing).
CheckResult check_incomplete_one_step(std::uint64_t seed = 1);

// A small sweep run twice serializes to byte-identical CSV.
CheckResult check_sweep_determinism(std::uint64_t seed = 1);

std::vector<CheckResult> run_all_checks(std::uint64_t seed = 1);

}  // namespace prefnet
