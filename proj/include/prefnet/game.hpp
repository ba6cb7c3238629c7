#pragma once

#include <cstdint>

#include "prefnet/errors.hpp"

namespace prefnet {

// Actions and preferences are both binary and share the {0, 1} encoding.
// A preference is the action whose reward factor is alpha instead of beta.

enum class GameKind : std::uint8_t {
  Coordination,      // payoff grows with neighbors playing the SAME action
  Anticoordination,  // payoff grows with neighbors playing the OPPOSITE action
};

// Rewards for playing the liked (alpha) and disliked (beta) action.
// The model is only defined for 0 < beta < alpha < 2*beta.
struct PayoffParams {
  double alpha;
  double beta;

  PayoffParams(double alpha_, double beta_);

  double ratio() const { return alpha / beta; }
};

// Local view an agent has of its neighborhood in a given round.
struct NeighborhoodStats {
  int k = 0;    // degree
  int chi = 0;  // neighbors currently playing action 1
};

// Payoffs whose relative gap is below this are treated as equal. Reward
// values are decimal-precision model inputs; binary rounding of products
// like 2*0.6 vs 3*0.4 must not decide an intended exact tie, and ties
// resolve to the preferred action.
inline constexpr double kPayoffTieTolerance = 1e-12;

// Sign of ua - ub under the tie tolerance above: -1, 0 or +1.
int compare_payoffs(double ua, double ub);

// alpha if the action matches the preference, beta otherwise.
double lambda_reward(int theta, int x, const PayoffParams& p);

// u = lambda * (1 + matching neighbors)      for coordination
// u = lambda * (1 + mismatching neighbors)   for anticoordination
double payoff(int theta, int x, NeighborhoodStats s, const PayoffParams& p, GameKind g);

// Decision thresholds compared against chi. lower + upper == k identically.
double lower_threshold(int k, const PayoffParams& p);
double upper_threshold(int k, const PayoffParams& p);

// Sign of u(x_first) - u(x_second) against the same neighborhood.
int compare_action_payoffs(int theta, NeighborhoodStats s, const PayoffParams& p, GameKind g,
                           int x_first, int x_second);

// Myopic best response to the observed neighborhood; exact threshold ties
// resolve to the preferred action.
int best_response_complete(int theta, NeighborhoodStats s, const PayoffParams& p, GameKind g);

// Best response when only the degree and the population fraction rho of
// 1-preference agents are known: the observed chi is replaced by the
// expectation rho*k. Never depends on observed actions.
int best_response_incomplete(int theta, int k, double rho, const PayoffParams& p, GameKind g);

// Which side of the population a symmetric incomplete-information
// equilibrium leaves satisfied, as a function of rho.
enum class Regime : std::uint8_t {
  SymmetricSatisfactory,  // beta/(alpha+beta) < rho < alpha/(alpha+beta)
  OnesSatisfied,          // rho > alpha/(alpha+beta)
  ZerosSatisfied,         // rho < beta/(alpha+beta)
};

Regime regime_predict(double rho, const PayoffParams& p);

}  // namespace prefnet
