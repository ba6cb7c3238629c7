#include "prefnet/game.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdio>

namespace prefnet {

namespace {

std::string format_pair(double alpha, double beta) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "(alpha=%.17g, beta=%.17g)", alpha, beta);
  return buf;
}

int matches_for(int x, NeighborhoodStats s) { return x == 1 ? s.chi : s.k - s.chi; }

// Number of payoff-relevant neighbors, i.e. the bracket of the payoff
// function without the leading 1.
int payoff_neighbors(int x, NeighborhoodStats s, GameKind g) {
  const int m = matches_for(x, s);
  return g == GameKind::Coordination ? m : s.k - m;
}

}  // namespace

PayoffParams::PayoffParams(double alpha_, double beta_) : alpha(alpha_), beta(beta_) {
  if (!(beta > 0.0 && beta < alpha && alpha < 2.0 * beta)) {
    throw ConfigError("payoff rewards must satisfy 0 < beta < alpha < 2*beta, got " +
                      format_pair(alpha_, beta_));
  }
}

int compare_payoffs(double ua, double ub) {
  const double scale = std::max(std::abs(ua), std::abs(ub));
  if (std::abs(ua - ub) <= kPayoffTieTolerance * scale) return 0;
  return ua < ub ? -1 : 1;
}

double lambda_reward(int theta, int x, const PayoffParams& p) {
  return x == theta ? p.alpha : p.beta;
}

double payoff(int theta, int x, NeighborhoodStats s, const PayoffParams& p, GameKind g) {
  assert(s.k >= 0 && s.chi >= 0 && s.chi <= s.k);
  return lambda_reward(theta, x, p) * (1.0 + payoff_neighbors(x, s, g));
}

double lower_threshold(int k, const PayoffParams& p) {
  return (p.beta * k - (p.alpha - p.beta)) / (p.alpha + p.beta);
}

double upper_threshold(int k, const PayoffParams& p) {
  return (p.alpha * k + (p.alpha - p.beta)) / (p.alpha + p.beta);
}

int compare_action_payoffs(int theta, NeighborhoodStats s, const PayoffParams& p, GameKind g,
                           int x_first, int x_second) {
  if (x_first == x_second) return 0;
  return compare_payoffs(payoff(theta, x_first, s, p, g), payoff(theta, x_second, s, p, g));
}

int best_response_complete(int theta, NeighborhoodStats s, const PayoffParams& p, GameKind g) {
  return compare_action_payoffs(theta, s, p, g, theta, 1 - theta) >= 0 ? theta : 1 - theta;
}

int best_response_incomplete(int theta, int k, double rho, const PayoffParams& p, GameKind g) {
  if (!(rho >= 0.0 && rho <= 1.0)) {
    throw ConfigError("rho must lie in [0, 1]");
  }
  // Same comparison as the complete-information rule with chi replaced by
  // its expectation rho*k (kept unrounded).
  const double chi_hat = rho * k;
  const double matches_liked = theta == 1 ? chi_hat : k - chi_hat;
  const double matches_other = k - matches_liked;
  const bool cg = GameKind::Coordination == g;
  const double w_liked = 1.0 + (cg ? matches_liked : k - matches_liked);
  const double w_other = 1.0 + (cg ? matches_other : k - matches_other);
  return compare_payoffs(p.alpha * w_liked, p.beta * w_other) >= 0 ? theta : 1 - theta;
}

Regime regime_predict(double rho, const PayoffParams& p) {
  if (!(rho >= 0.0 && rho <= 1.0)) {
    throw ConfigError("rho must lie in [0, 1]");
  }
  const double denom = p.alpha + p.beta;
  if (rho > p.alpha / denom) return Regime::OnesSatisfied;
  if (rho < p.beta / denom) return Regime::ZerosSatisfied;
  return Regime::SymmetricSatisfactory;  // boundaries land here
}

}  // namespace prefnet
