#pragma once

#include <cstddef>
#include <vector>

namespace secretary {

/// Optimal probability that one decision maker, allowed to accept up to k
/// of n awards on arrival, ends up holding the overall best one.
double tau_k(int n, int k);

/// Subgame-perfect thresholds of the immediate-selection game with ranked
/// priority: agent i accepts a best-so-far arrival from time T[i] on.
struct ImmediateThresholds {
  std::vector<int> T;     ///< per agent, highest priority first
  std::vector<double> q;  ///< probability that agent i receives the overall best award
  bool monotone = true;   ///< T[i-1] >= T[i]
  bool sandwich = true;   ///< (T[i] - 1)/n <= q[i] <= T[i]/n
  double tau = 0.0;       ///< tau_k(n, k)
  double sum_gap = 0.0;   ///< |sum q - tau|
};

/// Backward induction over (t, active set); throws SizeLimitError when
/// n * 2^k exceeds `max_states`.
ImmediateThresholds immediate_thresholds(int n, int k, std::size_t max_states = 50'000'000);

/// Closed-form three-agent predictions for the ranked deferred game.
struct ThreeAgentPrediction {
  double tau = 0.0;  ///< first selection time, n / (6 - ln 16)
  double p1 = 0.0;
  double p2 = 0.0;
  double p3 = 0.0;
};

ThreeAgentPrediction three_agent_prediction(int n);

/// Limits as n grows: p1 = (4 - 4 ln 2)/(6 - 4 ln 2), p2 = p3 = 1/(6 - 4 ln 2).
ThreeAgentPrediction three_agent_limit();

}  // namespace secretary
