#include "secretary/stopping.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>

#include "secretary/types.hpp"

namespace secretary {

double tau_k(int n, int k) {
  if (n < 1 || k < 1 || k > n) throw InvalidParameters("tau_k needs 1 <= k <= n");
  // F[m][h] at time t: m picks left, h = the best so far is held.
  std::vector<std::array<double, 2>> F(static_cast<std::size_t>(k) + 1);
  for (auto& f : F) f = {0.0, 1.0};
  for (int t = n - 1; t >= 0; --t) {
    std::vector<std::array<double, 2>> G(F.size());
    const double p_best = 1.0 / (t + 1);
    for (int m = 0; m <= k; ++m) {
      const auto um = static_cast<std::size_t>(m);
      double on_best = F[um][0];
      if (m > 0) on_best = std::max(on_best, F[um - 1][1]);
      for (int h = 0; h < 2; ++h) G[um][static_cast<std::size_t>(h)] = p_best * on_best + (1 - p_best) * F[um][static_cast<std::size_t>(h)];
    }
    F = std::move(G);
  }
  return F[static_cast<std::size_t>(k)][0];
}

ImmediateThresholds immediate_thresholds(int n, int k, std::size_t max_states) {
  if (n < 1 || k < 1 || k > n) throw InvalidParameters("immediate_thresholds needs 1 <= k <= n");
  if (k > 24) throw SizeLimitError("immediate.k", 24, static_cast<std::size_t>(k));
  const std::size_t subsets = std::size_t{1} << k;
  const std::size_t states = subsets * static_cast<std::size_t>(n);
  if (states > max_states) throw SizeLimitError("immediate.max_states", max_states, states);

  const std::uint32_t full = static_cast<std::uint32_t>(subsets - 1);
  const auto K = static_cast<std::size_t>(k);
  // G[S * k + i]: agent i's chance of the overall best before arrival t.
  std::vector<double> G(subsets * K, 0.0);
  std::vector<int> first_accept(K, n + 1);
  constexpr double tol = 1e-12;

  for (int t = n; t >= 1; --t) {
    const double win = static_cast<double>(t) / n;
    std::vector<double> next(subsets * K, 0.0);
    std::vector<double> outcome(K);
    for (std::uint32_t S = 1; S <= full; ++S) {
      // Decisions on a best-so-far arrival, resolved from the lowest priority up.
      for (std::size_t i = 0; i < K; ++i) outcome[i] = G[S * K + i];
      for (int j = k - 1; j >= 0; --j) {
        const auto uj = static_cast<std::size_t>(j);
        if (!(S & (1u << j))) continue;
        if (win >= outcome[uj] - tol) {
          const std::uint32_t rest = S & ~(1u << j);
          for (std::size_t i = 0; i < K; ++i) outcome[i] = G[rest * K + i];
          outcome[uj] = win;
          if (S == full) first_accept[uj] = t;
        }
      }
      const double p_best = 1.0 / t;
      for (std::size_t i = 0; i < K; ++i) {
        next[S * K + i] = (S & (1u << i)) ? p_best * outcome[i] + (1 - p_best) * G[S * K + i] : 0.0;
      }
    }
    G = std::move(next);
  }

  ImmediateThresholds result;
  result.T = first_accept;
  result.q.assign(G.begin() + static_cast<std::ptrdiff_t>(full * K),
                  G.begin() + static_cast<std::ptrdiff_t>(full * K + K));
  for (std::size_t i = 0; i < K; ++i) {
    if (i > 0 && result.T[i - 1] < result.T[i]) result.monotone = false;
    const double lo = (result.T[i] - 1.0) / n;
    const double hi = static_cast<double>(result.T[i]) / n;
    if (result.q[i] < lo - tol || result.q[i] > hi + tol) result.sandwich = false;
  }
  result.tau = tau_k(n, k);
  result.sum_gap = std::abs(std::accumulate(result.q.begin(), result.q.end(), 0.0) - result.tau);
  return result;
}

ThreeAgentPrediction three_agent_prediction(int n) {
  if (n < 3) throw InvalidParameters("three_agent_prediction needs n >= 3");
  const double N = n;
  ThreeAgentPrediction p;
  p.tau = N / (6.0 - std::log(16.0));
  p.p2 = p.tau / N;
  double tail = 0.0;
  for (int s = n / 2 + 1; s <= n; ++s) tail += (1.0 / s) * (1.0 - s / N);
  p.p3 = (N / 2 - p.tau) / N + (p.tau / (N / 2)) * tail;
  p.p1 = 1.0 - p.p2 - p.p3;
  return p;
}

ThreeAgentPrediction three_agent_limit() {
  const double d = 6.0 - 4.0 * std::log(2.0);
  ThreeAgentPrediction p;
  p.tau = 1.0 / (6.0 - std::log(16.0));
  p.p1 = (4.0 - 4.0 * std::log(2.0)) / d;
  p.p2 = 1.0 / d;
  p.p3 = 1.0 / d;
  return p;
}

}  // namespace secretary
