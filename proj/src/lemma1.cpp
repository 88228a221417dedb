#include "secretary/lemma1.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <tuple>

#include "pattern_solver.hpp"

namespace secretary {

BoundQuadruple lemma1_bounds(int n, int t, int l) {
  if (n < 1 || t < 1 || t > n || l < 1) {
    throw InvalidParameters("lemma1_bounds needs 1 <= t <= n and l >= 1");
  }
  const double N = n;
  const double T = t;
  const double L = l;
  BoundQuadruple q;
  if (l == 1) {
    q.A = q.B = {1.0, 0.0};
    q.C = {(N - T) / N, T / N};
    q.D = {(N - T) / N, n == 1 ? 0.0 : T * (N - T) / (N * (N - 1))};
    return q;
  }
  // n == 1 cannot host l > 1 agents, so n - 1 > 0 below.
  q.A = {1.0 / L, 1.0 / L};
  q.B = {1.0 / L, (N - T) * (N + T - 1) / (N * (N - 1) * L)};
  q.C = {(N - T) / (N * L), (N * N + T * T - T * N - N) / (N * (N - 1) * L)};
  q.D = {(N - T) / (N * L), (N - T) / (N * L)};
  return q;
}

namespace {

struct Accumulator {
  double reach = 0.0;
  double first = 0.0;
  double second = 0.0;
  double worst_first = std::numeric_limits<double>::infinity();
  double worst_second = std::numeric_limits<double>::infinity();

  void add(double p, double v1, double v2) {
    reach += p;
    first += p * v1;
    second += p * v2;
    worst_first = std::min(worst_first, v1);
    worst_second = std::min(worst_second, v2);
  }
};

bool holds(const detail::Pattern& pattern, AgentId agent) {
  return std::find(pattern.begin(), pattern.end(), static_cast<char>(agent + 1)) != pattern.end();
}

bool free_at(const detail::Pattern& pattern, std::size_t index) {
  return index < pattern.size() && pattern[index] == 0;
}

}  // namespace

Lemma1Report check_lemma1(int n, int k, const ExactLimits& limits) {
  if (k < 1 || k > n) throw InvalidParameters("check_lemma1 needs 1 <= k <= n");
  Profile profile(static_cast<std::size_t>(k), std::make_shared<SigmaStrategy>());
  detail::PatternSolver solver(profile, n, k, TieRule::Random, detail::Mode::Evaluate, 0, limits.max_states);

  std::map<std::tuple<int, int, char>, Accumulator> classes;
  std::map<detail::Pattern, double> layer{{detail::Pattern{}, 1.0}};
  for (int t = 1; t <= n; ++t) {
    std::map<detail::Pattern, double> next_layer;
    for (const auto& [before, reach] : layer) {
      for (int r = 1; r <= t; ++r) {
        detail::Pattern pattern = before;
        pattern.insert(pattern.begin() + (r - 1), char{0});
        const double p = reach / t;
        if (!holds(pattern, 0) && free_at(pattern, 0)) {
          const detail::Value v = solver.decision(t, pattern, r);
          const int l = k - detail::count_assigned(pattern);
          const char cls = free_at(pattern, 1) ? 'A' : 'B';
          classes[{t, l, cls}].add(p, v.data[0], k > 1 ? v.data[1] : 0.0);
        }
        for (const auto& [choice, q] : solver.profile_choices(t, pattern, r)) {
          for (const detail::Branch& b : solver.resolve(pattern, choice)) {
            const double pb = p * q * b.probability;
            if (!holds(b.pattern, 0) && !free_at(b.pattern, 0)) {
              const detail::Value v = solver.continuation(t, b.pattern, b.selections);
              const int l = k - detail::count_assigned(b.pattern);
              const char cls = free_at(b.pattern, 1) ? 'C' : 'D';
              classes[{t, l, cls}].add(pb, v.data[0], k > 1 ? v.data[1] : 0.0);
            }
            if (t < n && detail::count_assigned(b.pattern) < k) next_layer[b.pattern] += pb;
          }
        }
      }
    }
    layer = std::move(next_layer);
  }

  Lemma1Report report;
  report.n = n;
  report.k = k;
  report.min_slack = std::numeric_limits<double>::infinity();
  constexpr double tol = 1e-12;
  for (const auto& [key, acc] : classes) {
    const auto& [t, l, cls] = key;
    if (acc.reach <= 0.0) continue;
    const BoundQuadruple bounds = lemma1_bounds(n, t, l);
    Lemma1Row row;
    row.t = t;
    row.l = l;
    row.state_class = cls;
    row.reach = acc.reach;
    row.exact = {acc.first / acc.reach, acc.second / acc.reach};
    row.worst = {acc.worst_first, acc.worst_second};
    row.bound = cls == 'A' ? bounds.A : cls == 'B' ? bounds.B : cls == 'C' ? bounds.C : bounds.D;
    row.slack = std::min(row.exact.first - row.bound.first, row.exact.second - row.bound.second);
    if (row.slack < -tol) ++report.violations;
    if (std::min(row.worst.first - row.bound.first, row.worst.second - row.bound.second) < -tol) {
      ++report.state_violations;
    }
    report.min_slack = std::min(report.min_slack, row.slack);
    report.rows.push_back(row);
  }
  if (report.rows.empty()) report.min_slack = 0.0;
  return report;
}

}  // namespace secretary
