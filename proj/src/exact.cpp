#include "secretary/exact.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include "pattern_solver.hpp"

namespace secretary {

using detail::Mode;
using detail::Pattern;
using detail::PatternSolver;

std::size_t pattern_space_size(int n, int k) {
  // Patterns of length t with j distinct agents placed, summed over t and j.
  long double total = 0;
  for (int t = 1; t <= n; ++t) {
    long double choose = 1;  // C(k, j)
    long double arrange = 1;  // t! / (t - j)!
    for (int j = 0; j <= std::min(k, t); ++j) {
      total += choose * arrange * t;  // t newest positions per pattern
      choose = choose * (k - j) / (j + 1);
      arrange *= (t - j);
    }
  }
  constexpr long double cap = 1e18L;
  return total > cap ? static_cast<std::size_t>(cap) : static_cast<std::size_t>(total);
}

namespace {

void check_game(int n, int k) {
  if (k < 1 || k > n) {
    throw InvalidParameters("need 1 <= k <= n, got n=" + std::to_string(n) + " k=" + std::to_string(k));
  }
  if (k > 120) throw InvalidParameters("exact solvers support at most 120 agents");
}

void check_profile(const Profile& profile, int k, std::optional<AgentId> skip) {
  if (static_cast<int>(profile.size()) != k) throw InvalidParameters("profile must hold one strategy per agent");
  for (AgentId a = 0; a < k; ++a) {
    if (skip && *skip == a) continue;
    if (!profile[static_cast<std::size_t>(a)]) {
      throw InvalidParameters("missing strategy for agent " + std::to_string(a + 1));
    }
  }
}

/// Unrestricted play must fit either N_exact or the state budget.
void check_unrestricted(int n, int k, const ExactLimits& limits) {
  if (n <= limits.max_n) return;
  const std::size_t size = pattern_space_size(n, k);
  if (size > limits.max_states) throw SizeLimitError("exact.max_states", limits.max_states, size);
}

std::string describe(const Pattern& pattern, int newest) {
  std::ostringstream out;
  out << "[";
  for (std::size_t r = 0; r < pattern.size(); ++r) {
    if (r) out << ", ";
    out << (r + 1) << ":";
    if (pattern[r] == 0) {
      out << "free";
    } else {
      out << "agent " << static_cast<int>(pattern[r]);
    }
    if (static_cast<int>(r) + 1 == newest) out << " (new)";
  }
  out << "]";
  return out.str();
}

}  // namespace

OutcomeDistribution outcome_distribution(const Profile& profile, int n, int k, TieRule tie,
                                         const ExactLimits& limits) {
  check_game(n, k);
  check_profile(profile, k, std::nullopt);
  const bool compressed =
      std::all_of(profile.begin(), profile.end(), [](const StrategyPtr& s) { return s->compressed(); });
  if (!compressed) check_unrestricted(n, k, limits);

  PatternSolver solver(profile, n, k, tie, Mode::Evaluate, 0, limits.max_states);
  const detail::Value root = solver.root();
  OutcomeDistribution result;
  for (AgentId a = 0; a < k; ++a) {
    result.places.push_back(root.row(a, k));
    result.top_award.push_back(root.top(a, k));
  }
  result.states = solver.states();
  return result;
}

BestResponse best_response(AgentId i, const Profile& profile, int n, int k, TieRule tie,
                           const ExactLimits& limits) {
  check_game(n, k);
  if (i < 0 || i >= k) throw InvalidParameters("agent index out of range");
  check_profile(profile, k, i);
  check_unrestricted(n, k, limits);

  PatternSolver solver(profile, n, k, tie, Mode::Maximize, i, limits.max_states);
  const detail::Value root = solver.root();
  BestResponse result;
  result.value = root.row(i, k);
  result.top_award = root.top(i, k);
  result.policy = std::make_shared<TableStrategy>("best-response", solver.focus_policy());
  result.states = solver.states();
  return result;
}

GuaranteeReport guarantee_value(AgentId i, StrategyPtr strategy, int n, int k, TieRule tie,
                                const ExactLimits& limits) {
  check_game(n, k);
  if (i < 0 || i >= k) throw InvalidParameters("agent index out of range");
  if (!strategy) throw InvalidParameters("missing strategy");
  check_unrestricted(n, k, limits);

  Profile profile(static_cast<std::size_t>(k));
  profile[static_cast<std::size_t>(i)] = strategy;
  PatternSolver solver(profile, n, k, tie, Mode::Minimize, i, limits.max_states);
  const detail::Value root = solver.root();

  GuaranteeReport report;
  report.agent = i;
  report.strategy = strategy->name();
  report.value = root.row(i, k);
  report.states = solver.states();
  report.witness = profile;
  for (AgentId a = 0; a < k; ++a) {
    if (a == i) continue;
    report.witness[static_cast<std::size_t>(a)] = std::make_shared<TableStrategy>(
        "adversary-" + std::to_string(a + 1), solver.opponent_policy()[static_cast<std::size_t>(a)]);
  }
  return report;
}

SpeVerdict verify_spe(const Profile& profile, int n, int k, TieRule tie, const ExactLimits& limits) {
  check_game(n, k);
  check_profile(profile, k, std::nullopt);
  if (n > limits.max_n) {
    throw SizeLimitError("exact.max_n", static_cast<std::size_t>(limits.max_n), static_cast<std::size_t>(n));
  }

  PatternSolver evaluate(profile, n, k, tie, Mode::Evaluate, 0, limits.max_states);
  std::vector<PatternSolver> responders;
  responders.reserve(static_cast<std::size_t>(k));
  for (AgentId a = 0; a < k; ++a) responders.emplace_back(profile, n, k, tie, Mode::Maximize, a, limits.max_states);

  // Decision nodes (t, pattern, newest) reachable under arbitrary play,
  // visited in time order so the earliest violation is reported.
  using Node = std::tuple<int, Pattern, int>;
  std::set<Node> frontier;
  frontier.insert({1, Pattern(1, char{0}), 1});
  SpeVerdict verdict;
  while (!frontier.empty()) {
    const Node node = *frontier.begin();
    frontier.erase(frontier.begin());
    const auto& [t, pattern, newest] = node;
    ++verdict.subgames;
    if (verdict.subgames > limits.max_states) {
      throw SizeLimitError("exact.max_states", limits.max_states, verdict.subgames);
    }

    const detail::Value current = evaluate.decision(t, pattern, newest);
    for (AgentId a = 0; a < k; ++a) {
      if (std::find(pattern.begin(), pattern.end(), static_cast<char>(a + 1)) != pattern.end()) continue;
      const detail::Value best = responders[static_cast<std::size_t>(a)].decision(t, pattern, newest);
      const PlaceVector old_value = current.row(a, k);
      const PlaceVector new_value = best.row(a, k);
      if (lex_compare(new_value, old_value) != LexOrder::Greater) continue;
      const detail::PatternView view(t, n, pattern, newest);
      const std::string key = observation_key(view.observe(n, k, tie, t, a, pattern));
      const auto& policy = responders[static_cast<std::size_t>(a)].focus_policy();
      const auto it = policy.find(key);
      const int rank = it == policy.end() ? 0 : it->second;
      verdict.equilibrium = false;
      verdict.witness = SpeWitness{t,
                                   describe(pattern, newest),
                                   a,
                                   rank == 0 ? "pass" : "select rank " + std::to_string(rank),
                                   old_value,
                                   new_value};
      return verdict;
    }

    // Successors: every injective partial assignment of free ranks to
    // active agents (collisions lead to the same patterns).
    std::vector<int> free_ranks;
    for (std::size_t r = 0; r < pattern.size(); ++r) {
      if (pattern[r] == 0) free_ranks.push_back(static_cast<int>(r) + 1);
    }
    std::vector<AgentId> active;
    for (AgentId a = 0; a < k; ++a) {
      if (std::find(pattern.begin(), pattern.end(), static_cast<char>(a + 1)) == pattern.end()) active.push_back(a);
    }
    Pattern next = pattern;
    auto expand = [&](auto&& self, std::size_t idx, int selections) -> void {
      if (idx == active.size()) {
        if (detail::count_assigned(next) == k) return;
        if (t < n) {
          for (int r = 1; r <= t + 1; ++r) {
            Pattern arrived = next;
            arrived.insert(arrived.begin() + (r - 1), char{0});
            frontier.insert({t + 1, std::move(arrived), r});
          }
        } else if (t == n || selections > 0) {
          frontier.insert({t + 1, next, 0});
        }
        return;
      }
      self(self, idx + 1, selections);
      for (int r : free_ranks) {
        auto& slot = next[static_cast<std::size_t>(r - 1)];
        if (slot != 0) continue;
        slot = static_cast<char>(active[idx] + 1);
        self(self, idx + 1, selections + 1);
        slot = 0;
      }
    };
    expand(expand, 0, 0);
  }
  return verdict;
}

}  // namespace secretary
