#pragma once

// Backward induction over rank patterns.
//
// A pattern lists the revealed awards best first, each labelled 0 (free) or
// agent + 1 (held). Future arrivals insert uniformly among the t + 1 gaps,
// so (t, pattern) is a sufficient state for rank-based play; slot ids only
// matter for echoing actions and are synthesized.

#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "secretary/observation.hpp"
#include "secretary/place_vector.hpp"
#include "secretary/strategy.hpp"

namespace secretary::detail {

using Pattern = std::string;

/// Row-major k x k place matrix followed by k top-award probabilities.
struct Value {
  std::vector<double> data;

  Value() = default;
  explicit Value(int k) : data(static_cast<std::size_t>(k * (k + 1)), 0.0) {}
  PlaceVector row(int agent, int k) const;
  double top(int agent, int k) const { return data[static_cast<std::size_t>(k * k + agent)]; }
  void add_scaled(const Value& other, double weight);
};

enum class Mode {
  Evaluate,  ///< everyone follows the profile
  Maximize,  ///< focus agent best-responds to the others
  Minimize,  ///< focus follows the profile, the others jointly minimize it
};

struct Branch {
  double probability = 0.0;
  Pattern pattern;
  int selections = 0;
};

/// Synthetic observation backing for a pattern.
struct PatternView {
  std::vector<int> ranking;
  std::vector<int> holder;
  std::vector<int> rank_of_slot;
  int newest_rank = 0;

  PatternView(int t, int n, const Pattern& pattern, int newest);
  Observation observe(int n, int k, TieRule tie, int t, AgentId agent, const Pattern& pattern) const;
};

class PatternSolver {
 public:
  PatternSolver(Profile profile, int n, int k, TieRule tie, Mode mode, AgentId focus, std::size_t max_states);

  Value root();
  /// Value before the award of time t (t <= n) arrives; pattern has t - 1 entries.
  Value before_arrival(int t, const Pattern& pattern);
  /// Value at a decision node: after the arrival at t <= n (newest >= 1) or
  /// an endgame round at t > n (newest = 0).
  Value decision(int t, const Pattern& pattern, int newest);
  /// Value right after the allocations of time t.
  Value continuation(int t, const Pattern& pattern, int selections);

  /// Outcome branches of a joint choice of ranks (0 = pass) per agent.
  std::vector<Branch> resolve(const Pattern& pattern, const std::vector<int>& choice) const;
  /// Profile-driven joint choices with probabilities (Evaluate mode semantics).
  std::vector<std::pair<std::vector<int>, double>> profile_choices(int t, const Pattern& pattern, int newest) const;

  /// Policy tables recorded for the optimizing side, keyed by observation_key.
  const std::map<std::string, int>& focus_policy() const { return focus_policy_; }
  const std::vector<std::map<std::string, int>>& opponent_policy() const { return opponent_policy_; }

  std::size_t states() const { return before_memo_.size() + endgame_memo_.size(); }
  int n() const { return n_; }
  int k() const { return k_; }

 private:
  Value terminal(const Pattern& pattern) const;
  Value forced(const Pattern& pattern);
  Value expected(int t, const Pattern& pattern, const std::vector<int>& choice, double weight);
  std::vector<std::pair<int, double>> agent_rank_mixture(const PatternView& view, int t, const Pattern& pattern,
                                                         AgentId agent) const;
  void check_budget();

  Profile profile_;
  int n_;
  int k_;
  TieRule tie_;
  Mode mode_;
  AgentId focus_;
  std::size_t max_states_;
  std::unordered_map<std::string, Value> before_memo_;
  std::unordered_map<std::string, Value> endgame_memo_;
  std::map<std::string, int> focus_policy_;
  std::vector<std::map<std::string, int>> opponent_policy_;
};

int count_assigned(const Pattern& pattern);

}  // namespace secretary::detail
