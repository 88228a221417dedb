#pragma once

#include <span>
#include <vector>

#include "secretary/observation.hpp"
#include "secretary/random.hpp"
#include "secretary/strategy.hpp"
#include "secretary/types.hpp"

namespace secretary {

/// ranks[t-1] is the global rank (1 = highest) of the award revealed at time t.
class ArrivalOrder {
 public:
  /// Throws InvalidParameters unless `ranks` is a permutation of {1..n}.
  explicit ArrivalOrder(std::vector<int> ranks);
  static ArrivalOrder sample(int n, RandomSource& rng);

  int n() const { return static_cast<int>(ranks_.size()); }
  int rank_at(int t) const { return ranks_[static_cast<std::size_t>(t - 1)]; }
  const std::vector<int>& ranks() const { return ranks_; }

 private:
  std::vector<int> ranks_;
};

/// y[i-1] is the value of the rank-i award; non-increasing and non-negative.
class ValueProfile {
 public:
  explicit ValueProfile(std::vector<double> y);
  /// k ones followed by n - k zeros.
  static ValueProfile top_k_ones(int n, int k);

  int n() const { return static_cast<int>(y_.size()); }
  double value_of_rank(int rank) const { return y_[static_cast<std::size_t>(rank - 1)]; }
  /// Sum of the k largest values.
  double opt(int k) const;
  const std::vector<double>& values() const { return y_; }

 private:
  std::vector<double> y_;
};

enum class Phase { Arrivals, Endgame };

struct StepReport {
  int selections = 0;
  int assignments = 0;
  bool endgame_round = false;  ///< the round was played at t > n
};

struct OutcomeRecord {
  std::vector<int> slot;         ///< per agent
  std::vector<int> global_rank;  ///< per agent, rank of the held award
  std::vector<int> assigned_at;  ///< per agent
  std::vector<int> place;        ///< per agent, 1 = best allocated award
  bool forced = false;           ///< a zero-selection endgame round forced the assignment

  double welfare(const ValueProfile& values) const;
};

struct GameState {
  int n = 0;
  int k = 0;
  TieRule tie = TieRule::Random;
  int t = 1;
  Phase phase = Phase::Arrivals;
  std::vector<int> ranking;      ///< revealed slots, best first
  std::vector<int> holder;       ///< indexed by slot 1..n; -1 = available
  std::vector<int> assignment;   ///< indexed by agent; 0 = unassigned
  std::vector<int> assigned_at;  ///< time step of each agent's assignment, 0 if none
  int active_count = 0;

  bool is_active(AgentId agent) const { return assignment[static_cast<std::size_t>(agent)] == 0; }
  bool available(int slot) const { return holder[static_cast<std::size_t>(slot)] < 0; }
  int revealed() const { return static_cast<int>(ranking.size()); }
  /// 1-based rank of `agent` among active agents.
  int active_rank(AgentId agent) const;
  /// 1-based relative rank of the newest award, 0 in the endgame.
  int newest_rank() const;
  std::vector<AgentId> active_agents() const;

 private:
  friend GameState new_game(int, int, TieRule, const ArrivalOrder&);
  friend StepReport step(GameState&, std::span<const Action>, RandomSource&);
  friend OutcomeRecord outcome_of(const GameState&);
  std::vector<int> global_rank_;  ///< indexed by slot; hidden from observations
};

GameState new_game(int n, int k, TieRule tie, const ArrivalOrder& order);

/// Agent-visible view of `state`; borrows from it.
Observation observe(const GameState& state, AgentId agent);

/// One simultaneous selection round. `actions` holds one entry per agent;
/// inactive agents must pass. Contested slots go to one selector (uniform
/// under Random, lowest index under Ranked); then time advances and, while
/// t <= n, the next award is revealed.
StepReport step(GameState& state, std::span<const Action> actions, RandomSource& rng);

/// Assigns every active agent to the highest remaining awards: by agent
/// index under Ranked, by a uniform matching under Random.
void force_assign(GameState& state, RandomSource& rng);

/// Places from held global ranks; throws IncompleteGame if any agent is unassigned.
std::vector<int> places(const OutcomeRecord& outcome);

OutcomeRecord outcome_of(const GameState& state);

/// Plays one game to completion. Strategies act in agent order and draw
/// from `rng` only when randomized.
OutcomeRecord playout(const Profile& profile, int n, int k, TieRule tie, const ArrivalOrder& order,
                      RandomSource& rng);

}  // namespace secretary
