#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "secretary/place_vector.hpp"
#include "secretary/strategy.hpp"
#include "secretary/types.hpp"

namespace secretary {

struct ExactLimits {
  /// N_exact: largest n accepted by verify_spe, and by the other solvers
  /// when some strategy is not compressed and the pattern space is too big.
  int max_n = 10;
  /// Memoized states per solver run.
  std::size_t max_states = 2'000'000;
};

/// Number of (t, holder pattern) states an unrestricted game can reach.
std::size_t pattern_space_size(int n, int k);

struct OutcomeDistribution {
  std::vector<PlaceVector> places;  ///< per agent
  std::vector<double> top_award;    ///< per agent: probability of holding the overall best award
  std::size_t states = 0;
};

/// Exact place vectors of every agent, by backward induction over arrival
/// ranks and tie branches.
OutcomeDistribution outcome_distribution(const Profile& profile, int n, int k, TieRule tie,
                                         const ExactLimits& limits = {});

struct BestResponse {
  PlaceVector value;
  double top_award = 0.0;
  std::shared_ptr<const TableStrategy> policy;
  std::size_t states = 0;
};

/// Lexicographically best reply of agent `i`; profile[i] is ignored and may be null.
BestResponse best_response(AgentId i, const Profile& profile, int n, int k, TieRule tie,
                           const ExactLimits& limits = {});

struct GuaranteeReport {
  AgentId agent = 0;
  std::string strategy;
  PlaceVector value;
  /// `strategy` for the agent, table policies of the minimizing opponents elsewhere.
  Profile witness;
  std::size_t states = 0;
};

/// Worst case of `strategy` for agent `i` against a coordinated opponent
/// coalition that minimizes i's place vector lexicographically at every node.
GuaranteeReport guarantee_value(AgentId i, StrategyPtr strategy, int n, int k, TieRule tie,
                                const ExactLimits& limits = {});

struct SpeWitness {
  int t = 0;
  std::string state;  ///< revealed ranks best first with their holders
  AgentId agent = 0;
  std::string deviation;
  PlaceVector old_value;
  PlaceVector new_value;
};

struct SpeVerdict {
  bool equilibrium = true;
  std::optional<SpeWitness> witness;
  std::size_t subgames = 0;
};

/// Checks every decision node reachable under some play (not only the
/// profile's own path) for a strictly improving unilateral deviation.
SpeVerdict verify_spe(const Profile& profile, int n, int k, TieRule tie, const ExactLimits& limits = {});

}  // namespace secretary
