#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "secretary/observation.hpp"
#include "secretary/random.hpp"

namespace secretary {

struct WeightedAction {
  Action action;
  double probability = 1.0;
};

/// A (possibly randomized) map from observations to actions.
///
/// Strategies are rank-based: they may read everything in the Observation
/// except the numeric slot ids, which they only echo back inside Select.
/// The exact solvers rely on this and feed synthetic slot ids.
class Strategy {
 public:
  virtual ~Strategy() = default;

  virtual std::string name() const = 0;

  /// Deterministic choice. Randomized strategies return their first support point.
  virtual Action act(const Observation& obs) const = 0;

  /// Full mixed action; deterministic strategies return a single entry.
  virtual std::vector<WeightedAction> mixed_action(const Observation& obs) const {
    return {{act(obs), 1.0}};
  }
  virtual bool randomized() const { return false; }

  /// True when the action depends only on (t, active count, my rank,
  /// best/second-best availability). Such profiles get relaxed size limits.
  virtual bool compressed() const { return false; }

  /// Draws from `rng` only when randomized.
  Action sample(const Observation& obs, RandomSource& rng) const;
};

using StrategyPtr = std::shared_ptr<const Strategy>;
using Profile = std::vector<StrategyPtr>;

/// Rank-addressed actions shared by scripted and table strategies.
enum class RankAction { Pass, SelectBest, SelectSecond, SelectMaxAvailable };

std::string_view to_string(RankAction action);
RankAction parse_rank_action(std::string_view text);
/// Maps a rank-addressed action to a concrete one; unavailable targets become Pass.
Action resolve(RankAction action, const Observation& obs);

// ---------------------------------------------------------------------------
// Random tie-breaking strategies

/// The equilibrium strategy for random tie-breaking:
///   t >= n                           -> select the maximal available award
///   n < t * l  and t < n, best free  -> select the best so far
///   l == 2 and 2t == n, best free    -> select the best so far
///   otherwise                        -> pass
class SigmaStrategy final : public Strategy {
 public:
  std::string name() const override { return "sigma"; }
  Action act(const Observation& obs) const override;
  bool compressed() const override { return true; }
};

/// The two places where a strategy may depart from sigma and keep the
/// 1/k guarantee. The defaults reproduce sigma exactly.
struct SigmaVariantFlags {
  /// l == 2, 2t == n, best and second best both free: select the best (else pass).
  bool select_at_half = true;
  /// l == 1, t < n, best free: select it now (else wait, as sigma does).
  bool select_when_alone = false;
};

class SigmaVariantStrategy final : public Strategy {
 public:
  explicit SigmaVariantStrategy(SigmaVariantFlags flags) : flags_(flags) {}
  std::string name() const override;
  Action act(const Observation& obs) const override;
  bool compressed() const override { return true; }
  const SigmaVariantFlags& flags() const { return flags_; }

 private:
  SigmaVariantFlags flags_;
};

/// Parses "half=select|pass,alone=select|pass" (either key optional).
SigmaVariantFlags parse_sigma_variant_flags(std::string_view text);

/// Sigma, except that wherever sigma would take the best award so far
/// before time n it takes the second best instead when that one is free.
class SigmaNonMaxStrategy final : public Strategy {
 public:
  std::string name() const override { return "sigma-nonmax"; }
  Action act(const Observation& obs) const override;
  bool compressed() const override { return true; }
};

// ---------------------------------------------------------------------------
// Ranked tie-breaking strategies

/// Time thresholds T[j][l] for rank j among l active agents, 1 <= j <= l <= k.
struct ThresholdProfile {
  int n = 0;
  int k = 0;
  std::vector<std::vector<int>> table;  ///< table[l-1][j-1]

  ThresholdProfile() = default;
  ThresholdProfile(int n, int k, int fill);

  int at(int j, int l) const { return table[static_cast<std::size_t>(l - 1)][static_cast<std::size_t>(j - 1)]; }
  int& at(int j, int l) { return table[static_cast<std::size_t>(l - 1)][static_cast<std::size_t>(j - 1)]; }
  /// T[j][l] <= T[h][l] for all h < j <= l.
  bool is_monotone() const;
  bool operator==(const ThresholdProfile&) const = default;
};

ThresholdProfile load_threshold_profile(const std::string& path);
std::string threshold_profile_to_json(const ThresholdProfile& profile);
ThresholdProfile threshold_profile_from_json(const std::string& text);

class ThresholdStrategy final : public Strategy {
 public:
  /// `select_at_threshold` = false makes the agent pass at t == T[j][l].
  explicit ThresholdStrategy(ThresholdProfile profile, bool select_at_threshold = true);
  std::string name() const override { return "threshold"; }
  Action act(const Observation& obs) const override;
  bool compressed() const override { return true; }
  const ThresholdProfile& profile() const { return profile_; }

 private:
  ThresholdProfile profile_;
  bool select_at_threshold_;
};

// ---------------------------------------------------------------------------
// Baselines

/// Smallest r with sum_{j=r}^{n-1} 1/j <= 1: the optimal classical cutoff.
int classical_cutoff(int n);

/// Immediate-decision classical secretary rule: from the optimal cutoff on,
/// take the newly revealed award when it is the best so far; take the last
/// arrival at t = n; in the endgame take the maximal available award.
class ClassicalStrategy final : public Strategy {
 public:
  ClassicalStrategy() = default;
  /// Precomputes the cutoff for games with `n` awards.
  explicit ClassicalStrategy(int n);
  std::string name() const override { return "classical"; }
  Action act(const Observation& obs) const override;

 private:
  int cached_n_ = 0;
  int cached_cutoff_ = 0;
};

/// Selects the maximal available award at every step.
class GrabFirstStrategy final : public Strategy {
 public:
  std::string name() const override { return "grab-first"; }
  Action act(const Observation& obs) const override;
  bool compressed() const override { return true; }
};

class AlwaysPassStrategy final : public Strategy {
 public:
  std::string name() const override { return "always-pass"; }
  Action act(const Observation&) const override { return Action::pass(); }
  bool compressed() const override { return true; }
};

/// Mixes two strategies: with probability `weight` follow `first`.
class MixedStrategy final : public Strategy {
 public:
  MixedStrategy(StrategyPtr first, StrategyPtr second, double weight);
  std::string name() const override;
  Action act(const Observation& obs) const override { return first_->act(obs); }
  std::vector<WeightedAction> mixed_action(const Observation& obs) const override;
  bool randomized() const override { return true; }
  bool compressed() const override { return first_->compressed() && second_->compressed(); }

 private:
  StrategyPtr first_;
  StrategyPtr second_;
  double weight_;
};

// ---------------------------------------------------------------------------
// Scripted strategies

/// One row of a scripted strategy. Unset fields match anything.
struct ScriptPattern {
  std::optional<int> t_min;
  std::optional<int> t_max;
  std::optional<int> active_count;
  std::optional<int> my_rank;
  std::optional<bool> best_available;
  std::optional<bool> second_best_available;
  RankAction action = RankAction::Pass;

  bool matches(const Observation& obs) const;
  /// True if some observation could match both patterns.
  bool overlaps(const ScriptPattern& other) const;
};

class ScriptedStrategy final : public Strategy {
 public:
  explicit ScriptedStrategy(std::vector<ScriptPattern> table, std::string label = "scripted");
  std::string name() const override { return label_; }
  Action act(const Observation& obs) const override;
  bool compressed() const override { return true; }
  const std::vector<ScriptPattern>& table() const { return table_; }
  /// Human-readable notes for pairs of rows that can both match.
  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  std::vector<ScriptPattern> table_;
  std::string label_;
  std::vector<std::string> warnings_;
};

/// Parses the scripted-strategy JSON document: a list of records with the
/// optional fields t_min, t_max, active_count, my_rank, best_available,
/// second_best_available and the required field action.
ScriptedStrategy scripted_strategy_from_json(const std::string& text);
ScriptedStrategy load_scripted_strategy(const std::string& path);

// ---------------------------------------------------------------------------
// Table strategies (solver policies and witnesses)

/// Canonical key of an observation for table lookups: time, newest rank and
/// the holder label of every revealed rank.
std::string observation_key(const Observation& obs);

/// Acts by lookup on observation_key; unseen observations pass. Values are
/// 1-based ranks to select, 0 for pass.
class TableStrategy final : public Strategy {
 public:
  TableStrategy(std::string label, std::map<std::string, int> table);
  std::string name() const override { return label_; }
  Action act(const Observation& obs) const override;
  std::size_t size() const { return table_.size(); }

 private:
  std::string label_;
  std::map<std::string, int> table_;
};

}  // namespace secretary
