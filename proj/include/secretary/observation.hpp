#pragma once

#include <optional>
#include <span>

#include "secretary/types.hpp"

namespace secretary {

struct Action {
  enum class Kind { Pass, Select };

  Kind kind = Kind::Pass;
  int slot = 0;  ///< 1-based arrival time of the selected award

  static constexpr Action pass() { return {}; }
  static constexpr Action select(int slot) { return {Kind::Select, slot}; }
  bool is_pass() const { return kind == Kind::Pass; }
  bool operator==(const Action&) const = default;
};

/// What an agent sees before acting: relative ranks and availability of the
/// revealed awards, never their values. A non-owning view over the game
/// state (or over a solver's synthetic state); valid only while that state
/// is alive and unchanged.
struct Observation {
  int n = 0;
  int k = 0;
  TieRule tie = TieRule::Random;
  int t = 1;                ///< current time; t > n during the endgame
  AgentId me = 0;
  int my_rank = 1;          ///< 1-based rank of `me` among active agents (by agent index)
  int active_count = 0;     ///< number of unassigned agents, including `me`
  int newest_rank = 0;      ///< relative rank of the award revealed at t, 0 in the endgame
  std::span<const int> ranking;  ///< revealed slots, best first
  std::span<const int> holder;   ///< holder[slot]: agent holding slot, or -1

  int revealed() const { return static_cast<int>(ranking.size()); }
  bool available(int slot) const { return holder[static_cast<std::size_t>(slot)] < 0; }
  /// Slot at 1-based relative rank r.
  int slot_at_rank(int r) const { return ranking[static_cast<std::size_t>(r - 1)]; }
  int holder_at_rank(int r) const { return holder[static_cast<std::size_t>(slot_at_rank(r))]; }

  bool best_available() const { return revealed() >= 1 && available(slot_at_rank(1)); }
  /// False when fewer than two awards have been revealed.
  bool second_best_available() const { return revealed() >= 2 && available(slot_at_rank(2)); }
  bool newest_is_best() const { return newest_rank == 1; }
  bool is_lowest_active() const { return my_rank == active_count; }

  std::optional<int> max_available_slot() const {
    for (int slot : ranking) {
      if (available(slot)) return slot;
    }
    return std::nullopt;
  }
};

}  // namespace secretary
