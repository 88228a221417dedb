#include "pattern_solver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace secretary::detail {

PlaceVector Value::row(int agent, int k) const {
  const auto begin = data.begin() + static_cast<std::ptrdiff_t>(agent * k);
  return PlaceVector(begin, begin + k);
}

void Value::add_scaled(const Value& other, double weight) {
  for (std::size_t i = 0; i < data.size(); ++i) data[i] += weight * other.data[i];
}

int count_assigned(const Pattern& pattern) {
  return static_cast<int>(std::count_if(pattern.begin(), pattern.end(), [](char c) { return c != 0; }));
}

PatternView::PatternView(int t, int n, const Pattern& pattern, int newest) : newest_rank(newest) {
  const int m = static_cast<int>(pattern.size());
  ranking.resize(static_cast<std::size_t>(m));
  holder.assign(static_cast<std::size_t>(n) + 1, -1);
  rank_of_slot.assign(static_cast<std::size_t>(n) + 1, 0);
  int next = 1;
  for (int r = 1; r <= m; ++r) {
    int slot;
    if (r == newest) {
      slot = t;
    } else {
      if (newest > 0 && next == t) ++next;
      slot = next++;
    }
    ranking[static_cast<std::size_t>(r - 1)] = slot;
    rank_of_slot[static_cast<std::size_t>(slot)] = r;
    holder[static_cast<std::size_t>(slot)] = static_cast<int>(pattern[static_cast<std::size_t>(r - 1)]) - 1;
  }
}

Observation PatternView::observe(int n, int k, TieRule tie, int t, AgentId agent, const Pattern& pattern) const {
  std::vector<bool> assigned(static_cast<std::size_t>(k), false);
  for (char c : pattern) {
    if (c != 0) assigned[static_cast<std::size_t>(c - 1)] = true;
  }
  Observation obs;
  obs.n = n;
  obs.k = k;
  obs.tie = tie;
  obs.t = t;
  obs.me = agent;
  obs.active_count = k - count_assigned(pattern);
  obs.my_rank = 1;
  for (AgentId a = 0; a < agent; ++a) obs.my_rank += assigned[static_cast<std::size_t>(a)] ? 0 : 1;
  obs.newest_rank = newest_rank;
  obs.ranking = ranking;
  obs.holder = holder;
  return obs;
}

PatternSolver::PatternSolver(Profile profile, int n, int k, TieRule tie, Mode mode, AgentId focus,
                             std::size_t max_states)
    : profile_(std::move(profile)),
      n_(n),
      k_(k),
      tie_(tie),
      mode_(mode),
      focus_(focus),
      max_states_(max_states),
      opponent_policy_(static_cast<std::size_t>(k)) {}

void PatternSolver::check_budget() {
  if (states() > max_states_) throw SizeLimitError("exact.max_states", max_states_, states());
}

Value PatternSolver::root() { return before_arrival(1, Pattern{}); }

Value PatternSolver::before_arrival(int t, const Pattern& pattern) {
  std::string key(1, static_cast<char>(t));
  key += pattern;
  if (auto it = before_memo_.find(key); it != before_memo_.end()) return it->second;
  Value value(k_);
  const double weight = 1.0 / t;
  for (int r = 1; r <= t; ++r) {
    Pattern next = pattern;
    next.insert(next.begin() + (r - 1), char{0});
    value.add_scaled(decision(t, next, r), weight);
  }
  before_memo_.emplace(std::move(key), value);
  check_budget();
  return value;
}

Value PatternSolver::terminal(const Pattern& pattern) const {
  Value value(k_);
  int place = 0;
  for (char c : pattern) {
    if (c == 0) continue;
    value.data[static_cast<std::size_t>((c - 1) * k_ + place)] = 1.0;
    ++place;
  }
  if (!pattern.empty() && pattern[0] != 0) {
    // The best revealed award is the overall best with probability m / n.
    value.data[static_cast<std::size_t>(k_ * k_ + pattern[0] - 1)] =
        static_cast<double>(pattern.size()) / n_;
  }
  return value;
}

Value PatternSolver::forced(const Pattern& pattern) {
  std::vector<AgentId> agents;
  std::vector<bool> assigned(static_cast<std::size_t>(k_), false);
  for (char c : pattern) {
    if (c != 0) assigned[static_cast<std::size_t>(c - 1)] = true;
  }
  for (AgentId a = 0; a < k_; ++a) {
    if (!assigned[static_cast<std::size_t>(a)]) agents.push_back(a);
  }
  auto fill = [&](const std::vector<AgentId>& order) {
    Pattern done = pattern;
    std::size_t next = 0;
    for (char& c : done) {
      if (next == order.size()) break;
      if (c == 0) c = static_cast<char>(order[next++] + 1);
    }
    return terminal(done);
  };
  if (tie_ == TieRule::Ranked) return fill(agents);
  Value value(k_);
  std::size_t count = 0;
  std::vector<Value> outcomes;
  do {
    outcomes.push_back(fill(agents));
    ++count;
  } while (std::next_permutation(agents.begin(), agents.end()));
  for (const Value& v : outcomes) value.add_scaled(v, 1.0 / static_cast<double>(count));
  return value;
}

Value PatternSolver::continuation(int t, const Pattern& pattern, int selections) {
  if (count_assigned(pattern) == k_) return terminal(pattern);
  if (t < n_) return before_arrival(t + 1, pattern);
  if (t > n_ && selections == 0) return forced(pattern);
  return decision(t + 1, pattern, 0);
}

std::vector<Branch> PatternSolver::resolve(const Pattern& pattern, const std::vector<int>& choice) const {
  // contenders per chosen rank, in agent order
  std::vector<std::pair<int, std::vector<AgentId>>> groups;
  int selections = 0;
  for (AgentId a = 0; a < k_; ++a) {
    const int r = choice[static_cast<std::size_t>(a)];
    if (r == 0) continue;
    ++selections;
    auto it = std::find_if(groups.begin(), groups.end(), [r](const auto& g) { return g.first == r; });
    if (it == groups.end()) {
      groups.push_back({r, {a}});
    } else {
      it->second.push_back(a);
    }
  }
  std::vector<Branch> branches{{1.0, pattern, selections}};
  for (const auto& [r, contenders] : groups) {
    const auto pos = static_cast<std::size_t>(r - 1);
    if (tie_ == TieRule::Ranked || contenders.size() == 1) {
      for (Branch& b : branches) b.pattern[pos] = static_cast<char>(contenders.front() + 1);
      continue;
    }
    std::vector<Branch> expanded;
    expanded.reserve(branches.size() * contenders.size());
    const double share = 1.0 / static_cast<double>(contenders.size());
    for (const Branch& b : branches) {
      for (AgentId a : contenders) {
        Branch next = b;
        next.probability *= share;
        next.pattern[pos] = static_cast<char>(a + 1);
        expanded.push_back(std::move(next));
      }
    }
    branches = std::move(expanded);
  }
  return branches;
}

std::vector<std::pair<int, double>> PatternSolver::agent_rank_mixture(const PatternView& view, int t,
                                                                      const Pattern& pattern,
                                                                      AgentId agent) const {
  const Observation obs = view.observe(n_, k_, tie_, t, agent, pattern);
  std::vector<std::pair<int, double>> result;
  for (const WeightedAction& wa : profile_[static_cast<std::size_t>(agent)]->mixed_action(obs)) {
    if (wa.probability <= 0.0) continue;
    int r = 0;
    if (!wa.action.is_pass()) {
      const int slot = wa.action.slot;
      if (slot < 1 || slot > n_ || view.rank_of_slot[static_cast<std::size_t>(slot)] == 0) {
        throw InvalidAction(agent, "slot " + std::to_string(slot) + " has not been revealed");
      }
      if (!obs.available(slot)) throw InvalidAction(agent, "slot " + std::to_string(slot) + " is not available");
      r = view.rank_of_slot[static_cast<std::size_t>(slot)];
    }
    auto it = std::find_if(result.begin(), result.end(), [r](const auto& e) { return e.first == r; });
    if (it == result.end()) {
      result.emplace_back(r, wa.probability);
    } else {
      it->second += wa.probability;
    }
  }
  return result;
}

std::vector<std::pair<std::vector<int>, double>> PatternSolver::profile_choices(int t, const Pattern& pattern,
                                                                                int newest) const {
  const PatternView view(t, n_, pattern, newest);
  std::vector<bool> assigned(static_cast<std::size_t>(k_), false);
  for (char c : pattern) {
    if (c != 0) assigned[static_cast<std::size_t>(c - 1)] = true;
  }
  std::vector<std::pair<std::vector<int>, double>> joint{{std::vector<int>(static_cast<std::size_t>(k_), 0), 1.0}};
  for (AgentId a = 0; a < k_; ++a) {
    if (assigned[static_cast<std::size_t>(a)]) continue;
    if (mode_ == Mode::Maximize && a == focus_) continue;
    if (mode_ == Mode::Minimize && a != focus_) continue;
    const auto mixture = agent_rank_mixture(view, t, pattern, a);
    if (mixture.size() == 1) {
      for (auto& [choice, p] : joint) choice[static_cast<std::size_t>(a)] = mixture.front().first;
      continue;
    }
    std::vector<std::pair<std::vector<int>, double>> expanded;
    for (const auto& [choice, p] : joint) {
      for (const auto& [r, q] : mixture) {
        auto next = choice;
        next[static_cast<std::size_t>(a)] = r;
        expanded.emplace_back(std::move(next), p * q);
      }
    }
    joint = std::move(expanded);
  }
  return joint;
}

Value PatternSolver::expected(int t, const Pattern& pattern, const std::vector<int>& choice, double weight) {
  Value value(k_);
  for (const Branch& b : resolve(pattern, choice)) {
    value.add_scaled(continuation(t, b.pattern, b.selections), weight * b.probability);
  }
  return value;
}

namespace {

LexOrder compare_rows(const Value& a, const Value& b, AgentId agent, int k) {
  for (int j = 0; j < k; ++j) {
    const double x = a.data[static_cast<std::size_t>(agent * k + j)];
    const double y = b.data[static_cast<std::size_t>(agent * k + j)];
    if (std::abs(x - y) <= kLexTolerance) continue;
    return x < y ? LexOrder::Less : LexOrder::Greater;
  }
  return LexOrder::Equal;
}

}  // namespace

Value PatternSolver::decision(int t, const Pattern& pattern, int newest) {
  std::string key;
  if (t > n_) {
    key.assign(1, static_cast<char>(t - n_));
    key += pattern;
    if (auto it = endgame_memo_.find(key); it != endgame_memo_.end()) return it->second;
  }

  const auto joint = profile_choices(t, pattern, newest);
  Value result(k_);
  if (mode_ == Mode::Evaluate) {
    for (const auto& [choice, p] : joint) result.add_scaled(expected(t, pattern, choice, p), 1.0);
  } else {
    const PatternView view(t, n_, pattern, newest);
    std::vector<AgentId> active;
    std::vector<bool> assigned(static_cast<std::size_t>(k_), false);
    for (char c : pattern) {
      if (c != 0) assigned[static_cast<std::size_t>(c - 1)] = true;
    }
    for (AgentId a = 0; a < k_; ++a) {
      if (!assigned[static_cast<std::size_t>(a)]) active.push_back(a);
    }
    std::vector<int> free_ranks;
    for (std::size_t r = 0; r < pattern.size(); ++r) {
      if (pattern[r] == 0) free_ranks.push_back(static_cast<int>(r) + 1);
    }

    // Options of the optimizing side: one rank (or 0) per controlled agent.
    std::vector<AgentId> controlled;
    for (AgentId a : active) {
      if ((mode_ == Mode::Maximize) == (a == focus_)) controlled.push_back(a);
    }
    std::vector<bool> focus_targets(pattern.size() + 1, false);
    if (mode_ == Mode::Minimize) {
      for (const auto& [choice, p] : joint) focus_targets[static_cast<std::size_t>(choice[static_cast<std::size_t>(focus_)])] = true;
    }
    std::vector<std::vector<int>> options;
    std::vector<int> current(controlled.size(), 0);
    std::vector<bool> taken(pattern.size() + 1, false);
    auto enumerate = [&](auto&& self, std::size_t idx) -> void {
      if (idx == controlled.size()) {
        options.push_back(current);
        return;
      }
      current[idx] = 0;
      self(self, idx + 1);
      for (int r : free_ranks) {
        // Two opponents on one award only matters when the focus contests it too.
        const bool shareable = mode_ == Mode::Minimize && focus_targets[static_cast<std::size_t>(r)];
        if (taken[static_cast<std::size_t>(r)] && !shareable) continue;
        const bool was = taken[static_cast<std::size_t>(r)];
        taken[static_cast<std::size_t>(r)] = true;
        current[idx] = r;
        self(self, idx + 1);
        taken[static_cast<std::size_t>(r)] = was;
      }
    };
    enumerate(enumerate, 0);

    const bool maximize = mode_ == Mode::Maximize;
    std::size_t best_index = 0;
    for (std::size_t o = 0; o < options.size(); ++o) {
      Value value(k_);
      for (const auto& [choice, p] : joint) {
        auto full = choice;
        for (std::size_t c = 0; c < controlled.size(); ++c) {
          full[static_cast<std::size_t>(controlled[c])] = options[o][c];
        }
        value.add_scaled(expected(t, pattern, full, p), 1.0);
      }
      const LexOrder order = compare_rows(value, result, focus_, k_);
      if (o == 0 || (maximize ? order == LexOrder::Greater : order == LexOrder::Less)) {
        result = std::move(value);
        best_index = o;
      }
    }
    for (std::size_t c = 0; c < controlled.size(); ++c) {
      const AgentId a = controlled[c];
      const std::string obs_key = observation_key(view.observe(n_, k_, tie_, t, a, pattern));
      const int chosen = options[best_index][c];
      if (maximize) {
        focus_policy_[obs_key] = chosen;
      } else {
        opponent_policy_[static_cast<std::size_t>(a)][obs_key] = chosen;
      }
    }
  }

  if (t > n_) {
    endgame_memo_.emplace(std::move(key), result);
    check_budget();
  }
  return result;
}

}  // namespace secretary::detail
