#include "secretary/engine.hpp"

#include <algorithm>
#include <numeric>

namespace secretary {

ArrivalOrder::ArrivalOrder(std::vector<int> ranks) : ranks_(std::move(ranks)) {
  const int n = static_cast<int>(ranks_.size());
  if (n < 1) throw InvalidParameters("arrival order must be non-empty");
  std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
  for (int r : ranks_) {
    if (r < 1 || r > n || seen[static_cast<std::size_t>(r)]) {
      throw InvalidParameters("arrival order is not a permutation of 1.." + std::to_string(n));
    }
    seen[static_cast<std::size_t>(r)] = true;
  }
}

ArrivalOrder ArrivalOrder::sample(int n, RandomSource& rng) {
  return ArrivalOrder(random_permutation(n, rng));
}

ValueProfile::ValueProfile(std::vector<double> y) : y_(std::move(y)) {
  for (std::size_t i = 0; i < y_.size(); ++i) {
    if (y_[i] < 0.0) throw InvalidParameters("award values must be non-negative");
    if (i > 0 && y_[i] > y_[i - 1]) throw InvalidParameters("award values must be sorted non-increasing");
  }
}

ValueProfile ValueProfile::top_k_ones(int n, int k) {
  if (k < 0 || k > n) throw InvalidParameters("top-k-ones needs 0 <= k <= n");
  std::vector<double> y(static_cast<std::size_t>(n), 0.0);
  std::fill_n(y.begin(), k, 1.0);
  return ValueProfile(std::move(y));
}

double ValueProfile::opt(int k) const {
  const auto count = static_cast<std::ptrdiff_t>(std::min<std::size_t>(static_cast<std::size_t>(k), y_.size()));
  return std::accumulate(y_.begin(), y_.begin() + count, 0.0);
}

int GameState::active_rank(AgentId agent) const {
  int rank = 1;
  for (AgentId a = 0; a < agent; ++a) rank += is_active(a) ? 1 : 0;
  return rank;
}

int GameState::newest_rank() const {
  if (t > n) return 0;
  const auto it = std::find(ranking.begin(), ranking.end(), t);
  return static_cast<int>(it - ranking.begin()) + 1;
}

std::vector<AgentId> GameState::active_agents() const {
  std::vector<AgentId> agents;
  for (AgentId a = 0; a < k; ++a) {
    if (is_active(a)) agents.push_back(a);
  }
  return agents;
}

GameState new_game(int n, int k, TieRule tie, const ArrivalOrder& order) {
  if (k < 1 || k > n) {
    throw InvalidParameters("need 1 <= k <= n, got n=" + std::to_string(n) + " k=" + std::to_string(k));
  }
  if (order.n() != n) throw InvalidParameters("arrival order length differs from n");
  GameState state;
  state.n = n;
  state.k = k;
  state.tie = tie;
  state.t = 1;
  state.phase = Phase::Arrivals;
  state.ranking.reserve(static_cast<std::size_t>(n));
  state.ranking.push_back(1);
  state.holder.assign(static_cast<std::size_t>(n) + 1, -1);
  state.assignment.assign(static_cast<std::size_t>(k), 0);
  state.assigned_at.assign(static_cast<std::size_t>(k), 0);
  state.active_count = k;
  state.global_rank_.assign(static_cast<std::size_t>(n) + 1, 0);
  for (int t = 1; t <= n; ++t) state.global_rank_[static_cast<std::size_t>(t)] = order.rank_at(t);
  return state;
}

Observation observe(const GameState& state, AgentId agent) {
  Observation obs;
  obs.n = state.n;
  obs.k = state.k;
  obs.tie = state.tie;
  obs.t = state.t;
  obs.me = agent;
  obs.my_rank = state.active_rank(agent);
  obs.active_count = state.active_count;
  obs.newest_rank = state.newest_rank();
  obs.ranking = state.ranking;
  obs.holder = state.holder;
  return obs;
}

namespace {

void assign(GameState& state, AgentId agent, int slot) {
  state.holder[static_cast<std::size_t>(slot)] = agent;
  state.assignment[static_cast<std::size_t>(agent)] = slot;
  state.assigned_at[static_cast<std::size_t>(agent)] = state.t;
  --state.active_count;
}

}  // namespace

StepReport step(GameState& state, std::span<const Action> actions, RandomSource& rng) {
  if (static_cast<int>(actions.size()) != state.k) {
    throw InvalidParameters("step expects one action per agent");
  }
  if (state.active_count == 0) throw InvalidParameters("step called on a finished game");
  StepReport report;
  report.endgame_round = state.phase == Phase::Endgame;

  // (slot, agent) pairs; sorting groups selectors of a slot in agent order.
  std::vector<std::pair<int, AgentId>> selections;
  const int revealed = state.revealed();
  for (AgentId a = 0; a < state.k; ++a) {
    const Action& action = actions[static_cast<std::size_t>(a)];
    if (action.is_pass()) continue;
    if (!state.is_active(a)) throw InvalidAction(a, "inactive agent cannot select");
    if (action.slot < 1 || action.slot > revealed) {
      throw InvalidAction(a, "slot " + std::to_string(action.slot) + " has not been revealed");
    }
    if (!state.available(action.slot)) {
      throw InvalidAction(a, "slot " + std::to_string(action.slot) + " is not available");
    }
    selections.emplace_back(action.slot, a);
  }
  std::sort(selections.begin(), selections.end());
  report.selections = static_cast<int>(selections.size());

  for (std::size_t i = 0; i < selections.size();) {
    std::size_t j = i;
    while (j < selections.size() && selections[j].first == selections[i].first) ++j;
    const auto contenders = j - i;
    std::size_t pick = 0;
    if (contenders > 1 && state.tie == TieRule::Random) pick = rng.uniform_below(contenders);
    assign(state, selections[i + pick].second, selections[i].first);
    ++report.assignments;
    i = j;
  }

  ++state.t;
  if (state.t <= state.n) {
    const int slot = state.t;
    const int rank = state.global_rank_[static_cast<std::size_t>(slot)];
    auto pos = state.ranking.begin();
    while (pos != state.ranking.end() && state.global_rank_[static_cast<std::size_t>(*pos)] < rank) ++pos;
    state.ranking.insert(pos, slot);
  } else {
    state.phase = Phase::Endgame;
  }
  return report;
}

void force_assign(GameState& state, RandomSource& rng) {
  std::vector<AgentId> agents = state.active_agents();
  if (state.tie == TieRule::Random) {
    for (std::size_t i = agents.size(); i > 1; --i) {
      std::swap(agents[i - 1], agents[rng.uniform_below(i)]);
    }
  }
  std::size_t next = 0;
  for (int slot : state.ranking) {
    if (next == agents.size()) break;
    if (state.available(slot)) assign(state, agents[next++], slot);
  }
}

double OutcomeRecord::welfare(const ValueProfile& values) const {
  double total = 0.0;
  for (int rank : global_rank) total += values.value_of_rank(rank);
  return total;
}

std::vector<int> places(const OutcomeRecord& outcome) {
  const std::size_t k = outcome.global_rank.size();
  if (outcome.slot.size() != k) throw IncompleteGame("outcome has no slot record");
  for (std::size_t a = 0; a < k; ++a) {
    if (outcome.slot[a] == 0) throw IncompleteGame("agent " + std::to_string(a + 1) + " holds no award");
  }
  std::vector<std::size_t> agents(k);
  std::iota(agents.begin(), agents.end(), std::size_t{0});
  std::sort(agents.begin(), agents.end(),
            [&](std::size_t a, std::size_t b) { return outcome.global_rank[a] < outcome.global_rank[b]; });
  std::vector<int> result(k);
  for (std::size_t p = 0; p < k; ++p) result[agents[p]] = static_cast<int>(p) + 1;
  return result;
}

OutcomeRecord outcome_of(const GameState& state) {
  OutcomeRecord outcome;
  outcome.slot = state.assignment;
  outcome.assigned_at = state.assigned_at;
  outcome.global_rank.resize(static_cast<std::size_t>(state.k), 0);
  for (std::size_t a = 0; a < outcome.slot.size(); ++a) {
    if (outcome.slot[a] > 0) outcome.global_rank[a] = state.global_rank_[static_cast<std::size_t>(outcome.slot[a])];
  }
  if (state.active_count == 0) outcome.place = places(outcome);
  return outcome;
}

OutcomeRecord playout(const Profile& profile, int n, int k, TieRule tie, const ArrivalOrder& order,
                      RandomSource& rng) {
  if (static_cast<int>(profile.size()) != k) throw InvalidParameters("profile must hold one strategy per agent");
  GameState state = new_game(n, k, tie, order);
  std::vector<Action> actions(static_cast<std::size_t>(k));
  bool forced = false;
  while (state.active_count > 0) {
    for (AgentId a = 0; a < k; ++a) {
      actions[static_cast<std::size_t>(a)] =
          state.is_active(a) ? profile[static_cast<std::size_t>(a)]->sample(observe(state, a), rng) : Action::pass();
    }
    const StepReport report = step(state, actions, rng);
    if (report.endgame_round && report.selections == 0) {
      force_assign(state, rng);
      forced = true;
    }
  }
  OutcomeRecord outcome = outcome_of(state);
  outcome.forced = forced;
  return outcome;
}

}  // namespace secretary
