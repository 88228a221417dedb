#include <cmath>
#include <set>

#include "doctest.h"
#include "oracle.hpp"
#include "secretary/engine.hpp"
#include "secretary/place_vector.hpp"

using namespace secretary;

namespace {

std::vector<Action> passes(int k) { return std::vector<Action>(static_cast<std::size_t>(k), Action::pass()); }

}  // namespace

TEST_CASE("arrival orders must be permutations") {
  CHECK_NOTHROW(ArrivalOrder({2, 1, 3}));
  CHECK_THROWS_AS(ArrivalOrder({1, 1, 3}), InvalidParameters);
  CHECK_THROWS_AS(ArrivalOrder({0, 1}), InvalidParameters);
  PhiloxStream rng(1, 0);
  const auto order = ArrivalOrder::sample(9, rng);
  CHECK(order.n() == 9);
}

TEST_CASE("value profiles") {
  CHECK_THROWS_AS(ValueProfile({1.0, 2.0}), InvalidParameters);
  CHECK_THROWS_AS(ValueProfile({1.0, -1.0}), InvalidParameters);
  const ValueProfile y({5.0, 3.0, 3.0, 1.0});
  CHECK(y.opt(2) == 8.0);
  CHECK(ValueProfile::top_k_ones(5, 2).opt(2) == 2.0);
  CHECK(ValueProfile::top_k_ones(5, 2).value_of_rank(3) == 0.0);
}

TEST_CASE("new_game") {
  const GameState one = new_game(1, 1, TieRule::Random, ArrivalOrder({1}));
  CHECK(one.t == 1);
  CHECK(one.revealed() == 1);
  CHECK(one.active_count == 1);

  const GameState s = new_game(3, 2, TieRule::Ranked, ArrivalOrder({2, 1, 3}));
  CHECK(s.t == 1);
  CHECK(s.ranking == std::vector<int>{1});
  CHECK(s.newest_rank() == 1);
  CHECK(s.phase == Phase::Arrivals);
  CHECK(s.active_count == 2);

  CHECK_THROWS_AS(new_game(3, 4, TieRule::Random, ArrivalOrder({1, 2, 3})), InvalidParameters);
  CHECK_THROWS_AS(new_game(3, 0, TieRule::Random, ArrivalOrder({1, 2, 3})), InvalidParameters);
  CHECK_THROWS_AS(new_game(3, 1, TieRule::Random, ArrivalOrder({1, 2})), InvalidParameters);
}

TEST_CASE("step: ranked contest goes to the lower index") {
  GameState s = new_game(3, 2, TieRule::Ranked, ArrivalOrder({2, 1, 3}));
  PhiloxStream rng(1, 0);
  const std::vector<Action> both{Action::select(1), Action::select(1)};
  const StepReport r = step(s, both, rng);
  CHECK(r.selections == 2);
  CHECK(r.assignments == 1);
  CHECK(s.assignment[0] == 1);
  CHECK(s.is_active(1));
  CHECK(!s.available(1));
  CHECK(s.active_count == 1);
  // Time advanced and v_2 (global rank 1) is now the best so far.
  CHECK(s.t == 2);
  CHECK(s.ranking == std::vector<int>{2, 1});
}

TEST_CASE("step: all pass reveals one more award") {
  GameState s = new_game(3, 2, TieRule::Random, ArrivalOrder({2, 3, 1}));
  PhiloxStream rng(1, 0);
  step(s, passes(2), rng);
  CHECK(s.t == 2);
  CHECK(s.ranking == std::vector<int>{1, 2});
  CHECK(s.newest_rank() == 2);
  step(s, passes(2), rng);
  CHECK(s.ranking == std::vector<int>{3, 1, 2});
  CHECK(s.newest_rank() == 1);
  step(s, passes(2), rng);
  CHECK(s.t == 4);
  CHECK(s.phase == Phase::Endgame);
  CHECK(s.revealed() == 3);
}

TEST_CASE("step: invalid targets name the agent") {
  GameState s = new_game(3, 2, TieRule::Random, ArrivalOrder({1, 2, 3}));
  PhiloxStream rng(1, 0);
  const std::vector<Action> unrevealed{Action::pass(), Action::select(2)};
  try {
    step(s, unrevealed, rng);
    FAIL("expected InvalidAction");
  } catch (const InvalidAction& e) {
    CHECK(e.agent() == 1);
  }
  const std::vector<Action> first{Action::select(1), Action::pass()};
  step(s, first, rng);
  const std::vector<Action> taken{Action::pass(), Action::select(1)};
  CHECK_THROWS_AS(step(s, taken, rng), InvalidAction);
  // inactive agents may only pass
  const std::vector<Action> inactive{Action::select(2), Action::pass()};
  CHECK_THROWS_AS(step(s, inactive, rng), InvalidAction);
}

TEST_CASE("step: random ties split evenly") {
  const int N = 100'000;
  int wins = 0;
  const std::vector<Action> both{Action::select(1), Action::select(1)};
  for (int i = 0; i < N; ++i) {
    GameState s = new_game(2, 2, TieRule::Random, ArrivalOrder({1, 2}));
    PhiloxStream rng(11, static_cast<std::uint64_t>(i));
    step(s, both, rng);
    if (s.assignment[0] == 1) ++wins;
  }
  CHECK(std::abs(static_cast<double>(wins) / N - 0.5) <= 4.0 * std::sqrt(1.0 / (4.0 * N)));
}

TEST_CASE("places") {
  OutcomeRecord two;
  two.slot = {1, 2};
  two.global_rank = {3, 1};
  CHECK(places(two) == std::vector<int>{2, 1});
  OutcomeRecord one;
  one.slot = {1};
  one.global_rank = {7};
  CHECK(places(one) == std::vector<int>{1});
  OutcomeRecord three;
  three.slot = {1, 2, 3};
  three.global_rank = {5, 2, 9};
  CHECK(places(three) == std::vector<int>{2, 1, 3});
  OutcomeRecord incomplete;
  incomplete.slot = {1, 0};
  incomplete.global_rank = {2, 0};
  CHECK_THROWS_AS(places(incomplete), IncompleteGame);
  GameState s = new_game(3, 2, TieRule::Random, ArrivalOrder({1, 2, 3}));
  CHECK_THROWS_AS(places(outcome_of(s)), IncompleteGame);
}

TEST_CASE("playout: single agent selecting at t = n wins") {
  ScriptPattern row;
  row.action = RankAction::SelectMaxAvailable;
  for (int n = 1; n <= 6; ++n) {
    row.t_min = n;
    const Profile profile{std::make_shared<ScriptedStrategy>(std::vector<ScriptPattern>{row})};
    PhiloxStream rng(5, static_cast<std::uint64_t>(n));
    const auto out = playout(profile, n, 1, TieRule::Random, ArrivalOrder::sample(n, rng), rng);
    CHECK(out.place[0] == 1);
    CHECK(out.global_rank[0] == 1);
    CHECK(out.assigned_at[0] == n);
  }
}

TEST_CASE("playout: sigma with n = k allocates everything") {
  const Profile profile(2, std::make_shared<SigmaStrategy>());
  for (const auto& ranks : {std::vector<int>{1, 2}, std::vector<int>{2, 1}}) {
    PhiloxStream rng(1, 0);
    const auto out = playout(profile, 2, 2, TieRule::Random, ArrivalOrder(ranks), rng);
    CHECK(std::set<int>(out.place.begin(), out.place.end()) == std::set<int>{1, 2});
    CHECK(std::set<int>(out.slot.begin(), out.slot.end()) == std::set<int>{1, 2});
  }
}

TEST_CASE("playout: sigma, k = 2, n = 4 by exhaustive enumeration") {
  const Profile profile(2, std::make_shared<SigmaStrategy>());
  const auto res = oracle::outcome(profile, 4, 2, TieRule::Random);
  for (const auto& p : res.places) {
    CHECK(p[0] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(p[1] == doctest::Approx(0.5).epsilon(1e-14));
  }
}

TEST_CASE("playout: obstinate passers are force-assigned") {
  const Profile profile(3, std::make_shared<AlwaysPassStrategy>());
  PhiloxStream rng(2, 0);
  const auto ranked = playout(profile, 5, 3, TieRule::Ranked, ArrivalOrder({4, 1, 5, 3, 2}), rng);
  CHECK(ranked.forced);
  CHECK(ranked.global_rank == std::vector<int>{1, 2, 3});
  // the empty round is played at t = 6; the forced assignment lands at t = 7
  CHECK(ranked.assigned_at == std::vector<int>{7, 7, 7});
  const auto random = playout(profile, 5, 3, TieRule::Random, ArrivalOrder({4, 1, 5, 3, 2}), rng);
  CHECK(std::set<int>(random.global_rank.begin(), random.global_rank.end()) == std::set<int>{1, 2, 3});
}

TEST_CASE("playout: conservation and determinism") {
  const std::vector<Profile> profiles{
      Profile(3, std::make_shared<SigmaStrategy>()),
      Profile(3, std::make_shared<GrabFirstStrategy>()),
      Profile{std::make_shared<ClassicalStrategy>(), std::make_shared<AlwaysPassStrategy>(),
              std::make_shared<SigmaNonMaxStrategy>()},
      Profile(3, std::make_shared<MixedStrategy>(std::make_shared<SigmaStrategy>(),
                                                 std::make_shared<GrabFirstStrategy>(), 0.5)),
  };
  for (const auto& profile : profiles) {
    for (TieRule tie : {TieRule::Random, TieRule::Ranked}) {
      for (std::uint64_t trial = 0; trial < 200; ++trial) {
        PhiloxStream rng(9, trial), again(9, trial);
        const auto order = ArrivalOrder::sample(10, rng);
        const auto out = playout(profile, 10, 3, tie, order, rng);
        ArrivalOrder::sample(10, again);
        const auto replay = playout(profile, 10, 3, tie, order, again);
        CHECK(std::set<int>(out.slot.begin(), out.slot.end()).size() == 3);
        CHECK(std::set<int>(out.place.begin(), out.place.end()) == std::set<int>{1, 2, 3});
        CHECK(out.slot == replay.slot);
        CHECK(out.assigned_at == replay.assigned_at);
      }
    }
  }
}

TEST_CASE("welfare sums the held values") {
  OutcomeRecord out;
  out.global_rank = {2, 4};
  CHECK(out.welfare(ValueProfile({9, 5, 3, 1})) == 6.0);
}

TEST_CASE("lex_compare") {
  CHECK(lex_compare({0.4, 0.1}, {0.4, 0.2}) == LexOrder::Less);
  CHECK(lex_compare({0.5, 0.0}, {0.4, 0.6}) == LexOrder::Greater);
  CHECK(lex_compare({0.3, 0.7}, {0.3, 0.7}) == LexOrder::Equal);
  CHECK(lex_compare({0.5, 0.5}, {0.5 + 1e-14, 0.4}) == LexOrder::Greater);
  CHECK_THROWS_AS(lex_compare({0.5}, {0.5, 0.5}), InvalidParameters);
}
