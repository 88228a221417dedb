#include <cmath>

#include "doctest.h"
#include "oracle.hpp"
#include "secretary/exact.hpp"
#include "secretary/montecarlo.hpp"
#include "secretary/ranked.hpp"

using namespace secretary;

namespace {

Profile sigmas(int k) { return Profile(static_cast<std::size_t>(k), std::make_shared<SigmaStrategy>()); }

McOptions opts(std::uint64_t trials, std::uint64_t seed, int threads = 1) {
  McOptions o;
  o.trials = trials;
  o.seed = seed;
  o.threads = threads;
  return o;
}

bool identical(const EstimateReport& a, const EstimateReport& b) {
  return a.quantity == b.quantity && a.estimate == b.estimate && a.std_error == b.std_error && a.ci99 == b.ci99 &&
         a.trials == b.trials && a.seed == b.seed;
}

bool identical(const SimulationReport& a, const SimulationReport& b) {
  bool same = identical(a.forced, b.forced) && identical(a.welfare, b.welfare) &&
              identical(a.welfare_ratio, b.welfare_ratio) && identical(a.selected_before_topk, b.selected_before_topk) &&
              identical(a.unselected_topk, b.unselected_topk);
  for (std::size_t i = 0; i < a.places.size(); ++i) {
    for (std::size_t j = 0; j < a.places[i].size(); ++j) same = same && identical(a.places[i][j], b.places[i][j]);
    same = same && identical(a.top_award[i], b.top_award[i]);
  }
  for (std::size_t r = 0; r < a.rank_selected.size(); ++r) same = same && identical(a.rank_selected[r], b.rank_selected[r]);
  return same;
}

}  // namespace

TEST_CASE("reports are reproducible and independent of the thread count") {
  const auto values = ValueProfile::top_k_ones(20, 3);
  const auto a = simulate(sigmas(3), 20, 3, TieRule::Random, values, opts(10'000, 5));
  const auto b = simulate(sigmas(3), 20, 3, TieRule::Random, values, opts(10'000, 5));
  const auto c = simulate(sigmas(3), 20, 3, TieRule::Random, values, opts(10'000, 5, 4));
  const auto d = simulate(sigmas(3), 20, 3, TieRule::Random, values, opts(10'000, 6));
  CHECK(identical(a, b));
  CHECK(identical(a, c));
  CHECK_FALSE(identical(a, d));
}

TEST_CASE("estimates are well formed") {
  const auto r = simulate(sigmas(3), 12, 3, TieRule::Random, ValueProfile::top_k_ones(12, 3), opts(5'000, 2));
  for (const auto& agent : r.places) {
    double total = 0.0;
    for (const auto& e : agent) {
      total += e.estimate;
      CHECK(e.estimate >= 0.0);
      CHECK(e.estimate <= 1.0);
      CHECK(std::abs(e.ci99 - kZ99 * e.std_error) <= 1e-15);
      CHECK(e.trials == 5'000);
      CHECK(e.seed == 2);
    }
    CHECK(std::abs(total - 1.0) <= 1e-12);
  }
  CHECK_THROWS_AS(simulate(sigmas(3), 12, 3, TieRule::Random, ValueProfile::top_k_ones(12, 3), opts(0, 2)),
                  InvalidParameters);
  CHECK_THROWS_AS(simulate(sigmas(2), 12, 3, TieRule::Random, ValueProfile::top_k_ones(12, 3), opts(10, 2)),
                  InvalidParameters);
}

TEST_CASE("assignments do not depend on the award values") {
  const auto a = simulate(sigmas(3), 15, 3, TieRule::Random, ValueProfile::top_k_ones(15, 3), opts(3'000, 8));
  std::vector<double> y;
  for (int i = 15; i >= 1; --i) y.push_back(i * i);
  const auto b = simulate(sigmas(3), 15, 3, TieRule::Random, ValueProfile(y), opts(3'000, 8));
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) CHECK(identical(a.places[i][j], b.places[i][j]));
  }
}

TEST_CASE("99% intervals cover the exact value") {
  int covered = 0;
  for (std::uint64_t rep = 0; rep < 100; ++rep) {
    const auto p = estimate_places(sigmas(2), 8, 2, TieRule::Random, opts(4'000, 1000 + rep));
    if (std::abs(p[0][0].estimate - 0.5) <= p[0][0].ci99) ++covered;
  }
  CHECK(covered >= 95);
}

TEST_CASE("Monte Carlo agrees with the exact solvers") {
  // randomized profile; nine coordinates, so a 4-sigma band per coordinate
  const auto mixed = std::make_shared<MixedStrategy>(std::make_shared<SigmaStrategy>(),
                                                     std::make_shared<GrabFirstStrategy>(), 0.7);
  const Profile profile{mixed, std::make_shared<SigmaStrategy>(), std::make_shared<ClassicalStrategy>()};
  const auto exact = outcome_distribution(profile, 7, 3, TieRule::Random);
  const auto mc = estimate_places(profile, 7, 3, TieRule::Random, opts(200'000, 3, 4));
  for (std::size_t a = 0; a < 3; ++a) {
    for (std::size_t j = 0; j < 3; ++j) CHECK(std::abs(mc[a][j].estimate - exact.places[a][j]) <= 4.0 * mc[a][j].std_error);
  }

  // welfare of sigma on top-2-ones at n = 6 is 9/5 by enumeration
  const auto values = ValueProfile::top_k_ones(6, 2);
  const auto brute = oracle::outcome(sigmas(2), 6, 2, TieRule::Random, values);
  CHECK(std::abs(brute.welfare - 1.8) <= 1e-12);
  const auto w = estimate_welfare(sigmas(2), values, 2, TieRule::Random, opts(200'000, 4));
  CHECK(std::abs(w.welfare.estimate - 1.8) <= w.welfare.ci99);
  CHECK(std::abs(w.ratio.estimate - 0.9) <= w.ratio.ci99);
  CHECK(w.opt == 2.0);

  // ranked equilibrium thresholds, k = 3, n = 200
  const auto eq = ranked_equilibrium_thresholds(200, 3);
  const Profile ranked(3, std::make_shared<ThresholdStrategy>(eq.thresholds));
  const auto p = estimate_places(ranked, 200, 3, TieRule::Ranked, opts(100'000, 9, 4));
  for (std::size_t a = 0; a < 3; ++a) CHECK(std::abs(p[a][0].estimate - eq.first_place[a]) <= p[a][0].ci99);
}

TEST_CASE("single agent: welfare ratio is the top-award rate") {
  const Profile classical{std::make_shared<ClassicalStrategy>()};
  const auto r = simulate(classical, 100, 1, TieRule::Random, ValueProfile::top_k_ones(100, 1), opts(50'000, 12));
  CHECK(r.welfare_ratio.estimate == r.top_award[0].estimate);
  CHECK(std::abs(r.top_award[0].estimate - 0.371042778712643) <= r.top_award[0].ci99);
}

TEST_CASE("top-k selection statistics under sigma") {
  const auto s = topk_selection_stats(sigmas(3), 30, 3, TieRule::Random, opts(100'000, 21, 4));
  CHECK(s.selected_before_topk.estimate < 2.7 / std::exp(1.0));
  CHECK(s.selected_before_below_one);
  CHECK(s.unselected_below_one);
  CHECK(s.rank_monotone);
  CHECK(s.rank_selected.size() == 30);
}

TEST_CASE("welfare bounds") {
  CHECK(std::abs(welfare_gap_constant(6, 2) - 1.0 / 15.0) <= 1e-15);
  CHECK(welfare_gap_constant(4, 4) == 0.0);
  const auto w = welfare_upper_example(40, 2, opts(100'000, 31, 4));
  CHECK(w.within_bound);
  CHECK(w.gap_positive);
  CHECK(w.c_limit == 0.25);
  CHECK(w.ratio.estimate >= 0.5 - w.ratio.ci99);
  CHECK_THROWS_AS(welfare_upper_example(40, 1, opts(10, 1)), InvalidParameters);
}
