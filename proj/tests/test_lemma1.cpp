#include <map>
#include <tuple>

#include "doctest.h"
#include "oracle.hpp"
#include "secretary/lemma1.hpp"

using namespace secretary;

namespace {

bool same(const PlacePair& a, const PlacePair& b, double tol = 1e-12) {
  return std::abs(a.first - b.first) <= tol && std::abs(a.second - b.second) <= tol;
}

const Lemma1Row* find_row(const Lemma1Report& r, int t, int l, char cls) {
  for (const auto& row : r.rows) {
    if (row.t == t && row.l == l && row.state_class == cls) return &row;
  }
  return nullptr;
}

}  // namespace

TEST_CASE("closed-form bounds") {
  for (int n : {3, 7, 12}) {
    const auto q = lemma1_bounds(n, n, 3);
    CHECK(same(q.A, {1.0 / 3, 1.0 / 3}));
    CHECK(same(q.B, {1.0 / 3, 0.0}));
    for (int t = 1; t <= n; ++t) {
      const auto one = lemma1_bounds(n, t, 1);
      CHECK(same(one.A, {1.0, 0.0}));
      CHECK(same(one.B, {1.0, 0.0}));
      for (int l = 1; l <= 4; ++l) {
        const auto b = lemma1_bounds(n, t, l);
        for (const PlacePair& p : {b.A, b.B, b.C, b.D}) {
          CHECK(p.first >= 0.0);
          CHECK(p.first <= 1.0);
          CHECK(p.second >= 0.0);
          CHECK(p.second <= 1.0);
        }
      }
    }
  }
  CHECK(same(lemma1_bounds(10, 5, 2).D, {0.25, 0.25}));
  CHECK(same(lemma1_bounds(8, 3, 1).C, {5.0 / 8, 3.0 / 8}));
  CHECK(same(lemma1_bounds(1, 1, 1).D, {0.0, 0.0}));
  CHECK_THROWS_AS(lemma1_bounds(5, 0, 2), InvalidParameters);
  CHECK_THROWS_AS(lemma1_bounds(5, 6, 2), InvalidParameters);
  CHECK_THROWS_AS(lemma1_bounds(5, 3, 0), InvalidParameters);
}

TEST_CASE("exact pairs dominate the bounds") {
  for (int k = 1; k <= 4; ++k) {
    for (int n = k; n <= 12; ++n) {
      CAPTURE(n);
      CAPTURE(k);
      const auto r = check_lemma1(n, k);
      CHECK(r.violations == 0);
      CHECK(r.state_violations == 0);
      CHECK(r.min_slack >= -1e-12);
      CHECK_FALSE(r.rows.empty());
    }
  }
}

TEST_CASE("n = k = 2 is all base cases") {
  const auto r = check_lemma1(2, 2);
  const auto* a = find_row(r, 2, 2, 'A');
  if (a) CHECK(same(a->exact, a->bound));
  const auto* first = find_row(r, 1, 2, 'B');
  REQUIRE(first);
  CHECK(same(first->exact, {0.5, 0.5}));
}

TEST_CASE("exact pairs agree with exhaustive enumeration for n <= 8") {
  for (int k = 1; k <= 4; ++k) {
    for (int n = k; n <= 8; ++n) {
      CAPTURE(n);
      CAPTURE(k);
      const auto r = check_lemma1(n, k);
      const auto brute = oracle::lemma1_pairs(n, k);
      CHECK(brute.size() == r.rows.size());
      for (const auto& row : r.rows) {
        const auto it = brute.find({row.t, row.l, row.state_class});
        REQUIRE(it != brute.end());
        CHECK(same(row.exact, it->second));
      }
    }
  }
}

TEST_CASE("reference pairs at n = 8, k = 2") {
  const auto r = check_lemma1(8, 2);
  for (int t = 2; t <= 4; ++t) {
    const auto* row = find_row(r, t, 2, 'A');
    REQUIRE(row);
    CHECK(same(row->exact, {0.5, 0.5}));
  }
  const auto* b = find_row(r, 1, 2, 'B');
  REQUIRE(b);
  CHECK(same(b->exact, {0.5, 0.5}));
  for (int t = 4; t <= 7; ++t) {
    const auto* c = find_row(r, t, 1, 'C');
    REQUIRE(c);
    CHECK(same(c->exact, {(8.0 - t) / 8, t / 8.0}));
  }
  for (const auto& row : r.rows) {
    if (row.l == 1 && (row.state_class == 'A' || row.state_class == 'B')) CHECK(same(row.exact, {1.0, 0.0}));
  }
}
