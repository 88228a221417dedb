#include <algorithm>
#include <cmath>
#include <set>

#include "doctest.h"
#include "secretary/random.hpp"

using namespace secretary;

TEST_CASE("philox4x32-10 known answers") {
  CHECK(philox4x32_10({0, 0, 0, 0}, {0, 0}) == PhiloxCounter{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(philox4x32_10({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
        PhiloxCounter{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(philox4x32_10({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
        PhiloxCounter{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("streams are reproducible and distinct") {
  PhiloxStream a(7, 3), b(7, 3), c(7, 4), d(8, 3);
  std::vector<std::uint64_t> xa, xb, xc, xd;
  for (int i = 0; i < 16; ++i) {
    xa.push_back(a.next_u64());
    xb.push_back(b.next_u64());
    xc.push_back(c.next_u64());
    xd.push_back(d.next_u64());
  }
  CHECK(xa == xb);
  CHECK(xa != xc);
  CHECK(xa != xd);
}

TEST_CASE("uniform_below stays in range and is roughly flat") {
  PhiloxStream rng(1, 0);
  std::vector<int> counts(6, 0);
  const int N = 60000;
  for (int i = 0; i < N; ++i) {
    const auto x = rng.uniform_below(6);
    REQUIRE(x < 6);
    ++counts[x];
  }
  for (int c : counts) CHECK(std::abs(c - N / 6) < 5 * std::sqrt(N / 6.0));
  CHECK(rng.uniform_below(1) == 0);
  for (int i = 0; i < 1000; ++i) {
    const double u = rng.next_double();
    CHECK((u >= 0.0 && u < 1.0));
  }
}

TEST_CASE("random_permutation is a permutation and covers all orders") {
  PhiloxStream rng(3, 0);
  std::set<std::vector<int>> seen;
  for (int i = 0; i < 2000; ++i) {
    auto p = random_permutation(4, rng);
    auto sorted = p;
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted == std::vector<int>{1, 2, 3, 4});
    seen.insert(p);
  }
  CHECK(seen.size() == 24);
}
