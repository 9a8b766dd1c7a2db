#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "lmlab/combinatorics.hpp"
#include "lmlab/rng.hpp"

using namespace lmlab;

TEST_CASE("binomial table basics") {
  CHECK(binom(0, 0) == 1);
  CHECK(binom(5, 2) == 10);
  CHECK(binom(16, 4) == 1820);
  CHECK(binom(50, 2) == 1225);
  CHECK(binom(4, 7) == 0);
  CHECK_THROWS_AS(binom(65, 2), std::out_of_range);
}

TEST_CASE("colex rank pins the documented examples") {
  CHECK(colex_rank({0, 1}) == 0);
  CHECK(colex_rank({2, 3}) == 5);
  CHECK(colex_rank({0, 1, 2}) == 0);
}

TEST_CASE("colex rank/unrank is a bijection for all faces with n <= 10") {
  for (int n = 1; n <= 10; ++n) {
    for (int count = 1; count <= std::min(n, 4); ++count) {
      std::set<index_t> seen;
      for_each_combination(n, count, [&](const std::vector<int>& verts) {
        index_t r = colex_rank(verts);
        REQUIRE(r >= 0);
        REQUIRE(r < binom(n, count));
        REQUIRE(seen.insert(r).second);
        CHECK(colex_unrank(r, count) == verts);
      });
      REQUIRE(static_cast<index_t>(seen.size()) == binom(n, count));
    }
  }
}

TEST_CASE("combination enumeration is in colex order") {
  std::vector<index_t> ranks;
  for_each_combination(6, 3, [&](const std::vector<int>& verts) {
    ranks.push_back(colex_rank(verts));
  });
  REQUIRE(ranks.size() == 20);
  for (std::size_t i = 0; i + 1 < ranks.size(); ++i) CHECK(ranks[i] + 1 == ranks[i + 1]);
}

TEST_CASE("splitmix stream is stable across runs") {
  seeded_rng a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
  // frozen reference values guard cross-platform drift
  seeded_rng c(1);
  CHECK(c.next_u64() == 0x910a2dec89025cc1ULL);
  CHECK(c.next_u64() == 0xbeeb8da1658eec67ULL);
}

TEST_CASE("bounded draw never exceeds its bound and hits all residues") {
  seeded_rng rng(7);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 1000; ++i) {
    auto v = rng.next_below(6);
    REQUIRE(v < 6);
    seen.insert(v);
  }
  CHECK(seen.size() == 6);
}

TEST_CASE("derived trial seeds differ across trials and masters") {
  CHECK(derive_seed(1, 0) != derive_seed(1, 1));
  CHECK(derive_seed(1, 0) != derive_seed(2, 0));
  CHECK(derive_seed(5, 9) == derive_seed(5, 9));
}
