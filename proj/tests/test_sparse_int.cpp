#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "lmlab/fields.hpp"
#include "lmlab/homology.hpp"
#include "lmlab/kernel_tracker.hpp"
#include "lmlab/sparse_int.hpp"
#include "oracles.hpp"

using namespace lmlab;

namespace {

sparse_int_matrix from_dense(const std::vector<std::vector<int>>& rows) {
  sparse_int_matrix m(static_cast<index_t>(rows.size()),
                      rows.empty() ? 0 : static_cast<index_t>(rows[0].size()));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c)
      if (rows[r][c] != 0) m.set(static_cast<index_t>(r), static_cast<index_t>(c), rows[r][c]);
  return m;
}

std::vector<bigint> factors(const sparse_int_matrix& m) {
  return smith_normal_form(m).invariant_factors;
}

}  // namespace

TEST_CASE("smith normal form on the documented matrices") {
  CHECK(factors(from_dense({{2, 0}, {0, 3}})) == std::vector<bigint>{1, 6});
  CHECK(factors(sparse_int_matrix::identity(3)) == std::vector<bigint>{1, 1, 1});
  auto s = smith_normal_form(from_dense({{2, 4}, {4, 8}}));
  CHECK(s.rank == 1);
  CHECK(s.invariant_factors == std::vector<bigint>{2});
  CHECK(factors(sparse_int_matrix(0, 0)).empty());
  CHECK(factors(sparse_int_matrix(3, 2)).empty());
}

TEST_CASE("sparse SNF matches the determinantal-divisor reference on 500 random matrices") {
  seeded_rng rng(2024);
  for (int trial = 0; trial < 500; ++trial) {
    index_t rows = 1 + static_cast<index_t>(rng.next_below(8));
    index_t cols = 1 + static_cast<index_t>(rng.next_below(8));
    auto m = random_matrix(rng, rows, cols, -5, 5);
    auto mine = smith_normal_form(m, true);
    auto ref = oracles::minor_gcd_invariants(m);
    REQUIRE(mine.invariant_factors == ref);
    for (std::size_t i = 0; i + 1 < mine.invariant_factors.size(); ++i)
      CHECK(mine.invariant_factors[i + 1] % mine.invariant_factors[i] == 0);
    // U * M * V must reproduce the diagonal exactly, with unimodular U, V
    REQUIRE(mine.left.has_value());
    REQUIRE(mine.right.has_value());
    auto prod = multiply(multiply(*mine.left, m), *mine.right);
    sparse_int_matrix expect(m.rows, m.cols);
    for (std::size_t i = 0; i < mine.invariant_factors.size(); ++i)
      expect.set(static_cast<index_t>(i), static_cast<index_t>(i), mine.invariant_factors[i]);
    REQUIRE(prod == expect);
    CHECK(abs(oracles::dense_det(oracles::to_dense(*mine.left))) == 1);
    CHECK(abs(oracles::dense_det(oracles::to_dense(*mine.right))) == 1);
  }
}

TEST_CASE("the two test oracles agree with each other") {
  seeded_rng rng(31);
  for (int trial = 0; trial < 150; ++trial) {
    index_t rows = 1 + static_cast<index_t>(rng.next_below(5));
    index_t cols = 1 + static_cast<index_t>(rng.next_below(5));
    auto m = random_matrix(rng, rows, cols, -4, 4);
    auto a = oracles::minor_gcd_invariants(m);
    auto b = oracles::dense_snf(oracles::to_dense(m));
    REQUIRE(a == b);
  }
}

TEST_CASE("rank over prime fields") {
  auto d23 = from_dense({{2, 0}, {0, 3}});
  CHECK(rank_mod_q(d23, 2) == 1);
  CHECK(rank_mod_q(d23, 5) == 2);
  CHECK(rank_mod_q(sparse_int_matrix(3, 3), 7) == 0);
  CHECK_THROWS_AS(rank_mod_q(d23, 6), std::invalid_argument);
}

TEST_CASE("rational rank: exact, matches SNF rank and the modular relation") {
  CHECK(rank_rational(from_dense({{1, 2}, {2, 4}})) == 1);
  CHECK(rank_rational(sparse_int_matrix::identity(5)) == 5);
  seeded_rng rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    index_t rows = 1 + static_cast<index_t>(rng.next_below(6));
    index_t cols = 1 + static_cast<index_t>(rng.next_below(6));
    auto m = random_matrix(rng, rows, cols, -4, 4);
    auto s = smith_normal_form(m);
    index_t rr = rank_rational(m);
    REQUIRE(rr == s.rank);
    for (std::int64_t q : {2, 3, 5, 7, 11}) {
      index_t drop = 0;
      for (const auto& f : s.invariant_factors)
        if (f % q == 0) ++drop;
      CHECK(rank_mod_q(m, q) == rr - drop);
    }
  }
}

TEST_CASE("cokernel torsion") {
  CHECK(cokernel_torsion(from_dense({{2, 0}, {0, 3}})) == std::vector<bigint>{6});
  CHECK(cokernel_torsion(sparse_int_matrix::identity(4)).empty());
  CHECK(cokernel_torsion(from_dense({{2, 0}, {0, 2}})) == std::vector<bigint>{2, 2});
}

TEST_CASE("column-norm torsion bound") {
  SECTION("documented cases") {
    auto rep = torsion_bound_holds(from_dense({{2, 0}, {0, 3}}));
    CHECK(rep.holds);
    CHECK(rep.coker_torsion_size == 6);
    CHECK(rep.bound == 9);  // ceil(norm)=3, rank 2
    auto id = torsion_bound_holds(sparse_int_matrix::identity(3));
    CHECK(id.holds);
    CHECK(id.coker_torsion_size == 1);
  }
  SECTION("monte carlo audit, 1000 matrices") {
    seeded_rng rng(555);
    for (int trial = 0; trial < 1000; ++trial) {
      index_t rows = 1 + static_cast<index_t>(rng.next_below(6));
      index_t cols = 1 + static_cast<index_t>(rng.next_below(6));
      auto m = random_matrix(rng, rows, cols, -3, 3);
      REQUIRE(torsion_bound_holds(m).holds);
    }
  }
}

TEST_CASE("canonical square completion") {
  SECTION("single column (2,0): appends e2") {
    auto n = from_dense({{2}, {0}});
    auto sq = complete_to_square(n);
    CHECK(sq == from_dense({{2, 0}, {0, 1}}));
  }
  SECTION("identity is unchanged") {
    auto id = sparse_int_matrix::identity(2);
    CHECK(complete_to_square(id) == id);
  }
  SECTION("column (0,3): appends e1, torsion preserved") {
    auto n = from_dense({{0}, {3}});
    auto sq = complete_to_square(n);
    CHECK(sq == from_dense({{0, 1}, {3, 0}}));
    CHECK(cokernel_torsion(n) == std::vector<bigint>{3});
    CHECK(cokernel_torsion(sq) == std::vector<bigint>{3});
  }
  SECTION("dependent columns rejected") {
    CHECK_THROWS_AS(complete_to_square(from_dense({{1, 2}, {2, 4}})), std::invalid_argument);
  }
  SECTION("random tall matrices: result square, torsion divides") {
    seeded_rng rng(8);
    for (int trial = 0; trial < 100; ++trial) {
      index_t rows = 2 + static_cast<index_t>(rng.next_below(4));
      index_t cols = 1 + static_cast<index_t>(rng.next_below(static_cast<std::uint64_t>(rows)));
      auto m = random_matrix(rng, rows, cols, -3, 3);
      if (rank_rational(m) != cols) continue;
      auto sq = complete_to_square(m);
      REQUIRE(sq.rows == rows);
      REQUIRE(sq.cols == rows);
      REQUIRE(rank_rational(sq) == rows);
      bigint before = 1, after = 1;
      for (const auto& f : cokernel_torsion(m)) before *= f;
      for (const auto& f : cokernel_torsion(sq)) after *= f;
      CHECK(after % before == 0);
    }
  }
}

TEST_CASE("matrix dump round-trip") {
  auto m = from_dense({{0, -2, 0}, {1, 0, 7}});
  std::stringstream ss(m.dump());
  auto back = sparse_int_matrix::parse(ss);
  CHECK(back == m);
  CHECK(m.dump().substr(0, 3) == "2 3");
}

TEST_CASE("kernel tracker over GF(q) and Q") {
  SECTION("single tracked facet, covering row drops the dimension") {
    kernel_tracker<gf_field> t(gf_field(2), {face_rank(face{0, 1}, 3)});
    CHECK(t.dimension() == 1);
    CHECK(t.push_face(face{0, 1, 2}, 3) == 0);
  }
  SECTION("non-incident row changes nothing") {
    kernel_tracker<gf_field> t(gf_field(3), {face_rank(face{0, 1}, 4)});
    CHECK(t.push_face(face{1, 2, 3}, 4) == 1);
  }
  SECTION("two facets of a triangle: one row has rank 1") {
    std::vector<index_t> cols{face_rank(face{0, 1}, 3), face_rank(face{0, 2}, 3)};
    kernel_tracker<rat_field> t(rat_field{}, cols);
    CHECK(t.dimension() == 2);
    CHECK(t.push_face(face{0, 1, 2}, 3) == 1);
  }
  SECTION("dimension decreases weakly and matches the matrix kernel") {
    seeded_rng rng(77);
    const int n = 5, d = 2;
    std::vector<index_t> cols;
    for (index_t r = 0; r < binom(n, d); ++r)
      if (rng.next_below(2)) cols.push_back(r);
    if (cols.empty()) cols.push_back(0);
    kernel_tracker<gf_field> t(gf_field(5), cols);
    complex y(n, d);
    int prev = t.dimension();
    for (index_t fr = 0; fr < y.max_faces(); ++fr) {
      face f = face_unrank(fr, d, n);
      int dim = t.push_face(f, n);
      CHECK(dim <= prev);
      CHECK(prev - dim <= 1);
      prev = dim;
      y.add_face_rank(fr);
    }
    // final dimension equals |cols| - rank of the full restricted coboundary
    auto top = boundary_matrix(y, d);  // facets x faces
    sparse_int_matrix restricted(static_cast<index_t>(y.face_ranks.size()),
                                 static_cast<index_t>(cols.size()));
    auto topt = top.transposed();
    for (index_t r = 0; r < restricted.rows; ++r)
      for (std::size_t ci = 0; ci < cols.size(); ++ci) {
        bigint v = topt.get(r, cols[ci]);
        if (v != 0) restricted.set(r, static_cast<index_t>(ci), v);
      }
    CHECK(t.dimension() ==
          static_cast<int>(cols.size()) - static_cast<int>(rank_mod_q(restricted, 5)));
  }
}
