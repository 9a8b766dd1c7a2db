#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "lmlab/simplex.hpp"
#include "lmlab/sparse_int.hpp"

namespace lmlab {

// H_{d-1}(Y; Z) as free rank plus invariant-factor torsion (> 1, chained).
struct homology_summary {
  index_t free_rank = 0;
  std::vector<bigint> torsion;

  bool is_zero() const { return free_rank == 0 && torsion.empty(); }
  bool operator==(const homology_summary&) const = default;
};

// Signed incidence of a dim-face: (rank of facet, (-1)^i) pairs.
inline std::vector<std::pair<index_t, int>> boundary_of(const face& f, int n) {
  std::vector<std::pair<index_t, int>> out;
  out.reserve(f.vertices.size());
  for (int i = 0; i < static_cast<int>(f.vertices.size()); ++i)
    out.push_back({face_rank(f.without_vertex(i), n), (i % 2 == 0) ? 1 : -1});
  return out;
}

// Boundary matrix of Y in dimension dim (dim = d or d-1).
//  dim = d:   rows = all C(n, d) facets, cols = the d-faces of Y, colex order.
//  dim = d-1: rows = all (d-2)-faces, cols = all C(n, d) facets (the skeleton
//             is complete, so Y plays no role). For d = 1 this is the
//             augmentation row used by reduced H_0.
inline sparse_int_matrix boundary_matrix(const complex& y, int dim) {
  if (dim != y.d && dim != y.d - 1)
    throw std::invalid_argument("boundary_matrix: dim must be d or d-1");
  if (dim == 0) {
    // augmentation: every vertex maps to the (-1)-face with coefficient 1
    sparse_int_matrix m(1, y.n);
    for (index_t v = 0; v < y.n; ++v) m.set(0, v, 1);
    return m;
  }
  const index_t row_count = binom(y.n, dim);
  if (dim == y.d) {
    sparse_int_matrix m(row_count, static_cast<index_t>(y.face_ranks.size()));
    for (std::size_t j = 0; j < y.face_ranks.size(); ++j) {
      face f = face_unrank(y.face_ranks[j], dim, y.n);
      for (const auto& [r, sign] : boundary_of(f, y.n))
        m.set(r, static_cast<index_t>(j), sign);
    }
    return m;
  }
  const index_t col_count = binom(y.n, dim + 1);
  sparse_int_matrix m(row_count, col_count);
  for (index_t j = 0; j < col_count; ++j) {
    face f = face_unrank(j, dim, y.n);
    for (const auto& [r, sign] : boundary_of(f, y.n)) m.set(r, j, sign);
  }
  return m;
}

namespace detail {

// Per-(n, d) facts about the complete skeleton: dim ker of the lower boundary
// map, recomputed never. The skeleton boundary must have unit invariant
// factors (checked, not assumed) so that torsion of H_{d-1} can be read off
// the SNF of the top boundary map and mod-q facet kernels match the rational
// one.
struct skeleton_info {
  index_t facet_kernel_dim = 0;
};

inline const skeleton_info& skeleton(int n, int d) {
  static std::map<std::pair<int, int>, skeleton_info> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(n, d);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  complex probe(n, d);
  auto lower = boundary_matrix(probe, d - 1);
  auto s = smith_normal_form(lower, false);
  for (const auto& f : s.invariant_factors)
    if (f != 1)
      throw std::logic_error("skeleton boundary map has a nonunit invariant factor");
  skeleton_info info;
  info.facet_kernel_dim = binom(n, d) - s.rank;
  return cache.emplace(key, info).first->second;
}

// Rank of the top boundary map over GF(2), rows taken as the d-faces
// (transposed orientation), eliminated on 64-bit words.
inline index_t top_rank_mod2(const complex& y, index_t stop_at = -1) {
  const index_t facets = y.facet_count();
  const std::size_t words = static_cast<std::size_t>((facets + 63) / 64);
  std::vector<std::vector<std::uint64_t>> rows;
  rows.reserve(y.face_ranks.size());
  for (index_t fr : y.face_ranks) {
    std::vector<std::uint64_t> row(words, 0);
    face f = face_unrank(fr, y.d, y.n);
    for (const auto& [r, sign] : boundary_of(f, y.n)) {
      (void)sign;
      row[static_cast<std::size_t>(r >> 6)] ^= (std::uint64_t{1} << (r & 63));
    }
    rows.push_back(std::move(row));
  }
  std::vector<std::vector<std::uint64_t>> pivots;  // echelon rows
  std::vector<index_t> pivot_cols;
  index_t rank = 0;
  for (auto& row : rows) {
    for (std::size_t p = 0; p < pivots.size(); ++p) {
      index_t c = pivot_cols[p];
      if (row[static_cast<std::size_t>(c >> 6)] >> (c & 63) & 1)
        for (std::size_t w = 0; w < words; ++w) row[w] ^= pivots[p][w];
    }
    index_t lead = -1;
    for (std::size_t w = 0; w < words && lead < 0; ++w)
      if (row[w]) lead = static_cast<index_t>(w * 64 + __builtin_ctzll(row[w]));
    if (lead < 0) continue;
    pivots.push_back(row);
    pivot_cols.push_back(lead);
    ++rank;
    if (stop_at >= 0 && rank >= stop_at) return rank;
  }
  return rank;
}

// Deterministic 30-bit probe primes for the pre-filter rank check.
inline std::int64_t probe_prime(int n, int d, index_t m) {
  static const std::int64_t primes[] = {1073741789, 1073741783, 1073741741, 1073741723,
                                        1073741719, 1073741717, 1073741689, 1073741671};
  return primes[static_cast<std::size_t>((n * 31 + d * 7 + m) % 8)];
}

}  // namespace detail

// Exact H_{d-1}(Y; Z): free rank = dim ker of the lower map minus the
// rational rank of the top map; torsion = nonunit invariant factors of the
// top map (valid because the skeleton boundary is unimodular, see skeleton()).
inline homology_summary homology(const complex& y) {
  const auto& info = detail::skeleton(y.n, y.d);
  auto top = boundary_matrix(y, y.d);
  auto s = smith_normal_form(top, false);
  homology_summary h;
  if (s.rank > info.facet_kernel_dim)
    throw std::logic_error("homology: top rank exceeds facet kernel dimension");
  h.free_rank = info.facet_kernel_dim - s.rank;
  for (const auto& f : s.invariant_factors)
    if (f > 1) h.torsion.push_back(f);
  return h;
}

// dim H_{d-1}(Y; field): field_q = 0 means rational coefficients.
inline index_t betti(const complex& y, std::int64_t field_q) {
  const auto& info = detail::skeleton(y.n, y.d);
  auto top = boundary_matrix(y, y.d);
  index_t r;
  if (field_q == 0) {
    r = smith_normal_form(top, false).rank;
  } else {
    if (!is_prime(field_q)) throw std::invalid_argument("betti: field must be prime or 0");
    if (field_q == 2)
      r = detail::top_rank_mod2(y);
    else
      r = rank_mod_q(top, field_q);
  }
  return info.facet_kernel_dim - r;
}

// Vanishing test with cheap rejections first: a rank deficit over GF(2) or a
// probe prime already implies nonzero homology; the SNF runs only when the
// ranks are full and all that is left to exclude is odd torsion.
inline bool homology_is_zero(const complex& y) {
  const auto& info = detail::skeleton(y.n, y.d);
  const index_t kappa = info.facet_kernel_dim;
  if (static_cast<index_t>(y.face_ranks.size()) < kappa) return false;
  if (detail::top_rank_mod2(y, kappa) < kappa) return false;
  auto top = boundary_matrix(y, y.d);
  if (rank_mod_q(top, detail::probe_prime(y.n, y.d, static_cast<index_t>(y.face_ranks.size())),
                 kappa) < kappa)
    return false;
  auto s = smith_normal_form(top, false);
  if (s.rank != kappa) throw std::logic_error("homology_is_zero: rank mismatch after pre-checks");
  for (const auto& f : s.invariant_factors)
    if (f != 1) return false;
  return true;
}

}  // namespace lmlab
