#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "lmlab/fields.hpp"
#include "lmlab/homology.hpp"
#include "lmlab/simplex.hpp"

namespace lmlab {

// Brute-force budgets. Every quantity in this module is exponential somewhere;
// the caps make the exactness domain explicit instead of silently truncating.
struct cocycle_caps {
  index_t coset_cap = 1 << 20;    // finite-field coset enumeration (weight)
  index_t pattern_cap = 1 << 20;  // support-pattern / kernel-point enumeration
  index_t subset_cap = 1 << 20;   // T-subsets scanned by the weight systems
  index_t strata_cap = 1 << 20;   // S-subsets scanned by rational b(X) search
  int cond2_k_max = 4;            // minimal-cocycle support sizes checked
  index_t cond1_max_facets = 6;   // full z-sweep only when C(n,d) <= this
  index_t cond1_budget = 200000;  // z evaluations allowed in the cond1 sweep
  index_t growth_budget = 2000000;  // connected-set enumeration nodes
};

// A (d-1)-cochain over a fixed field with explicit support.
template <class F>
struct cochain {
  F field;
  int n = 0;
  int d = 2;
  std::map<index_t, typename F::elem> values;  // facet rank -> nonzero value

  cochain(F f, int n_, int d_) : field(std::move(f)), n(n_), d(d_) {}

  void set(index_t facet_rank, typename F::elem v) {
    if (facet_rank < 0 || facet_rank >= binom(n, d))
      throw std::out_of_range("cochain: facet rank out of range");
    if (field.is_zero(v))
      values.erase(facet_rank);
    else
      values[facet_rank] = std::move(v);
  }

  typename F::elem at(index_t facet_rank) const {
    auto it = values.find(facet_rank);
    return it == values.end() ? field.zero() : it->second;
  }

  std::size_t support_size() const { return values.size(); }
};

// (delta phi)(sigma) = sum_i (-1)^i phi(sigma minus v_i).
template <class F>
typename F::elem delta_on_face(const cochain<F>& phi, const face& sigma) {
  auto acc = phi.field.zero();
  for (int i = 0; i < static_cast<int>(sigma.vertices.size()); ++i) {
    auto v = phi.at(face_rank(sigma.without_vertex(i), phi.n));
    if (phi.field.is_zero(v)) continue;
    acc = (i % 2 == 0) ? phi.field.add(acc, v) : phi.field.sub(acc, v);
  }
  return acc;
}

// Number of d-faces of the full simplex where the coboundary is nonzero.
template <class F>
index_t b_of_cochain(const cochain<F>& phi) {
  index_t count = 0;
  for_each_combination(phi.n, phi.d + 1, [&](const std::vector<int>& verts) {
    face sigma;
    sigma.vertices = verts;
    if (!phi.field.is_zero(delta_on_face(phi, sigma))) ++count;
  });
  return count;
}

// Number of d-faces containing exactly one facet of X. Field-free.
inline index_t beta_of_set(const facet_set& x) {
  const int d = x.facet_dim + 1;
  index_t count = 0;
  for_each_combination(x.n, d + 1, [&](const std::vector<int>& verts) {
    face sigma;
    sigma.vertices = verts;
    int hits = 0;
    for (int i = 0; i <= d; ++i)
      if (x.contains_rank(face_rank(sigma.without_vertex(i), x.n))) ++hits;
    if (hits == 1) ++count;
  });
  return count;
}

namespace detail {

// Dense coboundary matrix from (d-2)-cochains to (d-1)-cochains:
// rows = facets (colex), cols = (d-2)-faces (colex). For d = 1 the single
// column is the augmentation against the empty face.
template <class F>
std::vector<std::vector<typename F::elem>> lower_coboundary_matrix(const F& f, int n, int d) {
  const index_t rows = binom(n, d);
  const index_t cols = binom(n, d - 1);
  std::vector<std::vector<typename F::elem>> m(
      static_cast<std::size_t>(rows),
      std::vector<typename F::elem>(static_cast<std::size_t>(cols), f.zero()));
  for (index_t r = 0; r < rows; ++r) {
    face facet = face_unrank(r, d - 1, n);
    for (int i = 0; i < static_cast<int>(facet.vertices.size()); ++i) {
      index_t c = colex_rank(facet.without_vertex(i).vertices);
      auto& cell = m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
      cell = (i % 2 == 0) ? f.add(cell, f.one()) : f.sub(cell, f.one());
    }
  }
  return m;
}

// Odometer over `slots` positions with `radix` values each; calls fn for
// every assignment. Caller guarantees radix^slots fits the budget.
template <class Fn>
void for_each_assignment(int slots, std::int64_t radix, Fn&& fn) {
  std::vector<std::int64_t> digits(static_cast<std::size_t>(slots), 0);
  for (;;) {
    fn(digits);
    int i = 0;
    while (i < slots && digits[static_cast<std::size_t>(i)] + 1 == radix) {
      digits[static_cast<std::size_t>(i)] = 0;
      ++i;
    }
    if (i == slots) break;
    ++digits[static_cast<std::size_t>(i)];
  }
}

inline index_t checked_pow(std::int64_t base, int exp, index_t cap) {
  index_t acc = 1;
  for (int i = 0; i < exp; ++i) {
    acc *= base;
    if (acc > cap) return cap + 1;
  }
  return acc;
}

}  // namespace detail

// Minimum support over the coboundary coset, solved by linear systems: the
// weight is the smallest |T| such that phi can be matched by a lower
// coboundary everywhere outside T. Exact over any field.
template <class F>
index_t min_coset_support_systems(const cochain<F>& phi, const cocycle_caps& caps = {}) {
  const F& f = phi.field;
  const index_t facets = binom(phi.n, phi.d);
  auto dmat = detail::lower_coboundary_matrix(f, phi.n, phi.d);
  const index_t support = static_cast<index_t>(phi.support_size());
  index_t scanned = 0;
  for (index_t t = 0; t < support; ++t) {
    bool found = false;
    for_each_combination(static_cast<int>(facets), static_cast<int>(t),
                         [&](const std::vector<int>& tset) {
                           if (found) return;
                           if (++scanned > caps.subset_cap)
                             throw std::length_error("weight: subset cap exceeded");
                           std::vector<char> skip(static_cast<std::size_t>(facets), 0);
                           for (int r : tset) skip[static_cast<std::size_t>(r)] = 1;
                           std::vector<std::vector<typename F::elem>> a;
                           std::vector<typename F::elem> b;
                           for (index_t r = 0; r < facets; ++r) {
                             if (skip[static_cast<std::size_t>(r)]) continue;
                             a.push_back(dmat[static_cast<std::size_t>(r)]);
                             b.push_back(phi.at(r));
                           }
                           if (solvable(f, a, b)) found = true;
                         });
    if (found) return t;
  }
  return support;
}

// Weight of a cochain: minimum support size over its coboundary coset.
// Finite fields enumerate the coset directly (capped); the rationals use the
// support-pattern systems, whose coset is infinite but whose answer is the
// same minimum.
inline index_t weight(const cochain<gf_field>& phi, index_t coset_cap,
                      const cocycle_caps& caps = {}) {
  const auto& f = phi.field;
  const int slots = static_cast<int>(binom(phi.n, phi.d - 1));
  if (detail::checked_pow(f.q, slots, coset_cap) > coset_cap)
    throw std::length_error("weight: coset too large to enumerate");
  const index_t facets = binom(phi.n, phi.d);
  auto dmat = detail::lower_coboundary_matrix(f, phi.n, phi.d);
  index_t best = static_cast<index_t>(phi.support_size());
  detail::for_each_assignment(slots, f.q, [&](const std::vector<std::int64_t>& psi) {
    index_t nonzeros = 0;
    for (index_t r = 0; r < facets && nonzeros < best; ++r) {
      auto dpsi = f.zero();
      const auto& row = dmat[static_cast<std::size_t>(r)];
      for (int c = 0; c < slots; ++c)
        if (!f.is_zero(row[static_cast<std::size_t>(c)]) && psi[static_cast<std::size_t>(c)] != 0)
          dpsi = f.add(dpsi, f.mul(row[static_cast<std::size_t>(c)], psi[static_cast<std::size_t>(c)]));
      if (!f.is_zero(f.sub(phi.at(r), dpsi))) ++nonzeros;
    }
    best = std::min(best, nonzeros);
  });
  (void)caps;
  return best;
}

inline index_t weight(const cochain<rat_field>& phi, index_t /*coset_cap*/,
                      const cocycle_caps& caps = {}) {
  return min_coset_support_systems(phi, caps);
}

namespace detail {

// Restriction of the top coboundary to the columns X, rows given by d-faces.
// Rows that miss X entirely are dropped.
template <class F>
std::vector<std::vector<typename F::elem>> restricted_rows(const F& f, const std::vector<face>& dfaces,
                                                           const std::vector<index_t>& x_ranks, int n) {
  std::map<index_t, int> local;
  for (std::size_t i = 0; i < x_ranks.size(); ++i) local[x_ranks[i]] = static_cast<int>(i);
  std::vector<std::vector<typename F::elem>> rows;
  for (const face& sigma : dfaces) {
    std::vector<typename F::elem> row(x_ranks.size(), f.zero());
    bool any = false;
    for (int i = 0; i < static_cast<int>(sigma.vertices.size()); ++i) {
      auto it = local.find(face_rank(sigma.without_vertex(i), n));
      if (it == local.end()) continue;
      auto& cell = row[static_cast<std::size_t>(it->second)];
      cell = (i % 2 == 0) ? f.add(cell, f.one()) : f.sub(cell, f.one());
      any = true;
    }
    if (any) rows.push_back(std::move(row));
  }
  return rows;
}

// Is the kernel K (basis vectors over the X-coordinates) contained in
// L_T = coboundary space + span{e_t : t in T}? Tested by solving for each
// basis vector as a combination of D's columns and the T unit vectors.
template <class F>
bool kernel_inside_lt(const F& f, const std::vector<std::vector<typename F::elem>>& kernel,
                      const std::vector<index_t>& x_ranks,
                      const std::vector<std::vector<typename F::elem>>& dmat,
                      const std::vector<int>& tset, int n, int d) {
  const index_t facets = binom(n, d);
  const std::size_t dcols = dmat.empty() ? 0 : dmat[0].size();
  std::vector<std::vector<typename F::elem>> a(
      static_cast<std::size_t>(facets),
      std::vector<typename F::elem>(dcols + tset.size(), f.zero()));
  for (index_t r = 0; r < facets; ++r)
    for (std::size_t c = 0; c < dcols; ++c)
      a[static_cast<std::size_t>(r)][c] = dmat[static_cast<std::size_t>(r)][c];
  for (std::size_t t = 0; t < tset.size(); ++t)
    a[static_cast<std::size_t>(tset[t])][dcols + t] = f.one();
  for (const auto& kb : kernel) {
    std::vector<typename F::elem> b(static_cast<std::size_t>(facets), f.zero());
    for (std::size_t i = 0; i < x_ranks.size(); ++i)
      b[static_cast<std::size_t>(x_ranks[i])] = kb[i];
    if (!solvable(f, a, b)) return false;
  }
  return true;
}

}  // namespace detail

// Default field list for z(X): primes q with q <= sqrt(d+1)^k, plus Q.
// Compared exactly as q^2 <= (d+1)^k.
inline std::vector<field_id> default_field_list(int d, int k) {
  std::vector<field_id> out;
  bigint bound = 1;
  for (int i = 0; i < k; ++i) bound *= (d + 1);
  for (std::int64_t q = 2;; ++q) {
    if (bigint(q) * q > bound) break;
    if (is_prime(q)) out.push_back({q});
  }
  out.push_back({0});
  return out;
}

namespace detail {

// Does any cochain with support exactly X satisfy the given cocycle rows
// (and, optionally, have weight |X|)? Pattern enumeration over finite
// fields, kernel avoidance over the rationals.
struct exact_support_query {
  const complex* y = nullptr;                 // rows = faces of y meeting X
  std::vector<index_t> x_ranks;               // sorted facet ranks of X
  bool require_weight = false;
  cocycle_caps caps;
};

// Any nonzero coboundary of a (d-2)-cochain is supported on at least
// n - d + 1 facets: if delta psi is nonzero on a facet f0, then for every
// vertex v outside f0 the d-face f0 + v has vanishing double coboundary, so
// another of its facets carries a nonzero value, and those witnesses are
// pairwise distinct. Hence when n - d + 1 >= 2|X|, no coset move can push
// the support of an exact-support cochain below |X|: the weight condition
// holds automatically.
inline bool weight_automatic(int n, int d, int k) { return n - d + 1 >= 2 * k; }

template <class F>
bool exists_exact_support_cocycle_field(const F& f, const exact_support_query& q);

template <>
inline bool exists_exact_support_cocycle_field<gf_field>(const gf_field& f,
                                                         const exact_support_query& q) {
  const complex& y = *q.y;
  const int k = static_cast<int>(q.x_ranks.size());
  auto rows = restricted_rows(f, y.faces(), q.x_ranks, y.n);
  const index_t patterns = checked_pow(f.q - 1, k, q.caps.pattern_cap);
  if (patterns <= q.caps.pattern_cap) {
    bool found = false;
    for_each_assignment(k, f.q - 1, [&](const std::vector<std::int64_t>& digits) {
      if (found) return;
      std::vector<gf_field::elem> phi(static_cast<std::size_t>(k));
      for (int i = 0; i < k; ++i) phi[static_cast<std::size_t>(i)] = digits[static_cast<std::size_t>(i)] + 1;
      for (const auto& row : rows) {
        auto acc = f.zero();
        for (int i = 0; i < k; ++i) acc = f.add(acc, f.mul(row[static_cast<std::size_t>(i)], phi[static_cast<std::size_t>(i)]));
        if (!f.is_zero(acc)) return;
      }
      if (q.require_weight && !weight_automatic(y.n, y.d, k)) {
        cochain<gf_field> full(f, y.n, y.d);
        for (int i = 0; i < k; ++i) full.set(q.x_ranks[static_cast<std::size_t>(i)], phi[static_cast<std::size_t>(i)]);
        if (min_coset_support_systems(full, q.caps) != k) return;
      }
      found = true;
    });
    return found;
  }
  // large field: walk the projective points of the kernel instead
  auto kb = kernel_basis(f, rows, static_cast<std::size_t>(k));
  const int kappa = static_cast<int>(kb.size());
  if (kappa == 0) return false;
  bigint points = 0;
  {
    bigint acc = 1;
    for (int i = 0; i < kappa; ++i) {
      points += acc;
      acc *= f.q;
    }
  }
  if (points > q.caps.pattern_cap)
    throw std::length_error("exact-support search: kernel too large to enumerate");
  bool found = false;
  for (int lead = 0; lead < kappa && !found; ++lead) {
    const int free = kappa - lead - 1;
    for_each_assignment(free, f.q, [&](const std::vector<std::int64_t>& digits) {
      if (found) return;
      std::vector<gf_field::elem> phi(static_cast<std::size_t>(k), 0);
      auto axpy = [&](gf_field::elem c, const std::vector<gf_field::elem>& v) {
        if (c == 0) return;
        for (int i = 0; i < k; ++i)
          phi[static_cast<std::size_t>(i)] =
              f.add(phi[static_cast<std::size_t>(i)], f.mul(c, v[static_cast<std::size_t>(i)]));
      };
      axpy(1, kb[static_cast<std::size_t>(lead)]);
      for (int j = 0; j < free; ++j)
        axpy(digits[static_cast<std::size_t>(j)], kb[static_cast<std::size_t>(lead + 1 + j)]);
      for (int i = 0; i < k; ++i)
        if (phi[static_cast<std::size_t>(i)] == 0) return;  // support not exactly X
      if (q.require_weight && !weight_automatic(y.n, y.d, k)) {
        cochain<gf_field> full(f, y.n, y.d);
        for (int i = 0; i < k; ++i) full.set(q.x_ranks[static_cast<std::size_t>(i)], phi[static_cast<std::size_t>(i)]);
        if (min_coset_support_systems(full, q.caps) != static_cast<index_t>(k)) return;
      }
      found = true;
    });
  }
  return found;
}

template <>
inline bool exists_exact_support_cocycle_field<rat_field>(const rat_field& f,
                                                          const exact_support_query& q) {
  const complex& y = *q.y;
  const int k = static_cast<int>(q.x_ranks.size());
  auto rows = restricted_rows(f, y.faces(), q.x_ranks, y.n);
  auto kb = kernel_basis(f, rows, static_cast<std::size_t>(k));
  if (kb.empty()) return false;
  // full support is reachable iff no coordinate functional kills the kernel
  for (int i = 0; i < k; ++i) {
    bool hit = false;
    for (const auto& v : kb)
      if (!f.is_zero(v[static_cast<std::size_t>(i)])) {
        hit = true;
        break;
      }
    if (!hit) return false;
  }
  if (q.require_weight && !weight_automatic(y.n, y.d, k)) {
    auto dmat = lower_coboundary_matrix(f, y.n, y.d);
    const index_t facets = binom(y.n, y.d);
    index_t scanned = 0;
    for (int t = 0; t < k; ++t) {
      bool trapped = false;
      for_each_combination(static_cast<int>(facets), t, [&](const std::vector<int>& tset) {
        if (trapped) return;
        if (++scanned > q.caps.subset_cap)
          throw std::length_error("exact-support search: subset cap exceeded");
        if (kernel_inside_lt(f, kb, q.x_ranks, dmat, tset, y.n, y.d)) trapped = true;
      });
      if (trapped) return false;  // every kernel cocycle has weight < |X|
    }
  }
  return true;
}

inline bool exists_exact_support_cocycle(const field_id& fid, const exact_support_query& q) {
  if (fid.is_rational()) return exists_exact_support_cocycle_field(rat_field{}, q);
  return exists_exact_support_cocycle_field(gf_field(fid.q), q);
}

}  // namespace detail

// z(X, Y): some admissible field carries a cocycle of Y with weight |X| and
// support exactly X. The field list defaults to the primes up to
// sqrt(d+1)^|X| together with Q.
inline bool z_holds(const facet_set& x, const complex& y,
                    std::optional<std::vector<field_id>> fields = std::nullopt,
                    const cocycle_caps& caps = {}) {
  if (x.empty()) throw std::invalid_argument("z_holds: empty support");
  if (x.n != y.n || x.facet_dim != y.d - 1)
    throw std::invalid_argument("z_holds: facet set does not match complex");
  auto list = fields ? *fields : default_field_list(y.d, static_cast<int>(x.size()));
  detail::exact_support_query q;
  q.y = &y;
  q.x_ranks = x.ranks;
  q.require_weight = true;
  q.caps = caps;
  for (const auto& fid : list)
    if (detail::exists_exact_support_cocycle(fid, q)) return true;
  return false;
}

// b(X, R) minimized over the given fields; nullopt encodes infinity (no
// minimum-weight cochain lives exactly on X over any listed field).
inline std::optional<index_t> b_of_set(const facet_set& x, const std::vector<field_id>& fields,
                                       const cocycle_caps& caps = {}) {
  const int n = x.n;
  const int d = x.facet_dim + 1;
  const int k = static_cast<int>(x.size());
  if (k == 0) return 0;
  // d-faces of the full simplex that touch X; all others never see X.
  std::vector<face> relevant;
  for_each_combination(n, d + 1, [&](const std::vector<int>& verts) {
    face sigma;
    sigma.vertices = verts;
    for (int i = 0; i <= d; ++i)
      if (x.contains_rank(face_rank(sigma.without_vertex(i), n))) {
        relevant.push_back(sigma);
        return;
      }
  });
  std::optional<index_t> best;
  auto consider = [&](index_t b) {
    if (!best || b < *best) best = b;
  };
  for (const auto& fid : fields) {
    if (fid.is_rational()) {
      rat_field f;
      auto rows = detail::restricted_rows(f, relevant, x.ranks, n);
      auto dmat = detail::lower_coboundary_matrix(f, n, d);
      const int nrel = static_cast<int>(rows.size());
      index_t scanned = 0;
      bool done = false;
      for (int killed = nrel; killed >= 0 && !done; --killed) {
        for_each_combination(nrel, killed, [&](const std::vector<int>& sset) {
          if (done) return;
          if (++scanned > caps.strata_cap)
            throw std::length_error("b_of_set: strata cap exceeded");
          std::vector<std::vector<rat_field::elem>> sys;
          for (int r : sset) sys.push_back(rows[static_cast<std::size_t>(r)]);
          auto kb = kernel_basis(f, sys, static_cast<std::size_t>(k));
          if (kb.empty()) return;
          for (int i = 0; i < k; ++i) {
            bool hit = false;
            for (const auto& v : kb)
              if (!f.is_zero(v[static_cast<std::size_t>(i)])) {
                hit = true;
                break;
              }
            if (!hit) return;
          }
          for (int t = 0; t < k; ++t) {
            bool trapped = false;
            for_each_combination(static_cast<int>(binom(n, d)), t,
                                 [&](const std::vector<int>& tset) {
                                   if (trapped) return;
                                   if (detail::kernel_inside_lt(f, kb, x.ranks, dmat, tset, n, d))
                                     trapped = true;
                                 });
            if (trapped) return;
          }
          consider(static_cast<index_t>(nrel - killed));
          done = true;
        });
      }
    } else {
      gf_field f(fid.q);
      if (detail::checked_pow(f.q - 1, k, caps.pattern_cap) > caps.pattern_cap)
        throw std::length_error("b_of_set: pattern cap exceeded");
      detail::for_each_assignment(k, f.q - 1, [&](const std::vector<std::int64_t>& digits) {
        cochain<gf_field> phi(f, n, d);
        for (int i = 0; i < k; ++i)
          phi.set(x.ranks[static_cast<std::size_t>(i)], digits[static_cast<std::size_t>(i)] + 1);
        if (min_coset_support_systems(phi, caps) != k) return;
        index_t b = 0;
        for (const face& sigma : relevant)
          if (!f.is_zero(delta_on_face(phi, sigma))) ++b;
        consider(b);
      });
    }
  }
  return best;
}

// All inclusion-minimal cocycle supports of size <= k_max over one field.
// A support counts only if it carries a minimum-weight cocycle (weight equal
// to the support size); coboundary shadows such as vertex stars represent
// the zero class and are not cocycle supports in the counting sense. Two
// structural facts prune the search: a minimal support is strongly
// connected, and every facet x of a support X must have each of its covering
// Y-faces pick up a second X-facet, capping the Y-degree of x at |X| - 1.
inline std::vector<facet_set> minimal_cocycle_supports(const complex& y, const field_id& fid,
                                                       int k_max, const cocycle_caps& caps = {}) {
  const index_t facet_count = y.facet_count();
  std::vector<int> degree(static_cast<std::size_t>(facet_count), 0);
  std::vector<std::vector<index_t>> covers(static_cast<std::size_t>(facet_count));
  for (index_t fr : y.face_ranks) {
    face f = face_unrank(fr, y.d, y.n);
    for (const auto& [r, sign] : boundary_of(f, y.n)) {
      (void)sign;
      ++degree[static_cast<std::size_t>(r)];
      covers[static_cast<std::size_t>(r)].push_back(fr);
    }
  }
  std::vector<facet_set> found;
  for (index_t r = 0; r < facet_count; ++r)
    if (degree[static_cast<std::size_t>(r)] == 0) {
      facet_set s(y.n, y.d - 1);
      s.ranks.push_back(r);
      found.push_back(s);
    }
  if (k_max < 2) return found;

  // candidates for multi-facet supports: covered facets of low degree
  std::vector<index_t> cand;
  for (index_t r = 0; r < facet_count; ++r)
    if (degree[static_cast<std::size_t>(r)] >= 1 &&
        degree[static_cast<std::size_t>(r)] <= k_max - 1)
      cand.push_back(r);
  std::map<index_t, int> cand_index;
  for (std::size_t i = 0; i < cand.size(); ++i) cand_index[cand[i]] = static_cast<int>(i);
  // adjacency: sharing a ridge
  std::vector<std::vector<int>> adj(cand.size());
  {
    std::map<index_t, std::vector<int>> ridge_buckets;
    for (std::size_t i = 0; i < cand.size(); ++i) {
      face f = face_unrank(cand[i], y.d - 1, y.n);
      for (int j = 0; j < static_cast<int>(f.vertices.size()); ++j)
        ridge_buckets[face_rank(f.without_vertex(j), y.n)].push_back(static_cast<int>(i));
    }
    std::set<std::pair<int, int>> seen;
    for (const auto& [ridge, members] : ridge_buckets) {
      (void)ridge;
      for (std::size_t a = 0; a < members.size(); ++a)
        for (std::size_t b = a + 1; b < members.size(); ++b) {
          auto e = std::minmax(members[a], members[b]);
          if (seen.insert(e).second) {
            adj[static_cast<std::size_t>(e.first)].push_back(e.second);
            adj[static_cast<std::size_t>(e.second)].push_back(e.first);
          }
        }
    }
  }

  std::vector<index_t> isolated_sorted;
  for (const auto& s : found) isolated_sorted.push_back(s.ranks[0]);
  std::sort(isolated_sorted.begin(), isolated_sorted.end());

  std::vector<std::vector<index_t>> multi;  // accepted supports of size >= 2
  index_t budget = caps.growth_budget;
  std::set<std::vector<int>> visited;

  auto contains_smaller_support = [&](const std::vector<index_t>& ranks) {
    for (const auto& prev : multi) {
      if (prev.size() >= ranks.size()) continue;
      if (std::includes(ranks.begin(), ranks.end(), prev.begin(), prev.end())) return true;
    }
    return false;
  };

  auto try_support = [&](const std::vector<int>& members) {
    std::vector<index_t> ranks;
    for (int i : members) ranks.push_back(cand[static_cast<std::size_t>(i)]);
    std::sort(ranks.begin(), ranks.end());
    // every covering face of each member needs a second member inside it
    for (index_t r : ranks)
      for (index_t fr : covers[static_cast<std::size_t>(r)]) {
        face f = face_unrank(fr, y.d, y.n);
        int hits = 0;
        for (const auto& [fac, sign] : boundary_of(f, y.n)) {
          (void)sign;
          if (std::binary_search(ranks.begin(), ranks.end(), fac)) ++hits;
        }
        if (hits < 2) return;
      }
    if (contains_smaller_support(ranks)) return;
    detail::exact_support_query q;
    q.y = &y;
    q.x_ranks = ranks;
    q.require_weight = true;
    q.caps = caps;
    if (detail::exists_exact_support_cocycle(fid, q)) multi.push_back(ranks);
  };

  // connected growth from each minimum candidate
  std::function<void(std::vector<int>&)> grow = [&](std::vector<int>& current) {
    if (--budget < 0) throw std::length_error("minimal_cocycle_supports: growth budget exceeded");
    std::vector<int> key = current;
    std::sort(key.begin(), key.end());
    if (!visited.insert(key).second) return;
    if (current.size() >= 2) try_support(key);
    if (static_cast<int>(current.size()) == k_max) return;
    std::set<int> extensions;
    for (int m : current)
      for (int nb : adj[static_cast<std::size_t>(m)])
        if (nb > current.front() && std::find(current.begin(), current.end(), nb) == current.end())
          extensions.insert(nb);
    for (int e : extensions) {
      current.push_back(e);
      grow(current);
      current.pop_back();
    }
  };
  for (std::size_t i = 0; i < cand.size(); ++i) {
    std::vector<int> start{static_cast<int>(i)};
    grow(start);
  }

  // sizes were found in mixed order; re-filter so only true minima survive
  auto colex_less = [](const std::vector<index_t>& a, const std::vector<index_t>& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    for (std::size_t i = a.size(); i-- > 0;)
      if (a[i] != b[i]) return a[i] < b[i];
    return false;
  };
  std::sort(multi.begin(), multi.end(), colex_less);
  std::vector<std::vector<index_t>> kept;
  for (const auto& m : multi) {
    bool minimal = true;
    for (const auto& prev : kept)
      if (prev.size() < m.size() && std::includes(m.begin(), m.end(), prev.begin(), prev.end())) {
        minimal = false;
        break;
      }
    if (minimal) kept.push_back(m);
  }
  for (const auto& m : kept) {
    facet_set s(y.n, y.d - 1);
    s.ranks = m;
    found.push_back(s);
  }
  return found;
}

// Lemma-style three-condition report. cond3 is always exact; cond2 is exact
// for support sizes up to the cap; cond1 is exact only when the full facet
// power set is sweepable within budget, otherwise "not evaluated".
struct condition_report {
  enum class verdict { yes, no, not_evaluated };
  verdict cond1 = verdict::not_evaluated;
  bool cond2 = true;
  bool cond3 = true;
  cocycle_caps caps_used;
  std::vector<facet_set> cond2_violations;
  std::vector<std::pair<face, face>> cond3_violations;
  index_t cond1_sweeps = 0;

  // Lemma-4 gate: nothing known to be violated.
  bool passes() const { return cond1 != verdict::no && cond2 && cond3; }
};

inline condition_report check_conditions(const complex& y, const cocycle_caps& caps = {}) {
  condition_report rep;
  rep.caps_used = caps;
  rep.cond3_violations = isolated_pairs_sharing_ridge(y);
  rep.cond3 = rep.cond3_violations.empty();

  auto fields = default_field_list(y.d, caps.cond2_k_max);
  for (const auto& fid : fields) {
    auto supports = minimal_cocycle_supports(y, fid, caps.cond2_k_max, caps);
    for (auto& s : supports)
      if (s.size() >= 2) {
        rep.cond2 = false;
        rep.cond2_violations.push_back(std::move(s));
      }
  }

  const index_t facet_count = y.facet_count();
  if (facet_count <= caps.cond1_max_facets) {
    // |X| >= n/(3d)  <=>  3d|X| >= n
    const int kmin = std::max<int>(1, static_cast<int>((y.n + 3 * y.d - 1) / (3 * y.d)));
    bool ok = true, overflowed = false;
    for (int k = kmin; k <= static_cast<int>(facet_count) && ok && !overflowed; ++k) {
      for_each_combination(static_cast<int>(facet_count), k, [&](const std::vector<int>& combo) {
        if (!ok || overflowed) return;
        if (++rep.cond1_sweeps > caps.cond1_budget) {
          overflowed = true;
          return;
        }
        facet_set x(y.n, y.d - 1);
        for (int r : combo) x.ranks.push_back(r);
        if (z_holds(x, y, std::nullopt, caps)) ok = false;
      });
    }
    if (overflowed)
      rep.cond1 = condition_report::verdict::not_evaluated;
    else
      rep.cond1 = ok ? condition_report::verdict::yes : condition_report::verdict::no;
  }
  return rep;
}

// Lemma-4 consequence: a complex passing the condition checks must have
// torsion-free H_{d-1} of rank equal to its isolated facet count.
inline bool deterministic_rank_check(const complex& y) {
  auto h = homology(y);
  return h.torsion.empty() &&
         h.free_rank == static_cast<index_t>(isolated_facets(y).size());
}

// One line of the audit report stream. `ok` is decided in exact integers;
// `bound` is the display value n*w/(d+1).
struct audit_record {
  std::vector<int> support;  // facet ranks
  index_t beta = 0;
  std::optional<index_t> b_set;
  index_t b_cochain = 0;
  index_t weight = 0;
  double bound = 0.0;
  bool ok = true;
};

struct coiso_result {
  bool all_ok = true;
  index_t checked = 0;
  index_t violations = 0;
};

// Exhaustive coisoperimetry audit over a finite field: every cochain with
// support size <= support_cap must satisfy (d+1) b(phi) >= n w(phi), compared
// in exact integers. Weights come from the coboundary coset brute force.
inline coiso_result coiso_audit(int n, int d, std::int64_t q, int support_cap,
                                const cocycle_caps& caps = {},
                                const std::function<void(const audit_record&)>& sink = {}) {
  gf_field f(q);
  const index_t facets = binom(n, d);
  if (support_cap > facets) support_cap = static_cast<int>(facets);
  const int slots = static_cast<int>(binom(n, d - 1));
  if (detail::checked_pow(q, slots, caps.coset_cap) > caps.coset_cap)
    throw std::length_error("coiso_audit: coset too large to enumerate");
  coiso_result res;
  for (int s = 0; s <= support_cap; ++s) {
    for_each_combination(static_cast<int>(facets), s, [&](const std::vector<int>& supp) {
      std::optional<index_t> bset;
      bool bset_done = false;
      detail::for_each_assignment(s, q - 1, [&](const std::vector<std::int64_t>& digits) {
        cochain<gf_field> phi(f, n, d);
        for (int i = 0; i < s; ++i)
          phi.set(supp[static_cast<std::size_t>(i)], digits[static_cast<std::size_t>(i)] + 1);
        index_t w = weight(phi, caps.coset_cap, caps);
        index_t b = b_of_cochain(phi);
        bool ok = static_cast<bigint>(d + 1) * b >= static_cast<bigint>(n) * w;
        ++res.checked;
        if (!ok) {
          ++res.violations;
          res.all_ok = false;
        }
        if (sink) {
          if (!bset_done) {
            facet_set x(n, d - 1);
            for (int r : supp) x.ranks.push_back(r);
            bset = b_of_set(x, {field_id{q}}, caps);
            bset_done = true;
          }
          facet_set x(n, d - 1);
          for (int r : supp) x.ranks.push_back(r);
          audit_record rec;
          rec.support = supp;
          rec.beta = beta_of_set(x);
          rec.b_set = bset;
          rec.b_cochain = b;
          rec.weight = w;
          rec.bound = static_cast<double>(n) * static_cast<double>(w) / (d + 1);
          rec.ok = ok;
          sink(rec);
        }
      });
    });
  }
  return res;
}

}  // namespace lmlab
