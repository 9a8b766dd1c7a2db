#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "lmlab/homology.hpp"
#include "lmlab/rng.hpp"
#include "lmlab/simplex.hpp"

namespace lmlab {

// Static model: include each of the C(n, d+1) top faces independently with
// probability p, in colex order under the seeded generator.
inline complex sample_static(int n, int d, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("sample_static: p must be in [0,1]");
  complex y(n, d);
  seeded_rng rng(seed);
  const index_t total = y.max_faces();
  for (index_t r = 0; r < total; ++r)
    if (rng.next_bernoulli(p)) y.face_ranks.push_back(r);
  return y;
}

// One instance of the stochastic process: a seeded uniform permutation of all
// top faces, an insertion cursor, and an incrementally maintained isolated
// facet count (coverage counter per facet, decrement-to-zero).
struct process_state {
  int n = 0;
  int d = 1;
  std::uint64_t seed = 0;
  std::vector<index_t> permutation;  // colex face ranks in insertion order
  index_t cursor = 0;
  std::vector<std::int32_t> coverage;  // facet rank -> covering inserted faces
  index_t isolated_count = 0;

  process_state(int n_, int d_, std::uint64_t seed_) : n(n_), d(d_), seed(seed_) {
    complex probe(n, d);  // validates n, d
    const index_t total = probe.max_faces();
    permutation.resize(static_cast<std::size_t>(total));
    std::iota(permutation.begin(), permutation.end(), index_t{0});
    seeded_rng rng(seed);
    shuffle_fisher_yates(permutation, rng);
    coverage.assign(static_cast<std::size_t>(probe.facet_count()), 0);
    isolated_count = probe.facet_count();
  }

  index_t total_faces() const { return static_cast<index_t>(permutation.size()); }
  bool exhausted() const { return cursor >= total_faces(); }

  // Insert the next face of the permutation; O(d+1) bookkeeping.
  face step() {
    if (exhausted()) throw std::out_of_range("process_state: process exhausted");
    const index_t r = permutation[static_cast<std::size_t>(cursor)];
    ++cursor;
    face f = face_unrank(r, d, n);
    for (int i = 0; i <= d; ++i) {
      index_t facet = face_rank(f.without_vertex(i), n);
      if (coverage[static_cast<std::size_t>(facet)]++ == 0) --isolated_count;
    }
    return f;
  }

  // The complex holding exactly the first m inserted faces.
  complex snapshot(index_t m) const {
    if (m < 0 || m > total_faces()) throw std::out_of_range("snapshot: m out of range");
    complex y(n, d);
    y.face_ranks.assign(permutation.begin(), permutation.begin() + m);
    std::sort(y.face_ranks.begin(), y.face_ranks.end());
    return y;
  }
};

// First m with no isolated facet; runs the incremental counter forward from
// the current cursor. No homology is computed.
inline index_t hitting_time_isolated(process_state& state) {
  while (state.isolated_count > 0) state.step();
  return state.cursor;
}

// First m with vanishing integral homology, located by binary search above
// t_iso. Monotonicity of vanishing makes the search valid; the linear-scan
// oracle in the tests guards that assumption.
inline index_t hitting_time_homology(process_state& state, index_t t_iso) {
  index_t lo = t_iso;                  // H(lo - 1) != 0 is guaranteed below
  index_t hi = state.total_faces();    // full skeleton always vanishes
  if (lo == 0) lo = 1;
  if (homology_is_zero(state.snapshot(lo - 1)))
    throw std::logic_error("hitting_time_homology: homology vanished before t_iso");
  while (lo < hi) {
    index_t mid = lo + (hi - lo) / 2;
    if (homology_is_zero(state.snapshot(mid)))
      hi = mid;
    else
      lo = mid + 1;
  }
  return lo;
}

struct hitting_times {
  index_t t_iso = 0;
  index_t t_hom = 0;
  bool coincide() const { return t_iso == t_hom; }
};

inline hitting_times run_trial(int n, int d, std::uint64_t seed) {
  process_state state(n, d, seed);
  hitting_times out;
  out.t_iso = hitting_time_isolated(state);
  out.t_hom = hitting_time_homology(state, out.t_iso);
  if (out.t_iso > out.t_hom)
    throw std::logic_error("run_trial: t_iso > t_hom, which is impossible");
  return out;
}

}  // namespace lmlab
