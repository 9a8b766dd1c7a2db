#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lmlab/combinatorics.hpp"

namespace lmlab {

// A face is a strictly increasing vertex tuple; dim = #vertices - 1.
struct face {
  std::vector<int> vertices;

  face() = default;
  face(std::initializer_list<int> vs) : vertices(vs) { canonicalize(); }
  explicit face(std::vector<int> vs) : vertices(std::move(vs)) { canonicalize(); }

  int dim() const { return static_cast<int>(vertices.size()) - 1; }

  void canonicalize() {
    std::sort(vertices.begin(), vertices.end());
    for (std::size_t i = 0; i + 1 < vertices.size(); ++i)
      if (vertices[i] == vertices[i + 1])
        throw std::invalid_argument("face: repeated vertex");
  }

  bool operator==(const face& o) const { return vertices == o.vertices; }
  bool operator<(const face& o) const {
    // colex order; same-size tuples compare by reversed lexicographic scan
    if (vertices.size() != o.vertices.size()) return vertices.size() < o.vertices.size();
    for (std::size_t i = vertices.size(); i-- > 0;)
      if (vertices[i] != o.vertices[i]) return vertices[i] < o.vertices[i];
    return false;
  }

  // i-th boundary facet: drop vertex i (sign (-1)^i supplied by callers).
  face without_vertex(int i) const {
    face f;
    f.vertices.reserve(vertices.size() - 1);
    for (int j = 0; j < static_cast<int>(vertices.size()); ++j)
      if (j != i) f.vertices.push_back(vertices[j]);
    return f;
  }

  std::string str() const {
    std::string s = "{";
    for (std::size_t i = 0; i < vertices.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(vertices[i]);
    }
    return s + "}";
  }
};

inline void check_face_in_range(const face& f, int n) {
  for (int v : f.vertices)
    if (v < 0 || v >= n)
      throw std::out_of_range("face " + f.str() + " has vertex outside [0," +
                              std::to_string(n) + ")");
}

// Colex rank of a face among all faces of the same dimension on n vertices.
inline index_t face_rank(const face& f, int n) {
  check_face_in_range(f, n);
  return colex_rank(f.vertices);
}

inline face face_unrank(index_t rank, int dim, int n) {
  face f;
  f.vertices = colex_unrank(rank, dim + 1);
  check_face_in_range(f, n);
  return f;
}

// A d-complex with complete (d-1)-skeleton: only the d-faces are stored,
// as a sorted set of colex ranks. The lower skeleton is implicit.
struct complex {
  int n = 0;
  int d = 1;
  std::vector<index_t> face_ranks;  // sorted, unique, colex ranks of d-faces

  complex() = default;
  complex(int n_, int d_) : n(n_), d(d_) {
    if (d < 1 || n < d + 1) throw std::invalid_argument("complex: need n >= d+1, d >= 1");
  }

  index_t max_faces() const { return binom(n, d + 1); }
  index_t facet_count() const { return binom(n, d); }

  bool has_face_rank(index_t r) const {
    return std::binary_search(face_ranks.begin(), face_ranks.end(), r);
  }

  void add_face_rank(index_t r) {
    if (r < 0 || r >= max_faces()) throw std::out_of_range("complex: face rank out of range");
    auto it = std::lower_bound(face_ranks.begin(), face_ranks.end(), r);
    if (it != face_ranks.end() && *it == r) return;
    face_ranks.insert(it, r);
  }

  void add_face(const face& f) {
    if (f.dim() != d) throw std::invalid_argument("complex: face has wrong dimension");
    add_face_rank(face_rank(f, n));
  }

  face face_at(std::size_t i) const { return face_unrank(face_ranks[i], d, n); }

  std::vector<face> faces() const {
    std::vector<face> out;
    out.reserve(face_ranks.size());
    for (index_t r : face_ranks) out.push_back(face_unrank(r, d, n));
    return out;
  }
};

inline complex full_skeleton(int n, int d) {
  complex y(n, d);
  y.face_ranks.resize(static_cast<std::size_t>(y.max_faces()));
  std::iota(y.face_ranks.begin(), y.face_ranks.end(), index_t{0});
  return y;
}

// A set of (d-1)-dimensional faces ("facets") inside the complete skeleton.
struct facet_set {
  int n = 0;
  int facet_dim = 0;
  std::vector<index_t> ranks;  // sorted, unique, colex ranks

  facet_set() = default;
  facet_set(int n_, int facet_dim_) : n(n_), facet_dim(facet_dim_) {}

  std::size_t size() const { return ranks.size(); }
  bool empty() const { return ranks.empty(); }

  void add(const face& f) {
    if (f.dim() != facet_dim) throw std::invalid_argument("facet_set: wrong dimension");
    index_t r = face_rank(f, n);
    auto it = std::lower_bound(ranks.begin(), ranks.end(), r);
    if (it == ranks.end() || *it != r) ranks.insert(it, r);
  }

  bool contains_rank(index_t r) const {
    return std::binary_search(ranks.begin(), ranks.end(), r);
  }

  std::vector<face> faces() const {
    std::vector<face> out;
    out.reserve(ranks.size());
    for (index_t r : ranks) out.push_back(face_unrank(r, facet_dim, n));
    return out;
  }
};

// Dual graph on same-dimensional faces: nodes in colex order, an edge
// whenever two faces share a codimension-1 subface.
struct dual_graph {
  std::vector<face> nodes;
  std::vector<std::pair<int, int>> edges;  // index pairs i < j
  std::vector<std::vector<int>> adjacency;
};

namespace detail {

struct union_find {
  std::vector<int> parent;
  explicit union_find(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
};

// Bucket faces by their codimension-1 subfaces (colex rank of the subface).
inline std::map<index_t, std::vector<int>> subface_buckets(const std::vector<face>& fs, int n) {
  std::map<index_t, std::vector<int>> buckets;
  for (int i = 0; i < static_cast<int>(fs.size()); ++i) {
    const face& f = fs[i];
    for (int j = 0; j < static_cast<int>(f.vertices.size()); ++j)
      buckets[face_rank(f.without_vertex(j), n)].push_back(i);
  }
  return buckets;
}

}  // namespace detail

inline dual_graph make_dual_graph(const std::vector<face>& faces_in, int n) {
  dual_graph g;
  g.nodes = faces_in;
  std::sort(g.nodes.begin(), g.nodes.end());
  if (!g.nodes.empty()) {
    int dim0 = g.nodes.front().dim();
    for (const face& f : g.nodes)
      if (f.dim() != dim0) throw std::invalid_argument("dual_graph: mixed dimensions");
  }
  g.adjacency.resize(g.nodes.size());
  std::set<std::pair<int, int>> seen;
  for (const auto& [ridge, members] : detail::subface_buckets(g.nodes, n)) {
    (void)ridge;
    for (std::size_t a = 0; a < members.size(); ++a)
      for (std::size_t b = a + 1; b < members.size(); ++b) {
        auto e = std::minmax(members[a], members[b]);
        if (seen.insert({e.first, e.second}).second) {
          g.edges.push_back({e.first, e.second});
          g.adjacency[e.first].push_back(e.second);
          g.adjacency[e.second].push_back(e.first);
        }
      }
  }
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

inline dual_graph make_dual_graph(const facet_set& fs) { return make_dual_graph(fs.faces(), fs.n); }

// Strong connectivity = connectivity of the dual graph. Union-find over the
// shared-subface buckets; no quadratic pair scan.
inline bool is_strongly_connected(const facet_set& fs) {
  if (fs.empty()) throw std::invalid_argument("is_strongly_connected: empty facet set");
  auto faces = fs.faces();
  detail::union_find uf(static_cast<int>(faces.size()));
  int components = static_cast<int>(faces.size());
  for (const auto& [ridge, members] : detail::subface_buckets(faces, fs.n)) {
    (void)ridge;
    for (std::size_t a = 1; a < members.size(); ++a)
      if (uf.unite(members[0], members[a])) --components;
  }
  return components == 1;
}

// The facets of Y covered by no d-face.
inline facet_set isolated_facets(const complex& y) {
  std::vector<char> covered(static_cast<std::size_t>(y.facet_count()), 0);
  for (index_t r : y.face_ranks) {
    face f = face_unrank(r, y.d, y.n);
    for (int j = 0; j <= y.d; ++j) covered[face_rank(f.without_vertex(j), y.n)] = 1;
  }
  facet_set out(y.n, y.d - 1);
  for (index_t r = 0; r < y.facet_count(); ++r)
    if (!covered[r]) out.ranks.push_back(r);
  return out;
}

// Unordered pairs of isolated facets meeting at a ridge ((d-2)-face).
inline std::vector<std::pair<face, face>> isolated_pairs_sharing_ridge(const complex& y) {
  if (y.d < 2) throw std::invalid_argument("isolated_pairs_sharing_ridge: requires d >= 2");
  auto iso = isolated_facets(y).faces();
  std::vector<std::pair<face, face>> out;
  for (const auto& [ridge, members] : detail::subface_buckets(iso, y.n)) {
    (void)ridge;
    for (std::size_t a = 0; a < members.size(); ++a)
      for (std::size_t b = a + 1; b < members.size(); ++b)
        out.push_back({iso[members[a]], iso[members[b]]});
  }
  std::sort(out.begin(), out.end(), [](const auto& p, const auto& q) {
    if (p.first < q.first) return true;
    if (q.first < p.first) return false;
    return p.second < q.second;
  });
  return out;
}

// Exhaustive enumeration of strongly-connected k-sets of facet_dim-faces on
// n vertices, in colex order of the sorted rank tuple. Desk-scale guard.
template <class Fn>
void enumerate_strongly_connected(int n, int facet_dim, int k, Fn&& fn) {
  if (n > 8 || k > 6)
    throw std::out_of_range("enumerate_strongly_connected: guard exceeded (n <= 8, k <= 6)");
  if (k < 1) throw std::invalid_argument("enumerate_strongly_connected: k >= 1 required");
  const int total = static_cast<int>(binom(n, facet_dim + 1));
  if (k > total) return;

  // adjacency between faces sharing a codimension-1 subface
  std::vector<face> all;
  all.reserve(total);
  for (index_t r = 0; r < total; ++r) all.push_back(face_unrank(r, facet_dim, n));
  std::vector<std::vector<char>> adj(total, std::vector<char>(total, 0));
  for (const auto& [sub, members] : detail::subface_buckets(all, n)) {
    (void)sub;
    for (std::size_t a = 0; a < members.size(); ++a)
      for (std::size_t b = a + 1; b < members.size(); ++b)
        adj[members[a]][members[b]] = adj[members[b]][members[a]] = 1;
  }

  std::vector<int> pick;
  pick.reserve(k);
  auto connected = [&]() {
    detail::union_find uf(k);
    int comps = k;
    for (int a = 0; a < k; ++a)
      for (int b = a + 1; b < k; ++b)
        if (adj[pick[a]][pick[b]] && uf.unite(a, b)) --comps;
    return comps == 1;
  };
  // iterate k-subsets of [0, total) in colex order
  for_each_combination(total, k, [&](const std::vector<int>& combo) {
    pick = combo;
    if (!connected()) return;
    facet_set fs(n, facet_dim);
    for (int idx : pick) fs.ranks.push_back(idx);
    fn(fs);
  });
}

inline std::vector<facet_set> strongly_connected_sets(int n, int facet_dim, int k) {
  std::vector<facet_set> out;
  enumerate_strongly_connected(n, facet_dim, k, [&](const facet_set& fs) { out.push_back(fs); });
  return out;
}

}  // namespace lmlab
