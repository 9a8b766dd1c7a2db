#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace lmlab {

using index_t = std::int64_t;

// Binomial coefficients C(n, k) for n <= 64, k <= 9, precomputed once.
// Everything in this project is desk-scale; larger arguments are a bug.
struct binomial_table {
  static constexpr int max_n = 64;
  static constexpr int max_k = 9;
  std::array<std::array<index_t, max_k + 1>, max_n + 1> table{};

  constexpr binomial_table() {
    for (int i = 0; i <= max_n; ++i) {
      table[i][0] = 1;
      for (int j = 1; j <= max_k; ++j) {
        if (j > i) {
          table[i][j] = 0;
        } else if (j == i) {
          table[i][j] = 1;
        } else {
          table[i][j] = table[i - 1][j - 1] + table[i - 1][j];
        }
      }
    }
  }
};

inline index_t binom(int n, int k) {
  static constexpr binomial_table tab{};
  if (k < 0 || n < 0) return 0;
  if (k > n) return 0;
  if (n > binomial_table::max_n || k > binomial_table::max_k)
    throw std::out_of_range("binom: arguments exceed table (n<=64, k<=9): n=" +
                            std::to_string(n) + " k=" + std::to_string(k));
  static const binomial_table t{};
  return t.table[n][k];
}

// Colexicographic rank of a strictly increasing vertex tuple:
//   rank(v_0 < v_1 < ... < v_k) = sum_i C(v_i, i+1).
// This is a bijection between the k-subsets of [0, n) and [0, C(n, k)).
inline index_t colex_rank(const std::vector<int>& verts) {
  index_t r = 0;
  for (std::size_t i = 0; i < verts.size(); ++i) r += binom(verts[i], static_cast<int>(i) + 1);
  return r;
}

// Inverse of colex_rank for (dim+1)-element subsets.
inline std::vector<int> colex_unrank(index_t rank, int count) {
  std::vector<int> verts(count);
  for (int i = count; i >= 1; --i) {
    // largest c with C(c, i) <= rank
    int c = i - 1;
    while (binom(c + 1, i) <= rank) ++c;
    verts[i - 1] = c;
    rank -= binom(c, i);
  }
  return verts;
}

// Visit all strictly increasing count-tuples over [0, n) in colex order.
template <class Fn>
void for_each_combination(int n, int count, Fn&& fn) {
  if (count > n || count < 0) return;
  std::vector<int> verts(count);
  for (int i = 0; i < count; ++i) verts[i] = i;
  if (count == 0) {
    fn(verts);
    return;
  }
  for (;;) {
    fn(verts);
    // colex successor: bump the lowest index that can move
    int i = 0;
    while (i + 1 < count && verts[i] + 1 == verts[i + 1]) ++i;
    if (verts[i] + 1 >= n && i + 1 == count) break;
    ++verts[i];
    for (int j = 0; j < i; ++j) verts[j] = j;
    if (verts[count - 1] >= n) break;
  }
}

}  // namespace lmlab
