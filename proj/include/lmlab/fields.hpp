#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "lmlab/sparse_int.hpp"

namespace lmlab {

// Prime field GF(q), elements normalized into [0, q).
struct gf_field {
  using elem = std::int64_t;
  std::int64_t q;

  explicit gf_field(std::int64_t q_) : q(q_) {
    if (!is_prime(q)) throw std::invalid_argument("gf_field: q must be prime");
  }

  elem zero() const { return 0; }
  elem one() const { return 1; }
  bool is_zero(elem a) const { return a == 0; }
  elem from_int(std::int64_t v) const {
    std::int64_t r = v % q;
    return r < 0 ? r + q : r;
  }
  elem add(elem a, elem b) const { return (a + b) % q; }
  elem sub(elem a, elem b) const { return (a - b + q) % q; }
  elem neg(elem a) const { return a == 0 ? 0 : q - a; }
  elem mul(elem a, elem b) const {
    return static_cast<elem>(static_cast<__int128>(a) * b % q);
  }
  elem inv(elem a) const {
    if (a == 0) throw std::domain_error("gf_field: division by zero");
    elem acc = 1, base = a;
    std::int64_t e = q - 2;
    while (e) {
      if (e & 1) acc = mul(acc, base);
      base = mul(base, base);
      e >>= 1;
    }
    return acc;
  }
  elem div(elem a, elem b) const { return mul(a, inv(b)); }
};

// The rationals, with exact arithmetic.
struct rat_field {
  using elem = bigrat;

  elem zero() const { return 0; }
  elem one() const { return 1; }
  bool is_zero(const elem& a) const { return a == 0; }
  elem from_int(std::int64_t v) const { return elem(v); }
  elem add(const elem& a, const elem& b) const { return a + b; }
  elem sub(const elem& a, const elem& b) const { return a - b; }
  elem neg(const elem& a) const { return -a; }
  elem mul(const elem& a, const elem& b) const { return a * b; }
  elem inv(const elem& a) const {
    if (a == 0) throw std::domain_error("rat_field: division by zero");
    return 1 / a;
  }
  elem div(const elem& a, const elem& b) const { return a / b; }
};

// Runtime field tag: q = 0 means the rationals, otherwise the prime q.
struct field_id {
  std::int64_t q = 0;
  bool is_rational() const { return q == 0; }
  std::string str() const { return is_rational() ? "Q" : "Z/" + std::to_string(q); }
  bool operator==(const field_id&) const = default;
};

// --- small dense elimination helpers, templated on the field ---------------

// Row echelon reduction in place; returns rank.
template <class F>
int echelonize(const F& f, std::vector<std::vector<typename F::elem>>& a) {
  if (a.empty()) return 0;
  const std::size_t rows = a.size(), cols = a[0].size();
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < rows; ++col) {
    std::size_t piv = row;
    while (piv < rows && f.is_zero(a[piv][col])) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[row]);
    auto inv = f.inv(a[row][col]);
    for (std::size_t j = col; j < cols; ++j) a[row][j] = f.mul(a[row][j], inv);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == row || f.is_zero(a[i][col])) continue;
      auto factor = a[i][col];
      for (std::size_t j = col; j < cols; ++j)
        a[i][j] = f.sub(a[i][j], f.mul(factor, a[row][j]));
    }
    ++row;
  }
  return static_cast<int>(row);
}

template <class F>
int rank_of(const F& f, std::vector<std::vector<typename F::elem>> a) {
  return echelonize(f, a);
}

// Does A x = b have a solution? (rank comparison of [A] vs [A|b])
template <class F>
bool solvable(const F& f, const std::vector<std::vector<typename F::elem>>& a,
              const std::vector<typename F::elem>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("solvable: shape mismatch");
  if (a.empty()) return true;
  auto aug = a;
  for (std::size_t i = 0; i < a.size(); ++i) aug[i].push_back(b[i]);
  int r_aug = rank_of(f, std::move(aug));
  int r = rank_of(f, a);
  return r == r_aug;
}

// Basis of the null space of A (vectors of length cols).
template <class F>
std::vector<std::vector<typename F::elem>> kernel_basis(
    const F& f, std::vector<std::vector<typename F::elem>> a, std::size_t cols) {
  for (auto& row : a)
    if (row.size() != cols) throw std::invalid_argument("kernel_basis: ragged matrix");
  echelonize(f, a);
  std::vector<int> lead_of_col(cols, -1);
  int r = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::size_t j = 0;
    while (j < cols && f.is_zero(a[i][j])) ++j;
    if (j == cols) break;
    lead_of_col[j] = static_cast<int>(i);
    ++r;
  }
  std::vector<std::vector<typename F::elem>> basis;
  for (std::size_t free_col = 0; free_col < cols; ++free_col) {
    if (lead_of_col[free_col] >= 0) continue;
    std::vector<typename F::elem> v(cols, f.zero());
    v[free_col] = f.one();
    for (std::size_t j = 0; j < cols; ++j) {
      if (lead_of_col[j] < 0) continue;
      // leading 1 at column j in row lead_of_col[j]
      v[j] = f.neg(a[static_cast<std::size_t>(lead_of_col[j])][free_col]);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace lmlab
