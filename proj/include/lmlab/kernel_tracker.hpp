#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "lmlab/fields.hpp"
#include "lmlab/simplex.hpp"

namespace lmlab {

// Tracks the kernel dimension of a growing coboundary matrix restricted to a
// fixed column set X of facets. Starts at |X|; each pushed row (a d-face of
// the process) can only drop the dimension by at most one. Maintains a row
// echelon basis of the row space, O(|X|^2) per push.
template <class F>
struct kernel_tracker {
  F field;
  std::vector<index_t> columns;          // global facet ranks, sorted
  std::map<index_t, int> local_of;       // global rank -> local index
  std::vector<std::vector<typename F::elem>> basis;  // echelon rows
  std::vector<int> leads;                // lead column per basis row

  kernel_tracker(F f, std::vector<index_t> cols) : field(std::move(f)), columns(std::move(cols)) {
    std::sort(columns.begin(), columns.end());
    columns.erase(std::unique(columns.begin(), columns.end()), columns.end());
    for (std::size_t i = 0; i < columns.size(); ++i)
      local_of[columns[i]] = static_cast<int>(i);
  }

  int dimension() const { return static_cast<int>(columns.size() - basis.size()); }

  // Push one coboundary row given as (global facet rank, integer coefficient)
  // pairs; entries outside the tracked columns are dropped. Returns the new
  // kernel dimension.
  int push_row(const std::vector<std::pair<index_t, int>>& entries) {
    std::vector<typename F::elem> row(columns.size(), field.zero());
    bool any = false;
    for (const auto& [global, coeff] : entries) {
      auto it = local_of.find(global);
      if (it == local_of.end()) continue;
      row[static_cast<std::size_t>(it->second)] =
          field.add(row[static_cast<std::size_t>(it->second)], field.from_int(coeff));
      any = true;
    }
    if (!any) return dimension();
    // reduce against the basis
    for (std::size_t b = 0; b < basis.size(); ++b) {
      auto& x = row[static_cast<std::size_t>(leads[b])];
      if (field.is_zero(x)) continue;
      auto factor = x;
      for (std::size_t j = 0; j < row.size(); ++j)
        row[j] = field.sub(row[j], field.mul(factor, basis[b][j]));
    }
    int lead = -1;
    for (std::size_t j = 0; j < row.size(); ++j)
      if (!field.is_zero(row[j])) {
        lead = static_cast<int>(j);
        break;
      }
    if (lead < 0) return dimension();
    auto inv = field.inv(row[static_cast<std::size_t>(lead)]);
    for (auto& x : row) x = field.mul(x, inv);
    basis.push_back(std::move(row));
    leads.push_back(lead);
    return dimension();
  }

  // Push the restricted coboundary row of a d-face.
  int push_face(const face& sigma, int n) {
    std::vector<std::pair<index_t, int>> entries;
    entries.reserve(sigma.vertices.size());
    for (int i = 0; i < static_cast<int>(sigma.vertices.size()); ++i)
      entries.push_back({face_rank(sigma.without_vertex(i), n), (i % 2 == 0) ? 1 : -1});
    return push_row(entries);
  }
};

}  // namespace lmlab
