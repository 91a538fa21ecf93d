// Copyright 2026 The l1sudoku Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Reduction of a puzzle system over x >= 0 by propagating forced values:
// a row whose only free variable is x_j forces x_j = 1, and a variable at 1
// forces every other variable of its rows to 0. The reduced polytope is
// affinely identical to the original one on the remaining coordinates.

#pragma once

#include <deque>
#include <stdexcept>
#include <vector>

#include "l1sudoku/constraint_system.hpp"

namespace l1sudoku {

class InfeasibleSystem : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ReducedSystem {
  int original_cols = 0;
  std::vector<int> free_columns;  // original indices of the remaining variables
  std::vector<double> fixed;      // per original column: 0, 1, or -1 when free
  SparseBinaryMatrix matrix;      // remaining rows over free_columns, rhs all ones

  int n_free() const { return static_cast<int>(free_columns.size()); }

  std::vector<double> expand(const std::vector<double>& reduced) const {
    std::vector<double> full(fixed.size());
    for (size_t j = 0; j < fixed.size(); ++j) full[j] = fixed[j] < 0 ? 0.0 : fixed[j];
    for (size_t k = 0; k < free_columns.size(); ++k) full[static_cast<size_t>(free_columns[k])] = reduced[k];
    return full;
  }
};

/// Throws InfeasibleSystem when propagation finds a contradiction.
inline ReducedSystem presolve(const SparseBinaryMatrix& a) {
  const int m = a.n_rows();
  const int n = a.n_cols();
  const auto cols = a.columns();
  std::vector<int> value(static_cast<size_t>(n), -1);
  std::vector<int> free_count(static_cast<size_t>(m));
  std::vector<char> satisfied(static_cast<size_t>(m), 0);
  for (int i = 0; i < m; ++i) free_count[static_cast<size_t>(i)] = static_cast<int>(a.row(i).size());

  std::deque<int> pending_rows;
  for (int i = 0; i < m; ++i)
    if (free_count[static_cast<size_t>(i)] <= 1) pending_rows.push_back(i);

  auto set_zero = [&](int j) {
    value[static_cast<size_t>(j)] = 0;
    for (int i : cols[static_cast<size_t>(j)]) {
      if (--free_count[static_cast<size_t>(i)] <= 1 && !satisfied[static_cast<size_t>(i)]) pending_rows.push_back(i);
    }
  };
  auto set_one = [&](int j) {
    value[static_cast<size_t>(j)] = 1;
    for (int i : cols[static_cast<size_t>(j)]) {
      if (satisfied[static_cast<size_t>(i)]) throw InfeasibleSystem("two variables forced to one in a row");
      satisfied[static_cast<size_t>(i)] = 1;
      --free_count[static_cast<size_t>(i)];
    }
    for (int i : cols[static_cast<size_t>(j)])
      for (int k : a.row(i))
        if (value[static_cast<size_t>(k)] < 0) set_zero(k);
  };

  while (!pending_rows.empty()) {
    int i = pending_rows.front();
    pending_rows.pop_front();
    if (satisfied[static_cast<size_t>(i)]) continue;
    int remaining = -1;
    int count = 0;
    for (int j : a.row(i))
      if (value[static_cast<size_t>(j)] < 0) {
        remaining = j;
        ++count;
      }
    if (count == 0) throw InfeasibleSystem("row " + std::to_string(i) + " cannot be satisfied");
    if (count == 1) set_one(remaining);
  }

  ReducedSystem out;
  out.original_cols = n;
  out.fixed.assign(static_cast<size_t>(n), -1.0);
  std::vector<int> remap(static_cast<size_t>(n), -1);
  for (int j = 0; j < n; ++j) {
    if (value[static_cast<size_t>(j)] >= 0) {
      out.fixed[static_cast<size_t>(j)] = value[static_cast<size_t>(j)];
    } else {
      remap[static_cast<size_t>(j)] = out.n_free();
      out.free_columns.push_back(j);
    }
  }
  out.matrix = SparseBinaryMatrix(0, out.n_free());
  for (int i = 0; i < m; ++i) {
    if (satisfied[static_cast<size_t>(i)]) continue;
    std::vector<int> row;
    for (int j : a.row(i))
      if (remap[static_cast<size_t>(j)] >= 0) row.push_back(remap[static_cast<size_t>(j)]);
    out.matrix.add_row(std::move(row));
  }
  return out;
}

}  // namespace l1sudoku
