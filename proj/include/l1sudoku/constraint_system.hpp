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

// The sparse 0/1 system A x = b that encodes a puzzle, and conversions
// between grids and indicator vectors.
//
// Column encoding (zero-based): idx(r, c, d) = side^2 * r + side * c + (d - 1)
// with r, c zero-based and d in 1..side.
//
// Row order: side^2 cell rows, side^2 row-unit rows, side^2 column-unit rows,
// side^2 box rows, then one row per clue in row-major cell order. The first
// 4 * side^2 rows depend only on the side.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <ostream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "l1sudoku/puzzle.hpp"

namespace l1sudoku {

inline int column_index(int side, int row, int col, int digit) {
  return side * side * row + side * col + (digit - 1);
}

struct CellDigit {
  int row;  // zero-based
  int col;  // zero-based
  int digit;
};

inline CellDigit decode_column(int side, int index) {
  return {index / (side * side), (index / side) % side, index % side + 1};
}

/// 0/1 matrix stored as sorted column lists per row.
class SparseBinaryMatrix {
 public:
  SparseBinaryMatrix() = default;
  SparseBinaryMatrix(int n_rows, int n_cols) : n_cols_(n_cols), rows_(static_cast<size_t>(n_rows)) {}

  int n_rows() const { return static_cast<int>(rows_.size()); }
  int n_cols() const { return n_cols_; }

  void add_row(std::vector<int> cols) {
    std::sort(cols.begin(), cols.end());
    for (size_t k = 0; k < cols.size(); ++k) {
      if (cols[k] < 0 || cols[k] >= n_cols_) throw std::out_of_range("column index out of range");
      if (k > 0 && cols[k] == cols[k - 1]) throw std::invalid_argument("duplicate column in row");
    }
    rows_.push_back(std::move(cols));
  }

  const std::vector<int>& row(int i) const { return rows_[static_cast<size_t>(i)]; }

  size_t nnz() const {
    size_t total = 0;
    for (const auto& r : rows_) total += r.size();
    return total;
  }

  /// Row indices holding a one, per column.
  std::vector<std::vector<int>> columns() const {
    std::vector<std::vector<int>> cols(static_cast<size_t>(n_cols_));
    for (int i = 0; i < n_rows(); ++i)
      for (int j : rows_[static_cast<size_t>(i)]) cols[static_cast<size_t>(j)].push_back(i);
    return cols;
  }

  std::vector<double> multiply(const std::vector<double>& x) const {
    if (static_cast<int>(x.size()) != n_cols_) throw std::invalid_argument("shape mismatch in A*x");
    std::vector<double> y(rows_.size(), 0.0);
    for (size_t i = 0; i < rows_.size(); ++i)
      for (int j : rows_[i]) y[i] += x[static_cast<size_t>(j)];
    return y;
  }

  std::vector<double> transpose_multiply(const std::vector<double>& w) const {
    if (w.size() != rows_.size()) throw std::invalid_argument("shape mismatch in A^T*w");
    std::vector<double> y(static_cast<size_t>(n_cols_), 0.0);
    for (size_t i = 0; i < rows_.size(); ++i)
      for (int j : rows_[i]) y[static_cast<size_t>(j)] += w[i];
    return y;
  }

  /// Submatrix keeping the listed columns (in the given order).
  SparseBinaryMatrix select_columns(const std::vector<int>& keep) const {
    std::vector<int> remap(static_cast<size_t>(n_cols_), -1);
    for (size_t k = 0; k < keep.size(); ++k) remap[static_cast<size_t>(keep[k])] = static_cast<int>(k);
    SparseBinaryMatrix out(0, static_cast<int>(keep.size()));
    for (const auto& r : rows_) {
      std::vector<int> cols;
      for (int j : r)
        if (int m = remap[static_cast<size_t>(j)]; m >= 0) cols.push_back(m);
      out.add_row(std::move(cols));
    }
    return out;
  }

  friend bool operator==(const SparseBinaryMatrix&, const SparseBinaryMatrix&) = default;

 private:
  int n_cols_ = 0;
  std::vector<std::vector<int>> rows_;
};

/// A (possibly fractional) point of the relaxed system, one entry per column.
class IndicatorVector {
 public:
  IndicatorVector() = default;
  IndicatorVector(int side, std::vector<double> values) : side_(side), values_(std::move(values)) {
    if (static_cast<long>(values_.size()) != static_cast<long>(side) * side * side) {
      throw std::invalid_argument("indicator vector length must be side^3");
    }
  }
  static IndicatorVector zeros(int side) {
    return IndicatorVector(side, std::vector<double>(static_cast<size_t>(side * side * side), 0.0));
  }

  int side() const { return side_; }
  size_t size() const { return values_.size(); }
  double operator[](size_t i) const { return values_[i]; }
  double& operator[](size_t i) { return values_[i]; }
  const std::vector<double>& values() const { return values_; }

  double at(int row, int col, int digit) const {
    return values_[static_cast<size_t>(column_index(side_, row, col, digit))];
  }

  bool is_binary(double tol = 0.0) const {
    int ones = 0;
    for (double v : values_) {
      if (std::abs(v - 1.0) <= tol) {
        ++ones;
      } else if (std::abs(v) > tol) {
        return false;
      }
    }
    return ones == side_ * side_;
  }

  /// Indices with value above `tol`.
  std::vector<int> support(double tol) const {
    std::vector<int> out;
    for (size_t i = 0; i < values_.size(); ++i)
      if (values_[i] > tol) out.push_back(static_cast<int>(i));
    return out;
  }

 private:
  int side_ = 0;
  std::vector<double> values_;
};

class ConstraintSystem {
 public:
  ConstraintSystem(SparseBinaryMatrix a, Puzzle puzzle) : a_(std::move(a)), puzzle_(std::move(puzzle)) {}

  const SparseBinaryMatrix& matrix() const { return a_; }
  const Puzzle& puzzle() const { return puzzle_; }
  int side() const { return puzzle_.side(); }
  int n_rows() const { return a_.n_rows(); }
  int n_cols() const { return a_.n_cols(); }
  int base_row_count() const { return 4 * side() * side(); }

  /// The right-hand side; every entry is 1.
  std::vector<double> rhs() const { return std::vector<double>(static_cast<size_t>(n_rows()), 1.0); }

 private:
  SparseBinaryMatrix a_;
  Puzzle puzzle_;
};

inline ConstraintSystem build_system(const Puzzle& p) {
  const int n = p.side();
  const int b = p.box_order();
  SparseBinaryMatrix a(0, n * n * n);
  std::vector<int> cols(static_cast<size_t>(n));
  auto emit = [&](auto&& index_of) {
    for (int k = 0; k < n; ++k) cols[static_cast<size_t>(k)] = index_of(k);
    a.add_row(cols);
  };
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) emit([&](int d) { return column_index(n, r, c, d + 1); });
  for (int r = 0; r < n; ++r)
    for (int d = 1; d <= n; ++d) emit([&](int c) { return column_index(n, r, c, d); });
  for (int c = 0; c < n; ++c)
    for (int d = 1; d <= n; ++d) emit([&](int r) { return column_index(n, r, c, d); });
  for (int bx = 0; bx < n; ++bx)
    for (int d = 1; d <= n; ++d)
      emit([&](int k) {
        return column_index(n, (bx / b) * b + k / b, (bx % b) * b + k % b, d);
      });
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      if (int v = p.at(r, c); v != 0) a.add_row({column_index(n, r, c, v)});
  return ConstraintSystem(std::move(a), p);
}

inline IndicatorVector encode_solution(const Puzzle& p) {
  if (!p.is_complete()) {
    throw PuzzleError(PuzzleError::Kind::IncompletePuzzle, "encode_solution needs a complete grid");
  }
  if (auto conflicts = validate(p); !conflicts.empty()) {
    throw PuzzleError(PuzzleError::Kind::ConstraintViolation, conflicts.front().description);
  }
  auto x = IndicatorVector::zeros(p.side());
  for (int r = 0; r < p.side(); ++r)
    for (int c = 0; c < p.side(); ++c) x[static_cast<size_t>(column_index(p.side(), r, c, p.at(r, c)))] = 1.0;
  return x;
}

struct AmbiguousCell {
  CellRef cell;
  std::vector<std::pair<int, double>> profile;  // (digit, value) for values above tol
};

struct FractionalReport {
  std::vector<AmbiguousCell> cells;
  int entries_above_tol = 0;
};

/// Rounds x to a grid only when every cell is unambiguous: one digit above
/// 1 - tol and all others below tol. Nothing is ever rounded otherwise.
inline std::variant<Puzzle, FractionalReport> decode_indicator(const IndicatorVector& x, double tol) {
  const int n = x.side();
  int box_order = 0;
  while (box_order * box_order < n) ++box_order;
  Puzzle grid(box_order);
  FractionalReport report;
  for (size_t i = 0; i < x.size(); ++i) report.entries_above_tol += x[i] > tol;
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      int chosen = 0;
      bool clean = true;
      std::vector<std::pair<int, double>> profile;
      for (int d = 1; d <= n; ++d) {
        double v = x.at(r, c, d);
        if (v > tol) profile.emplace_back(d, v);
        if (v > 1.0 - tol) {
          clean = clean && chosen == 0;
          chosen = d;
        } else if (v >= tol) {
          clean = false;
        }
      }
      if (clean && chosen != 0) {
        grid.set(r, c, chosen);
      } else {
        report.cells.push_back({{r + 1, c + 1}, std::move(profile)});
      }
    }
  }
  if (report.cells.empty()) return grid;
  return report;
}

inline double residual_inf_norm(const SparseBinaryMatrix& a, const std::vector<double>& x,
                                const std::vector<double>& b) {
  if (static_cast<int>(b.size()) != a.n_rows()) throw std::invalid_argument("shape mismatch: b");
  auto ax = a.multiply(x);
  double worst = 0.0;
  for (size_t i = 0; i < b.size(); ++i) worst = std::max(worst, std::abs(ax[i] - b[i]));
  return worst;
}

inline double residual_inf_norm(const ConstraintSystem& sys, const IndicatorVector& x) {
  return residual_inf_norm(sys.matrix(), x.values(), sys.rhs());
}

/// Header "rows cols nnz" then one "row col" line per nonzero, zero-based,
/// sorted by row then column.
inline void write_matrix_dump(std::ostream& os, const SparseBinaryMatrix& a) {
  os << a.n_rows() << ' ' << a.n_cols() << ' ' << a.nnz() << '\n';
  for (int i = 0; i < a.n_rows(); ++i)
    for (int j : a.row(i)) os << i << ' ' << j << '\n';
}

}  // namespace l1sudoku
