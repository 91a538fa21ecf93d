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

// Puzzle representation, text I/O, unit-constraint checking and an exact
// backtracking solver used as the combinatorial ground truth.

#pragma once

#include <bit>
#include <cctype>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace l1sudoku {

/// One-based cell coordinates, as printed in reports ("r3c7").
struct CellRef {
  int row = 1;
  int col = 1;

  friend bool operator==(const CellRef&, const CellRef&) = default;
  friend auto operator<=>(const CellRef&, const CellRef&) = default;
};

class PuzzleError : public std::runtime_error {
 public:
  enum class Kind { WrongLength, IllegalCharacter, ConstraintViolation, BadBoxOrder, IncompletePuzzle };

  PuzzleError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

inline constexpr int kMinBoxOrder = 2;
inline constexpr int kMaxBoxOrder = 4;

/// A side x side grid (side = box_order^2). Zero marks an empty cell.
///
/// The grid does not enforce the unit constraints on its own; parse_puzzle()
/// and the solvers do. This lets validate() report conflicts on grids that
/// were assembled by hand.
class Puzzle {
 public:
  Puzzle() : Puzzle(3) {}
  explicit Puzzle(int box_order) : box_order_(box_order), side_(box_order * box_order) {
    if (box_order < kMinBoxOrder || box_order > kMaxBoxOrder) {
      throw PuzzleError(PuzzleError::Kind::BadBoxOrder,
                        "box order must be in [" + std::to_string(kMinBoxOrder) + ", " +
                            std::to_string(kMaxBoxOrder) + "], got " + std::to_string(box_order));
    }
    cells_.assign(static_cast<size_t>(side_ * side_), 0);
  }

  int box_order() const { return box_order_; }
  int side() const { return side_; }
  int num_cells() const { return side_ * side_; }

  // Zero-based accessors.
  int at(int row, int col) const { return cells_[static_cast<size_t>(row * side_ + col)]; }
  void set(int row, int col, int value) {
    if (value < 0 || value > side_) throw std::out_of_range("cell value out of range");
    cells_[static_cast<size_t>(row * side_ + col)] = static_cast<uint8_t>(value);
  }
  int at(CellRef cell) const { return at(cell.row - 1, cell.col - 1); }
  void set(CellRef cell, int value) { set(cell.row - 1, cell.col - 1, value); }

  int box_of(int row, int col) const { return (row / box_order_) * box_order_ + col / box_order_; }

  int clue_count() const {
    int count = 0;
    for (uint8_t v : cells_) count += v != 0;
    return count;
  }
  bool is_complete() const { return clue_count() == num_cells(); }

  const std::vector<uint8_t>& cells() const { return cells_; }

  friend bool operator==(const Puzzle&, const Puzzle&) = default;

 private:
  int box_order_;
  int side_;
  std::vector<uint8_t> cells_;
};

// Alphabet: '0' or '.' for empty, '1'..'9' then 'A'.. for values above 9.
inline int decode_symbol(char ch) {
  if (ch == '.' || ch == '0') return 0;
  if (ch >= '1' && ch <= '9') return ch - '0';
  if (ch >= 'A' && ch <= 'Z') return ch - 'A' + 10;
  if (ch >= 'a' && ch <= 'z') return ch - 'a' + 10;
  return -1;
}

inline char encode_symbol(int value) {
  if (value <= 9) return static_cast<char>('0' + value);
  return static_cast<char>('A' + value - 10);
}

struct Conflict {
  enum class Unit { Row, Column, Box };
  Unit unit;
  int index;  // zero-based unit index
  int value;
  std::string description;
};

/// Reports every unit (row, column, box) in which a nonzero value repeats.
/// One entry per (unit, value) pair regardless of the number of repeats.
inline std::vector<Conflict> validate(const Puzzle& p) {
  std::vector<Conflict> out;
  const int n = p.side();
  auto scan = [&](Conflict::Unit unit, int index, auto&& cell_of) {
    std::vector<int> seen(static_cast<size_t>(n + 1), 0);
    for (int k = 0; k < n; ++k) {
      auto [r, c] = cell_of(k);
      int v = p.at(r, c);
      if (v != 0 && ++seen[static_cast<size_t>(v)] == 2) {
        static constexpr const char* kNames[] = {"row", "column", "box"};
        out.push_back({unit, index, v,
                       std::string("value ") + std::to_string(v) + " repeated in " +
                           kNames[static_cast<int>(unit)] + " " + std::to_string(index + 1)});
      }
    }
  };
  const int b = p.box_order();
  for (int i = 0; i < n; ++i) {
    scan(Conflict::Unit::Row, i, [&](int k) { return std::pair{i, k}; });
    scan(Conflict::Unit::Column, i, [&](int k) { return std::pair{k, i}; });
    scan(Conflict::Unit::Box, i, [&](int k) {
      return std::pair{(i / b) * b + k / b, (i % b) * b + k % b};
    });
  }
  return out;
}

inline Puzzle parse_puzzle(std::string_view text, int box_order = 3) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);

  Puzzle p(box_order);
  const auto expected = static_cast<size_t>(p.num_cells());
  if (text.size() != expected) {
    throw PuzzleError(PuzzleError::Kind::WrongLength, "expected " + std::to_string(expected) +
                                                          " characters, got " +
                                                          std::to_string(text.size()));
  }
  for (size_t i = 0; i < text.size(); ++i) {
    int v = decode_symbol(text[i]);
    if (v < 0 || v > p.side()) {
      throw PuzzleError(PuzzleError::Kind::IllegalCharacter,
                        std::string("illegal character '") + text[i] + "' at offset " +
                            std::to_string(i));
    }
    p.set(static_cast<int>(i) / p.side(), static_cast<int>(i) % p.side(), v);
  }
  if (auto conflicts = validate(p); !conflicts.empty()) {
    throw PuzzleError(PuzzleError::Kind::ConstraintViolation, conflicts.front().description);
  }
  return p;
}

inline std::string format_puzzle(const Puzzle& p) {
  std::string out;
  out.reserve(p.cells().size());
  for (uint8_t v : p.cells()) out.push_back(encode_symbol(v));
  return out;
}

/// Human-readable grid with box separators. Cells listed in `marked` are
/// wrapped in brackets.
inline std::string render_grid(const Puzzle& p, const std::vector<CellRef>& marked = {}) {
  const int n = p.side();
  const int b = p.box_order();
  auto is_marked = [&](int r, int c) {
    for (const auto& m : marked)
      if (m.row == r + 1 && m.col == c + 1) return true;
    return false;
  };
  std::string rule;
  for (int bc = 0; bc < b; ++bc) {
    rule += bc == 0 ? "+" : "";
    rule += std::string(static_cast<size_t>(3 * b + 1), '-') + "+";
  }
  std::string out = rule + "\n";
  for (int r = 0; r < n; ++r) {
    out += "|";
    for (int c = 0; c < n; ++c) {
      int v = p.at(r, c);
      char sym = v == 0 ? '.' : encode_symbol(v);
      if (is_marked(r, c)) {
        out += '[';
        out += sym;
        out += ']';
      } else {
        out += ' ';
        out += sym;
        out += ' ';
      }
      if ((c + 1) % b == 0) out += " |";
    }
    out += "\n";
    if ((r + 1) % b == 0) out += rule + "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Exact solver

struct SolveOutcome {
  enum class Status { Solved, Infeasible, MultipleFound };
  Status status = Status::Infeasible;
  std::optional<Puzzle> completion;  // first completion found
  int solution_count = 0;            // exact up to the cap
};

namespace detail {

class ExactSearch {
 public:
  ExactSearch(const Puzzle& p, int cap, std::function<void(const Puzzle&)> visit, long node_limit = 0)
      : puzzle_(p), n_(p.side()), cap_(cap), node_limit_(node_limit), visit_(std::move(visit)) {
    const auto un = static_cast<size_t>(n_);
    row_.assign(un, 0);
    col_.assign(un, 0);
    box_.assign(un, 0);
    full_ = (n_ == 32) ? ~0u : ((1u << n_) - 1u);
    for (int r = 0; r < n_; ++r)
      for (int c = 0; c < n_; ++c)
        if (int v = p.at(r, c); v != 0) {
          uint32_t bit = 1u << (v - 1);
          if ((row_[r] | col_[c] | box_[p.box_of(r, c)]) & bit) consistent_ = false;
          row_[r] |= bit;
          col_[c] |= bit;
          box_[p.box_of(r, c)] |= bit;
        } else {
          empties_.push_back(r * n_ + c);
        }
  }

  int run() {
    if (consistent_) search(0);
    return found_;
  }

  const std::optional<Puzzle>& first() const { return first_; }
  bool truncated() const { return truncated_; }

 private:
  // Most-constrained empty cell first; a cell with a single candidate is a
  // forced move and is taken without branching.
  void search(size_t depth) {
    if (found_ >= cap_ || truncated_) return;
    if (node_limit_ > 0 && ++nodes_ > node_limit_) {
      truncated_ = true;
      return;
    }
    if (depth == empties_.size()) {
      if (!first_) first_ = puzzle_;
      if (visit_) visit_(puzzle_);
      ++found_;
      return;
    }
    size_t best = depth;
    int best_count = n_ + 1;
    uint32_t best_mask = 0;
    for (size_t k = depth; k < empties_.size(); ++k) {
      int cell = empties_[k];
      int r = cell / n_, c = cell % n_;
      uint32_t mask = full_ & ~(row_[r] | col_[c] | box_[puzzle_.box_of(r, c)]);
      int count = std::popcount(mask);
      if (count < best_count) {
        best_count = count;
        best = k;
        best_mask = mask;
        if (count <= 1) break;
      }
    }
    if (best_count == 0) return;
    std::swap(empties_[depth], empties_[best]);
    int cell = empties_[depth];
    int r = cell / n_, c = cell % n_, bx = puzzle_.box_of(r, c);
    for (uint32_t mask = best_mask; mask != 0 && found_ < cap_ && !truncated_; mask &= mask - 1) {
      uint32_t bit = mask & (~mask + 1);
      row_[r] |= bit;
      col_[c] |= bit;
      box_[bx] |= bit;
      puzzle_.set(r, c, std::countr_zero(bit) + 1);
      search(depth + 1);
      row_[r] &= ~bit;
      col_[c] &= ~bit;
      box_[bx] &= ~bit;
    }
    puzzle_.set(r, c, 0);
    std::swap(empties_[depth], empties_[best]);
  }

  Puzzle puzzle_;
  int n_;
  int cap_;
  long node_limit_;
  long nodes_ = 0;
  bool truncated_ = false;
  std::function<void(const Puzzle&)> visit_;
  std::vector<uint32_t> row_, col_, box_;
  uint32_t full_ = 0;
  std::vector<int> empties_;
  bool consistent_ = true;
  int found_ = 0;
  std::optional<Puzzle> first_;
};

}  // namespace detail

/// Counts completions of `p` by backtracking, stopping once `count_cap`
/// completions are found. Deterministic: the same puzzle always yields the
/// same first completion.
inline SolveOutcome solve_exact(const Puzzle& p, int count_cap = 2) {
  if (count_cap < 1) throw std::invalid_argument("count_cap must be >= 1");
  detail::ExactSearch search(p, count_cap, nullptr);
  SolveOutcome out;
  out.solution_count = search.run();
  out.completion = search.first();
  if (out.solution_count == 0) {
    out.status = SolveOutcome::Status::Infeasible;
  } else if (out.solution_count == 1) {
    out.status = SolveOutcome::Status::Solved;
  } else {
    out.status = SolveOutcome::Status::MultipleFound;
  }
  return out;
}

/// Calls `visit` on each completion, stopping after `cap` of them. Returns the
/// number visited.
inline int for_each_completion(const Puzzle& p, int cap, const std::function<void(const Puzzle&)>& visit) {
  detail::ExactSearch search(p, cap, visit);
  return search.run();
}

/// Like for_each_completion, but gives up after `node_limit` search nodes
/// and then returns nullopt (completions already visited stay visited).
inline std::optional<int> for_each_completion_bounded(const Puzzle& p, int cap, long node_limit,
                                                      const std::function<void(const Puzzle&)>& visit) {
  detail::ExactSearch search(p, cap, visit, node_limit);
  int found = search.run();
  if (search.truncated()) return std::nullopt;
  return found;
}

/// All completions, up to `cap`.
inline std::vector<Puzzle> enumerate_completions(const Puzzle& p, int cap) {
  std::vector<Puzzle> out;
  for_each_completion(p, cap, [&](const Puzzle& s) { out.push_back(s); });
  return out;
}

inline bool is_uniquely_completable(const Puzzle& p) {
  return solve_exact(p, 2).status == SolveOutcome::Status::Solved;
}

/// Empty cells in row-major order.
inline std::vector<CellRef> empty_cells(const Puzzle& p) {
  std::vector<CellRef> out;
  for (int r = 0; r < p.side(); ++r)
    for (int c = 0; c < p.side(); ++c)
      if (p.at(r, c) == 0) out.push_back({r + 1, c + 1});
  return out;
}

/// Reads the line-oriented puzzle format: blank lines and lines starting with
/// '#' are skipped. Each entry keeps its one-based line number.
struct PuzzleLine {
  int line_number;
  std::string text;
};

inline std::vector<PuzzleLine> split_puzzle_lines(std::string_view content) {
  std::vector<PuzzleLine> out;
  int line_number = 0;
  while (!content.empty()) {
    size_t eol = content.find('\n');
    std::string_view line = content.substr(0, eol);
    content.remove_prefix(eol == std::string_view::npos ? content.size() : eol + 1);
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    size_t first = line.find_first_not_of(" \t");
    if (first == std::string_view::npos || line[first] == '#') continue;
    out.push_back({line_number, std::string(line)});
  }
  return out;
}

}  // namespace l1sudoku
