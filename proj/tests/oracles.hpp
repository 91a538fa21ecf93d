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

// Reference implementations used only by the tests. They are written from
// the definitions, without touching the library's solvers, so agreement
// between the two is evidence rather than tautology.

#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "l1sudoku/puzzle.hpp"

namespace oracle {

/// All 4x4 Latin squares with the 2x2 box property, built row by row from
/// the 24 permutations of 1234.
inline std::vector<std::array<int, 16>> all_shidoku_grids() {
  std::vector<std::array<int, 4>> perms;
  std::array<int, 4> p{1, 2, 3, 4};
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));

  auto ok = [](const std::array<int, 16>& g, int rows) {
    for (int c = 0; c < 4; ++c) {
      std::set<int> seen;
      for (int r = 0; r < rows; ++r)
        if (!seen.insert(g[r * 4 + c]).second) return false;
    }
    for (int box_r = 0; box_r < rows / 2; ++box_r)
      for (int box_c = 0; box_c < 2; ++box_c) {
        std::set<int> seen;
        for (int dr = 0; dr < 2; ++dr)
          for (int dc = 0; dc < 2; ++dc) seen.insert(g[(box_r * 2 + dr) * 4 + box_c * 2 + dc]);
        if (seen.size() != 4) return false;
      }
    return true;
  };

  std::vector<std::array<int, 16>> out;
  std::array<int, 16> g{};
  for (const auto& r0 : perms)
    for (const auto& r1 : perms)
      for (const auto& r2 : perms)
        for (const auto& r3 : perms) {
          const std::array<int, 4>* rows[] = {&r0, &r1, &r2, &r3};
          for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) g[r * 4 + c] = (*rows[r])[c];
          if (ok(g, 4)) out.push_back(g);
        }
  return out;
}

/// Grids among `grids` that agree with every nonzero cell of `clues`.
inline std::vector<std::array<int, 16>> shidoku_matches(const std::vector<std::array<int, 16>>& grids,
                                                        const l1sudoku::Puzzle& clues) {
  std::vector<std::array<int, 16>> out;
  for (const auto& g : grids) {
    bool match = true;
    for (int i = 0; i < 16 && match; ++i) {
      int v = clues.at(i / 4, i % 4);
      match = v == 0 || v == g[i];
    }
    if (match) out.push_back(g);
  }
  return out;
}

inline l1sudoku::Puzzle shidoku_from(const std::array<int, 16>& g) {
  l1sudoku::Puzzle p(2);
  for (int i = 0; i < 16; ++i) p.set(i / 4, i % 4, g[i]);
  return p;
}

/// Column-wise 0/1 matrix assembled straight from the unit definitions,
/// independent of the library's row emitter. Rows come back as sorted
/// column lists in the documented order.
inline std::vector<std::vector<int>> reference_rows(const l1sudoku::Puzzle& p) {
  const int n = p.side(), b = p.box_order();
  auto idx = [n](int r, int c, int d) { return n * n * r + n * c + (d - 1); };
  std::vector<std::vector<int>> rows;
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      std::vector<int> row;
      for (int d = 1; d <= n; ++d) row.push_back(idx(r, c, d));
      rows.push_back(row);
    }
  for (int r = 0; r < n; ++r)
    for (int d = 1; d <= n; ++d) {
      std::vector<int> row;
      for (int c = 0; c < n; ++c) row.push_back(idx(r, c, d));
      rows.push_back(row);
    }
  for (int c = 0; c < n; ++c)
    for (int d = 1; d <= n; ++d) {
      std::vector<int> row;
      for (int r = 0; r < n; ++r) row.push_back(idx(r, c, d));
      rows.push_back(row);
    }
  for (int box = 0; box < n; ++box)
    for (int d = 1; d <= n; ++d) {
      std::vector<int> row;
      for (int r = (box / b) * b; r < (box / b + 1) * b; ++r)
        for (int c = (box % b) * b; c < (box % b + 1) * b; ++c) row.push_back(idx(r, c, d));
      std::sort(row.begin(), row.end());
      rows.push_back(row);
    }
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      if (p.at(r, c) != 0) rows.push_back({idx(r, c, p.at(r, c))});
  return rows;
}

/// Independent validity scan of a complete grid: every unit holds 1..side.
inline bool grid_is_valid(const l1sudoku::Puzzle& g) {
  const int n = g.side(), b = g.box_order();
  for (int i = 0; i < n; ++i) {
    std::set<int> row, col, box;
    for (int j = 0; j < n; ++j) {
      row.insert(g.at(i, j));
      col.insert(g.at(j, i));
      box.insert(g.at((i / b) * b + j / b, (i % b) * b + j % b));
    }
    for (const auto* s : {&row, &col, &box})
      if (s->size() != static_cast<size_t>(n) || s->count(0)) return false;
  }
  return true;
}

/// A box-preserving grid symmetry: transpose, then band/stack and in-band
/// row/column permutations, then a digit relabeling.
struct Symmetry {
  bool transpose = false;
  std::vector<int> row_map;  // new row r takes old row row_map[r]
  std::vector<int> col_map;
  std::vector<int> digit_map;  // digit_map[d] for d in 1..side, index 0 unused

  static Symmetry random(int box_order, std::mt19937_64& rng) {
    const int n = box_order * box_order;
    Symmetry s;
    s.transpose = rng() % 2 == 1;
    auto line_map = [&]() {
      std::vector<int> bands(static_cast<size_t>(box_order));
      for (int i = 0; i < box_order; ++i) bands[static_cast<size_t>(i)] = i;
      std::shuffle(bands.begin(), bands.end(), rng);
      std::vector<int> map;
      for (int band : bands) {
        std::vector<int> within(static_cast<size_t>(box_order));
        for (int i = 0; i < box_order; ++i) within[static_cast<size_t>(i)] = band * box_order + i;
        std::shuffle(within.begin(), within.end(), rng);
        map.insert(map.end(), within.begin(), within.end());
      }
      return map;
    };
    s.row_map = line_map();
    s.col_map = line_map();
    s.digit_map.resize(static_cast<size_t>(n) + 1);
    for (int d = 0; d <= n; ++d) s.digit_map[static_cast<size_t>(d)] = d;
    std::shuffle(s.digit_map.begin() + 1, s.digit_map.end(), rng);
    return s;
  }

  l1sudoku::Puzzle apply(const l1sudoku::Puzzle& p) const {
    l1sudoku::Puzzle out(p.box_order());
    const int n = p.side();
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) {
        int sr = row_map[static_cast<size_t>(r)], sc = col_map[static_cast<size_t>(c)];
        int v = transpose ? p.at(sc, sr) : p.at(sr, sc);
        out.set(r, c, digit_map[static_cast<size_t>(v)]);
      }
    return out;
  }
};

/// Reads the non-comment lines of a data file.
inline std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    out.push_back(line.substr(0, line.find_first_of(" \t")));
  }
  return out;
}

struct LabeledPuzzle {
  std::string text;
  std::string label;  // "TypeI" or "TypeII"
};

/// Fixture puzzles with the class assigned when the fixture set was built
/// (certificate and randomized search agreeing). Format: "puzzle,label".
inline std::vector<LabeledPuzzle> read_labels(const std::string& path) {
  std::vector<LabeledPuzzle> out;
  for (const auto& line : read_lines(path)) {
    auto comma = line.find(',');
    if (comma == std::string::npos || line.rfind("puzzle,", 0) == 0) continue;
    out.push_back({line.substr(0, comma), line.substr(comma + 1)});
  }
  return out;
}

inline std::vector<std::string> with_label(const std::vector<LabeledPuzzle>& all, const std::string& label,
                                           size_t limit) {
  std::vector<std::string> out;
  for (const auto& p : all)
    if (p.label == label && out.size() < limit) out.push_back(p.text);
  return out;
}

}  // namespace oracle
