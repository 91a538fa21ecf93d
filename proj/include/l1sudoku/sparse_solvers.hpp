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

// The two relaxation pipelines: the plain P1 solve (analytic center of the
// optimal face) with fractional diagnostics, and the one-shot repair that
// promotes entries equal to the mode of the rounded values in [0.5, 1).

#pragma once

#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <variant>
#include <vector>

#include "l1sudoku/constraint_system.hpp"
#include "l1sudoku/polytope.hpp"
#include "l1sudoku/puzzle.hpp"
#include "l1sudoku/tolerances.hpp"

namespace l1sudoku {

struct P1Result {
  IndicatorVector x;
  bool is_integral = false;
  std::variant<Puzzle, FractionalReport> decoded;
  int nonzero_count = 0;  // entries above tolerances.nonzero
  int half_count = 0;     // entries within tolerances.half_band of 0.5
  int support_size = 0;
  int face_dimension = 0;
  double residual = 0.0;
  int lp_solves = 0;
  int newton_iterations = 0;

  const Puzzle* grid() const { return std::get_if<Puzzle>(&decoded); }
};

/// True when `grid` is complete, satisfies every unit, and keeps all clues.
inline bool is_valid_completion_of(const Puzzle& grid, const Puzzle& clues) {
  if (grid.side() != clues.side() || !grid.is_complete() || !validate(grid).empty()) return false;
  for (size_t i = 0; i < grid.cells().size(); ++i)
    if (clues.cells()[i] != 0 && clues.cells()[i] != grid.cells()[i]) return false;
  return true;
}

/// Throws InfeasibleSystem when the relaxation has no feasible point.
inline P1Result solve_p1(const Puzzle& p, const Tolerances& tol = {}) {
  ConstraintSystem sys = build_system(p);
  SupportSet support = maximal_support(sys, SupportMethod::kVertexSweep, tol);
  AnalyticCenterResult center = analytic_center_detailed(sys, support, support.witness, tol);

  P1Result out;
  out.x = std::move(center.x);
  out.decoded = decode_indicator(out.x, tol.integrality);
  out.support_size = static_cast<int>(support.indices.size());
  out.face_dimension = center.nullity;
  out.lp_solves = support.lp_solves;
  out.newton_iterations = center.newton_iterations;
  out.residual = residual_inf_norm(sys, out.x);
  for (double v : out.x.values()) {
    out.nonzero_count += v > tol.nonzero;
    out.half_count += std::abs(v - 0.5) <= tol.half_band;
  }
  const Puzzle* grid = out.grid();
  out.is_integral = grid != nullptr && is_valid_completion_of(*grid, p);
  return out;
}

struct ValueHistogramEntry {
  double rounded_value;
  int count;
};

inline long rounding_bucket(double v) { return std::lround(v * 1e4); }

/// Values rounded to four decimals, restricted to 0.5 <= v < 1 after
/// rounding, counted per distinct rounded value in ascending order.
inline std::vector<ValueHistogramEntry> value_histogram(const std::vector<double>& x) {
  std::map<long, int> buckets;
  for (double v : x) {
    long b = rounding_bucket(v);
    if (b >= 5000 && b < 10000) ++buckets[b];
  }
  std::vector<ValueHistogramEntry> out;
  for (auto [b, count] : buckets) out.push_back({static_cast<double>(b) / 1e4, count});
  return out;
}

inline std::vector<ValueHistogramEntry> value_histogram(const IndicatorVector& x) { return value_histogram(x.values()); }

/// Most frequent bucket; ties go to the larger value.
inline std::optional<double> histogram_mode(const std::vector<ValueHistogramEntry>& histogram) {
  std::optional<double> best;
  int best_count = 0;
  for (const auto& e : histogram) {
    if (e.count >= best_count) {
      best_count = e.count;
      best = e.rounded_value;
    }
  }
  return best;
}

struct Promotion {
  CellRef cell;
  int digit;
};

struct RepairTrace {
  enum class Stage { SolvedDirect, SolvedAfterRepair, FailedAfterRepair, InfeasibleRepair };
  Stage stage = Stage::FailedAfterRepair;
  double threshold = std::numeric_limits<double>::quiet_NaN();
  std::vector<Promotion> promoted_cells;
  std::vector<CellRef> dropped_cells;  // cells with two or more digits at the threshold
  std::vector<ValueHistogramEntry> histogram;
  P1Result first;
  std::optional<P1Result> repaired;
  std::optional<Puzzle> solution;

  const P1Result& final_result() const { return repaired ? *repaired : first; }
};

inline const char* to_string(RepairTrace::Stage stage) {
  switch (stage) {
    case RepairTrace::Stage::SolvedDirect: return "SolvedDirect";
    case RepairTrace::Stage::SolvedAfterRepair: return "SolvedAfterRepair";
    case RepairTrace::Stage::FailedAfterRepair: return "FailedAfterRepair";
    case RepairTrace::Stage::InfeasibleRepair: return "InfeasibleRepair";
  }
  return "?";
}

/// P1, then at most one repair round: every entry whose rounded value equals
/// t = mode(S) becomes a clue, and P1 runs again on the augmented puzzle.
/// Success is judged by self-validation against the original clues.
inline RepairTrace solve_improved(const Puzzle& p, const Tolerances& tol = {}) {
  RepairTrace trace;
  trace.first = solve_p1(p, tol);
  if (trace.first.is_integral) {
    trace.stage = RepairTrace::Stage::SolvedDirect;
    trace.solution = *trace.first.grid();
    return trace;
  }

  trace.histogram = value_histogram(trace.first.x);
  auto mode = histogram_mode(trace.histogram);
  if (!mode) {
    // Nothing in [0.5, 1): no threshold, no repair.
    trace.stage = RepairTrace::Stage::FailedAfterRepair;
    return trace;
  }
  trace.threshold = *mode;
  const long target = rounding_bucket(*mode);
  const int n = p.side();
  Puzzle augmented = p;
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      if (p.at(r, c) != 0) continue;
      std::vector<int> digits;
      for (int d = 1; d <= n; ++d)
        if (rounding_bucket(trace.first.x.at(r, c, d)) == target) digits.push_back(d);
      if (digits.size() == 1) {
        trace.promoted_cells.push_back({{r + 1, c + 1}, digits.front()});
        augmented.set(r, c, digits.front());
      } else if (digits.size() > 1) {
        trace.dropped_cells.push_back({r + 1, c + 1});
      }
    }
  }
  if (trace.promoted_cells.empty()) {
    trace.stage = RepairTrace::Stage::FailedAfterRepair;
    return trace;
  }
  if (!validate(augmented).empty()) {
    trace.stage = RepairTrace::Stage::InfeasibleRepair;
    return trace;
  }
  try {
    trace.repaired = solve_p1(augmented, tol);
  } catch (const InfeasibleSystem&) {
    trace.stage = RepairTrace::Stage::InfeasibleRepair;
    return trace;
  }
  if (trace.repaired->is_integral && is_valid_completion_of(*trace.repaired->grid(), p)) {
    trace.stage = RepairTrace::Stage::SolvedAfterRepair;
    trace.solution = *trace.repaired->grid();
  } else {
    trace.stage = RepairTrace::Stage::FailedAfterRepair;
  }
  return trace;
}

}  // namespace l1sudoku
