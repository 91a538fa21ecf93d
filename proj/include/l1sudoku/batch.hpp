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

// Batch orchestration: per-puzzle classification records, run summaries,
// and the report files written by the command-line front end.

#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <limits>
#include <random>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "l1sudoku/parallel.hpp"
#include "l1sudoku/puzzle.hpp"
#include "l1sudoku/sparse_solvers.hpp"
#include "l1sudoku/uniqueness.hpp"

namespace l1sudoku {

struct BatchOptions {
  double epsilon = 1e-4;
  bool cross_check = false;
  bool run_improved = true;
  bool timings = false;  // wall times make reports non-reproducible; off by default
  uint64_t seed = 0;
  int workers = 1;
  int box_order = 3;
};

struct ClassificationRecord {
  int puzzle_id = 0;  // input line number
  std::string puzzle_text;
  std::optional<std::string> error;

  PuzzleType label = PuzzleType::TypeII;
  bool rank_ok = false;
  double residual = 0.0;
  double off_support_max = 0.0;
  std::optional<bool> alternative_found;

  bool p1_integral = false;
  int p1_nonzero_count = 0;
  int p1_half_count = 0;

  std::optional<RepairTrace::Stage> improved_stage;
  double threshold = std::numeric_limits<double>::quiet_NaN();
  int promoted_cell_count = 0;
  int dropped_cell_count = 0;
  int wrong_promotions = 0;  // promoted digits that disagree with the exact completion

  double classify_ms = 0.0;
  double relax_ms = 0.0;
};

namespace detail {

inline double elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
}

}  // namespace detail

/// Never throws: failures land in `error`.
inline ClassificationRecord classify_record(const PuzzleLine& line, const BatchOptions& options,
                                            const Tolerances& tol = {}) {
  ClassificationRecord rec;
  rec.puzzle_id = line.line_number;
  rec.puzzle_text = line.text;
  try {
    Puzzle p = parse_puzzle(line.text, options.box_order);
    rec.puzzle_text = format_puzzle(p);
    auto start = std::chrono::steady_clock::now();
    PuzzleClass cls = classify(p, ClassifyOptions{options.epsilon, options.cross_check, options.seed}, tol);
    rec.classify_ms = detail::elapsed_ms(start);
    rec.label = cls.label;
    rec.rank_ok = cls.certificate.rank_ok;
    rec.residual = cls.certificate.residual;
    rec.off_support_max = cls.certificate.off_support_max;
    if (cls.cross_check) rec.alternative_found = cls.cross_check->alternative_found;

    start = std::chrono::steady_clock::now();
    if (options.run_improved) {
      RepairTrace trace = solve_improved(p, tol);
      rec.p1_integral = trace.first.is_integral;
      rec.p1_nonzero_count = trace.first.nonzero_count;
      rec.p1_half_count = trace.first.half_count;
      rec.improved_stage = trace.stage;
      rec.threshold = trace.threshold;
      rec.promoted_cell_count = static_cast<int>(trace.promoted_cells.size());
      rec.dropped_cell_count = static_cast<int>(trace.dropped_cells.size());
      for (const auto& pr : trace.promoted_cells) rec.wrong_promotions += cls.completion.at(pr.cell) != pr.digit;
    } else {
      P1Result relaxed = solve_p1(p, tol);
      rec.p1_integral = relaxed.is_integral;
      rec.p1_nonzero_count = relaxed.nonzero_count;
      rec.p1_half_count = relaxed.half_count;
    }
    rec.relax_ms = detail::elapsed_ms(start);
  } catch (const std::exception& e) {
    rec.error = e.what();
  }
  return rec;
}

/// Records come back in input order whatever the worker count.
inline std::vector<ClassificationRecord> run_batch(const std::vector<PuzzleLine>& lines, const BatchOptions& options,
                                                   const Tolerances& tol = {}) {
  if (options.workers < 1) throw std::invalid_argument("worker count must be at least 1");
  return parallel_map(lines.size(), options.workers,
                      [&](size_t k) { return classify_record(lines[k], options, tol); });
}

/// Seeded sample of `count` lines, kept in input order. The generator and the
/// index draw are spelled out so samples agree across standard libraries.
inline std::vector<PuzzleLine> sample_lines(const std::vector<PuzzleLine>& lines, size_t count, uint64_t seed) {
  if (count >= lines.size()) return lines;
  std::vector<size_t> order(lines.size());
  for (size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::mt19937_64 rng(seed);
  for (size_t k = order.size() - 1; k > 0; --k) std::swap(order[k], order[rng() % (k + 1)]);
  order.resize(count);
  std::sort(order.begin(), order.end());
  std::vector<PuzzleLine> out;
  for (size_t k : order) out.push_back(lines[k]);
  return out;
}

struct BatchSummary {
  int total = 0;
  int errors = 0;
  int type_i = 0;
  int type_ii = 0;
  int p1_integral = 0;
  int solved_direct = 0;
  int solved_after_repair = 0;
  int failed_after_repair = 0;
  int infeasible_repair = 0;
  int wrong_promotion_puzzles = 0;
  int cross_check_disagreements = 0;
  double type_i_fraction = 0.0;
  double direct_solve_rate = 0.0;
  double repair_success_rate = 0.0;
  double overall_accuracy = 0.0;
  double max_type_i_residual = 0.0;
  double min_type_ii_residual = std::numeric_limits<double>::infinity();
  std::vector<double> histogram_edges;  // decades; first bin also holds exact zeros
  std::vector<int> histogram_counts;
};

inline BatchSummary summarize(const std::vector<ClassificationRecord>& records) {
  BatchSummary s;
  for (int e = -16; e <= 1; ++e) s.histogram_edges.push_back(std::pow(10.0, e));
  s.histogram_counts.assign(s.histogram_edges.size() - 1, 0);
  for (const auto& r : records) {
    ++s.total;
    if (r.error) {
      ++s.errors;
      continue;
    }
    if (r.label == PuzzleType::TypeI) {
      ++s.type_i;
      s.max_type_i_residual = std::max(s.max_type_i_residual, r.residual);
    } else {
      ++s.type_ii;
      s.min_type_ii_residual = std::min(s.min_type_ii_residual, r.residual);
    }
    s.p1_integral += r.p1_integral;
    if (r.alternative_found && *r.alternative_found == (r.label == PuzzleType::TypeI)) ++s.cross_check_disagreements;
    if (r.improved_stage) {
      switch (*r.improved_stage) {
        case RepairTrace::Stage::SolvedDirect: ++s.solved_direct; break;
        case RepairTrace::Stage::SolvedAfterRepair: ++s.solved_after_repair; break;
        case RepairTrace::Stage::FailedAfterRepair: ++s.failed_after_repair; break;
        case RepairTrace::Stage::InfeasibleRepair: ++s.infeasible_repair; break;
      }
    }
    s.wrong_promotion_puzzles += r.wrong_promotions > 0;
    size_t bin = 0;
    while (bin + 1 < s.histogram_counts.size() && r.residual >= s.histogram_edges[bin + 1]) ++bin;
    ++s.histogram_counts[bin];
  }
  const int ok = s.total - s.errors;
  if (ok > 0) {
    s.type_i_fraction = static_cast<double>(s.type_i) / ok;
    s.direct_solve_rate = static_cast<double>(s.p1_integral) / ok;
    s.overall_accuracy = static_cast<double>(s.solved_direct + s.solved_after_repair) / ok;
  }
  if (s.type_ii > 0) s.repair_success_rate = static_cast<double>(s.solved_after_repair) / s.type_ii;
  return s;
}

inline nlohmann::ordered_json to_json(const ClassificationRecord& r, bool timings) {
  nlohmann::ordered_json j;
  j["puzzle_id"] = r.puzzle_id;
  j["puzzle"] = r.puzzle_text;
  if (r.error) {
    j["error"] = *r.error;
    return j;
  }
  j["class"] = to_string(r.label);
  j["rank_ok"] = r.rank_ok;
  j["residual"] = r.residual;
  j["off_support_max"] = r.off_support_max;
  if (r.alternative_found) j["alternative_found"] = *r.alternative_found;
  j["p1_integral"] = r.p1_integral;
  j["p1_nonzero_count"] = r.p1_nonzero_count;
  j["p1_half_count"] = r.p1_half_count;
  if (r.improved_stage) {
    j["improved_stage"] = to_string(*r.improved_stage);
    if (std::isfinite(r.threshold)) j["threshold"] = r.threshold;
    j["promoted_cell_count"] = r.promoted_cell_count;
    j["dropped_cell_count"] = r.dropped_cell_count;
    j["wrong_promotions"] = r.wrong_promotions;
  }
  if (timings) {
    j["classify_ms"] = r.classify_ms;
    j["relax_ms"] = r.relax_ms;
  }
  return j;
}

inline nlohmann::ordered_json to_json(const BatchSummary& s) {
  nlohmann::ordered_json j;
  j["total"] = s.total;
  j["errors"] = s.errors;
  j["type_i"] = s.type_i;
  j["type_ii"] = s.type_ii;
  j["type_i_fraction"] = s.type_i_fraction;
  j["p1_integral"] = s.p1_integral;
  j["direct_solve_rate"] = s.direct_solve_rate;
  j["solved_direct"] = s.solved_direct;
  j["solved_after_repair"] = s.solved_after_repair;
  j["failed_after_repair"] = s.failed_after_repair;
  j["infeasible_repair"] = s.infeasible_repair;
  j["repair_success_rate"] = s.repair_success_rate;
  j["overall_accuracy"] = s.overall_accuracy;
  j["wrong_promotion_puzzles"] = s.wrong_promotion_puzzles;
  j["cross_check_disagreements"] = s.cross_check_disagreements;
  j["max_type_i_residual"] = s.max_type_i_residual;
  if (std::isfinite(s.min_type_ii_residual)) j["min_type_ii_residual"] = s.min_type_ii_residual;
  j["residual_histogram"] = {{"edges", s.histogram_edges}, {"counts", s.histogram_counts}};
  return j;
}

inline void write_records_jsonl(std::ostream& os, const std::vector<ClassificationRecord>& records, bool timings) {
  for (const auto& r : records) os << to_json(r, timings).dump() << '\n';
}

inline void write_residuals_csv(std::ostream& os, const std::vector<ClassificationRecord>& records) {
  os << "residual\n";
  std::ostringstream line;
  for (const auto& r : records) {
    if (r.error) continue;
    line.str("");
    line << std::setprecision(17) << r.residual;
    os << line.str() << '\n';
  }
}

}  // namespace l1sudoku
