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

// Uniqueness certification for the relaxed problem at a binary point x*,
// classification of puzzles into type I (relaxation solves them) and type II,
// and the key-cell sweep over the empty cells of a type-II puzzle.
//
// x* is the unique minimizer of ||x||_1 over {A x = b} iff A_I has full
// column rank and some w satisfies A_I^T w = sign(x*)_I with
// |A_{I^c}^T w| < 1. The second condition is tested by
//
//   min u  s.t.  |(A_I^T w)_k - 1| <= u,  |(A_{I^c}^T w)_j| <= 1 - eps,
//
// whose optimum is zero iff a strict certificate exists. That LP is solved
// through its dual, which has one row per row of A plus one:
//
//   min  sum_k (a_k - b_k) + (1 - eps) sum_j (g_j + h_j)
//   s.t. sum_k (a_k - b_k) A_k + sum_j (g_j - h_j) A_j = 0,
//        sum_k (a_k + b_k) = 1,   all variables >= 0,
//
// and w is read back from the simplex multipliers.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "l1sudoku/constraint_system.hpp"
#include "l1sudoku/parallel.hpp"
#include "l1sudoku/polytope.hpp"
#include "l1sudoku/presolve.hpp"
#include "l1sudoku/simplex.hpp"
#include "l1sudoku/sparse_solvers.hpp"
#include "l1sudoku/tolerances.hpp"

namespace l1sudoku {

class CertificateError : public std::runtime_error {
 public:
  enum class Kind { NotBinary, NotFeasible, NotUniquelyCompletable, NotTypeII };
  CertificateError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

struct CertificateResult {
  bool rank_ok = false;
  std::vector<double> omega;      // one entry per row of A
  double residual = 0.0;          // max_k |(A_I^T w)_k - 1|
  double off_support_max = 0.0;   // max_j |(A_{I^c}^T w)_j|
  double epsilon = 1e-4;
  bool unique = false;
  int lp_iterations = 0;
};

inline CertificateResult certify_uniqueness(const ConstraintSystem& sys, const IndicatorVector& x_star,
                                            double epsilon, const Tolerances& tol = {}) {
  if (!x_star.is_binary(0.0)) throw CertificateError(CertificateError::Kind::NotBinary, "x* must be a binary point");
  if (residual_inf_norm(sys, x_star) != 0.0)
    throw CertificateError(CertificateError::Kind::NotFeasible, "x* does not satisfy A x = b");

  const SparseBinaryMatrix& a = sys.matrix();
  const int m = a.n_rows();
  const int n = a.n_cols();
  const auto columns = a.columns();
  std::vector<int> support;
  std::vector<char> in_support(static_cast<size_t>(n), 0);
  for (int j = 0; j < n; ++j) {
    if (x_star[static_cast<size_t>(j)] == 1.0) {
      support.push_back(j);
      in_support[static_cast<size_t>(j)] = 1;
    }
  }

  CertificateResult out;
  out.epsilon = epsilon;
  out.rank_ok = rank_full_column(a.select_columns(support), tol.rank_pivot);

  const double t = 1.0 - epsilon;
  std::vector<Eigen::Triplet<double>> triplets;
  std::vector<double> cost;
  int var = 0;
  for (int j = 0; j < n; ++j) {
    const bool on = in_support[static_cast<size_t>(j)] != 0;
    for (double sign : {1.0, -1.0}) {
      for (int i : columns[static_cast<size_t>(j)]) triplets.emplace_back(i, var, sign);
      if (on) triplets.emplace_back(m, var, 1.0);
      cost.push_back(on ? sign : t);
      ++var;
    }
  }
  LinearProgram lp;
  lp.constraints.resize(m + 1, var);
  lp.constraints.setFromTriplets(triplets.begin(), triplets.end());
  lp.objective = std::move(cost);
  lp.rhs.assign(static_cast<size_t>(m + 1), 0.0);
  lp.rhs[static_cast<size_t>(m)] = 1.0;
  lp.lower.assign(static_cast<size_t>(var), 0.0);
  lp.upper.assign(static_cast<size_t>(var), kInf);
  LpSolution sol = solve_lp(lp, tol);
  if (sol.status != LpStatus::Optimal) throw NumericalBreakdown("certificate program did not reach optimality");
  out.lp_iterations = sol.iterations;

  out.omega.assign(sol.duals.begin(), sol.duals.begin() + m);
  const auto at_w = a.transpose_multiply(out.omega);
  for (int j = 0; j < n; ++j) {
    double v = at_w[static_cast<size_t>(j)];
    if (in_support[static_cast<size_t>(j)]) {
      out.residual = std::max(out.residual, std::abs(v - 1.0));
    } else {
      out.off_support_max = std::max(out.off_support_max, std::abs(v));
    }
  }
  if (out.off_support_max > t + 1e-7) throw NumericalBreakdown("certificate multipliers violate the box constraint");
  out.unique = out.rank_ok && out.residual < tol.certificate_residual;
  return out;
}

/// FNV-1a, so per-puzzle random streams do not depend on the standard library.
inline uint64_t stable_hash(const std::string& s) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

struct CrossCheck {
  int draws = 0;
  bool alternative_found = false;
  double max_distance = 0.0;  // largest infinity-norm distance from x* over all draws
};

/// Minimizes random objectives (uniform in [-1, 1]) over the relaxed
/// feasible set and reports whether any optimal vertex differs from x*.
inline CrossCheck random_alternative_search(const ConstraintSystem& sys, const IndicatorVector& x_star, int draws,
                                            uint64_t seed, const Tolerances& tol = {}) {
  CrossCheck out;
  out.draws = draws;
  ReducedSystem reduced = presolve(sys.matrix());
  if (reduced.n_free() == 0) return out;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  for (int d = 0; d < draws; ++d) {
    std::vector<double> cost(static_cast<size_t>(reduced.n_free()));
    for (double& c : cost) c = uniform(rng);
    auto sol = solve_lp(detail::reduced_box_lp(reduced, std::move(cost)), tol);
    if (sol.status != LpStatus::Optimal) throw NumericalBreakdown("random-objective LP failed");
    auto full = reduced.expand(sol.x);
    for (size_t j = 0; j < full.size(); ++j) out.max_distance = std::max(out.max_distance, std::abs(full[j] - x_star[j]));
  }
  out.alternative_found = out.max_distance > tol.cross_check_distance;
  return out;
}

enum class PuzzleType { TypeI, TypeII };

inline const char* to_string(PuzzleType t) { return t == PuzzleType::TypeI ? "TypeI" : "TypeII"; }

struct PuzzleClass {
  PuzzleType label = PuzzleType::TypeII;
  CertificateResult certificate;
  std::optional<CrossCheck> cross_check;
  Puzzle completion;
};

struct ClassifyOptions {
  double epsilon = 1e-4;
  bool cross_check = false;
  uint64_t seed = 0;
};

inline PuzzleClass classify(const Puzzle& p, const ClassifyOptions& options = {}, const Tolerances& tol = {}) {
  SolveOutcome exact = solve_exact(p, 2);
  if (exact.status != SolveOutcome::Status::Solved) {
    throw CertificateError(CertificateError::Kind::NotUniquelyCompletable, "puzzle is not uniquely completable");
  }
  PuzzleClass out;
  out.completion = *exact.completion;
  ConstraintSystem sys = build_system(p);
  IndicatorVector x_star = encode_solution(out.completion);
  out.certificate = certify_uniqueness(sys, x_star, options.epsilon, tol);
  out.label = out.certificate.unique ? PuzzleType::TypeI : PuzzleType::TypeII;
  if (options.cross_check) {
    out.cross_check = random_alternative_search(sys, x_star, tol.cross_check_draws,
                                                options.seed ^ stable_hash(format_puzzle(p)), tol);
  }
  return out;
}

struct KeyCellEntry {
  CellRef cell;
  int digit = 0;              // the true digit filled in
  PuzzleType augmented_type = PuzzleType::TypeII;
  double residual = 0.0;      // certificate residual of the augmented puzzle
  double relaxed_value = 0.0; // P1 value of the true digit's entry in the original puzzle
};

struct KeyCellReport {
  Puzzle puzzle;
  Puzzle completion;
  std::vector<CellRef> key_cells;  // row-major
  std::vector<KeyCellEntry> per_cell;
};

/// Fills each empty cell of a type-II puzzle with its true digit and records
/// which single fillings make the relaxation exact.
inline KeyCellReport find_key_cells(const Puzzle& p, const ClassifyOptions& options = {}, int workers = 1,
                                    const Tolerances& tol = {}) {
  PuzzleClass base = classify(p, ClassifyOptions{options.epsilon, false, options.seed}, tol);
  if (base.label != PuzzleType::TypeII) throw CertificateError(CertificateError::Kind::NotTypeII, "puzzle is type I");
  P1Result relaxed = solve_p1(p, tol);

  KeyCellReport report;
  report.puzzle = p;
  report.completion = base.completion;
  const auto cells = empty_cells(p);
  report.per_cell = parallel_map(cells.size(), workers, [&](size_t k) {
    KeyCellEntry e;
    e.cell = cells[k];
    e.digit = base.completion.at(e.cell);
    Puzzle augmented = p;
    augmented.set(e.cell, e.digit);
    ConstraintSystem sys = build_system(augmented);
    CertificateResult cert = certify_uniqueness(sys, encode_solution(base.completion), options.epsilon, tol);
    e.augmented_type = cert.unique ? PuzzleType::TypeI : PuzzleType::TypeII;
    e.residual = cert.residual;
    e.relaxed_value = relaxed.x.at(e.cell.row - 1, e.cell.col - 1, e.digit);
    return e;
  });
  for (const auto& e : report.per_cell)
    if (e.augmented_type == PuzzleType::TypeI) report.key_cells.push_back(e.cell);
  return report;
}

}  // namespace l1sudoku
