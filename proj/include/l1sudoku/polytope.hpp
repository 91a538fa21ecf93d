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

// Geometry of the relaxed feasible set {A x = 1, x >= 0}: its maximal
// support and its analytic center.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <vector>

#include "l1sudoku/constraint_system.hpp"
#include "l1sudoku/presolve.hpp"
#include "l1sudoku/simplex.hpp"
#include "l1sudoku/tolerances.hpp"

namespace l1sudoku {

/// Indices that are strictly positive somewhere on the feasible set, with a
/// feasible witness that is positive on all of them at once.
struct SupportSet {
  std::vector<int> indices;  // sorted, original column indices
  IndicatorVector witness;
  int lp_solves = 0;
};

enum class SupportMethod {
  kVertexSweep,  // repeatedly maximize the mass on not-yet-seen indices
  kDeltaLp,      // one LP: max sum s_i, s_i <= delta, s_i <= x_i; verified, falls back to the sweep
  kPerVariable,  // max x_i for every index not yet seen
};

namespace detail {

inline LinearProgram reduced_box_lp(const ReducedSystem& reduced, std::vector<double> cost) {
  LinearProgram lp;
  const auto n = static_cast<size_t>(reduced.n_free());
  lp.objective = std::move(cost);
  lp.constraints = to_sparse(reduced.matrix);
  lp.rhs.assign(static_cast<size_t>(reduced.matrix.n_rows()), 1.0);
  lp.lower.assign(n, 0.0);
  lp.upper.assign(n, 1.0);
  return lp;
}

struct SweepState {
  std::vector<char> seen;
  std::vector<double> witness_sum;
  int vertices = 0;
  int solves = 0;

  void absorb(const std::vector<double>& x, double zero_tol) {
    for (size_t k = 0; k < x.size(); ++k) {
      witness_sum[k] += x[k];
      if (x[k] > zero_tol) seen[k] = 1;
    }
    ++vertices;
  }
};

inline LpSolution solve_reduced(const ReducedSystem& reduced, std::vector<double> cost, const Tolerances& tol,
                                SweepState& state) {
  auto sol = solve_lp(reduced_box_lp(reduced, std::move(cost)), tol);
  ++state.solves;
  if (sol.status != LpStatus::Optimal) throw InfeasibleSystem("relaxed system has no feasible point");
  return sol;
}

inline void vertex_sweep(const ReducedSystem& reduced, const Tolerances& tol, SweepState& state) {
  const auto n = static_cast<size_t>(reduced.n_free());
  while (true) {
    std::vector<double> cost(n, 0.0);
    bool any = false;
    for (size_t k = 0; k < n; ++k)
      if (!state.seen[k]) {
        cost[k] = -1.0;
        any = true;
      }
    if (!any) return;
    auto sol = solve_reduced(reduced, std::move(cost), tol, state);
    if (-sol.objective_value <= tol.support_zero) return;
    state.absorb(sol.x, tol.support_zero);
  }
}

inline void per_variable(const ReducedSystem& reduced, const Tolerances& tol, SweepState& state) {
  const auto n = static_cast<size_t>(reduced.n_free());
  for (size_t k = 0; k < n; ++k) {
    if (state.seen[k]) continue;
    std::vector<double> cost(n, 0.0);
    cost[k] = -1.0;
    auto sol = solve_reduced(reduced, std::move(cost), tol, state);
    if (-sol.objective_value > tol.support_zero) state.absorb(sol.x, tol.support_zero);
  }
}

// Variables [x (n), s (n), w (n)]: A x = 1, s - x + w = 0, 0 <= s <= delta.
inline void delta_lp(const ReducedSystem& reduced, const Tolerances& tol, SweepState& state) {
  const int n = reduced.n_free();
  const int m = reduced.matrix.n_rows();
  const double delta = tol.support_delta;
  std::vector<Eigen::Triplet<double>> triplets;
  for (int i = 0; i < m; ++i)
    for (int j : reduced.matrix.row(i)) triplets.emplace_back(i, j, 1.0);
  for (int k = 0; k < n; ++k) {
    triplets.emplace_back(m + k, n + k, 1.0);
    triplets.emplace_back(m + k, k, -1.0);
    triplets.emplace_back(m + k, 2 * n + k, 1.0);
  }
  LinearProgram lp;
  lp.constraints.resize(m + n, 3 * n);
  lp.constraints.setFromTriplets(triplets.begin(), triplets.end());
  lp.rhs.assign(static_cast<size_t>(m + n), 0.0);
  std::fill(lp.rhs.begin(), lp.rhs.begin() + m, 1.0);
  lp.objective.assign(static_cast<size_t>(3 * n), 0.0);
  lp.lower.assign(static_cast<size_t>(3 * n), 0.0);
  lp.upper.assign(static_cast<size_t>(3 * n), kInf);
  for (int k = 0; k < n; ++k) {
    lp.objective[static_cast<size_t>(n + k)] = -1.0;
    lp.upper[static_cast<size_t>(k)] = 1.0;
    lp.upper[static_cast<size_t>(n + k)] = delta;
  }
  auto sol = solve_lp(lp, tol);
  ++state.solves;
  if (sol.status != LpStatus::Optimal) throw InfeasibleSystem("relaxed system has no feasible point");
  std::vector<double> x(sol.x.begin(), sol.x.begin() + n);
  for (size_t k = 0; k < static_cast<size_t>(n); ++k) state.witness_sum[k] += x[k];
  ++state.vertices;
  for (int k = 0; k < n; ++k)
    if (sol.x[static_cast<size_t>(n + k)] >= delta * (1.0 - 1e-6)) state.seen[static_cast<size_t>(k)] = 1;
  // A delta above the smallest attainable coordinate loses indices; the sweep
  // recovers them and certifies the result.
  vertex_sweep(reduced, tol, state);
}

}  // namespace detail

inline SupportSet maximal_support(const ConstraintSystem& sys, SupportMethod method = SupportMethod::kVertexSweep,
                                  const Tolerances& tol = {}) {
  ReducedSystem reduced = presolve(sys.matrix());
  const auto n = static_cast<size_t>(reduced.n_free());
  detail::SweepState state;
  state.seen.assign(n, 0);
  state.witness_sum.assign(n, 0.0);
  if (n > 0) {
    switch (method) {
      case SupportMethod::kVertexSweep:
        detail::vertex_sweep(reduced, tol, state);
        break;
      case SupportMethod::kDeltaLp:
        detail::delta_lp(reduced, tol, state);
        break;
      case SupportMethod::kPerVariable:
        detail::per_variable(reduced, tol, state);
        break;
    }
    if (state.vertices == 0) {
      // Every free variable is identically zero; still need one feasible point.
      auto sol = detail::solve_reduced(reduced, std::vector<double>(n, 0.0), tol, state);
      state.absorb(sol.x, tol.support_zero);
    }
  } else if (reduced.matrix.n_rows() > 0) {
    throw InfeasibleSystem("rows remain with no free variable");
  }
  std::vector<double> mean(n, 0.0);
  for (size_t k = 0; k < n; ++k) mean[k] = state.vertices ? state.witness_sum[k] / state.vertices : 0.0;
  SupportSet out;
  out.witness = IndicatorVector(sys.side(), reduced.expand(mean));
  for (size_t j = 0; j < reduced.fixed.size(); ++j) {
    double f = reduced.fixed[j];
    if (f == 1.0) out.indices.push_back(static_cast<int>(j));
  }
  for (size_t k = 0; k < n; ++k)
    if (state.seen[k]) out.indices.push_back(reduced.free_columns[k]);
  std::sort(out.indices.begin(), out.indices.end());
  out.lp_solves = state.solves;
  return out;
}

struct AnalyticCenterResult {
  IndicatorVector x;
  int newton_iterations = 0;
  double decrement = 0.0;  // lambda^2 / 2 at exit
  int nullity = 0;         // dimension of the feasible face
};

/// Maximizes sum_{i in support} log x_i subject to A x = b with x_i = 0 off
/// the support, by damped Newton steps in an orthonormal null-space basis of
/// A restricted to the support.
inline AnalyticCenterResult analytic_center_detailed(const ConstraintSystem& sys, const SupportSet& support,
                                                     const IndicatorVector& x0, const Tolerances& tol = {}) {
  const auto& idx = support.indices;
  const auto k = static_cast<Eigen::Index>(idx.size());
  const int m = sys.n_rows();
  for (int j : idx)
    if (!(x0[static_cast<size_t>(j)] > 0.0)) throw std::invalid_argument("starting point must be positive on the support");

  Eigen::MatrixXd as_t = Eigen::MatrixXd::Zero(k, m);  // A_S^T
  std::vector<int> pos(static_cast<size_t>(sys.n_cols()), -1);
  for (Eigen::Index t = 0; t < k; ++t) pos[static_cast<size_t>(idx[static_cast<size_t>(t)])] = static_cast<int>(t);
  for (int i = 0; i < m; ++i)
    for (int j : sys.matrix().row(i))
      if (pos[static_cast<size_t>(j)] >= 0) as_t(pos[static_cast<size_t>(j)], i) = 1.0;

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(as_t);
  qr.setThreshold(1e-10);
  const Eigen::Index rank = qr.rank();
  const Eigen::Index nullity = k - rank;
  Eigen::MatrixXd q = qr.householderQ();
  Eigen::MatrixXd z = q.rightCols(nullity);

  Eigen::VectorXd x(k);
  for (Eigen::Index t = 0; t < k; ++t) x[t] = x0[static_cast<size_t>(idx[static_cast<size_t>(t)])];

  AnalyticCenterResult out;
  out.nullity = static_cast<int>(nullity);
  auto barrier = [](const Eigen::VectorXd& v) { return -v.array().log().sum(); };
  if (nullity > 0) {
    for (int it = 0; it < 200; ++it) {
      Eigen::VectorXd inv = x.cwiseInverse();
      Eigen::VectorXd gz = -(z.transpose() * inv);
      Eigen::MatrixXd h = z.transpose() * inv.cwiseAbs2().asDiagonal() * z;
      Eigen::LDLT<Eigen::MatrixXd> ldlt(h);
      if (ldlt.info() != Eigen::Success || !ldlt.isPositive()) {
        h.diagonal().array() += tol.kkt_regularization;
        ldlt.compute(h);
        if (ldlt.info() != Eigen::Success) throw NumericalBreakdown("singular Newton system");
      }
      Eigen::VectorXd dz = -ldlt.solve(gz);
      double lambda2 = -gz.dot(dz);
      out.decrement = lambda2 / 2.0;
      out.newton_iterations = it;
      if (!std::isfinite(lambda2)) throw NumericalBreakdown("non-finite Newton decrement");
      Eigen::VectorXd dx = z * dz;
      if (lambda2 / 2.0 <= tol.newton_decrement) {
        // Inside the quadratic region: the last full step stays positive
        // (|dx_i / x_i| <= lambda) and squares the remaining error.
        x += dx;
        break;
      }
      double step = 1.0;
      for (Eigen::Index t = 0; t < k; ++t)
        if (dx[t] < 0) step = std::min(step, -0.99 * x[t] / dx[t]);
      const double f0 = barrier(x);
      while (step > 1e-12 && barrier(x + step * dx) > f0 - 0.25 * step * lambda2) step *= 0.5;
      x += step * dx;
      out.newton_iterations = it + 1;
    }
  }
  std::vector<double> full(static_cast<size_t>(sys.n_cols()), 0.0);
  for (Eigen::Index t = 0; t < k; ++t) full[static_cast<size_t>(idx[static_cast<size_t>(t)])] = x[t];
  out.x = IndicatorVector(sys.side(), std::move(full));
  if (residual_inf_norm(sys, out.x) > tol.equality_residual) throw NumericalBreakdown("analytic center lost feasibility");
  return out;
}

inline IndicatorVector analytic_center(const ConstraintSystem& sys, const SupportSet& support,
                                       const IndicatorVector& x0, const Tolerances& tol = {}) {
  return analytic_center_detailed(sys, support, x0, tol).x;
}

}  // namespace l1sudoku
