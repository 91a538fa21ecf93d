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

// Two-phase bounded-variable revised simplex over a sparse constraint matrix,
// and a Gaussian-elimination rank test.
//
// The basis inverse is kept as an explicit dense matrix with product-form
// row updates and a periodic refactorization. Problems
// here have a few hundred rows, so O(m^2) per pivot is the right trade.

#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "l1sudoku/constraint_system.hpp"
#include "l1sudoku/tolerances.hpp"

namespace l1sudoku {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

class NumericalBreakdown : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// min c'x  s.t.  A x = b,  lower <= x <= upper.  Bounds may be infinite.
struct LinearProgram {
  std::vector<double> objective;
  Eigen::SparseMatrix<double> constraints;  // column major
  std::vector<double> rhs;
  std::vector<double> lower;
  std::vector<double> upper;

  int n_rows() const { return static_cast<int>(constraints.rows()); }
  int n_cols() const { return static_cast<int>(constraints.cols()); }

  void check() const {
    const auto n = static_cast<size_t>(n_cols());
    if (objective.size() != n || lower.size() != n || upper.size() != n ||
        rhs.size() != static_cast<size_t>(n_rows())) {
      throw std::invalid_argument("linear program dimensions are inconsistent");
    }
    for (size_t j = 0; j < n; ++j)
      if (!(lower[j] <= upper[j])) throw std::invalid_argument("lower bound exceeds upper bound");
  }
};

/// Sparse 0/1 matrix as an Eigen column-major matrix.
inline Eigen::SparseMatrix<double> to_sparse(const SparseBinaryMatrix& a) {
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(a.nnz());
  for (int i = 0; i < a.n_rows(); ++i)
    for (int j : a.row(i)) triplets.emplace_back(i, j, 1.0);
  Eigen::SparseMatrix<double> out(a.n_rows(), a.n_cols());
  out.setFromTriplets(triplets.begin(), triplets.end());
  return out;
}

/// LP over {A x = b, 0 <= x <= 1} for a puzzle system with the given cost.
inline LinearProgram box_lp(const ConstraintSystem& sys, std::vector<double> cost) {
  LinearProgram lp;
  const auto n = static_cast<size_t>(sys.n_cols());
  lp.objective = std::move(cost);
  lp.constraints = to_sparse(sys.matrix());
  lp.rhs = sys.rhs();
  lp.lower.assign(n, 0.0);
  lp.upper.assign(n, 1.0);
  return lp;
}

enum class LpStatus { Optimal, Infeasible, Unbounded };
enum class VarState { Basic, AtLower, AtUpper, FreeZero };

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  std::vector<double> x;
  double objective_value = 0.0;
  int iterations = 0;
  std::vector<double> duals;          // simplex multipliers y, one per row
  std::vector<double> reduced_costs;  // c_j - y'a_j
  std::vector<VarState> states;
};

namespace detail {

class RevisedSimplex {
 public:

  RevisedSimplex(const LinearProgram& lp, const Tolerances& tol) : lp_(lp), tol_(tol) {
    m_ = lp.n_rows();
    n_ = lp.n_cols();
    total_ = n_ + m_;
    refactor_period_ = std::max(64, m_ / 2);
    lower_.assign(lp.lower.begin(), lp.lower.end());
    upper_.assign(lp.upper.begin(), lp.upper.end());
    lower_.resize(static_cast<size_t>(total_), 0.0);
    upper_.resize(static_cast<size_t>(total_), kInf);
    art_sign_.assign(static_cast<size_t>(m_), 1.0);
    x_.assign(static_cast<size_t>(total_), 0.0);
    state_.assign(static_cast<size_t>(total_), VarState::AtLower);
  }

  LpSolution run() {
    // Nonbasic structurals start at a finite bound (or zero when free).
    for (int j = 0; j < n_; ++j) {
      auto uj = static_cast<size_t>(j);
      if (std::isfinite(lower_[uj])) {
        x_[uj] = lower_[uj];
        state_[uj] = VarState::AtLower;
      } else if (std::isfinite(upper_[uj])) {
        x_[uj] = upper_[uj];
        state_[uj] = VarState::AtUpper;
      } else {
        x_[uj] = 0.0;
        state_[uj] = VarState::FreeZero;
      }
    }
    std::vector<double> r = lp_.rhs;
    for (int j = 0; j < n_; ++j) {
      double xj = x_[static_cast<size_t>(j)];
      if (xj == 0.0) continue;
      for (Eigen::SparseMatrix<double>::InnerIterator it(lp_.constraints, j); it; ++it)
        r[static_cast<size_t>(it.row())] -= it.value() * xj;
    }
    basis_.resize(static_cast<size_t>(m_));
    for (int i = 0; i < m_; ++i) {
      auto ui = static_cast<size_t>(i);
      art_sign_[ui] = r[ui] < 0 ? -1.0 : 1.0;
      basis_[ui] = n_ + i;
      state_[static_cast<size_t>(n_ + i)] = VarState::Basic;
      x_[static_cast<size_t>(n_ + i)] = std::abs(r[ui]);
    }
    refactor();

    // Phase 1: minimize the sum of artificials.
    cost_.assign(static_cast<size_t>(total_), 0.0);
    for (int i = 0; i < m_; ++i) cost_[static_cast<size_t>(n_ + i)] = 1.0;
    LpStatus phase1 = iterate();
    if (phase1 != LpStatus::Optimal) throw NumericalBreakdown("phase 1 did not terminate optimally");
    double infeasibility = 0.0;
    for (int i = 0; i < m_; ++i) infeasibility += x_[static_cast<size_t>(n_ + i)];
    double scale = 1.0;
    for (double v : lp_.rhs) scale = std::max(scale, std::abs(v));
    if (infeasibility > 1e-7 * scale) {
      LpSolution out;
      out.status = LpStatus::Infeasible;
      out.iterations = iterations_;
      out.x.assign(x_.begin(), x_.begin() + n_);
      return out;
    }
    // Artificials are pinned to zero from here on.
    for (int i = 0; i < m_; ++i) {
      auto k = static_cast<size_t>(n_ + i);
      upper_[k] = 0.0;
      if (state_[k] != VarState::Basic) {
        x_[k] = 0.0;
        state_[k] = VarState::AtLower;
      }
    }
    drive_out_artificials();

    // Phase 2.
    cost_.assign(static_cast<size_t>(total_), 0.0);
    std::copy(lp_.objective.begin(), lp_.objective.end(), cost_.begin());
    LpStatus status = iterate();

    LpSolution out;
    out.status = status;
    out.iterations = iterations_;
    refactor();
    out.x.assign(x_.begin(), x_.begin() + n_);
    for (int j = 0; j < n_; ++j) {
      auto uj = static_cast<size_t>(j);
      out.x[uj] = std::clamp(out.x[uj], lower_[uj], upper_[uj]);
    }
    out.objective_value = 0.0;
    for (int j = 0; j < n_; ++j) out.objective_value += lp_.objective[static_cast<size_t>(j)] * out.x[static_cast<size_t>(j)];
    compute_duals();
    out.duals.assign(y_.data(), y_.data() + m_);
    out.reduced_costs.resize(static_cast<size_t>(n_));
    for (int j = 0; j < n_; ++j) {
      out.reduced_costs[static_cast<size_t>(j)] =
          state_[static_cast<size_t>(j)] == VarState::Basic ? 0.0 : reduced_cost(j);
    }
    out.states.assign(state_.begin(), state_.begin() + n_);
    return out;
  }

 private:
  double column_dot(int j, const Eigen::VectorXd& v) const {
    if (j >= n_) return art_sign_[static_cast<size_t>(j - n_)] * v[j - n_];
    double s = 0.0;
    for (Eigen::SparseMatrix<double>::InnerIterator it(lp_.constraints, j); it; ++it) s += it.value() * v[it.row()];
    return s;
  }

  // alpha = B^{-1} a_j
  Eigen::VectorXd ftran(int j) const {
    Eigen::VectorXd alpha = Eigen::VectorXd::Zero(m_);
    if (j >= n_) {
      alpha = binv_.col(j - n_) * art_sign_[static_cast<size_t>(j - n_)];
      return alpha;
    }
    for (Eigen::SparseMatrix<double>::InnerIterator it(lp_.constraints, j); it; ++it)
      alpha.noalias() += binv_.col(it.row()) * it.value();
    return alpha;
  }

  double reduced_cost(int j) const { return cost_[static_cast<size_t>(j)] - column_dot(j, y_); }

  void compute_duals() {
    Eigen::VectorXd cb(m_);
    for (int i = 0; i < m_; ++i) cb[i] = cost_[static_cast<size_t>(basis_[static_cast<size_t>(i)])];
    y_.noalias() = binv_.transpose() * cb;
  }

  void refactor() {
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(m_, m_);
    for (int i = 0; i < m_; ++i) {
      int j = basis_[static_cast<size_t>(i)];
      if (j >= n_) {
        b(j - n_, i) = art_sign_[static_cast<size_t>(j - n_)];
      } else {
        for (Eigen::SparseMatrix<double>::InnerIterator it(lp_.constraints, j); it; ++it) b(it.row(), i) = it.value();
      }
    }
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(b);
    binv_ = lu.inverse();
    if (!binv_.allFinite()) throw NumericalBreakdown("singular basis during refactorization");
    // Recompute basic values from the nonbasic ones.
    Eigen::VectorXd r = Eigen::Map<const Eigen::VectorXd>(lp_.rhs.data(), m_);
    for (int j = 0; j < total_; ++j) {
      auto uj = static_cast<size_t>(j);
      if (state_[uj] == VarState::Basic || x_[uj] == 0.0) continue;
      if (j >= n_) {
        r[j - n_] -= art_sign_[static_cast<size_t>(j - n_)] * x_[uj];
      } else {
        for (Eigen::SparseMatrix<double>::InnerIterator it(lp_.constraints, j); it; ++it)
          r[it.row()] -= it.value() * x_[uj];
      }
    }
    Eigen::VectorXd xb = binv_ * r;
    for (int i = 0; i < m_; ++i) x_[static_cast<size_t>(basis_[static_cast<size_t>(i)])] = xb[i];
    since_refactor_ = 0;
  }

  void pivot(int row, int entering, const Eigen::VectorXd& alpha) {
    const double p = alpha[row];
    Eigen::RowVectorXd pivot_row = binv_.row(row) / p;
    // y' = y + (d_q / alpha_r) * rho_r keeps the multipliers current.
    y_.noalias() += reduced_cost(entering) * pivot_row.transpose();
    binv_.noalias() -= alpha * pivot_row;
    binv_.row(row) = pivot_row;
    basis_[static_cast<size_t>(row)] = entering;
    state_[static_cast<size_t>(entering)] = VarState::Basic;
    if (++since_refactor_ >= refactor_period_) {
      refactor();
      compute_duals();
    }
  }

  LpStatus iterate() {
    const int max_iterations = 50 * (m_ + n_) + 1000;
    int degenerate_run = 0;
    bool bland = false;
    int retries = 0;
    compute_duals();
    while (true) {
      if (iterations_ > max_iterations) throw NumericalBreakdown("simplex iteration limit exceeded");

      // Pricing: Dantzig, or Bland's smallest index while stalling.
      int entering = -1;
      double best = 0.0;
      double direction = 0.0;
      for (int j = 0; j < total_; ++j) {
        auto uj = static_cast<size_t>(j);
        VarState s = state_[uj];
        if (s == VarState::Basic || lower_[uj] == upper_[uj]) continue;
        double d = reduced_cost(j);
        double dir = 0.0;
        if ((s == VarState::AtLower || s == VarState::FreeZero) && d < -tol_.optimality) dir = 1.0;
        if ((s == VarState::AtUpper || s == VarState::FreeZero) && d > tol_.optimality) dir = -1.0;
        if (dir == 0.0) continue;
        if (bland) {
          entering = j;
          direction = dir;
          break;
        }
        if (std::abs(d) > best) {
          best = std::abs(d);
          entering = j;
          direction = dir;
        }
      }
      if (entering < 0) return LpStatus::Optimal;

      Eigen::VectorXd alpha = ftran(entering);
      const double ratio_tol = 1e-9;

      // Harris two-pass ratio test. rate_i is d x_B[i] / d theta.
      auto slack_of = [&](int i, double rate) {
        int k = basis_[static_cast<size_t>(i)];
        double xb = x_[static_cast<size_t>(k)];
        return rate < 0 ? xb - lower_[static_cast<size_t>(k)] : upper_[static_cast<size_t>(k)] - xb;
      };
      double relaxed = kInf;
      for (int i = 0; i < m_; ++i) {
        double rate = -direction * alpha[i];
        if (std::abs(alpha[i]) <= ratio_tol) continue;
        double slack = slack_of(i, rate);
        if (!std::isfinite(slack)) continue;
        relaxed = std::min(relaxed, (std::max(slack, 0.0) + tol_.primal_feasibility) / std::abs(rate));
      }
      int leaving = -1;
      double theta = kInf;
      double best_pivot = 0.0;
      for (int i = 0; i < m_; ++i) {
        double rate = -direction * alpha[i];
        if (std::abs(alpha[i]) <= ratio_tol) continue;
        double slack = slack_of(i, rate);
        if (!std::isfinite(slack)) continue;
        double ratio = std::max(slack, 0.0) / std::abs(rate);
        if (ratio > relaxed) continue;
        bool take = bland ? (leaving < 0 || basis_[static_cast<size_t>(i)] < basis_[static_cast<size_t>(leaving)])
                          : std::abs(alpha[i]) > best_pivot;
        if (take) {
          leaving = i;
          best_pivot = std::abs(alpha[i]);
          theta = ratio;
        }
      }
      auto ue = static_cast<size_t>(entering);
      double flip = upper_[ue] - lower_[ue];
      ++iterations_;

      if (flip <= theta) {
        if (!std::isfinite(flip)) return LpStatus::Unbounded;
        // Bound flip: the entering variable crosses to its other bound.
        apply_step(alpha, direction * flip, entering);
        state_[ue] = direction > 0 ? VarState::AtUpper : VarState::AtLower;
        x_[ue] = direction > 0 ? upper_[ue] : lower_[ue];
        degenerate_run = 0;
        bland = false;
        continue;
      }
      if (best_pivot < tol_.pivot) {
        if (retries++ < 2) {
          refactor();
          compute_duals();
          continue;
        }
        throw NumericalBreakdown("pivot element below tolerance");
      }
      retries = 0;

      int leaving_var = basis_[static_cast<size_t>(leaving)];
      double leaving_rate = -direction * alpha[leaving];
      apply_step(alpha, direction * theta, entering);
      auto ul = static_cast<size_t>(leaving_var);
      if (leaving_rate < 0) {
        x_[ul] = lower_[ul];
        state_[ul] = VarState::AtLower;
      } else {
        x_[ul] = upper_[ul];
        state_[ul] = VarState::AtUpper;
      }
      if (!std::isfinite(x_[ul])) {
        x_[ul] = 0.0;
        state_[ul] = VarState::FreeZero;
      }
      pivot(leaving, entering, alpha);

      if (theta <= tol_.primal_feasibility) {
        if (++degenerate_run > 2 * total_) bland = true;
      } else {
        degenerate_run = 0;
        bland = false;
      }
    }
  }

  void apply_step(const Eigen::VectorXd& alpha, double delta, int entering) {
    for (int i = 0; i < m_; ++i) x_[static_cast<size_t>(basis_[static_cast<size_t>(i)])] -= delta * alpha[i];
    x_[static_cast<size_t>(entering)] += delta;
  }

  void drive_out_artificials() {
    for (int i = 0; i < m_; ++i) {
      if (basis_[static_cast<size_t>(i)] < n_) continue;
      Eigen::RowVectorXd rho = binv_.row(i);
      int best_j = -1;
      double best = 1e-7;
      for (int j = 0; j < n_; ++j) {
        auto uj = static_cast<size_t>(j);
        if (state_[uj] == VarState::Basic || lower_[uj] == upper_[uj]) continue;
        double a = std::abs(column_dot(j, rho.transpose()));
        if (a > best) {
          best = a;
          best_j = j;
        }
      }
      if (best_j < 0) continue;  // redundant row: the artificial stays basic at zero
      Eigen::VectorXd alpha = ftran(best_j);
      int art = basis_[static_cast<size_t>(i)];
      x_[static_cast<size_t>(art)] = 0.0;
      state_[static_cast<size_t>(art)] = VarState::AtLower;
      pivot(i, best_j, alpha);
      ++iterations_;
    }
    refactor();
  }

  const LinearProgram& lp_;
  const Tolerances& tol_;
  int m_ = 0, n_ = 0, total_ = 0;
  std::vector<double> lower_, upper_, cost_, x_, art_sign_;
  std::vector<VarState> state_;
  std::vector<int> basis_;
  Eigen::MatrixXd binv_;
  Eigen::VectorXd y_;
  int iterations_ = 0;
  int since_refactor_ = 0;
  int refactor_period_ = 64;
};

}  // namespace detail

/// Solves the LP to a vertex. Infeasible and Unbounded are statuses; a
/// numerical failure throws NumericalBreakdown. Deterministic.
inline LpSolution solve_lp(const LinearProgram& lp, const Tolerances& tol = {}) {
  lp.check();
  if (lp.n_rows() == 0) {
    // Bounds only: each variable sits at its cheaper bound.
    LpSolution out;
    out.status = LpStatus::Optimal;
    for (int j = 0; j < lp.n_cols(); ++j) {
      auto uj = static_cast<size_t>(j);
      double c = lp.objective[uj];
      double v = c > 0 ? lp.lower[uj] : (c < 0 ? lp.upper[uj] : (std::isfinite(lp.lower[uj]) ? lp.lower[uj] : std::min(lp.upper[uj], 0.0)));
      if (!std::isfinite(v)) {
        out.status = LpStatus::Unbounded;
        v = 0.0;
      }
      out.x.push_back(v);
      out.objective_value += c * v;
      out.reduced_costs.push_back(c);
      out.states.push_back(v == lp.lower[uj] ? VarState::AtLower : VarState::AtUpper);
    }
    return out;
  }
  detail::RevisedSimplex simplex(lp, tol);
  return simplex.run();
}

/// Rank by Gaussian elimination with partial pivoting; true iff the matrix
/// has full column rank.
inline bool rank_full_column(Eigen::MatrixXd m, double pivot_tol = 1e-9) {
  const Eigen::Index rows = m.rows(), cols = m.cols();
  Eigen::Index rank = 0;
  for (Eigen::Index c = 0; c < cols && rank < rows; ++c) {
    Eigen::Index p;
    double best = m.col(c).tail(rows - rank).cwiseAbs().maxCoeff(&p);
    if (best <= pivot_tol) continue;
    p += rank;
    m.row(p).swap(m.row(rank));
    for (Eigen::Index r = rank + 1; r < rows; ++r) {
      double f = m(r, c) / m(rank, c);
      if (f != 0.0) m.row(r).tail(cols - c) -= f * m.row(rank).tail(cols - c);
    }
    ++rank;
  }
  return rank == cols;
}

inline bool rank_full_column(const SparseBinaryMatrix& a, double pivot_tol = 1e-9) {
  return rank_full_column(Eigen::MatrixXd(to_sparse(a)), pivot_tol);
}

}  // namespace l1sudoku
