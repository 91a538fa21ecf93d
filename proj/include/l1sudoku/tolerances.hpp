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

#pragma once

namespace l1sudoku {

/// Every numerical threshold used by the solvers, in one place so that a run
/// can report exactly which tolerances produced its classification.
struct Tolerances {
  // Simplex.
  double primal_feasibility = 1e-9;
  double optimality = 1e-9;  // reduced-cost sign test
  double pivot = 1e-11;
  // Rank test.
  double rank_pivot = 1e-9;
  // Support detection.
  double support_delta = 1e-9;  // s_i <= delta in the single-LP formulation
  double support_zero = 1e-7;   // an LP optimum at or below this counts as zero
  // Analytic center.
  double newton_decrement = 1e-10;
  double kkt_regularization = 1e-12;
  double equality_residual = 1e-8;
  // P1 diagnostics.
  double integrality = 1e-6;
  double nonzero = 1e-6;
  double half_band = 1e-4;
  // Uniqueness certificate.
  double epsilon = 1e-4;
  double certificate_residual = 1e-6;
  // Randomized alternative-point search.
  int cross_check_draws = 20;
  double cross_check_distance = 1e-6;
};

}  // namespace l1sudoku
