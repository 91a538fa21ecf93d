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

#include "l1sudoku/batch.hpp"
#include "l1sudoku/constraint_system.hpp"
#include "l1sudoku/parallel.hpp"
#include "l1sudoku/polytope.hpp"
#include "l1sudoku/presolve.hpp"
#include "l1sudoku/puzzle.hpp"
#include "l1sudoku/simplex.hpp"
#include "l1sudoku/sparse_solvers.hpp"
#include "l1sudoku/tolerances.hpp"
#include "l1sudoku/uniqueness.hpp"
