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

#include <gtest/gtest.h>

#include <set>
#include <string>

#include "l1sudoku/sparse_solvers.hpp"
#include "oracles.hpp"

namespace {

using namespace l1sudoku;

const char* kSeedA = "000000010400000000020000000000050407008000300001090000300400200050100000000806000";
const char* kTwoWay = "0034341200434321";

std::vector<oracle::LabeledPuzzle> fixtures() {
  static const auto all = oracle::read_labels(std::string(L1SUDOKU_DATA_DIR) + "/fixtures17_labels.csv");
  return all;
}

TEST(ValueHistogram, Examples) {
  auto h = value_histogram(std::vector<double>{0.5, 0.5, 1.0, 0.0});
  ASSERT_EQ(h.size(), 1u);
  EXPECT_EQ(h[0].rounded_value, 0.5);
  EXPECT_EQ(h[0].count, 2);

  auto collide = value_histogram(std::vector<double>{0.6667, 0.66674});
  ASSERT_EQ(collide.size(), 1u);
  EXPECT_DOUBLE_EQ(collide[0].rounded_value, 0.6667);
  EXPECT_EQ(collide[0].count, 2);

  // 0.99996 rounds to 1.0 and leaves the half-open interval; 0.49996 rounds into it.
  auto edges = value_histogram(std::vector<double>{0.99996, 0.49996, 0.49994});
  ASSERT_EQ(edges.size(), 1u);
  EXPECT_EQ(edges[0].rounded_value, 0.5);
}

TEST(HistogramMode, TiesGoToLargerValue) {
  EXPECT_FALSE(histogram_mode({}).has_value());
  EXPECT_EQ(*histogram_mode({{0.5, 3}, {0.6, 1}}), 0.5);
  EXPECT_EQ(*histogram_mode({{0.5, 2}, {0.75, 2}, {0.6, 1}}), 0.75);
}

TEST(SolveP1, UniqueShidokuAndCompleteGrid) {
  Puzzle full = *solve_exact(parse_puzzle(kSeedA)).completion;
  auto r = solve_p1(full);
  EXPECT_TRUE(r.is_integral);
  EXPECT_EQ(r.x.values(), encode_solution(full).values());

  auto seed = solve_p1(parse_puzzle(kSeedA));
  ASSERT_TRUE(seed.is_integral);
  EXPECT_EQ(*seed.grid(), full);
  EXPECT_EQ(seed.nonzero_count, 81);
  EXPECT_LE(seed.residual, 1e-8);
}

TEST(SolveP1, TwoWayShidokuIsFractional) {
  auto r = solve_p1(parse_puzzle(kTwoWay, 2));
  EXPECT_FALSE(r.is_integral);
  EXPECT_EQ(r.nonzero_count, 20);
  EXPECT_EQ(r.half_count, 8);
  EXPECT_EQ(r.face_dimension, 1);
  ASSERT_NE(std::get_if<FractionalReport>(&r.decoded), nullptr);
  EXPECT_EQ(std::get<FractionalReport>(r.decoded).cells.size(), 4u);
}

TEST(SolveP1, IntegralResultsMatchOracleOnShidoku) {
  const auto grids = oracle::all_shidoku_grids();
  std::mt19937_64 rng(31);
  int integral = 0;
  for (int trial = 0; trial < 100; ++trial) {
    Puzzle p = oracle::shidoku_from(grids[rng() % grids.size()]);
    for (int i = 0; i < 16; ++i)
      if (rng() % 2 == 0) p.set(i / 4, i % 4, 0);
    auto r = solve_p1(p);
    auto matches = oracle::shidoku_matches(grids, p);
    if (r.is_integral) {
      ++integral;
      ASSERT_EQ(matches.size(), 1u) << format_puzzle(p);
      EXPECT_EQ(*r.grid(), oracle::shidoku_from(matches[0]));
      EXPECT_EQ(r.nonzero_count, 16);
    }
    if (matches.size() > 1) EXPECT_FALSE(r.is_integral);
  }
  EXPECT_GT(integral, 0);
}

TEST(SolveP1, InfeasiblePuzzleThrows) {
  EXPECT_THROW(solve_p1(parse_puzzle("1230000000040000", 2)), InfeasibleSystem);
}

TEST(SolveImproved, TypeIIsSolvedDirect) {
  auto trace = solve_improved(parse_puzzle(kSeedA));
  EXPECT_EQ(trace.stage, RepairTrace::Stage::SolvedDirect);
  EXPECT_TRUE(trace.promoted_cells.empty());
  EXPECT_FALSE(trace.repaired.has_value());
}

TEST(SolveImproved, ConflictingPromotionsAreDropped) {
  auto trace = solve_improved(parse_puzzle(kTwoWay, 2));
  EXPECT_EQ(trace.threshold, 0.5);
  EXPECT_TRUE(trace.promoted_cells.empty());
  EXPECT_EQ(trace.dropped_cells.size(), 4u);
  EXPECT_EQ(trace.stage, RepairTrace::Stage::FailedAfterRepair);
  EXPECT_FALSE(trace.solution.has_value());
}

TEST(SolveImproved, EmptyThresholdSetFails) {
  auto trace = solve_improved(Puzzle(2));  // center is 1/4 everywhere
  EXPECT_TRUE(trace.histogram.empty());
  EXPECT_EQ(trace.stage, RepairTrace::Stage::FailedAfterRepair);
}

TEST(SolveP1, FixtureTypeIIAreFractional) {
  auto typeii = oracle::with_label(fixtures(), "TypeII", 6);
  ASSERT_FALSE(typeii.empty());
  for (const auto& text : typeii) {
    auto r = solve_p1(parse_puzzle(text));
    EXPECT_FALSE(r.is_integral) << text;
    EXPECT_GT(r.nonzero_count, 81) << text;
    EXPECT_LE(r.residual, 1e-8) << text;
    auto mode = histogram_mode(value_histogram(r.x));
    ASSERT_TRUE(mode.has_value());
    EXPECT_GE(*mode, 0.5);
  }
}

TEST(SolveImproved, FixtureTraceInvariants) {
  auto typeii = oracle::with_label(fixtures(), "TypeII", 6);
  for (const auto& text : typeii) {
    Puzzle p = parse_puzzle(text);
    Puzzle truth = *solve_exact(p).completion;
    auto trace = solve_improved(p);
    EXPECT_NE(trace.stage, RepairTrace::Stage::SolvedDirect);
    std::set<CellRef> promoted;
    for (const auto& pr : trace.promoted_cells) {
      EXPECT_EQ(p.at(pr.cell), 0) << "clue cell promoted";
      EXPECT_TRUE(promoted.insert(pr.cell).second);
    }
    for (const auto& cell : trace.dropped_cells) EXPECT_EQ(promoted.count(cell), 0u);
    if (trace.stage == RepairTrace::Stage::SolvedAfterRepair) {
      ASSERT_TRUE(trace.solution.has_value());
      EXPECT_EQ(*trace.solution, truth);
      EXPECT_TRUE(trace.repaired->is_integral);
    }
    if (trace.solution) {
      for (int i = 0; i < 81; ++i)
        if (p.at(i / 9, i % 9)) EXPECT_EQ(trace.solution->at(i / 9, i % 9), p.at(i / 9, i % 9));
    }
  }
}

}  // namespace
