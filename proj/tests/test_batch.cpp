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

#include <sstream>
#include <string>

#include "l1sudoku/batch.hpp"
#include "oracles.hpp"

namespace {

using namespace l1sudoku;

std::vector<PuzzleLine> fixture_lines(size_t count) {
  std::vector<PuzzleLine> out;
  int n = 0;
  for (const auto& p : oracle::read_labels(std::string(L1SUDOKU_DATA_DIR) + "/fixtures17_labels.csv")) {
    if (out.size() == count) break;
    out.push_back({++n, p.text});
  }
  return out;
}

std::string jsonl(const std::vector<ClassificationRecord>& records) {
  std::ostringstream os;
  write_records_jsonl(os, records, false);
  return os.str();
}

TEST(RunBatch, RejectsZeroWorkers) {
  BatchOptions options;
  options.workers = 0;
  EXPECT_THROW(run_batch({}, options), std::invalid_argument);
}

TEST(RunBatch, ErrorsStayInTheirRecord) {
  std::vector<PuzzleLine> lines = {{1, "123"},
                                   {2, std::string(81, '0')},
                                   {3, "000000010400000000020000000000050407008000300001090000300400200050100000000806000"}};
  auto records = run_batch(lines, {});
  ASSERT_EQ(records.size(), 3u);
  EXPECT_TRUE(records[0].error.has_value());
  EXPECT_TRUE(records[1].error.has_value());  // not uniquely completable
  EXPECT_FALSE(records[2].error.has_value());
  EXPECT_EQ(records[2].label, PuzzleType::TypeI);
  EXPECT_EQ(records[2].puzzle_id, 3);
  auto s = summarize(records);
  EXPECT_EQ(s.total, 3);
  EXPECT_EQ(s.errors, 2);
  EXPECT_EQ(s.type_i + s.type_ii + s.errors, s.total);
}

TEST(RunBatch, WorkerCountDoesNotChangeReports) {
  auto lines = fixture_lines(6);
  ASSERT_EQ(lines.size(), 6u);
  BatchOptions one;
  one.cross_check = true;
  BatchOptions three = one;
  three.workers = 3;
  auto a = run_batch(lines, one), b = run_batch(lines, three);
  EXPECT_EQ(jsonl(a), jsonl(b));
  EXPECT_EQ(to_json(summarize(a)).dump(), to_json(summarize(b)).dump());
}

TEST(Summarize, Arithmetic) {
  auto records = run_batch(fixture_lines(8), {});
  auto s = summarize(records);
  EXPECT_EQ(s.total, 8);
  EXPECT_EQ(s.type_i + s.type_ii, s.total);
  int repaired = s.solved_after_repair;
  EXPECT_DOUBLE_EQ(s.overall_accuracy, static_cast<double>(s.type_i + repaired) / s.total);
  EXPECT_EQ(s.solved_direct + s.solved_after_repair + s.failed_after_repair + s.infeasible_repair, s.total);
  for (double rate : {s.type_i_fraction, s.direct_solve_rate, s.repair_success_rate, s.overall_accuracy}) {
    EXPECT_GE(rate, 0.0);
    EXPECT_LE(rate, 1.0);
  }
  int histogram_total = 0;
  for (int c : s.histogram_counts) histogram_total += c;
  EXPECT_EQ(histogram_total, s.total);
  EXPECT_EQ(s.histogram_edges.size(), s.histogram_counts.size() + 1);
}

TEST(SampleLines, SeededAndOrderPreserving) {
  std::vector<PuzzleLine> lines;
  for (int i = 1; i <= 50; ++i) lines.push_back({i, std::to_string(i)});
  auto a = sample_lines(lines, 10, 5), b = sample_lines(lines, 10, 5), c = sample_lines(lines, 10, 6);
  ASSERT_EQ(a.size(), 10u);
  for (size_t k = 0; k < a.size(); ++k) EXPECT_EQ(a[k].line_number, b[k].line_number);
  for (size_t k = 1; k < a.size(); ++k) EXPECT_LT(a[k - 1].line_number, a[k].line_number);
  bool differs = false;
  for (size_t k = 0; k < a.size(); ++k) differs |= a[k].line_number != c[k].line_number;
  EXPECT_TRUE(differs);
  EXPECT_EQ(sample_lines(lines, 500, 1).size(), 50u);
}

TEST(ResidualsCsv, HeaderAndOneValuePerRecord) {
  auto records = run_batch(fixture_lines(3), {});
  std::ostringstream os;
  write_residuals_csv(os, records);
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "residual");
  int rows = 0;
  while (std::getline(in, line)) {
    EXPECT_EQ(std::stod(line), records[static_cast<size_t>(rows)].residual);
    ++rows;
  }
  EXPECT_EQ(rows, 3);
}

}  // namespace
