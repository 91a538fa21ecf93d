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

// Grows a set of 17-clue uniquely completable puzzles from seed puzzles by
// the {-1,+1} clue neighborhood: drop one clue, enumerate the completions of
// the 16-clue remainder, and add back any (cell, digit) that exactly one of
// those completions uses. Every emitted puzzle is re-verified with the exact
// solver. With --images, each collected puzzle is followed by seeded random
// symmetry images (band, stack, row, column and digit permutations plus
// transposition), which keep the clue count and the completion count.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "l1sudoku/puzzle.hpp"

namespace {

using l1sudoku::Puzzle;

// True iff p has exactly one completion and the search settles that within
// the node budget.
bool unique_within(const Puzzle& p, long node_limit) {
  auto count = l1sudoku::for_each_completion_bounded(p, 2, node_limit, nullptr);
  return count && *count == 1;
}

Puzzle random_image(const Puzzle& p, std::mt19937_64& rng) {
  const int b = p.box_order(), n = p.side();
  auto line_map = [&]() {
    std::vector<int> bands(static_cast<size_t>(b)), map;
    std::iota(bands.begin(), bands.end(), 0);
    std::shuffle(bands.begin(), bands.end(), rng);
    for (int band : bands) {
      std::vector<int> within(static_cast<size_t>(b));
      std::iota(within.begin(), within.end(), band * b);
      std::shuffle(within.begin(), within.end(), rng);
      map.insert(map.end(), within.begin(), within.end());
    }
    return map;
  };
  const bool transpose = rng() % 2 == 1;
  auto rows = line_map(), cols = line_map();
  std::vector<int> digits(static_cast<size_t>(n) + 1);
  std::iota(digits.begin(), digits.end(), 0);
  std::shuffle(digits.begin() + 1, digits.end(), rng);
  Puzzle out(b);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      int sr = rows[static_cast<size_t>(r)], sc = cols[static_cast<size_t>(c)];
      out.set(r, c, digits[static_cast<size_t>(transpose ? p.at(sc, sr) : p.at(sr, sc))]);
    }
  return out;
}

std::vector<Puzzle> neighbors(const Puzzle& p, int enumeration_cap, long node_limit) {
  std::vector<Puzzle> out;
  const int n = p.side();
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      const int removed = p.at(r, c);
      if (removed == 0) continue;
      Puzzle q = p;
      q.set(r, c, 0);
      std::vector<int> uses(static_cast<size_t>(n * n * (n + 1)), 0);
      auto count = l1sudoku::for_each_completion_bounded(q, enumeration_cap + 1, node_limit, [&](const Puzzle& s) {
        for (int i = 0; i < n * n; ++i)
          if (q.cells()[static_cast<size_t>(i)] == 0) ++uses[static_cast<size_t>(i * (n + 1) + s.cells()[static_cast<size_t>(i)])];
      });
      // Remainders that are too open or too slow to enumerate are skipped.
      if (!count || *count > enumeration_cap) continue;
      for (int i = 0; i < n * n; ++i) {
        if (q.cells()[static_cast<size_t>(i)] != 0) continue;
        for (int d = 1; d <= n; ++d) {
          if (uses[static_cast<size_t>(i * (n + 1) + d)] != 1) continue;
          if (i == r * n + c && d == removed) continue;
          Puzzle candidate = q;
          candidate.set(i / n, i % n, d);
          out.push_back(candidate);
        }
      }
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Grow a collection of 17-clue puzzles by clue exchange"};
  std::string seeds_path;
  std::string out_path;
  int target = 1000;
  int cap = 50000;
  int keep = 6;
  long node_limit = 2000000;
  uint64_t seed = 17;
  int patience = 200;
  int images = 0;
  app.add_option("--seeds", seeds_path, "file of seed puzzles")->required();
  app.add_option("--out", out_path, "output file")->required();
  app.add_option("--target", target, "number of puzzles to collect");
  app.add_option("--cap", cap, "skip 16-clue remainders with more completions than this");
  app.add_option("--keep", keep, "neighbors kept per expansion");
  app.add_option("--node-limit", node_limit, "search-node budget per enumeration");
  app.add_option("--seed", seed, "random seed");
  app.add_option("--images", images, "symmetry images appended per collected puzzle");
  app.add_option("--patience", patience, "stop after this many expansions without a new puzzle");
  CLI11_PARSE(app, argc, argv);

  std::ifstream in(seeds_path);
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  std::vector<std::string> pool;
  std::set<std::string> known;
  for (const auto& line : l1sudoku::split_puzzle_lines(content)) {
    auto p = l1sudoku::parse_puzzle(line.text);
    if (p.clue_count() == 17 && l1sudoku::is_uniquely_completable(p) && known.insert(l1sudoku::format_puzzle(p)).second)
      pool.push_back(l1sudoku::format_puzzle(p));
  }
  std::mt19937_64 rng(seed);
  // Random walk over the pool: each step expands one random member and keeps
  // a few random neighbors, so the collection spreads instead of saturating
  // the first neighborhood.
  int idle = 0;
  while (static_cast<int>(pool.size()) < target && idle < patience) {
    std::uniform_int_distribution<size_t> pick(0, pool.size() - 1);
    auto next = neighbors(l1sudoku::parse_puzzle(pool[pick(rng)]), cap, node_limit);
    std::shuffle(next.begin(), next.end(), rng);
    int kept = 0;
    for (const auto& q : next) {
      if (kept >= keep || static_cast<int>(pool.size()) >= target) break;
      std::string text = l1sudoku::format_puzzle(q);
      if (known.count(text) || !unique_within(q, node_limit)) continue;
      known.insert(text);
      pool.push_back(text);
      ++kept;
    }
    idle = kept ? 0 : idle + 1;
    std::cerr << "\rcollected " << pool.size() << std::flush;
  }
  std::cerr << "\n";
  const size_t walked = pool.size();
  for (int round = 0; round < images; ++round) {
    for (size_t i = 0; i < walked; ++i) {
      auto base = l1sudoku::parse_puzzle(pool[i]);
      for (int attempt = 0; attempt < 16; ++attempt) {
        std::string text = l1sudoku::format_puzzle(random_image(base, rng));
        if (known.insert(text).second) {
          pool.push_back(text);
          break;
        }
      }
    }
  }
  std::ofstream out(out_path);
  out << "# 17-clue uniquely completable puzzles grown by clue exchange (seed " << seed << "): " << walked
      << " walked, " << pool.size() - walked << " symmetry images\n";
  for (const auto& s : pool) out << s << "\n";
  return 0;
}
