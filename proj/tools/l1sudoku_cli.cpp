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

// Command-line front end.
//
// Exit codes: 0 success, 1 some puzzle unsolved (solve), 2 input error,
// 3 precondition violation, 4 numerical failure.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "l1sudoku.hpp"

namespace {

using namespace l1sudoku;

constexpr int kExitUnsolved = 1;
constexpr int kExitInput = 2;
constexpr int kExitPrecondition = 3;
constexpr int kExitNumerical = 4;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& path) {
  if (path.empty() || path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  }
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

// Parses every line up front so a malformed line aborts before any work.
std::vector<std::pair<int, Puzzle>> parse_all(const std::vector<PuzzleLine>& lines, int box_order) {
  std::vector<std::pair<int, Puzzle>> out;
  for (const auto& line : lines) {
    try {
      out.emplace_back(line.line_number, parse_puzzle(line.text, box_order));
    } catch (const PuzzleError& e) {
      throw InputError("line " + std::to_string(line.line_number) + ": " + e.what());
    }
  }
  return out;
}

std::string describe(const FractionalReport& report) {
  std::ostringstream os;
  os << "FRACTIONAL entries=" << report.entries_above_tol << " ambiguous_cells=" << report.cells.size();
  return os.str();
}

enum class SolveMode { Exact, Relaxed, Improved };

int run_solve(const std::string& input, SolveMode mode, int box_order, const Tolerances& tol) {
  auto puzzles = parse_all(split_puzzle_lines(read_input(input)), box_order);
  bool all_solved = true;
  for (const auto& [line, p] : puzzles) {
    switch (mode) {
      case SolveMode::Exact: {
        auto outcome = solve_exact(p, 2);
        if (outcome.status == SolveOutcome::Status::Infeasible) {
          std::cout << "INFEASIBLE\n";
          all_solved = false;
        } else {
          std::cout << format_puzzle(*outcome.completion)
                    << (outcome.status == SolveOutcome::Status::MultipleFound ? " MULTIPLE" : "") << '\n';
          all_solved = all_solved && outcome.status == SolveOutcome::Status::Solved;
        }
        break;
      }
      case SolveMode::Relaxed: {
        P1Result r;
        try {
          r = solve_p1(p, tol);
        } catch (const InfeasibleSystem&) {
          std::cout << "INFEASIBLE\n";
          all_solved = false;
          break;
        }
        if (r.is_integral) {
          std::cout << format_puzzle(*r.grid()) << '\n';
        } else {
          const auto* frac = std::get_if<FractionalReport>(&r.decoded);
          std::cout << (frac ? describe(*frac) : std::string("INVALID")) << " nonzero=" << r.nonzero_count
                    << " half=" << r.half_count << '\n';
          all_solved = false;
        }
        break;
      }
      case SolveMode::Improved: {
        RepairTrace trace;
        try {
          trace = solve_improved(p, tol);
        } catch (const InfeasibleSystem&) {
          std::cout << "INFEASIBLE\n";
          all_solved = false;
          break;
        }
        if (trace.solution) {
          std::cout << format_puzzle(*trace.solution) << ' ' << to_string(trace.stage) << '\n';
        } else {
          std::cout << to_string(trace.stage) << " promoted=" << trace.promoted_cells.size()
                    << " dropped=" << trace.dropped_cells.size() << '\n';
          all_solved = false;
        }
        break;
      }
    }
  }
  return all_solved ? 0 : kExitUnsolved;
}

struct ClassifyArgs {
  std::string input;
  std::string out_dir = ".";
  size_t sample = 0;
  bool cross_check = false;
  BatchOptions batch;
};

int run_classify(const ClassifyArgs& args, const Tolerances& tol) {
  auto lines = split_puzzle_lines(read_input(args.input));
  if (args.sample > 0) lines = sample_lines(lines, args.sample, args.batch.seed);
  BatchOptions options = args.batch;
  options.cross_check = args.cross_check;
  auto records = run_batch(lines, options, tol);
  auto summary = summarize(records);

  std::filesystem::create_directories(args.out_dir);
  const std::filesystem::path dir(args.out_dir);
  {
    std::ofstream os(dir / "records.jsonl");
    write_records_jsonl(os, records, options.timings);
  }
  {
    auto j = to_json(summary);
    j["epsilon"] = options.epsilon;
    j["seed"] = options.seed;
    j["sample"] = args.sample;
    std::ofstream os(dir / "summary.json");
    os << j.dump(2) << '\n';
  }
  {
    std::ofstream os(dir / "residuals.csv");
    write_residuals_csv(os, records);
  }
  std::cout << "classified " << summary.total << " puzzles: " << summary.type_i << " TypeI, " << summary.type_ii
            << " TypeII, " << summary.errors << " errors\n";
  return 0;
}

int run_keycells(const std::string& input, const std::string& out_path, double epsilon, int workers, int box_order,
                 const Tolerances& tol) {
  auto puzzles = parse_all(split_puzzle_lines(read_input(input)), box_order);
  if (puzzles.size() != 1) throw InputError("keycells expects exactly one puzzle");
  const Puzzle& p = puzzles.front().second;
  KeyCellReport report = find_key_cells(p, ClassifyOptions{epsilon, false, 0}, workers, tol);

  nlohmann::ordered_json j;
  j["puzzle"] = format_puzzle(report.puzzle);
  j["completion"] = format_puzzle(report.completion);
  j["key_cells"] = nlohmann::json::array();
  for (const auto& c : report.key_cells) j["key_cells"].push_back({c.row, c.col});
  j["per_cell"] = nlohmann::json::array();
  for (const auto& e : report.per_cell) {
    j["per_cell"].push_back({{"row", e.cell.row},
                             {"col", e.cell.col},
                             {"digit", e.digit},
                             {"augmented_class", to_string(e.augmented_type)},
                             {"residual", e.residual},
                             {"relaxed_value", e.relaxed_value}});
  }
  if (out_path.empty()) {
    std::cout << j.dump(2) << '\n';
  } else {
    std::ofstream(out_path) << j.dump(2) << '\n';
  }
  std::cout << render_grid(report.puzzle, report.key_cells);
  std::cout << report.key_cells.size() << " key cells of " << report.per_cell.size() << " empty cells\n";
  return 0;
}

int run_matrix(const std::string& puzzle_or_file, int box_order) {
  std::string text = puzzle_or_file;
  if (std::filesystem::exists(puzzle_or_file) || puzzle_or_file == "-") {
    auto lines = split_puzzle_lines(read_input(puzzle_or_file));
    if (lines.empty()) throw InputError("no puzzle in input");
    text = lines.front().text;
  }
  Puzzle p;
  try {
    p = parse_puzzle(text, box_order);
  } catch (const PuzzleError& e) {
    throw InputError(e.what());
  }
  write_matrix_dump(std::cout, build_system(p).matrix());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sudoku as sparse recovery: exact, relaxed and repaired solves, uniqueness certificates"};
  app.require_subcommand(1);
  int box_order = 3;
  double epsilon = 1e-4;
  app.add_option("--box-order", box_order, "box order n (grid side n^2)")->check(CLI::Range(2, 4));
  app.add_option("--epsilon", epsilon, "strictness margin of the certificate");

  std::string solve_input;
  bool exact = false, relaxed = false, improved = false;
  auto* solve = app.add_subcommand("solve", "solve puzzles, one per line");
  solve->add_option("input", solve_input, "puzzle file, '-' for stdin");
  auto* exact_flag = solve->add_flag("--exact", exact, "exact backtracking solve");
  auto* p1_flag = solve->add_flag("--p1", relaxed, "relaxed solve (analytic center of the optimal face)");
  auto* improved_flag = solve->add_flag("--improved", improved, "relaxed solve with one threshold repair");
  exact_flag->excludes(p1_flag)->excludes(improved_flag);
  p1_flag->excludes(improved_flag);

  std::string improved_input;
  auto* improved_cmd = app.add_subcommand("improved", "same as solve --improved");
  improved_cmd->add_option("input", improved_input, "puzzle file, '-' for stdin");

  ClassifyArgs cargs;
  int workers = 1;
  auto* classify_cmd = app.add_subcommand("classify", "classify puzzles and write records.jsonl, summary.json, residuals.csv");
  classify_cmd->add_option("input", cargs.input, "puzzle file")->required();
  classify_cmd->add_option("--out-dir", cargs.out_dir, "report directory");
  classify_cmd->add_option("--sample", cargs.sample, "classify a seeded random sample of N puzzles");
  classify_cmd->add_option("--seed", cargs.batch.seed, "seed for sampling and the randomized cross-check");
  classify_cmd->add_option("--workers", workers, "worker threads");
  classify_cmd->add_flag("--cross-check", cargs.cross_check, "also run the randomized alternative-point search");
  classify_cmd->add_flag("--timings", cargs.batch.timings, "include wall times in records");
  bool no_improved = false;
  classify_cmd->add_flag("--no-improved", no_improved, "skip the relaxed and repaired solves");

  std::string key_input, key_out;
  int key_workers = 1;
  auto* keycells_cmd = app.add_subcommand("keycells", "key-cell sweep of one type-II puzzle");
  keycells_cmd->add_option("input", key_input, "file holding one puzzle")->required();
  keycells_cmd->add_option("--out", key_out, "write the JSON report here instead of stdout");
  keycells_cmd->add_option("--workers", key_workers, "worker threads");

  std::string matrix_arg;
  auto* matrix_cmd = app.add_subcommand("matrix", "dump the constraint matrix of one puzzle");
  matrix_cmd->add_option("puzzle", matrix_arg, "puzzle string or file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitInput;
  }

  Tolerances tol;
  tol.epsilon = epsilon;
  try {
    if (*solve) {
      SolveMode mode = exact ? SolveMode::Exact : (improved ? SolveMode::Improved : SolveMode::Relaxed);
      return run_solve(solve_input, mode, box_order, tol);
    }
    if (*improved_cmd) return run_solve(improved_input, SolveMode::Improved, box_order, tol);
    if (*classify_cmd) {
      if (workers < 1) throw InputError("--workers must be at least 1");
      cargs.batch.workers = workers;
      cargs.batch.epsilon = epsilon;
      cargs.batch.box_order = box_order;
      cargs.batch.run_improved = !no_improved;
      return run_classify(cargs, tol);
    }
    if (*keycells_cmd) {
      if (key_workers < 1) throw InputError("--workers must be at least 1");
      return run_keycells(key_input, key_out, epsilon, key_workers, box_order, tol);
    }
    if (*matrix_cmd) return run_matrix(matrix_arg, box_order);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const CertificateError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitPrecondition;
  } catch (const NumericalBreakdown& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const InfeasibleSystem& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitPrecondition;
  }
  return 0;
}
