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

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <stdexcept>
#include <thread>
#include <type_traits>
#include <vector>

namespace l1sudoku {

/// Applies fn to 0..count-1 on up to `workers` threads and returns the
/// results in index order. The first exception thrown by any task is
/// rethrown after all workers join.
template <typename Fn>
auto parallel_map(size_t count, int workers, Fn&& fn) -> std::vector<std::invoke_result_t<Fn&, size_t>> {
  using Result = std::invoke_result_t<Fn&, size_t>;
  if (workers < 1) throw std::invalid_argument("worker count must be at least 1");
  std::vector<Result> results(count);
  if (workers == 1 || count <= 1) {
    for (size_t k = 0; k < count; ++k) results[k] = fn(k);
    return results;
  }
  std::atomic<size_t> next{0};
  std::vector<std::exception_ptr> errors(count);
  auto work = [&] {
    for (size_t k = next++; k < count; k = next++) {
      try {
        results[k] = fn(k);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  const size_t n_threads = std::min(count, static_cast<size_t>(workers));
  for (size_t t = 0; t < n_threads; ++t) pool.emplace_back(work);
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return results;
}

}  // namespace l1sudoku
