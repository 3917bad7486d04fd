// Copyright 2026 The disavg Authors
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
#include <cstdlib>
#include <exception>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace disavg {

/// Worker count: hardware concurrency, capped by DISAVG_THREADS when set.
inline unsigned worker_count() {
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("DISAVG_THREADS")) {
    try {
      const long cap = std::stol(env);
      if (cap >= 1) workers = std::min<unsigned>(workers, static_cast<unsigned>(cap));
    } catch (const std::exception&) {
      // ignore malformed values
    }
  }
  return workers;
}

/// Splits [0, count) into fixed-size chunks, evaluates `partial(begin, end)`
/// for each chunk on a pool of workers and folds the partial results with
/// `merge(acc, part)` in chunk order. The chunking does not depend on the
/// number of workers, so the result is bit-identical for any worker count.
template <typename Partial, typename PartialFn, typename MergeFn>
Partial deterministic_reduce(std::size_t count, std::size_t chunk, PartialFn&& partial, MergeFn&& merge,
                             unsigned max_workers = worker_count()) {
  chunk = std::max<std::size_t>(1, chunk);
  const std::size_t chunks = (count + chunk - 1) / chunk;
  std::vector<std::optional<Partial>> parts(chunks);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto work = [&] {
    for (;;) {
      const std::size_t c = next.fetch_add(1);
      if (c >= chunks) return;
      try {
        const std::size_t begin = c * chunk;
        parts[c].emplace(partial(begin, std::min(count, begin + chunk)));
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(chunks);
      }
    }
  };

  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(std::max(1u, max_workers), std::max<std::size_t>(1, chunks)));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);

  Partial acc{};
  for (auto& p : parts) merge(acc, *p);
  return acc;
}

}  // namespace disavg
