// SPDX-License-Identifier: Apache-2.0
#include "lcq/threads.hpp"

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace lcq {

unsigned max_threads() {
  unsigned n = std::thread::hardware_concurrency();
  if (n == 0) n = 1;
  if (const char* env = std::getenv("LIGHTCONE_QSD_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1 && static_cast<unsigned>(cap) < n) n = static_cast<unsigned>(cap);
  }
  return n;
}

void parallel_chunks(std::size_t n, std::size_t chunk_size,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& fn) {
  if (n == 0) return;
  if (chunk_size == 0) chunk_size = 1;
  const std::size_t n_chunks = (n + chunk_size - 1) / chunk_size;
  const unsigned workers = std::min<std::size_t>(max_threads(), n_chunks);

  if (workers <= 1) {
    for (std::size_t c = 0; c < n_chunks; ++c) {
      fn(c, c * chunk_size, std::min(n, (c + 1) * chunk_size));
    }
    return;
  }

  std::atomic<std::size_t> next{0};
  auto run = [&] {
    for (;;) {
      const std::size_t c = next.fetch_add(1);
      if (c >= n_chunks) break;
      fn(c, c * chunk_size, std::min(n, (c + 1) * chunk_size));
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (unsigned i = 1; i < workers; ++i) pool.emplace_back(run);
  run();
  for (auto& th : pool) th.join();
}

}  // namespace lcq
