// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <functional>

namespace lcq {

/// Worker cap: min(hardware_concurrency, LIGHTCONE_QSD_THREADS if set).
/// A value of 1 disables threading.
unsigned max_threads();

/// Runs fn(chunk_index, begin, end) over [0, n) split into fixed-size chunks.
/// Chunk boundaries depend only on n and chunk_size, never on the worker
/// count, and callers combine per-chunk results in chunk order, so results
/// are bit-identical for any degree of parallelism.
void parallel_chunks(std::size_t n, std::size_t chunk_size,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& fn);

}  // namespace lcq
