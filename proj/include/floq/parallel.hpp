#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace floq {

/// Number of worker threads: FLOQ_THREADS if set, else hardware concurrency.
std::size_t default_thread_count();

/// Runs fn(begin, end) over contiguous chunks of [0, n) on up to `threads`
/// workers. Chunking depends only on (n, threads), so any per-item output
/// written into preallocated slots is deterministic. Exceptions from
/// workers are rethrown on the calling thread.
void parallel_for(std::size_t n, std::size_t threads,
                  const std::function<void(std::size_t, std::size_t)>& fn);

} // namespace floq
