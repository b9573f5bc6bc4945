#pragma once

#include <cstddef>
#include <functional>

namespace graphrec {

/// Worker count: GRAPHREC_THREADS when set and positive, else hardware
/// concurrency (at least 1).
int worker_count();

/// Runs fn(0..n-1) across workers. Each index is processed exactly once;
/// callers keep determinism by writing to per-index slots.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

} // namespace graphrec
