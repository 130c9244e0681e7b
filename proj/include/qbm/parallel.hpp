#pragma once

#include <cstddef>
#include <functional>

namespace qbm {

/// Worker count: hardware concurrency, capped by the QBM_THREADS
/// environment variable when it holds a positive integer.
std::size_t thread_count();

/// Calls fn(i) for i in [0, n) on up to thread_count() threads. If any call
/// throws, the exception from the smallest index is rethrown after all
/// workers stop.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace qbm
