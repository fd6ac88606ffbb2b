#pragma once

#include <cstddef>
#include <functional>

namespace hsig {

// Worker count: HSIG_THREADS if set to a positive integer, else the hardware
// concurrency (at least 1).
unsigned thread_count();

// Calls fn(i) for i in [0, n) on up to thread_count() threads. Each index is
// handled exactly once; fn must not touch shared mutable state.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace hsig
