#pragma once

#include <cstddef>
#include <functional>

namespace magnonspec {

/// Worker count: MAGNONSPEC_THREADS if set and positive, else the hardware
/// concurrency.
unsigned thread_count();

/// Calls body(i) for i in [0, n) on up to thread_count() threads.  Bodies
/// write to disjoint slots; callers merge in index order.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace magnonspec
