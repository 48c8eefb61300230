#pragma once

#include <cstddef>
#include <functional>

namespace clonekit {

// Maximum worker count: CLONEKIT_THREADS if set, hardware concurrency otherwise.
int thread_cap();

// Runs body(i) for i in [0, count). threads <= 0 means thread_cap().
// Work is pulled from a shared counter; callers that need a deterministic
// result must write into per-index slots.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body,
                  int threads = 0);

}  // namespace clonekit
