#pragma once

#include <functional>

namespace fractel {

/// Worker count for a request (0 = hardware concurrency), capped by FRACTEL_THREADS when set.
int thread_count(int requested);

/// Runs body(i) for i in [0, n) on up to `threads` workers. The exception of the
/// lowest failing index is rethrown after all workers finish.
void parallel_for(int n, int threads, const std::function<void(int)>& body);

} // namespace fractel
