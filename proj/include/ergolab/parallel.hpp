#pragma once

#include <cstdint>
#include <functional>

namespace ergolab {

// Worker cap: min(ERGOLAB_THREADS, hardware_concurrency), at least 1.
// Affects speed only; all reductions in this codebase combine per-index
// slots in a fixed order, so results are bit-identical for any cap.
int max_threads();

// Runs fn(i) for every i in [0, n). Scheduling is dynamic; callers must
// write results to index-addressed slots, never to shared accumulators.
void parallel_for(int64_t n, const std::function<void(int64_t)>& fn);

}  // namespace ergolab
