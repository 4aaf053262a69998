// Static-partition data parallelism capped by FRONTLAB_THREADS.
#pragma once

#include <cstddef>
#include <functional>

namespace frontlab::parallel {

/// FRONTLAB_THREADS if set (positive integer), else the hardware count.
/// Throws std::invalid_argument on a malformed value.
int thread_count();

/// Calls body(begin, end) on contiguous chunks of [0, n). The partition
/// depends only on n and thread_count(), so per-index results are
/// reproducible; callers reduce in index order.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace frontlab::parallel
