#pragma once

#include <cstddef>
#include <functional>

namespace sfcw {

/// Worker count: SFCW_THREADS if set and positive, otherwise hardware concurrency.
unsigned thread_count();

/// Runs body(i) for i in [0, n) over contiguous chunks. Each index is visited exactly once,
/// so results are independent of the partitioning as long as body(i) only writes slot i.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace sfcw
