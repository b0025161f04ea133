#pragma once

#include <cstddef>
#include <functional>

namespace dqw {

/// Worker count used by parallel_for; 0 selects hardware concurrency.
void set_num_threads(int n);
int num_threads();

/// Runs body(i) for i in [begin, end) over contiguous static chunks.
/// Each index is handled by exactly one worker, so any output written
/// only at index i is independent of the thread count. Calls nested inside
/// a worker run serially.
void parallel_for(std::ptrdiff_t begin, std::ptrdiff_t end,
                  const std::function<void(std::ptrdiff_t)>& body);

}  // namespace dqw
