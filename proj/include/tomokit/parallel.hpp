#pragma once

#include <cstddef>
#include <functional>

namespace tomo {

/// Worker count: hardware concurrency, capped by TOMOKIT_THREADS when set.
std::size_t worker_count();

/// Runs body(i) for i in [0, n) over contiguous chunks. Each index is visited
/// exactly once, so results are independent of scheduling as long as body(i)
/// writes only its own output cells.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

} // namespace tomo
