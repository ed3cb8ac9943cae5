#pragma once

#include <cstdint>
#include <functional>

namespace photonwave {

// Thread count for the embarrassingly-parallel per-mode loops, taken from
// PHOTONWAVE_THREADS (default 1, clamped to [1, 64]). Work is split into
// fixed contiguous ranges with disjoint writes, so results are bitwise
// independent of the thread count.
int thread_count();

void parallel_for(std::int64_t n, const std::function<void(std::int64_t, std::int64_t)>& body);

}  // namespace photonwave
