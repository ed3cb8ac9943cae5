#include "photonwave/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace photonwave {

int thread_count() {
  static const int n = [] {
    const char* env = std::getenv("PHOTONWAVE_THREADS");
    if (!env) return 1;
    const long v = std::strtol(env, nullptr, 10);
    return int(std::clamp(v, 1L, 64L));
  }();
  return n;
}

void parallel_for(std::int64_t n, const std::function<void(std::int64_t, std::int64_t)>& body) {
  const int nt = thread_count();
  if (nt <= 1 || n < 1024) {
    body(0, n);
    return;
  }
  std::vector<std::thread> pool;
  const std::int64_t chunk = (n + nt - 1) / nt;
  for (int t = 0; t < nt; ++t) {
    const std::int64_t lo = t * chunk;
    const std::int64_t hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&body, lo, hi] { body(lo, hi); });
  }
  for (auto& th : pool) th.join();
}

}  // namespace photonwave
