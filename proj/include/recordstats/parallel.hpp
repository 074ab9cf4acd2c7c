#pragma once

#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace recordstats {

inline unsigned resolve_workers(unsigned requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

// Runs fn(worker_index, begin, end) over contiguous chunks of [0, total).
// Callers merge per-worker state in worker order so results do not depend
// on thread scheduling.
inline void parallel_chunks(std::uint64_t total, unsigned workers,
                            const std::function<void(unsigned, std::uint64_t, std::uint64_t)>& fn) {
  workers = resolve_workers(workers);
  if (workers > total) workers = total > 0 ? static_cast<unsigned>(total) : 1;
  if (workers <= 1) {
    fn(0, 0, total);
    return;
  }
  std::vector<std::thread> threads;
  threads.reserve(workers);
  const std::uint64_t base = total / workers;
  const std::uint64_t extra = total % workers;
  std::uint64_t begin = 0;
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t len = base + (w < extra ? 1 : 0);
    const std::uint64_t end = begin + len;
    threads.emplace_back([&fn, w, begin, end] { fn(w, begin, end); });
    begin = end;
  }
  for (auto& t : threads) t.join();
}

}  // namespace recordstats
