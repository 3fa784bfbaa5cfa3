#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace trivec {

inline unsigned resolve_threads(unsigned requested) {
  return requested ? requested : std::max(1u, std::thread::hardware_concurrency());
}

// Calls body(worker, lo, hi) for consecutive chunks of [0, total); chunks are
// handed out dynamically. The first exception stops the pool and is rethrown.
template <class Body>
void parallel_chunks(std::uint64_t total, std::uint64_t chunk, unsigned threads, Body&& body) {
  const std::uint64_t chunks = (total + chunk - 1) / chunk;
  const unsigned nt = unsigned(std::min<std::uint64_t>(resolve_threads(threads), std::max<std::uint64_t>(chunks, 1)));
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr err;
  std::mutex mu;
  auto run = [&](unsigned w) {
    try {
      for (;;) {
        const std::uint64_t c = next++;
        if (c >= chunks) return;
        body(w, c * chunk, std::min(total, (c + 1) * chunk));
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(mu);
      if (!err) err = std::current_exception();
      next = chunks;
    }
  };
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < nt; ++i) pool.emplace_back(run, i);
  run(0);
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace trivec
