#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace ginv {

/// Worker count used by parallelMap; 0 means hardware concurrency.
inline std::atomic<unsigned> parallelWorkers{0};

/// out[i] = fn(in[i]), computed on a thread pool. The result depends only on
/// the inputs, never on scheduling. The first exception thrown by fn is
/// rethrown on the calling thread after all workers stop.
template <class In, class Fn>
auto parallelMap(const std::vector<In>& in, Fn fn) -> std::vector<decltype(fn(in.front()))> {
  using Out = decltype(fn(in.front()));
  std::vector<Out> out(in.size());
  unsigned workers = parallelWorkers.load();
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, in.size()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < in.size(); ++i) out[i] = fn(in[i]);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failureMutex;
  auto work = [&] {
    for (std::size_t i = next++; i < in.size(); i = next++) {
      try {
        out[i] = fn(in[i]);
      } catch (...) {
        std::lock_guard lock(failureMutex);
        if (!failure) failure = std::current_exception();
        next = in.size();
      }
    }
  };
  std::vector<std::jthread> pool;
  for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
  pool.clear();
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace ginv
