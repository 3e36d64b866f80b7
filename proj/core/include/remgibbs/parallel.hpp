#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <type_traits>
#include <utility>
#include <vector>

#include "remgibbs/rng.hpp"

namespace remgibbs {

struct ReplicaOptions {
  std::uint64_t seed = 42;
  unsigned workers = 1;
};

/// Runs `fn(replica_index, stream)` for every replica in [0, count) and
/// returns the results in replica order.
///
/// Replica r always receives Stream::substream(seed, r), so the returned
/// vector is identical for any worker count and any completion order.
template <class Fn>
auto run_replicas(std::size_t count, const ReplicaOptions& options, Fn&& fn)
    -> std::vector<std::invoke_result_t<Fn&, std::size_t, Stream&>> {
  using Result = std::invoke_result_t<Fn&, std::size_t, Stream&>;
  // One optional per replica: no default constructor needed, and no
  // vector<bool> bit packing shared between workers.
  std::vector<std::optional<Result>> slots(count);

  auto run_one = [&](std::size_t r) {
    Stream stream = Stream::substream(options.seed, r);
    slots[r].emplace(fn(r, stream));
  };
  auto collect = [&] {
    std::vector<Result> results;
    results.reserve(count);
    for (auto& slot : slots) results.push_back(std::move(*slot));
    return results;
  };

  const unsigned workers =
      std::max(1u, std::min<unsigned>(options.workers,
                                      static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (workers == 1) {
    for (std::size_t r = 0; r < count; ++r) run_one(r);
    return collect();
  }

  constexpr std::size_t kBlock = 16;
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (;;) {
          const std::size_t begin = next.fetch_add(kBlock);
          if (begin >= count) return;
          const std::size_t end = std::min(count, begin + kBlock);
          try {
            for (std::size_t r = begin; r < end; ++r) run_one(r);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next.store(count);
            return;
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
  return collect();
}

}  // namespace remgibbs
