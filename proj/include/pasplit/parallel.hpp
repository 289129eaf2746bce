#pragma once

#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <vector>

#include <omp.h>

#include "pasplit/random.hpp"

namespace pasplit {

// Replica r always draws from RandomStream(master_seed, r) and writes slot r,
// so results do not depend on scheduling or on the number of threads.

// Serial reference.
template <typename Result, typename Fn>
std::vector<Result> replicate_serial(std::size_t count, std::uint64_t master_seed, Fn&& fn) {
  std::vector<Result> out(count);
  for (std::size_t r = 0; r < count; ++r) {
    RandomStream rng(master_seed, r);
    out[r] = fn(rng, r);
  }
  return out;
}

// OpenMP kernel; exceptions thrown by a replica are rethrown after the loop.
template <typename Result, typename Fn>
std::vector<Result> replicate_parallel(std::size_t count, std::uint64_t master_seed, int jobs, Fn&& fn) {
  std::vector<Result> out(count);
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto total = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(dynamic, 16) num_threads(jobs)
  for (std::int64_t r = 0; r < total; ++r) {
    try {
      RandomStream rng(master_seed, static_cast<std::uint64_t>(r));
      out[static_cast<std::size_t>(r)] = fn(rng, static_cast<std::size_t>(r));
    } catch (...) {
      std::lock_guard<std::mutex> lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

template <typename Result, typename Fn>
std::vector<Result> replicate(std::size_t count, std::uint64_t master_seed, int jobs, Fn&& fn) {
  if (jobs <= 1) return replicate_serial<Result>(count, master_seed, std::forward<Fn>(fn));
  return replicate_parallel<Result>(count, master_seed, jobs, std::forward<Fn>(fn));
}

}  // namespace pasplit
