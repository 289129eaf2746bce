#pragma once

#include <cstdint>
#include <random>

namespace pasplit {

// Deterministic pseudo-random source keyed by (master_seed, stream_index).
// The engine is seeded through std::seed_seq from splitmix64-scrambled words
// of both keys, so neighbouring stream indices start from unrelated states.
class RandomStream {
 public:
  using result_type = std::mt19937_64::result_type;

  RandomStream(std::uint64_t master_seed, std::uint64_t stream_index);

  // Child stream for a purpose inside one replica, e.g. substream(kTagUrn).
  RandomStream substream(std::uint64_t tag) const;

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  // Uniform index in [0, n).
  std::uint64_t index(std::uint64_t n);
  double gamma(double shape);

  result_type operator()() { return engine_(); }
  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }

  std::uint64_t master_seed() const { return master_seed_; }
  std::uint64_t stream_index() const { return stream_index_; }

 private:
  std::uint64_t master_seed_;
  std::uint64_t stream_index_;
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace pasplit
