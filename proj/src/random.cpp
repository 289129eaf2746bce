#include "pasplit/random.hpp"

#include <array>
#include <stdexcept>

namespace pasplit {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

namespace {

std::mt19937_64 make_engine(std::uint64_t master_seed, std::uint64_t stream_index) {
  const std::uint64_t a = splitmix64(master_seed);
  const std::uint64_t b = splitmix64(stream_index ^ 0x5851f42d4c957f2dULL);
  std::array<std::uint32_t, 4> words{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                                     static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
  std::seed_seq seq(words.begin(), words.end());
  return std::mt19937_64(seq);
}

}  // namespace

RandomStream::RandomStream(std::uint64_t master_seed, std::uint64_t stream_index)
    : master_seed_(master_seed), stream_index_(stream_index), engine_(make_engine(master_seed, stream_index)) {}

RandomStream RandomStream::substream(std::uint64_t tag) const {
  return RandomStream(master_seed_, splitmix64(stream_index_ * 0x100000001b3ULL + splitmix64(tag)));
}

std::uint64_t RandomStream::index(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("index: empty range");
  return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(engine_);
}

double RandomStream::gamma(double shape) {
  return std::gamma_distribution<double>(shape, 1.0)(engine_);
}

}  // namespace pasplit
