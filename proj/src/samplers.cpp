#include "pasplit/samplers.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace pasplit {

double beta_sample(double a, double b, RandomStream& rng) {
  if (!(a >= 0.0) || !(b >= 0.0) || a + b <= 0.0) {
    throw std::invalid_argument("beta_sample requires a >= 0, b >= 0, a + b > 0");
  }
  if (a == 0.0) return 0.0;
  if (b == 0.0) return 1.0;
  for (;;) {
    const double x = rng.gamma(a);
    const double y = rng.gamma(b);
    // Both gammas can underflow for tiny shapes; redraw rather than divide 0/0.
    if (x + y > 0.0) return x / (x + y);
  }
}

std::vector<double> dirichlet_sample(int m, double a, RandomStream& rng) {
  if (m < 2 || !(a > 0.0)) throw std::invalid_argument("dirichlet_sample requires m >= 2 and a > 0");
  std::vector<double> out(static_cast<std::size_t>(m));
  double total = 0.0;
  do {
    total = 0.0;
    for (auto& x : out) {
      x = rng.gamma(a);
      total += x;
    }
  } while (!(total > 0.0));
  for (auto& x : out) x /= total;
  return out;
}

void stick_extend(StickState& state, const Gem& gem, RandomStream& rng) {
  if (state.exhausted) throw std::logic_error("stick_extend on an exhausted stick state");
  const std::size_t j = state.size() + 1;
  double z;
  if (gem.m && j >= static_cast<std::size_t>(*gem.m)) {
    z = 1.0;
  } else {
    z = beta_sample(1.0 - gem.alpha, gem.theta + static_cast<double>(j) * gem.alpha, rng);
  }
  const double p = z * state.remaining_mass;
  state.z_values.push_back(z);
  state.prefix_probs.push_back(p);
  state.cumulative.push_back(state.realized_mass() + p);
  state.remaining_mass *= (1.0 - z);
  if (std::abs(state.cumulative.back() + state.remaining_mass - 1.0) > kMassTolerance) {
    state.remaining_mass = std::max(0.0, 1.0 - state.cumulative.back());
  }
  if (state.remaining_mass == 0.0) state.exhausted = true;
}

SizeBiasedDraw size_biased_index(std::span<const double> probs, RandomStream& rng) {
  if (probs.empty()) throw std::invalid_argument("size_biased_index: empty vector");
  const double u = rng.uniform();
  double cum = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] <= 0.0) continue;
    last_positive = i;
    cum += probs[i];
    if (u < cum) return {i + 1, probs[i]};
  }
  // u fell into the rounding gap below 1.
  return {last_positive + 1, probs[last_positive]};
}

namespace {

// First index whose cumulative mass exceeds u, or 0 if the realized prefix
// does not cover u.
std::size_t locate(const StickState& state, double u) {
  auto it = std::upper_bound(state.cumulative.begin(), state.cumulative.end(), u);
  if (it == state.cumulative.end()) return 0;
  return static_cast<std::size_t>(it - state.cumulative.begin()) + 1;
}

std::size_t last_positive_index(const StickState& state) {
  for (std::size_t i = state.size(); i-- > 0;) {
    if (state.prefix_probs[i] > 0.0) return i + 1;
  }
  throw std::logic_error("stick state holds no positive mass");
}

}  // namespace

SizeBiasedDraw size_biased_index(StickState& state, const Gem& gem, RandomStream& rng,
                                 std::uint64_t max_extensions) {
  const double u = rng.uniform();
  std::uint64_t extensions = 0;
  for (;;) {
    if (std::size_t i = locate(state, u); i != 0) return {i, state.prefix_probs[i - 1]};
    if (state.exhausted) {
      const std::size_t i = last_positive_index(state);
      return {i, state.prefix_probs[i - 1]};
    }
    if (++extensions > max_extensions) {
      throw NonTermination("size-biased pick needed more than " + std::to_string(max_extensions) +
                           " stick extensions");
    }
    stick_extend(state, gem, rng);
  }
}

SizeBiasedDraw size_biased_fresh(const Gem& gem, RandomStream& rng, std::uint64_t max_extensions) {
  const double u = rng.uniform();
  double remaining = 1.0;
  double cum = 0.0;
  for (std::uint64_t j = 1;; ++j) {
    if (j > max_extensions) {
      throw NonTermination("size-biased pick needed more than " + std::to_string(max_extensions) +
                           " stick extensions");
    }
    double z;
    if (gem.m && j >= static_cast<std::uint64_t>(*gem.m)) {
      z = 1.0;
    } else {
      z = beta_sample(1.0 - gem.alpha, gem.theta + static_cast<double>(j) * gem.alpha, rng);
    }
    const double p = z * remaining;
    cum += p;
    remaining *= (1.0 - z);
    if (u < cum || remaining == 0.0) return {j, p};
  }
}

}  // namespace pasplit
