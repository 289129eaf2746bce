#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "pasplit/params.hpp"
#include "pasplit/random.hpp"

namespace pasplit {

// Raised when lazy stick realization exceeds its extension budget.
class NonTermination : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Beta(a, b) via two Gamma draws. Beta(0, b) = 0 and Beta(a, 0) = 1 exactly.
double beta_sample(double a, double b, RandomStream& rng);

// Symmetric Dirichlet(a, ..., a) of length m.
std::vector<double> dirichlet_sample(int m, double a, RandomStream& rng);

// Lazily realized stick-breaking vector. prefix_probs[i] is P_{i+1},
// cumulative[i] = P_1 + ... + P_{i+1}.
struct StickState {
  std::vector<double> z_values;
  std::vector<double> prefix_probs;
  std::vector<double> cumulative;
  double remaining_mass = 1.0;
  bool exhausted = false;

  std::size_t size() const { return prefix_probs.size(); }
  double realized_mass() const { return cumulative.empty() ? 0.0 : cumulative.back(); }
};

inline constexpr double kMassTolerance = 1e-12;

// Draws Z_{k+1} ~ B(1 - alpha, theta + (k+1) alpha) and appends P_{k+1}.
// Throws std::logic_error on an exhausted state.
void stick_extend(StickState& state, const Gem& gem, RandomStream& rng);

struct SizeBiasedDraw {
  std::size_t index = 0;  // 1-based
  double w = 0.0;         // P_index
};

// Index I with P(I = i) = probs[i-1].
SizeBiasedDraw size_biased_index(std::span<const double> probs, RandomStream& rng);

// Same on a persisted lazy GEM state, extending sticks until the uniform
// draw is covered. Throws NonTermination after `max_extensions` new sticks.
SizeBiasedDraw size_biased_index(StickState& state, const Gem& gem, RandomStream& rng,
                                 std::uint64_t max_extensions);

// Size-biased pick from a fresh GEM vector without storing it: only the
// running remaining mass is kept, so very deep indices cost time but no memory.
SizeBiasedDraw size_biased_fresh(const Gem& gem, RandomStream& rng, std::uint64_t max_extensions);

}  // namespace pasplit
