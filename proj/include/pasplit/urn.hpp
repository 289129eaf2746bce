#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "pasplit/random.hpp"

namespace pasplit {

// Polya urn with real-valued colour weights: draw a colour with probability
// weight/total, then add `add_amount` to it.
class UrnState {
 public:
  UrnState(std::vector<double> weights, double add_amount);

  // Returns the 0-based colour drawn.
  std::size_t step(RandomStream& rng);
  void run(std::uint64_t steps, RandomStream& rng);

  const std::vector<double>& weights() const { return weights_; }
  double add_amount() const { return add_amount_; }
  std::uint64_t step_count() const { return steps_; }
  // initial total + step_count * add_amount
  double total() const;
  std::vector<double> fractions() const;

 private:
  std::vector<double> weights_;
  double add_amount_;
  double initial_total_;
  std::uint64_t steps_ = 0;
};

// Two-colour urn started at (r0, w0) with unit additions; returns R/(R+W).
double urn_final_fraction(double r0, double w0, std::uint64_t steps, RandomStream& rng);

// m colours, one ball each, m-1 balls added per round; final proportions.
std::vector<double> urn_multicolor_fractions(int m, std::uint64_t steps, RandomStream& rng);

}  // namespace pasplit
