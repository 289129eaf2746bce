#include "pasplit/urn.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace pasplit {

UrnState::UrnState(std::vector<double> weights, double add_amount)
    : weights_(std::move(weights)), add_amount_(add_amount) {
  if (weights_.empty()) throw std::invalid_argument("urn needs at least one colour");
  for (double w : weights_) {
    if (!std::isfinite(w) || w < 0.0) throw std::invalid_argument("urn weights must be finite and >= 0");
  }
  if (!std::isfinite(add_amount_) || add_amount_ < 0.0) throw std::invalid_argument("urn addition must be >= 0");
  initial_total_ = std::accumulate(weights_.begin(), weights_.end(), 0.0);
  if (!(initial_total_ > 0.0)) throw std::invalid_argument("urn total weight must be > 0");
}

double UrnState::total() const { return initial_total_ + static_cast<double>(steps_) * add_amount_; }

std::size_t UrnState::step(RandomStream& rng) {
  const double target = rng.uniform() * total();
  double cum = 0.0;
  std::size_t colour = weights_.size() - 1;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    cum += weights_[i];
    if (target < cum) {
      colour = i;
      break;
    }
  }
  // Rounding at the top end must not select an empty colour.
  while (weights_[colour] == 0.0) --colour;
  weights_[colour] += add_amount_;
  ++steps_;
  return colour;
}

void UrnState::run(std::uint64_t steps, RandomStream& rng) {
  for (std::uint64_t s = 0; s < steps; ++s) step(rng);
}

std::vector<double> UrnState::fractions() const {
  const double t = total();
  std::vector<double> out(weights_);
  for (auto& x : out) x /= t;
  return out;
}

double urn_final_fraction(double r0, double w0, std::uint64_t steps, RandomStream& rng) {
  if (!(r0 > 0.0) || !(w0 > 0.0) || !std::isfinite(r0) || !std::isfinite(w0)) {
    throw std::invalid_argument("two-colour urn needs r0 > 0 and w0 > 0");
  }
  if (steps < 1) throw std::invalid_argument("urn needs steps >= 1");
  // Specialized two-colour loop: the total is known in closed form.
  double red = r0;
  double total = r0 + w0;
  for (std::uint64_t s = 0; s < steps; ++s) {
    if (rng.uniform() * total < red) red += 1.0;
    total += 1.0;
  }
  return red / total;
}

std::vector<double> urn_multicolor_fractions(int m, std::uint64_t steps, RandomStream& rng) {
  if (m < 2) throw std::invalid_argument("multicolour urn needs m >= 2");
  if (steps < 1) throw std::invalid_argument("urn needs steps >= 1");
  UrnState urn(std::vector<double>(static_cast<std::size_t>(m), 1.0), static_cast<double>(m - 1));
  urn.run(steps, rng);
  return urn.fractions();
}

}  // namespace pasplit
