#include "pasplit/weight_index.hpp"

#include <algorithm>
#include <stdexcept>

namespace pasplit {

WeightIndex::WeightIndex(std::size_t capacity) : capacity_(capacity), tree_(capacity + 1, 0.0) {
  weights_.reserve(capacity);
  while (top_bit_ * 2 <= capacity_) top_bit_ *= 2;
}

void WeightIndex::add(std::size_t i, double delta) {
  for (std::size_t k = i + 1; k <= capacity_; k += k & (~k + 1)) tree_[k] += delta;
  total_ += delta;
}

std::size_t WeightIndex::push(double weight) {
  if (weights_.size() == capacity_) throw std::length_error("WeightIndex capacity exceeded");
  if (weight < 0.0) throw std::invalid_argument("negative weight");
  weights_.push_back(weight);
  add(weights_.size() - 1, weight);
  return weights_.size() - 1;
}

void WeightIndex::set(std::size_t i, double weight) {
  if (i >= weights_.size()) throw std::out_of_range("WeightIndex::set");
  if (weight < 0.0) throw std::invalid_argument("negative weight");
  const double delta = weight - weights_[i];
  weights_[i] = weight;
  add(i, delta);
}

double WeightIndex::prefix_sum(std::size_t i) const {
  double s = 0.0;
  for (std::size_t k = i + 1; k > 0; k -= k & (~k + 1)) s += tree_[k];
  return s;
}

std::size_t WeightIndex::find(double target) const {
  if (weights_.empty()) throw std::logic_error("WeightIndex::find on empty index");
  std::size_t pos = 0;
  double rest = target;
  for (std::size_t step = top_bit_; step > 0; step /= 2) {
    const std::size_t next = pos + step;
    if (next <= capacity_ && tree_[next] <= rest) {
      pos = next;
      rest -= tree_[next];
    }
  }
  // pos is now the 0-based answer; rounding can land on an empty or
  // out-of-range slot, in which case step to the nearest positive weight.
  if (pos >= weights_.size()) pos = weights_.size() - 1;
  if (weights_[pos] > 0.0) return pos;
  for (std::size_t j = pos + 1; j < weights_.size(); ++j) {
    if (weights_[j] > 0.0) return j;
  }
  for (std::size_t j = pos; j-- > 0;) {
    if (weights_[j] > 0.0) return j;
  }
  throw std::logic_error("WeightIndex::find: all weights are zero");
}

void WeightIndex::rebuild() {
  std::fill(tree_.begin(), tree_.end(), 0.0);
  total_ = 0.0;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    tree_[i + 1] += weights_[i];
    const std::size_t parent = (i + 1) + ((i + 1) & (~(i + 1) + 1));
    if (parent <= capacity_) tree_[parent] += tree_[i + 1];
    total_ += weights_[i];
  }
}

}  // namespace pasplit
