#pragma once

#include <cstddef>
#include <vector>

namespace pasplit {

// Fenwick tree over non-negative real weights: point update, prefix sums and
// weighted selection in O(log n). Slots are appended up to a fixed capacity.
class WeightIndex {
 public:
  explicit WeightIndex(std::size_t capacity);

  std::size_t size() const { return weights_.size(); }
  std::size_t capacity() const { return capacity_; }
  double total() const { return total_; }
  double weight(std::size_t i) const { return weights_[i]; }

  std::size_t push(double weight);
  void set(std::size_t i, double weight);

  // Smallest i with prefix_sum(i) > target; target should lie in [0, total).
  // Never returns a zero-weight slot.
  std::size_t find(double target) const;

  double prefix_sum(std::size_t i) const;  // weights 0..i inclusive

  // Recomputes the tree and the total from the stored weights.
  void rebuild();

 private:
  void add(std::size_t i, double delta);

  std::size_t capacity_;
  std::vector<double> weights_;
  std::vector<double> tree_;  // 1-based Fenwick array
  std::size_t top_bit_ = 1;
  double total_ = 0.0;
};

}  // namespace pasplit
