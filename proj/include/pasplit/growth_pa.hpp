#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "pasplit/params.hpp"
#include "pasplit/random.hpp"
#include "pasplit/rational.hpp"
#include "pasplit/tree.hpp"
#include "pasplit/weight_index.hpp"

namespace pasplit {

// w_k = chi k + rho. For chi < 0 requires k <= m (w_m = 0).
double weight_of_outdegree(std::size_t k, const GrowthParams& p);

// Total weight of an n-node tree: n (chi + rho) - chi.
double total_weight(std::size_t n, const GrowthParams& p);

// Hooks for observing a growth run; used by tests to check per-step invariants.
struct PaObserver {
  // Called after each attachment with the current node count and the
  // index's running total weight.
  std::function<void(std::size_t nodes, double index_total)> on_step;
};

// Linear preferential attachment tree on n nodes, Fenwick-indexed.
Tree grow_linear_pa(std::size_t n, const GrowthParams& p, RandomStream& rng, const PaObserver* observer = nullptr);

inline constexpr std::size_t kGeneralPaLimit = 10'000;

// Arbitrary weight sequence (w_k), parent picked by a linear scan. Cross-check
// path only; n <= kGeneralPaLimit.
Tree grow_general_pa(std::size_t n, const std::function<double(std::size_t)>& weight, RandomStream& rng);

// Attachment probabilities w_{d(v)} / w(T) for the next node.
std::vector<double> attach_distribution(const Tree& tree, const GrowthParams& p);

// True if first occurrences of 1, 2, 3, ... appear in increasing order.
bool is_acceptable(std::span<const int> labels);

// Probability that the labels of the principal subtrees receiving nodes
// 2, 3, ... form `labels`, multiplying the conditional step probabilities.
double sequence_probability(std::span<const int> labels, const GrowthParams& p);
Rational sequence_probability_exact(std::span<const int> labels, const Rational& chi, const Rational& rho);

// Exact law of the unordered shape of an n-node tree, keyed by canonical code.
struct ShapeLaw {
  std::size_t n = 0;
  double chi = 0.0;
  double rho = 1.0;
  std::map<std::string, Rational> entries;

  double probability(const std::string& code) const;
  Rational total_mass() const;
};

inline constexpr std::size_t kExactLawLimit = 8;

// Enumerates every attachment history (at most 7! for n = 8). Parameters are
// converted to exact rationals with to_rational.
ShapeLaw enumerate_exact_law(std::size_t n, const GrowthParams& p);
ShapeLaw enumerate_exact_law(std::size_t n, const Rational& chi, const Rational& rho);

// m-ary increasing tree: each step converts a uniformly chosen external node
// (free child slot) into a node.
class MaryIncreasingGrower {
 public:
  MaryIncreasingGrower(int m, RandomStream& rng);

  void step();
  void grow_to(std::size_t n);

  const Tree& tree() const { return tree_; }
  // Slot label in 1..m of each node under its parent (0 for the root).
  const std::vector<int>& slot_labels() const { return slot_labels_; }
  std::size_t external_count() const { return external_.size(); }
  int m() const { return m_; }

 private:
  struct Slot {
    NodeId parent;
    int label;
  };
  void open_slots(NodeId v);

  int m_;
  RandomStream* rng_;
  Tree tree_;
  std::vector<int> slot_labels_;
  std::vector<Slot> external_;
};

struct MaryTree {
  Tree tree;
  std::vector<int> slot_labels;
  std::size_t external_count = 0;
};

MaryTree grow_mary_increasing(std::size_t n, int m, RandomStream& rng);

}  // namespace pasplit
