#include "pasplit/growth_pa.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace pasplit {

double weight_of_outdegree(std::size_t k, const GrowthParams& p) {
  if (const auto m = p.m()) {
    if (k > static_cast<std::size_t>(*m)) {
      throw std::out_of_range("outdegree " + std::to_string(k) + " exceeds m = " + std::to_string(*m));
    }
    if (k == static_cast<std::size_t>(*m)) return 0.0;
  }
  return p.chi() * static_cast<double>(k) + p.rho();
}

double total_weight(std::size_t n, const GrowthParams& p) {
  return static_cast<double>(n) * (p.chi() + p.rho()) - p.chi();
}

Tree grow_linear_pa(std::size_t n, const GrowthParams& p, RandomStream& rng, const PaObserver* observer) {
  if (n < 1) throw std::invalid_argument("grow_linear_pa requires n >= 1");
  constexpr std::size_t kDriftCheckPeriod = std::size_t{1} << 16;
  constexpr double kDriftTolerance = 1e-9;

  Tree tree;
  tree.reserve(n);
  WeightIndex index(n);
  std::vector<std::size_t> degree;
  degree.reserve(n);
  index.push(weight_of_outdegree(0, p));
  degree.push_back(0);
  for (std::size_t size = 1; size < n; ++size) {
    const NodeId v = index.find(rng.uniform() * index.total());
    tree.add_child(v);
    index.set(v, weight_of_outdegree(++degree[v], p));
    index.push(weight_of_outdegree(0, p));
    degree.push_back(0);
    if ((size + 1) % kDriftCheckPeriod == 0) {
      const double exact = total_weight(size + 1, p);
      if (std::abs(index.total() - exact) > kDriftTolerance * exact) index.rebuild();
    }
    if (observer && observer->on_step) observer->on_step(size + 1, index.total());
  }
  return tree;
}

Tree grow_general_pa(std::size_t n, const std::function<double(std::size_t)>& weight, RandomStream& rng) {
  if (n < 1) throw std::invalid_argument("grow_general_pa requires n >= 1");
  if (n > kGeneralPaLimit) throw std::invalid_argument("grow_general_pa is capped at n = 10000");
  Tree tree;
  tree.reserve(n);
  std::vector<double> w{weight(0)};
  for (std::size_t size = 1; size < n; ++size) {
    double total = 0.0;
    for (double x : w) total += x;
    if (!(total > 0.0)) throw std::logic_error("grow_general_pa: all weights are zero");
    const double target = rng.uniform() * total;
    double cum = 0.0;
    NodeId chosen = kNoParent;
    for (NodeId v = 0; v < w.size(); ++v) {
      if (w[v] <= 0.0) continue;
      chosen = v;
      cum += w[v];
      if (target < cum) break;
    }
    tree.add_child(chosen);
    w[chosen] = weight(tree.outdegree(chosen));
    w.push_back(weight(0));
  }
  return tree;
}

std::vector<double> attach_distribution(const Tree& tree, const GrowthParams& p) {
  std::vector<double> probs(tree.size());
  double total = 0.0;
  for (NodeId v = 0; v < tree.size(); ++v) {
    probs[v] = weight_of_outdegree(tree.outdegree(v), p);
    total += probs[v];
  }
  for (auto& x : probs) x /= total;
  return probs;
}

bool is_acceptable(std::span<const int> labels) {
  int next_new = 1;
  for (int x : labels) {
    if (x < 1 || x > next_new) return false;
    if (x == next_new) ++next_new;
  }
  return true;
}

namespace {

template <typename Num, typename Counter>
Num sequence_probability_impl(std::span<const int> labels, const Num& chi, const Num& rho, Counter&& to_num) {
  if (!is_acceptable(labels)) throw std::invalid_argument("sequence is not acceptable");
  std::vector<long> counts;
  Num prob = 1;
  const Num sum = chi + rho;
  for (std::size_t n = 0; n < labels.size(); ++n) {
    const Num total = to_num(n) * sum + rho;
    const auto k = static_cast<std::size_t>(labels[n]);
    Num numer;
    if (k <= counts.size()) {
      numer = to_num(counts[k - 1]) * sum - chi;
      ++counts[k - 1];
    } else {
      numer = to_num(counts.size()) * chi + rho;
      counts.push_back(1);
    }
    prob *= numer / total;
  }
  return prob;
}

}  // namespace

double sequence_probability(std::span<const int> labels, const GrowthParams& p) {
  return sequence_probability_impl<double>(labels, p.chi(), p.rho(),
                                           [](auto x) { return static_cast<double>(x); });
}

Rational sequence_probability_exact(std::span<const int> labels, const Rational& chi, const Rational& rho) {
  return sequence_probability_impl<Rational>(labels, chi, rho,
                                             [](auto x) { return Rational(static_cast<long long>(x)); });
}

double ShapeLaw::probability(const std::string& code) const {
  const auto it = entries.find(code);
  return it == entries.end() ? 0.0 : to_double(it->second);
}

Rational ShapeLaw::total_mass() const {
  Rational s = 0;
  for (const auto& [code, p] : entries) s += p;
  return s;
}

namespace {

struct HistoryWalker {
  std::size_t n;
  Rational chi;
  Rational rho;
  std::vector<NodeId> parents;
  std::vector<std::size_t> degree;
  std::map<std::string, Rational>* out;

  void walk(const Rational& prob) {
    const std::size_t size = parents.size();
    if (size == n) {
      const Tree t = Tree::from_parents(parents);
      (*out)[canonical_code(t)] += prob;
      return;
    }
    const Rational total = Rational(static_cast<long long>(size)) * (chi + rho) - chi;
    for (NodeId v = 0; v < size; ++v) {
      const Rational w = Rational(static_cast<long long>(degree[v])) * chi + rho;
      if (w <= 0) continue;
      parents.push_back(v);
      degree.push_back(0);
      ++degree[v];
      walk(prob * w / total);
      --degree[v];
      degree.pop_back();
      parents.pop_back();
    }
  }
};

}  // namespace

ShapeLaw enumerate_exact_law(std::size_t n, const Rational& chi, const Rational& rho) {
  if (n < 1) throw std::invalid_argument("enumerate_exact_law requires n >= 1");
  if (n > kExactLawLimit) {
    throw std::invalid_argument("enumerate_exact_law supports n <= " + std::to_string(kExactLawLimit));
  }
  // Validates the same constraints as GrowthParams.
  const GrowthParams p = GrowthParams::make(to_double(chi), to_double(rho));
  ShapeLaw law;
  law.n = n;
  law.chi = p.chi();
  law.rho = p.rho();
  HistoryWalker walker{n, chi, rho, {kNoParent}, {0}, &law.entries};
  walker.walk(Rational(1));
  return law;
}

ShapeLaw enumerate_exact_law(std::size_t n, const GrowthParams& p) {
  return enumerate_exact_law(n, to_rational(p.chi()), to_rational(p.rho()));
}

MaryIncreasingGrower::MaryIncreasingGrower(int m, RandomStream& rng) : m_(m), rng_(&rng) {
  if (m < 2) throw std::invalid_argument("m-ary increasing tree requires m >= 2");
  slot_labels_.push_back(0);
  open_slots(0);
}

void MaryIncreasingGrower::open_slots(NodeId v) {
  for (int label = 1; label <= m_; ++label) external_.push_back({v, label});
}

void MaryIncreasingGrower::step() {
  const std::size_t pick = rng_->index(external_.size());
  const Slot slot = external_[pick];
  external_[pick] = external_.back();
  external_.pop_back();
  const NodeId v = tree_.add_child(slot.parent);
  slot_labels_.push_back(slot.label);
  open_slots(v);
  if (external_.size() != static_cast<std::size_t>(m_ - 1) * tree_.size() + 1) {
    throw std::logic_error("external node count broke (m-1) n + 1");
  }
}

void MaryIncreasingGrower::grow_to(std::size_t n) {
  while (tree_.size() < n) step();
}

MaryTree grow_mary_increasing(std::size_t n, int m, RandomStream& rng) {
  if (n < 1) throw std::invalid_argument("grow_mary_increasing requires n >= 1");
  MaryIncreasingGrower grower(m, rng);
  grower.grow_to(n);
  return {grower.tree(), grower.slot_labels(), grower.external_count()};
}

}  // namespace pasplit
