#include "pasplit/growth_split.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace pasplit {

namespace {

template <typename... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <typename... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

double gem_stick(const Gem& gem, std::uint64_t j, RandomStream& rng) {
  if (gem.m && j >= static_cast<std::uint64_t>(*gem.m)) return 1.0;
  return beta_sample(1.0 - gem.alpha, gem.theta + static_cast<double>(j) * gem.alpha, rng);
}

// Rejects specs whose vector is a.s. a single unit atom: two balls would
// never separate.
void require_splitting(const SplitSpec& spec) {
  const bool degenerate = std::visit(
      Overloaded{[](const Gem& g) { return g.theta + g.alpha <= 0.0 || (g.m && *g.m == 1); },
                 [](const DirichletSym&) { return false; },
                 [](const Explicit& e) { return std::count_if(e.probs.begin(), e.probs.end(),
                                                              [](double p) { return p > 0.0; }) <= 1; }},
      spec);
  if (degenerate) throw std::invalid_argument("split vector never splits (sum of squares is 1)");
}

}  // namespace

const char* to_string(RoutingMode mode) {
  switch (mode) {
    case RoutingMode::kAuto:
      return "auto";
    case RoutingMode::kIndexed:
      return "indexed";
    case RoutingMode::kAppearanceOrder:
      return "appearance";
  }
  return "?";
}

RoutingMode resolve_growth_routing(const SplitSpec& spec, RoutingMode mode) {
  const Gem* gem = std::get_if<Gem>(&spec);
  if (mode == RoutingMode::kAppearanceOrder && !gem) {
    throw std::invalid_argument("appearance-order routing needs a GEM split");
  }
  if (mode != RoutingMode::kAuto) return mode;
  return gem && gem->alpha > 0.0 ? RoutingMode::kAppearanceOrder : RoutingMode::kIndexed;
}

RoutingMode resolve_path_routing(const SplitSpec& spec, RoutingMode mode) {
  const Gem* gem = std::get_if<Gem>(&spec);
  if (mode == RoutingMode::kAppearanceOrder && !gem) {
    throw std::invalid_argument("appearance-order routing needs a GEM split");
  }
  if (mode != RoutingMode::kAuto) return mode;
  return gem && gem->alpha > 0.5 ? RoutingMode::kAppearanceOrder : RoutingMode::kIndexed;
}

SplitTreeGrowth::SplitTreeGrowth(SplitSpec spec, RandomStream& rng, RoutingMode mode, std::uint64_t max_extensions)
    : spec_(std::move(spec)),
      rng_(&rng),
      mode_(resolve_growth_routing(spec_, mode)),
      max_extensions_(max_extensions) {}

NodeId SplitTreeGrowth::child(NodeId v, std::size_t index) const {
  const auto& slots = nodes_[v].child_at;
  return index <= slots.size() ? slots[index - 1] : kNoParent;
}

NodeId SplitTreeGrowth::create(NodeId parent, std::size_t index) {
  const NodeId id = nodes_.size();
  nodes_.push_back(Node{parent, index, {}, {}, {}});
  if (parent != kNoParent) {
    auto& slots = nodes_[parent].child_at;
    if (slots.size() < index) slots.resize(index, kNoParent);
    slots[index - 1] = id;
  }
  return id;
}

NodeId SplitTreeGrowth::drop_ball() {
  if (nodes_.empty()) return create(kNoParent, 0);
  NodeId v = 0;
  for (;;) {
    const std::size_t i = route_ball(v);
    const NodeId c = child(v, i);
    if (c == kNoParent) return create(v, i);
    v = c;
  }
}

std::size_t SplitTreeGrowth::route_ball(NodeId v) {
  if (v >= nodes_.size()) throw std::out_of_range("route_ball: node is not occupied");
  Node& node = nodes_[v];
  return std::visit(
      Overloaded{
          [&](const Explicit& e) { return size_biased_index(e.probs, *rng_).index; },
          [&](const DirichletSym& d) {
            if (node.finite.empty()) node.finite = dirichlet_sample(d.m, d.a, *rng_);
            return size_biased_index(node.finite, *rng_).index;
          },
          [&](const Gem& g) -> std::size_t {
            if (mode_ == RoutingMode::kIndexed) {
              return size_biased_index(node.stick, g, *rng_, max_extensions_).index;
            }
            StickState& st = node.stick;
            const double u = rng_->uniform();
            const auto it = std::upper_bound(st.cumulative.begin(), st.cumulative.end(), u);
            if (it != st.cumulative.end()) return static_cast<std::size_t>(it - st.cumulative.begin()) + 1;
            if (st.exhausted) return st.size();
            stick_extend(st, g, *rng_);
            return st.size();
          }},
      spec_);
}

Tree SplitTreeGrowth::tree() const {
  if (nodes_.empty()) throw std::logic_error("split tree holds no balls");
  std::vector<NodeId> parents(nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i) parents[i] = nodes_[i].parent;
  return Tree::from_parents(parents);
}

Tree grow_split(std::size_t n, const SplitSpec& spec, RandomStream& rng, RoutingMode mode,
                std::uint64_t max_extensions) {
  if (n < 1) throw std::invalid_argument("grow_split requires n >= 1");
  SplitTreeGrowth growth(spec, rng, mode, max_extensions);
  for (std::size_t i = 0; i < n; ++i) growth.drop_ball();
  return growth.tree();
}

namespace {

// One fresh node: do two independent picks land on the same child?
bool same_child_indexed(const Gem& g, RandomStream& rng, std::uint64_t max_extensions) {
  const double u1 = rng.uniform();
  const double u2 = rng.uniform();
  double remaining = 1.0;
  double lower = 0.0;
  for (std::uint64_t j = 1;; ++j) {
    if (j > max_extensions) {
      throw NonTermination("common prefix: more than " + std::to_string(max_extensions) + " stick extensions");
    }
    const double z = gem_stick(g, j, rng);
    const double upper = lower + z * remaining;
    remaining *= (1.0 - z);
    const bool last = remaining == 0.0;
    if (u1 < upper || last) return u2 >= lower && (u2 < upper || last);
    lower = upper;
  }
}

bool same_child_finite(std::span<const double> probs, RandomStream& rng) {
  return size_biased_index(probs, rng).index == size_biased_index(probs, rng).index;
}

}  // namespace

std::size_t common_prefix_sample(const SplitSpec& spec, RandomStream& rng, RoutingMode mode, std::size_t max_depth,
                                 std::uint64_t max_extensions) {
  require_splitting(spec);
  const RoutingMode resolved = resolve_path_routing(spec, mode);
  for (std::size_t depth = 0; depth < max_depth; ++depth) {
    const bool same = std::visit(
        Overloaded{[&](const Explicit& e) { return same_child_finite(e.probs, rng); },
                   [&](const DirichletSym& d) { return same_child_finite(dirichlet_sample(d.m, d.a, rng), rng); },
                   [&](const Gem& g) {
                     if (resolved == RoutingMode::kIndexed) return same_child_indexed(g, rng, max_extensions);
                     // The first ball opens child 1, of mass Pt_1 = Z_1; the
                     // second joins it with probability Pt_1.
                     const double z1 = gem_stick(g, 1, rng);
                     return rng.uniform() < z1;
                   }},
        spec);
    if (!same) return depth;
  }
  throw NonTermination("common prefix exceeded depth " + std::to_string(max_depth));
}

double size_biased_w(const SplitSpec& spec, RandomStream& rng, RoutingMode mode, std::uint64_t max_extensions) {
  const RoutingMode resolved = resolve_path_routing(spec, mode);
  return std::visit(Overloaded{[&](const Explicit& e) { return size_biased_index(e.probs, rng).w; },
                               [&](const DirichletSym& d) {
                                 return size_biased_index(dirichlet_sample(d.m, d.a, rng), rng).w;
                               },
                               [&](const Gem& g) {
                                 if (resolved == RoutingMode::kIndexed) {
                                   return size_biased_fresh(g, rng, max_extensions).w;
                                 }
                                 return gem_stick(g, 1, rng);
                               }},
                    spec);
}

SquaredMass split_sum_squares(const SplitSpec& spec, RandomStream& rng, double epsilon, std::size_t max_sticks) {
  auto finite = [](std::span<const double> probs) {
    SquaredMass out;
    for (double p : probs) out.sum_sq += p * p;
    out.sticks = probs.size();
    return out;
  };
  return std::visit(Overloaded{[&](const Explicit& e) { return finite(e.probs); },
                               [&](const DirichletSym& d) { return finite(dirichlet_sample(d.m, d.a, rng)); },
                               [&](const Gem& g) {
                                 SquaredMass out;
                                 double remaining = 1.0;
                                 for (std::uint64_t j = 1; remaining >= epsilon && j <= max_sticks; ++j) {
                                   const double z = gem_stick(g, j, rng);
                                   const double p = z * remaining;
                                   out.sum_sq += p * p;
                                   remaining *= (1.0 - z);
                                   out.sticks = j;
                                 }
                                 out.remaining = remaining;
                                 return out;
                               }},
                    spec);
}

}  // namespace pasplit
