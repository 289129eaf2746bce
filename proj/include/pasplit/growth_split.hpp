#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "pasplit/params.hpp"
#include "pasplit/random.hpp"
#include "pasplit/samplers.hpp"
#include "pasplit/tree.hpp"

namespace pasplit {

// How a full node turns a ball into a child.
//
// kIndexed follows the split-tree rules literally: each node owns a lazily
// realized split vector P_1, P_2, ... and a ball goes to child i with
// probability P_i.
//
// kAppearanceOrder realizes a GEM split vector in the order in which children
// appear: child k of a node carries mass Pt_k, the next ball joins child k
// with probability Pt_k or opens child K+1 with the leftover mass, and Pt_{K+1}
// is then drawn as the next GEM stick. Since the masses of children in order
// of appearance are a size-biased permutation of the split vector, and GEM is
// invariant under size-biased permutation, the unordered trees have the same
// law as in kIndexed. Only GEM specs use it.
//
// For GEM with alpha > 0 the literal index of a routed ball is heavy tailed
// (P(I > k) decays like k^{-(1-alpha)/alpha}), so kIndexed needs unbounded
// sticks at large n or alpha > 1/2; kAuto picks kAppearanceOrder there.
enum class RoutingMode { kAuto, kIndexed, kAppearanceOrder };

const char* to_string(RoutingMode mode);

// kAuto for tree growth: indexed unless the spec is GEM with alpha > 0.
RoutingMode resolve_growth_routing(const SplitSpec& spec, RoutingMode mode);
// kAuto for single-path samplers (common prefix, size-biased W), which
// need no stick storage: indexed unless the spec is GEM with alpha > 1/2.
RoutingMode resolve_path_routing(const SplitSpec& spec, RoutingMode mode);

inline constexpr std::uint64_t kRoutingExtensionGuard = std::uint64_t{1} << 20;
inline constexpr std::uint64_t kPathExtensionGuard = std::uint64_t{1} << 30;
inline constexpr std::size_t kPrefixDepthGuard = std::size_t{1} << 16;

// Random split tree with unbounded branching, grown one ball at a time.
// Only occupied nodes exist; node ids are assigned when the first ball
// lands, which is the order of appearance.
class SplitTreeGrowth {
 public:
  SplitTreeGrowth(SplitSpec spec, RandomStream& rng, RoutingMode mode = RoutingMode::kAuto,
                  std::uint64_t max_extensions = kRoutingExtensionGuard);

  // Drops one ball at the root and returns the node where it settles.
  NodeId drop_ball();

  // Child index (1-based) chosen by a ball passing the full node `v`. Split
  // vectors are realized once and reused.
  std::size_t route_ball(NodeId v);

  std::size_t balls() const { return nodes_.size(); }
  RoutingMode mode() const { return mode_; }

  // Occupied subtree, children relabelled in order of appearance.
  Tree tree() const;

  // Index of v in its parent's split vector (0 for the root).
  std::size_t split_index(NodeId v) const { return nodes_.at(v).index_in_parent; }
  const StickState& stick(NodeId v) const { return nodes_.at(v).stick; }
  const std::vector<double>& finite_split(NodeId v) const { return nodes_.at(v).finite; }

 private:
  struct Node {
    NodeId parent = kNoParent;
    std::size_t index_in_parent = 0;
    StickState stick;
    std::vector<double> finite;
    std::vector<NodeId> child_at;  // by split index - 1
  };

  NodeId child(NodeId v, std::size_t index) const;
  NodeId create(NodeId parent, std::size_t index);

  SplitSpec spec_;
  RandomStream* rng_;
  RoutingMode mode_;
  std::uint64_t max_extensions_;
  std::vector<Node> nodes_;
};

Tree grow_split(std::size_t n, const SplitSpec& spec, RandomStream& rng, RoutingMode mode = RoutingMode::kAuto,
                std::uint64_t max_extensions = kRoutingExtensionGuard);

// Length of the common prefix of two ball paths through one shared split-tree
// environment in which no node keeps a ball.
std::size_t common_prefix_sample(const SplitSpec& spec, RandomStream& rng, RoutingMode mode = RoutingMode::kAuto,
                                 std::size_t max_depth = kPrefixDepthGuard,
                                 std::uint64_t max_extensions = kPathExtensionGuard);

// W = P_I for a size-biased index I of a fresh split vector.
double size_biased_w(const SplitSpec& spec, RandomStream& rng, RoutingMode mode = RoutingMode::kAuto,
                     std::uint64_t max_extensions = kPathExtensionGuard);

// sum_i P_i^2 of one split vector; GEM vectors are truncated once the
// remaining mass drops below epsilon or after max_sticks sticks. The
// remaining mass at the stop is returned (the tail adds at most its square).
struct SquaredMass {
  double sum_sq = 0.0;
  double remaining = 0.0;
  std::size_t sticks = 0;
};
SquaredMass split_sum_squares(const SplitSpec& spec, RandomStream& rng, double epsilon, std::size_t max_sticks);

}  // namespace pasplit
