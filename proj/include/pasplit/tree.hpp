#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace pasplit {

using NodeId = std::size_t;
inline constexpr NodeId kNoParent = std::numeric_limits<NodeId>::max();

// Rooted ordered tree with creation-ordered node ids. Node 0 is the root and
// parent(i) < i for every other node, so a child list in index order is also
// the order of appearance.
class Tree {
 public:
  Tree();

  // Rebuilds a tree from a parent array (parents[0] must be kNoParent).
  static Tree from_parents(std::span<const NodeId> parents);

  NodeId add_child(NodeId parent_index);
  void reserve(std::size_t n);

  std::size_t size() const { return parent_.size(); }
  NodeId parent(NodeId v) const;
  const std::vector<NodeId>& children(NodeId v) const;
  std::size_t outdegree(NodeId v) const { return children(v).size(); }
  const std::vector<NodeId>& parents() const { return parent_; }

  // Tree made of nodes 0..k-1; well defined because the node set of a
  // grown tree is nested in creation order.
  Tree prefix(std::size_t k) const;

 private:
  std::vector<NodeId> parent_;
  std::vector<std::vector<NodeId>> children_;
};

struct TreeStats {
  std::vector<std::size_t> depths;
  std::vector<std::size_t> subtree_sizes;
  std::uint64_t pathlength = 0;
  std::uint64_t y = 0;
  std::uint64_t wiener = 0;
};

std::vector<std::size_t> depths(const Tree& tree);
std::vector<std::size_t> subtree_sizes(const Tree& tree);

NodeId lca(const Tree& tree, NodeId v, NodeId w);
// Same, with precomputed depths.
NodeId lca(const Tree& tree, std::span<const std::size_t> depths, NodeId v, NodeId w);

// Y(T) summed over ordered pairs of distinct nodes: sum_{u != root} s_u (s_u - 1).
std::uint64_t y_statistic(const Tree& tree);

inline constexpr std::size_t kBruteForceLimit = 10'000;

// Quadratic reference for y_statistic; throws std::length_error above `limit`.
std::uint64_t y_bruteforce(const Tree& tree, std::size_t limit = kBruteForceLimit);

struct PathlengthWiener {
  std::uint64_t pathlength = 0;
  std::uint64_t wiener = 0;
};

// Total pathlength and Wiener index (unordered pairs). Satisfies
// Y = (n-1) * pathlength - wiener.
PathlengthWiener pathlength_and_wiener(const Tree& tree);

TreeStats tree_stats(const Tree& tree);

// AHU code: "()" for a leaf, otherwise "(" + sorted child codes + ")".
std::string canonical_code(const Tree& tree);

std::size_t max_outdegree(const Tree& tree);

}  // namespace pasplit
