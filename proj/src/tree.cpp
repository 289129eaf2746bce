#include "pasplit/tree.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace pasplit {

Tree::Tree() : parent_{kNoParent}, children_(1) {}

Tree Tree::from_parents(std::span<const NodeId> parents) {
  if (parents.empty() || parents[0] != kNoParent) {
    throw std::invalid_argument("parent array must start with the root (no parent)");
  }
  Tree tree;
  tree.reserve(parents.size());
  for (std::size_t i = 1; i < parents.size(); ++i) {
    if (parents[i] >= i) {
      throw std::invalid_argument("parent[" + std::to_string(i) + "] must be < " +
                                  std::to_string(i));
    }
    tree.add_child(parents[i]);
  }
  return tree;
}

NodeId Tree::add_child(NodeId parent_index) {
  if (parent_index >= size()) {
    throw std::out_of_range("add_child: parent index " + std::to_string(parent_index) +
                            " out of range (size " + std::to_string(size()) + ")");
  }
  const NodeId id = size();
  parent_.push_back(parent_index);
  children_.emplace_back();
  children_[parent_index].push_back(id);
  return id;
}

void Tree::reserve(std::size_t n) {
  parent_.reserve(n);
  children_.reserve(n);
}

NodeId Tree::parent(NodeId v) const {
  if (v >= size()) throw std::out_of_range("invalid node id");
  return parent_[v];
}

const std::vector<NodeId>& Tree::children(NodeId v) const {
  if (v >= size()) throw std::out_of_range("invalid node id");
  return children_[v];
}

Tree Tree::prefix(std::size_t k) const {
  if (k == 0 || k > size()) throw std::out_of_range("prefix size out of range");
  return from_parents(std::span<const NodeId>(parent_.data(), k));
}

std::vector<std::size_t> depths(const Tree& tree) {
  const auto& parent = tree.parents();
  std::vector<std::size_t> h(tree.size(), 0);
  for (std::size_t v = 1; v < tree.size(); ++v) h[v] = h[parent[v]] + 1;
  return h;
}

std::vector<std::size_t> subtree_sizes(const Tree& tree) {
  const auto& parent = tree.parents();
  std::vector<std::size_t> s(tree.size(), 1);
  for (std::size_t v = tree.size(); v-- > 1;) s[parent[v]] += s[v];
  return s;
}

NodeId lca(const Tree& tree, std::span<const std::size_t> h, NodeId v, NodeId w) {
  if (v >= tree.size() || w >= tree.size()) throw std::out_of_range("lca: invalid node id");
  const auto& parent = tree.parents();
  while (h[v] > h[w]) v = parent[v];
  while (h[w] > h[v]) w = parent[w];
  while (v != w) {
    v = parent[v];
    w = parent[w];
  }
  return v;
}

NodeId lca(const Tree& tree, NodeId v, NodeId w) {
  if (v >= tree.size() || w >= tree.size()) throw std::out_of_range("lca: invalid node id");
  const auto& parent = tree.parents();
  auto depth_of = [&](NodeId x) {
    std::size_t d = 0;
    for (; x != 0; x = parent[x]) ++d;
    return d;
  };
  std::size_t dv = depth_of(v);
  std::size_t dw = depth_of(w);
  for (; dv > dw; --dv) v = parent[v];
  for (; dw > dv; --dw) w = parent[w];
  while (v != w) {
    v = parent[v];
    w = parent[w];
  }
  return v;
}

std::uint64_t y_statistic(const Tree& tree) {
  const auto s = subtree_sizes(tree);
  std::uint64_t y = 0;
  for (std::size_t u = 1; u < s.size(); ++u) y += static_cast<std::uint64_t>(s[u]) * (s[u] - 1);
  return y;
}

std::uint64_t y_bruteforce(const Tree& tree, std::size_t limit) {
  const std::size_t n = tree.size();
  if (n > limit) {
    throw std::length_error("y_bruteforce: tree of size " + std::to_string(n) +
                            " exceeds bound " + std::to_string(limit));
  }
  const auto h = depths(tree);
  std::uint64_t y = 0;
  for (NodeId v = 0; v < n; ++v) {
    for (NodeId w = 0; w < n; ++w) {
      if (v != w) y += h[lca(tree, h, v, w)];
    }
  }
  return y;
}

PathlengthWiener pathlength_and_wiener(const Tree& tree) {
  const std::size_t n = tree.size();
  const auto s = subtree_sizes(tree);
  const auto h = depths(tree);
  PathlengthWiener out;
  for (std::size_t v = 0; v < n; ++v) out.pathlength += h[v];
  // Edge (u, parent u) lies on the path of s_u * (n - s_u) unordered pairs.
  for (std::size_t u = 1; u < n; ++u) out.wiener += static_cast<std::uint64_t>(s[u]) * (n - s[u]);
  return out;
}

TreeStats tree_stats(const Tree& tree) {
  TreeStats st;
  st.depths = depths(tree);
  st.subtree_sizes = subtree_sizes(tree);
  for (std::size_t u = 1; u < tree.size(); ++u) {
    const auto su = static_cast<std::uint64_t>(st.subtree_sizes[u]);
    st.pathlength += st.depths[u];
    st.y += su * (su - 1);
    st.wiener += su * (tree.size() - su);
  }
  return st;
}

std::string canonical_code(const Tree& tree) {
  const std::size_t n = tree.size();
  std::vector<std::string> code(n);
  std::vector<std::string> parts;
  // Children have larger ids than parents, so a reverse sweep is bottom-up.
  for (std::size_t v = n; v-- > 0;) {
    const auto& kids = tree.children(v);
    if (kids.empty()) {
      code[v] = "()";
      continue;
    }
    parts.clear();
    std::size_t len = 2;
    for (NodeId c : kids) {
      len += code[c].size();
      parts.push_back(std::move(code[c]));
    }
    std::sort(parts.begin(), parts.end());
    std::string out;
    out.reserve(len);
    out.push_back('(');
    for (const auto& p : parts) out += p;
    out.push_back(')');
    code[v] = std::move(out);
  }
  return code[0];
}

std::size_t max_outdegree(const Tree& tree) {
  std::size_t best = 0;
  for (NodeId v = 0; v < tree.size(); ++v) best = std::max(best, tree.outdegree(v));
  return best;
}

}  // namespace pasplit
