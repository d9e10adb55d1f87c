// Influence trees: expanding (group, link) back to bridge-attached links to
// bound a group's burst by the number of flows that can feed it.
#pragma once

#include <string>
#include <vector>

#include "ivnet/model.hpp"

namespace ivnet {

struct TreeNode {
  std::string link_id;
  std::vector<std::string> flows;  // flow spec ids of the node's flow set, sorted
  std::int64_t flow_count = 0;     // sum of spec counts
  Bits max_burst;                  // largest per-flow burst in the set
  std::vector<TreeNode> children;  // sorted by link id

  bool is_leaf() const { return children.empty(); }
  friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

struct InfluenceTree {
  std::vector<std::string> group;  // root flow set
  TreeNode root;

  std::vector<const TreeNode*> leaves() const;
  std::size_t depth() const;
  friend bool operator==(const InfluenceTree&, const InfluenceTree&) = default;
};

/// True when the link leaves a bridge, device or processor (anything but a switch).
bool is_bridge_attached(const Topology& topology, const Link& link);

/// Root (group, l); a node (V, i) leaving a switch gets one child (W_j, j) per
/// input link j of that switch carrying a flow of V that continues onto i,
/// where W_j is every flow on j. Nodes on bridge-attached links are leaves.
/// Throws ModelError when no flow of `group` uses l, or when a flow starts on
/// a link leaving a switch.
InfluenceTree build_influence_tree(const Topology& topology, const std::vector<std::string>& group,
                                   const std::string& link_id);

/// A * sum over leaves of n(G_k).
Bits leaf_count_bound(const InfluenceTree& tree, const Bits& max_packet_bits);

/// Sum over leaves of n(G_k) * A_k with A_k the leaf's own largest burst.
Bits refined_leaf_bound(const InfluenceTree& tree);

/// Largest per-flow burst over all leaves.
Bits max_leaf_burst(const InfluenceTree& tree);

/// Indented outline, one node per line.
std::string render_tree_text(const InfluenceTree& tree);

}  // namespace ivnet
