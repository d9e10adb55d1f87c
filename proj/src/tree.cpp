#include "ivnet/tree.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace ivnet {

bool is_bridge_attached(const Topology& topology, const Link& link) {
  const Node* from = topology.find_node(link.from);
  return from && from->kind != NodeKind::switch_node;
}

namespace {

std::ptrdiff_t position(const FlowSpec& f, const std::string& link) {
  auto it = std::find(f.route.begin(), f.route.end(), link);
  return it == f.route.end() ? -1 : it - f.route.begin();
}

TreeNode make_node(const Topology& t, const std::string& link, const std::vector<std::string>& flows,
                   std::size_t depth_left) {
  if (depth_left == 0) throw ModelError("influence tree does not terminate at link " + link);
  TreeNode node;
  node.link_id = link;
  node.flows = flows;
  std::sort(node.flows.begin(), node.flows.end());
  for (const auto& id : node.flows) {
    const auto& f = t.flow(id);
    node.flow_count += f.count;
    if (f.per_flow.burst > node.max_burst) node.max_burst = f.per_flow.burst;
  }
  const Link& l = t.link(link);
  if (is_bridge_attached(t, l)) return node;

  std::set<std::string> inputs;
  for (const auto& id : node.flows) {
    const auto& f = t.flow(id);
    auto p = position(f, link);
    if (p == 0) throw ModelError("flow " + id + " starts on link " + link + ", which leaves a switch");
    inputs.insert(f.route[p - 1]);
  }
  for (const auto& j : inputs) {
    std::vector<std::string> w;
    for (const auto& f : flows_on(t, j)) w.push_back(f.id);
    node.children.push_back(make_node(t, j, w, depth_left - 1));
  }
  return node;
}

void collect(const TreeNode& n, std::vector<const TreeNode*>& out) {
  if (n.is_leaf()) out.push_back(&n);
  for (const auto& c : n.children) collect(c, out);
}

std::size_t depth_of(const TreeNode& n) {
  std::size_t d = 0;
  for (const auto& c : n.children) d = std::max(d, depth_of(c));
  return d + 1;
}

void render(const TreeNode& n, int indent, std::ostringstream& os) {
  os << std::string(2 * indent, ' ') << n.link_id << "  flows=" << n.flow_count
     << "  max_burst=" << to_exact_string(n.max_burst) << (n.is_leaf() ? "  [leaf]" : "") << '\n';
  for (const auto& c : n.children) render(c, indent + 1, os);
}

}  // namespace

std::vector<const TreeNode*> InfluenceTree::leaves() const {
  std::vector<const TreeNode*> out;
  collect(root, out);
  return out;
}

std::size_t InfluenceTree::depth() const { return depth_of(root); }

InfluenceTree build_influence_tree(const Topology& topology, const std::vector<std::string>& group,
                                   const std::string& link_id) {
  topology.link(link_id);
  std::vector<std::string> present;
  for (const auto& id : group)
    if (position(topology.flow(id), link_id) >= 0) present.push_back(id);
  if (present.empty()) throw ModelError("group has no flow on link " + link_id);
  // Routes are paths, so depth never exceeds the number of links.
  InfluenceTree tree{group, make_node(topology, link_id, present, topology.links().size() + 1)};
  std::sort(tree.group.begin(), tree.group.end());
  return tree;
}

Bits leaf_count_bound(const InfluenceTree& tree, const Bits& max_packet_bits) {
  Bits n = 0;
  for (const auto* leaf : tree.leaves()) n += leaf->flow_count;
  return n * max_packet_bits;
}

Bits refined_leaf_bound(const InfluenceTree& tree) {
  Bits total = 0;
  for (const auto* leaf : tree.leaves()) total += leaf->max_burst * leaf->flow_count;
  return total;
}

Bits max_leaf_burst(const InfluenceTree& tree) {
  Bits a = 0;
  for (const auto* leaf : tree.leaves()) a = std::max(a, leaf->max_burst);
  return a;
}

std::string render_tree_text(const InfluenceTree& tree) {
  std::ostringstream os;
  render(tree.root, 0, os);
  return os.str();
}

}  // namespace ivnet
