#pragma once

#include <unordered_map>
#include <vector>

#include "andor/graph.hpp"
#include "andor/source.hpp"

namespace andor {

/// Explicit graph grown by top-down searches. Node indices are dense in
/// installation order; tips are the unexpanded nodes. Each node carries the
/// running cost h and a front pointer naming a tip below it.
class ExplicitGraph {
public:
  struct Node {
    SourceId source_id;
    NodeKind kind;
    ExtendedCost h;
    NodeId front;   // a tip at or below this node; tips point at themselves
    bool expanded = false;
    std::vector<AdjArc> children;
    std::vector<AdjArc> parents;
  };

  NodeId install(const ImplicitSource& src, SourceId id) {
    if (auto it = index_.find(id); it != index_.end()) return it->second;
    NodeId n = static_cast<NodeId>(nodes_.size());
    NodeKind k = src.kind(id);
    ExtendedCost h;
    switch (k) {
      case NodeKind::Terminal: h = ExtendedCost::finite(0); break;
      case NodeKind::Nonterminal: h = ExtendedCost::infinite(); break;
      default: h = src.heuristic(id); break;
    }
    nodes_.push_back({id, k, h, n, false, {}, {}});
    index_.emplace(id, n);
    return n;
  }

  void add_arc(NodeId parent, NodeId child, CostUnits cost) {
    for (const auto& a : nodes_[parent].children)
      if (a.node == child)
        throw InvalidArgument("source produced a parallel arc");
    nodes_[parent].children.push_back({child, cost});
    nodes_[child].parents.push_back({parent, cost});
  }

  Node& at(NodeId n) { return nodes_[n]; }
  const Node& at(NodeId n) const { return nodes_[n]; }
  NodeId size() const { return static_cast<NodeId>(nodes_.size()); }
  bool is_tip(NodeId n) const { return nodes_[n].children.empty(); }
  bool is_terminal(NodeId n) const {
    return nodes_[n].kind == NodeKind::Terminal;
  }

  CostUnits arc_to(NodeId parent, NodeId child) const {
    for (const auto& a : nodes_[parent].children)
      if (a.node == child) return a.cost;
    throw InvalidArgument("no such arc in the explicit graph");
  }

  /// Freezes the current state into an explicit-role AndOrGraph snapshot
  /// whose node ids equal this graph's indices. Unexpanded internal tips
  /// carry their current h as the heuristic estimate.
  AndOrGraph snapshot(const ImplicitSource& src) const {
    GraphSpec spec;
    for (NodeId n = 0; n < size(); ++n)
      spec.node(src.label(nodes_[n].source_id), nodes_[n].kind);
    for (NodeId n = 0; n < size(); ++n)
      for (const auto& a : nodes_[n].children)
        spec.arc(spec.nodes[n].label, spec.nodes[a.node].label, a.cost);
    spec.start_at(spec.nodes[0].label);
    for (NodeId n = 0; n < size(); ++n) {
      if (nodes_[n].kind == NodeKind::Terminal)
        spec.heuristic(spec.nodes[n].label, ExtendedCost::finite(0));
      else if (nodes_[n].kind == NodeKind::Nonterminal)
        spec.heuristic(spec.nodes[n].label, ExtendedCost::infinite());
      else if (is_tip(n))
        spec.heuristic(spec.nodes[n].label, nodes_[n].h);
      else
        spec.heuristic(spec.nodes[n].label, ExtendedCost::finite(0));
    }
    return compile(spec, RoleMode::Explicit);
  }

  // Front-pointer selection shared by the cost-revision procedures, so that
  // explicit-graph searches expand identical tips under identical costs.

  /// OR rule: among the candidate children pick the minimal arc + h; ties
  /// prefer a child whose front is a terminal leaf, then the lowest child
  /// position. Returns the winning child.
  NodeId pick_or_child(std::span<const AdjArc> candidates) const {
    NodeId best = kNoNode;
    ExtendedCost best_cost = ExtendedCost::undefined();
    bool best_term = false;
    for (const auto& a : candidates) {
      ExtendedCost c = ExtendedCost::finite(a.cost) + nodes_[a.node].h;
      bool term = is_terminal(nodes_[a.node].front);
      bool better = false;
      if (best == kNoNode || total_less(c, best_cost)) {
        better = true;
      } else if (c == best_cost && !best_term && term) {
        better = true;
      }
      if (better) {
        best = a.node;
        best_cost = c;
        best_term = term;
      }
    }
    return best;
  }

  /// AND rule: the leftmost child whose front is not a terminal leaf, else
  /// the first child.
  NodeId pick_and_child(std::span<const AdjArc> children) const {
    for (const auto& a : children)
      if (!is_terminal(nodes_[a.node].front)) return a.node;
    return children.front().node;
  }

private:
  std::vector<Node> nodes_;
  std::unordered_map<SourceId, NodeId> index_;
};

}  // namespace andor
