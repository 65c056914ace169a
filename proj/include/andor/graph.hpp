#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "andor/cost.hpp"
#include "andor/errors.hpp"

namespace andor {

// Dense node index inside one graph. Declaration order defines the total
// order used for tie-breaking and "leftmost child".
using NodeId = std::int32_t;
inline constexpr NodeId kNoNode = -1;

enum class NodeKind : std::uint8_t { Or, And, Terminal, Nonterminal };

inline bool kind_is_leaf(NodeKind k) {
  return k == NodeKind::Terminal || k == NodeKind::Nonterminal;
}

inline const char* kind_name(NodeKind k) {
  switch (k) {
    case NodeKind::Or: return "OR";
    case NodeKind::And: return "AND";
    case NodeKind::Terminal: return "TERMINAL";
    default: return "NONTERMINAL";
  }
}

// Implicit graphs are complete problem descriptions: every internal node has
// children. Explicit graphs are partially grown snapshots whose childless
// internal nodes are unexpanded tips and carry a heuristic estimate.
enum class GraphRole : std::uint8_t { Implicit, Explicit };

struct AdjArc {
  NodeId node;
  CostUnits cost;

  friend bool operator==(const AdjArc&, const AdjArc&) = default;
};

// ---------------------------------------------------------------------------
// Raw, permissive description used by loaders and builders. Everything is
// checked by validate(); compile() freezes it into an immutable AndOrGraph.

struct SpecNode {
  std::string label;
  NodeKind kind;
};

struct SpecArc {
  std::string parent;
  std::string child;
  CostUnits cost;
};

struct SpecHeur {
  std::string node;
  ExtendedCost value;
};

struct GraphSpec {
  std::vector<SpecNode> nodes;
  std::vector<SpecArc> arcs;
  std::string start;
  std::vector<SpecHeur> heur;

  GraphSpec& node(std::string label, NodeKind kind) {
    nodes.push_back({std::move(label), kind});
    return *this;
  }
  GraphSpec& arc(std::string parent, std::string child, CostUnits cost = 1) {
    arcs.push_back({std::move(parent), std::move(child), cost});
    return *this;
  }
  GraphSpec& heuristic(std::string node, ExtendedCost value) {
    heur.push_back({std::move(node), value});
    return *this;
  }
  GraphSpec& start_at(std::string label) {
    start = std::move(label);
    return *this;
  }
};

enum class RoleMode { Implicit, Explicit, Auto };

struct Violation {
  enum class Kind {
    DuplicateNode,
    MissingStart,
    UnknownStart,
    UnknownArcEndpoint,
    ArcCostBelowDelta,
    ParallelArc,
    LeafWithChildren,
    ChildlessInternal,
    TipWithoutHeuristic,
    UnknownHeurNode,
    DuplicateHeur,
    HeurLeafContradiction,
  };

  Kind kind;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  GraphRole resolved_role = GraphRole::Implicit;

  bool ok() const { return violations.empty(); }

  std::string to_string() const {
    std::string out;
    for (const auto& v : violations) {
      out += v.message;
      out += '\n';
    }
    return out;
  }
};

class ValidationError : public Error {
public:
  explicit ValidationError(ValidationReport report)
      : Error("invalid graph:\n" + report.to_string()),
        report_(std::move(report)) {}
  const ValidationReport& report() const { return report_; }

private:
  ValidationReport report_;
};

/// Checks a raw description against the structural rules:
/// unique labels, declared arc endpoints, no parallel arcs, arc costs at or
/// above delta, leaves without children, a declared start node, heuristic
/// conventions on leaves (0 on terminal, INF on nonterminal). Under
/// RoleMode::Implicit childless internal nodes are rejected; under
/// RoleMode::Explicit they are tips and must carry a heuristic value.
/// RoleMode::Auto treats the spec as explicit iff a childless internal node
/// is present.
inline ValidationReport validate(const GraphSpec& spec,
                                 RoleMode mode = RoleMode::Implicit,
                                 CostUnits delta = kDefaultMinArcCost) {
  ValidationReport report;
  auto add = [&](Violation::Kind k, std::string msg) {
    report.violations.push_back({k, std::move(msg)});
  };

  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < spec.nodes.size(); ++i) {
    const auto& n = spec.nodes[i];
    if (!index.emplace(n.label, i).second)
      add(Violation::Kind::DuplicateNode, "duplicate node id '" + n.label + "'");
  }

  if (spec.start.empty())
    add(Violation::Kind::MissingStart, "missing start node");
  else if (!index.count(spec.start))
    add(Violation::Kind::UnknownStart, "start node '" + spec.start + "' not declared");

  std::vector<int> out_degree(spec.nodes.size(), 0);
  std::unordered_map<std::string, int> seen_arc;
  for (const auto& a : spec.arcs) {
    auto pi = index.find(a.parent);
    auto ci = index.find(a.child);
    if (pi == index.end())
      add(Violation::Kind::UnknownArcEndpoint,
          "arc references undeclared node '" + a.parent + "'");
    if (ci == index.end())
      add(Violation::Kind::UnknownArcEndpoint,
          "arc references undeclared node '" + a.child + "'");
    if (a.cost < delta)
      add(Violation::Kind::ArcCostBelowDelta,
          "arc " + a.parent + " -> " + a.child + " cost below delta (" +
              std::to_string(a.cost) + " < " + std::to_string(delta) + ")");
    if (pi != index.end() && ci != index.end()) {
      out_degree[pi->second]++;
      if (kind_is_leaf(spec.nodes[pi->second].kind))
        add(Violation::Kind::LeafWithChildren,
            "leaf node '" + a.parent + "' has outgoing arc");
      if (++seen_arc[a.parent + '\x1f' + a.child] == 2)
        add(Violation::Kind::ParallelArc,
            "parallel arc " + a.parent + " -> " + a.child);
    }
  }

  std::unordered_map<std::string, ExtendedCost> heur;
  for (const auto& h : spec.heur) {
    auto it = index.find(h.node);
    if (it == index.end()) {
      add(Violation::Kind::UnknownHeurNode,
          "heuristic for undeclared node '" + h.node + "'");
      continue;
    }
    if (!heur.emplace(h.node, h.value).second)
      add(Violation::Kind::DuplicateHeur,
          "duplicate heuristic for node '" + h.node + "'");
    NodeKind k = spec.nodes[it->second].kind;
    if (k == NodeKind::Terminal && h.value != ExtendedCost::finite(0))
      add(Violation::Kind::HeurLeafContradiction,
          "terminal leaf '" + h.node + "' must have heuristic 0");
    if (k == NodeKind::Nonterminal && h.value != ExtendedCost::infinite())
      add(Violation::Kind::HeurLeafContradiction,
          "nonterminal leaf '" + h.node + "' must have heuristic INF");
  }

  bool has_childless_internal = false;
  for (std::size_t i = 0; i < spec.nodes.size(); ++i) {
    if (!kind_is_leaf(spec.nodes[i].kind) && out_degree[i] == 0)
      has_childless_internal = true;
  }
  GraphRole role = GraphRole::Implicit;
  if (mode == RoleMode::Explicit ||
      (mode == RoleMode::Auto && has_childless_internal))
    role = GraphRole::Explicit;
  report.resolved_role = role;

  for (std::size_t i = 0; i < spec.nodes.size(); ++i) {
    const auto& n = spec.nodes[i];
    if (kind_is_leaf(n.kind) || out_degree[i] > 0) continue;
    if (role == GraphRole::Implicit)
      add(Violation::Kind::ChildlessInternal,
          "internal node '" + n.label + "' has no children");
    else if (!heur.count(n.label))
      add(Violation::Kind::TipWithoutHeuristic,
          "unexpanded tip '" + n.label + "' has no heuristic value");
  }

  return report;
}

// ---------------------------------------------------------------------------

/// Immutable AND/OR graph. Safe to share across concurrent searches.
class AndOrGraph {
public:
  NodeId node_count() const { return static_cast<NodeId>(kinds_.size()); }
  NodeId start() const { return start_; }
  GraphRole role() const { return role_; }

  NodeKind kind(NodeId n) const { return kinds_.at(check(n)); }
  const std::string& label(NodeId n) const { return labels_.at(check(n)); }
  std::optional<NodeId> find(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  /// Ordered child list; empty iff the node is a leaf or an unexpanded tip.
  std::span<const AdjArc> children(NodeId n) const {
    return {children_.at(check(n)).data(), children_[n].size()};
  }
  /// All parents p with an arc (p, n), in arc declaration order.
  std::span<const AdjArc> parents(NodeId n) const {
    return {parents_.at(check(n)).data(), parents_[n].size()};
  }

  bool is_leaf(NodeId n) const { return kind_is_leaf(kind(n)); }
  bool is_internal(NodeId n) const { return !is_leaf(n); }
  /// Childless node: a leaf, or an unexpanded tip of an explicit graph.
  bool is_tip(NodeId n) const { return children(n).empty(); }

  CostUnits arc_cost(NodeId parent, NodeId child) const {
    for (const auto& a : children(parent))
      if (a.node == child) return a.cost;
    throw InvalidArgument("no arc " + label(parent) + " -> " + label(child));
  }

  std::size_t arc_count() const {
    std::size_t n = 0;
    for (const auto& c : children_) n += c.size();
    return n;
  }

  bool has_heuristic() const { return !heur_.empty(); }

  /// Heuristic estimate. Leaves always have one (0 terminal, INF
  /// nonterminal); internal nodes require a heuristic section.
  ExtendedCost heuristic(NodeId n) const {
    switch (kind(n)) {
      case NodeKind::Terminal: return ExtendedCost::finite(0);
      case NodeKind::Nonterminal: return ExtendedCost::infinite();
      default: break;
    }
    if (heur_.empty())
      throw InvalidArgument("graph has no heuristic values (node " +
                            label(n) + ")");
    return heur_[n];
  }

  /// Copy of this graph with the heuristic section replaced.
  AndOrGraph with_heuristic(std::vector<ExtendedCost> heur) const {
    if (heur.size() != kinds_.size())
      throw InvalidArgument("heuristic vector size mismatch");
    AndOrGraph g = *this;
    g.heur_ = std::move(heur);
    return g;
  }

  friend bool operator==(const AndOrGraph& a, const AndOrGraph& b) {
    return a.role_ == b.role_ && a.start_ == b.start_ &&
           a.labels_ == b.labels_ && a.kinds_ == b.kinds_ &&
           a.children_ == b.children_ && a.heur_ == b.heur_;
  }

  friend AndOrGraph compile(const GraphSpec& spec, RoleMode mode,
                            CostUnits delta);

private:
  NodeId check(NodeId n) const {
    if (n < 0 || n >= node_count())
      throw InvalidArgument("unknown node id " + std::to_string(n));
    return n;
  }

  GraphRole role_ = GraphRole::Implicit;
  NodeId start_ = kNoNode;
  std::vector<std::string> labels_;
  std::unordered_map<std::string, NodeId> index_;
  std::vector<NodeKind> kinds_;
  std::vector<std::vector<AdjArc>> children_;
  std::vector<std::vector<AdjArc>> parents_;
  std::vector<ExtendedCost> heur_;  // empty when no heuristic section
};

/// Validates and freezes a raw spec. Throws ValidationError when the spec
/// breaks a structural rule.
inline AndOrGraph compile(const GraphSpec& spec, RoleMode mode = RoleMode::Auto,
                          CostUnits delta = kDefaultMinArcCost) {
  ValidationReport report = validate(spec, mode, delta);
  if (!report.ok()) throw ValidationError(std::move(report));

  AndOrGraph g;
  g.role_ = report.resolved_role;
  g.labels_.reserve(spec.nodes.size());
  for (const auto& n : spec.nodes) {
    g.index_.emplace(n.label, static_cast<NodeId>(g.labels_.size()));
    g.labels_.push_back(n.label);
    g.kinds_.push_back(n.kind);
  }
  g.children_.resize(g.labels_.size());
  g.parents_.resize(g.labels_.size());
  for (const auto& a : spec.arcs) {
    NodeId p = g.index_.at(a.parent);
    NodeId c = g.index_.at(a.child);
    g.children_[p].push_back({c, a.cost});
    g.parents_[c].push_back({p, a.cost});
  }
  g.start_ = g.index_.at(spec.start);
  if (!spec.heur.empty()) {
    g.heur_.assign(g.labels_.size(), ExtendedCost::finite(0));
    std::vector<char> given(g.labels_.size(), 0);
    for (const auto& h : spec.heur) {
      NodeId n = g.index_.at(h.node);
      g.heur_[n] = h.value;
      given[n] = 1;
    }
    for (NodeId n = 0; n < g.node_count(); ++n) {
      if (given[n]) continue;
      // Leaves default to their forced values; unlisted internal nodes
      // default to 0 (a trivially admissible estimate).
      if (g.kinds_[n] == NodeKind::Nonterminal)
        g.heur_[n] = ExtendedCost::infinite();
      else
        g.heur_[n] = ExtendedCost::finite(0);
    }
  }
  return g;
}

/// Rebuilds the raw spec of a compiled graph (canonical declaration order).
inline GraphSpec to_spec(const AndOrGraph& g) {
  GraphSpec spec;
  for (NodeId n = 0; n < g.node_count(); ++n)
    spec.node(g.label(n), g.kind(n));
  for (NodeId n = 0; n < g.node_count(); ++n)
    for (const auto& a : g.children(n)) spec.arc(g.label(n), g.label(a.node), a.cost);
  spec.start_at(g.label(g.start()));
  if (g.has_heuristic())
    for (NodeId n = 0; n < g.node_count(); ++n)
      spec.heuristic(g.label(n), g.heuristic(n));
  return spec;
}

}  // namespace andor
