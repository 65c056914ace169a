#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "andor/graph.hpp"

namespace andor {

// Node handle inside an implicitly defined graph. Sources may be infinite;
// handles only need to be stable and hashable.
using SourceId = std::int64_t;

struct SourceArc {
  SourceId child;
  CostUnits cost;
};

/// Successor-function view of an implicit AND/OR graph. expand() must be
/// deterministic and repeatable, with finite branching; the heuristic is 0
/// on terminal leaves and INF on nonterminal leaves by convention.
class ImplicitSource {
public:
  virtual ~ImplicitSource() = default;

  virtual SourceId start() const = 0;
  virtual NodeKind kind(SourceId n) const = 0;
  virtual ExtendedCost heuristic(SourceId n) const = 0;
  virtual std::vector<SourceArc> expand(SourceId n) const = 0;

  virtual std::string label(SourceId n) const { return std::to_string(n); }

  /// Node count when the source is finite; nullopt for infinite graphs.
  virtual std::optional<std::size_t> finite_size() const { return std::nullopt; }
};

/// Adapter exposing a compiled implicit graph as a source.
class GraphSource final : public ImplicitSource {
public:
  explicit GraphSource(const AndOrGraph& g) : g_(g) {
    if (g.role() != GraphRole::Implicit)
      throw InvalidArgument("GraphSource needs an implicit graph");
  }

  SourceId start() const override { return g_.start(); }
  NodeKind kind(SourceId n) const override {
    return g_.kind(static_cast<NodeId>(n));
  }
  ExtendedCost heuristic(SourceId n) const override {
    return g_.heuristic(static_cast<NodeId>(n));
  }
  std::vector<SourceArc> expand(SourceId n) const override {
    std::vector<SourceArc> out;
    for (const auto& a : g_.children(static_cast<NodeId>(n)))
      out.push_back({a.node, a.cost});
    return out;
  }
  std::string label(SourceId n) const override {
    return g_.label(static_cast<NodeId>(n));
  }
  std::optional<std::size_t> finite_size() const override {
    return static_cast<std::size_t>(g_.node_count());
  }

  const AndOrGraph& graph() const { return g_; }

private:
  const AndOrGraph& g_;
};

/// Infinite OR chain used for exercising searches on implicit sources:
/// node i has the single child i+1 at unit cost. When solvable, node `depth`
/// instead leads to a terminal leaf, so the minimal solution costs depth+1.
/// The zero heuristic is trivially admissible.
class ChainSource final : public ImplicitSource {
public:
  explicit ChainSource(std::int64_t depth, bool solvable = true)
      : depth_(depth), solvable_(solvable) {
    if (depth < 0) throw InvalidArgument("chain depth must be nonnegative");
  }

  SourceId start() const override { return 0; }
  NodeKind kind(SourceId n) const override {
    return n == kTerminal ? NodeKind::Terminal : NodeKind::Or;
  }
  ExtendedCost heuristic(SourceId) const override {
    return ExtendedCost::finite(0);
  }
  std::vector<SourceArc> expand(SourceId n) const override {
    if (n == kTerminal) return {};
    if (solvable_ && n == depth_) return {{kTerminal, 1}};
    return {{n + 1, 1}};
  }
  std::string label(SourceId n) const override {
    return n == kTerminal ? "t" : "c" + std::to_string(n);
  }

private:
  static constexpr SourceId kTerminal = -2;

  std::int64_t depth_;
  bool solvable_;
};

}  // namespace andor
