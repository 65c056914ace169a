#pragma once

#include <optional>
#include <span>
#include <vector>

#include "andor/mes.hpp"

namespace andor {

enum class NodeType { TypeI, TypeII, TypeIII, NonTypeIII };

inline const char* node_type_name(NodeType t) {
  switch (t) {
    case NodeType::TypeI: return "I";
    case NodeType::TypeII: return "II";
    case NodeType::TypeIII: return "III";
    default: return "NON-III";
  }
}

namespace detail {

// Least fixed point of "OR: some marked child / AND: all children marked",
// seeded with the given leaves. Cycles never self-justify: a node is marked
// only when a well-founded derivation from the seeds exists.
inline std::vector<char> propagate_up(const AndOrGraph& g,
                                      const std::vector<char>& seed) {
  std::vector<char> marked = seed;
  std::vector<int> missing(g.node_count(), 0);
  std::vector<NodeId> work;
  for (NodeId n = 0; n < g.node_count(); ++n) {
    missing[n] = static_cast<int>(g.children(n).size());
    if (marked[n]) work.push_back(n);
  }
  while (!work.empty()) {
    NodeId n = work.back();
    work.pop_back();
    for (const auto& a : g.parents(n)) {
      NodeId p = a.node;
      if (marked[p]) continue;
      bool fire = false;
      if (g.kind(p) == NodeKind::Or) {
        fire = true;
      } else if (g.kind(p) == NodeKind::And) {
        // Parallel arcs are rejected at validation, so each marked child
        // decrements exactly once.
        fire = (--missing[p] == 0);
      }
      if (fire) {
        marked[p] = 1;
        work.push_back(p);
      }
    }
  }
  return marked;
}

}  // namespace detail

/// Node classification by the composition rules, computed as two bottom-up
/// fixed points. Implicit graphs: type-I iff a solution derivation from
/// terminal leaves exists; type-II iff only derivations using nonterminal
/// leaves exist; type-III otherwise (every structure below the node runs
/// into a cycle). Explicit graphs: non-type-III iff a derivation from tips
/// exists.
inline std::vector<NodeType> classify_nodes_recursive(const AndOrGraph& g) {
  std::vector<NodeType> out(g.node_count());
  if (g.role() == GraphRole::Explicit) {
    // Every tip roots the one-node psg {n}, nonterminal leaves included.
    std::vector<char> seed(g.node_count(), 0);
    for (NodeId n = 0; n < g.node_count(); ++n)
      if (g.is_tip(n)) seed[n] = 1;
    auto viable = detail::propagate_up(g, seed);
    for (NodeId n = 0; n < g.node_count(); ++n)
      out[n] = viable[n] ? NodeType::NonTypeIII : NodeType::TypeIII;
    return out;
  }

  std::vector<char> term_seed(g.node_count(), 0), leaf_seed(g.node_count(), 0);
  for (NodeId n = 0; n < g.node_count(); ++n) {
    if (g.kind(n) == NodeKind::Terminal) term_seed[n] = 1;
    if (g.is_leaf(n)) leaf_seed[n] = 1;
  }
  auto solvable = detail::propagate_up(g, term_seed);   // has a type-I MES
  auto grounded = detail::propagate_up(g, leaf_seed);   // has a type-I/II MES
  for (NodeId n = 0; n < g.node_count(); ++n) {
    if (solvable[n]) out[n] = NodeType::TypeI;
    else if (grounded[n]) out[n] = NodeType::TypeII;
    else out[n] = NodeType::TypeIII;
  }
  return out;
}

/// Node classification by exhaustive enumeration of the MESs below n.
inline NodeType classify_node_enumerative(const AndOrGraph& g, NodeId n,
                                          std::uint64_t limit = kDefaultMesLimit) {
  if (g.role() == GraphRole::Explicit) {
    NodeType best = NodeType::TypeIII;
    for_each_mes(
        g, n,
        [&](const Mes& m) {
          if (classify_mes(g, m) == MesType::NonTypeIII) {
            best = NodeType::NonTypeIII;
            return false;
          }
          return true;
        },
        limit);
    return best;
  }
  NodeType best = NodeType::TypeIII;
  for_each_mes(
      g, n,
      [&](const Mes& m) {
        switch (classify_mes(g, m)) {
          case MesType::TypeI: best = NodeType::TypeI; return false;
          case MesType::TypeII: best = NodeType::TypeII; break;
          default: break;
        }
        return true;
      },
      limit);
  return best;
}

struct NodeClassification {
  NodeType type;
  /// False when enumeration passed its limit and only the recursive route
  /// backs the answer.
  bool dual_checked = true;
};

/// Classifies n by both independent routes and insists they agree. Falls
/// back to the recursive route alone (flagged) when enumeration passes the
/// limit.
inline NodeClassification classify_node(const AndOrGraph& g, NodeId n,
                                        std::uint64_t limit = kDefaultMesLimit) {
  NodeType recursive = classify_nodes_recursive(g)[n];
  try {
    NodeType enumerated = classify_node_enumerative(g, n, limit);
    if (enumerated != recursive)
      throw InternalError("classification routes disagree on node " +
                          g.label(n) + ": recursive " +
                          node_type_name(recursive) + ", enumerative " +
                          node_type_name(enumerated));
    return {recursive, true};
  } catch (const LimitError&) {
    return {recursive, false};
  }
}

/// Minimal cost over the type-I and type-II MESs below n; INF when only
/// type-II structures exist, undefined when every MES below n is type-III.
/// Exhaustive: requires a finite graph and respects the enumeration limit.
inline ExtendedCost h_star(const AndOrGraph& g, NodeId n,
                           std::uint64_t limit = kDefaultMesLimit) {
  if (g.role() != GraphRole::Implicit)
    throw InvalidArgument("h* is defined on implicit graphs");
  std::optional<CostUnits> best;
  bool saw_grounded = false;
  for_each_mes(
      g, n,
      [&](const Mes& m) {
        MesType t = classify_mes(g, m);
        if (t == MesType::TypeIII) return true;
        saw_grounded = true;
        ExtendedCost b = beta(g, m, n);
        if (b.is_finite() && (!best || b.units() < *best)) best = b.units();
        return true;
      },
      limit);
  if (best) return ExtendedCost::finite(*best);
  if (saw_grounded) return ExtendedCost::infinite();
  return ExtendedCost::undefined();
}

/// Minimal cost over the potential solution graphs below n in an explicit
/// snapshot; undefined when no psg exists.
inline ExtendedCost h_prime(const AndOrGraph& g, NodeId n,
                            std::uint64_t limit = kDefaultMesLimit) {
  if (g.role() != GraphRole::Explicit)
    throw InvalidArgument("h' is defined on explicit graph snapshots");
  std::optional<ExtendedCost> best;
  for_each_mes(
      g, n,
      [&](const Mes& m) {
        if (classify_mes(g, m) != MesType::NonTypeIII) return true;
        ExtendedCost b = beta(g, m, n);
        best = best ? min_cost(*best, b) : b;
        return true;
      },
      limit);
  return best ? *best : ExtendedCost::undefined();
}

// ---------------------------------------------------------------------------
// Composition: builds a non-type-III MES below n out of non-type-III MESs
// below its children. The first child's MES is taken whole; each further MES
// is merged by a depth-first walk in child declaration order that stops at
// nodes already present, which is what keeps the union acyclic.

inline Mes compose_qk(const AndOrGraph& g, NodeId n,
                      std::span<const Mes* const> child_mes) {
  auto all_kids = g.children(n);
  if (all_kids.empty())
    throw InvalidArgument("compose target " + g.label(n) + " has no children");

  // AND nodes take one MES per child, in child order. OR nodes take a single
  // MES rooted at any one child.
  std::vector<AdjArc> kids;
  if (g.kind(n) == NodeKind::And) {
    if (child_mes.size() != all_kids.size())
      throw InvalidArgument("compose needs one MES per child of " +
                            g.label(n));
    kids.assign(all_kids.begin(), all_kids.end());
  } else {
    if (child_mes.size() != 1)
      throw InvalidArgument("compose under an OR node takes a single MES");
    for (const auto& a : all_kids)
      if (a.node == child_mes[0]->root) kids.push_back(a);
    if (kids.empty())
      throw InvalidArgument("MES root is not a child of " + g.label(n));
  }
  for (std::size_t j = 0; j < kids.size(); ++j) {
    const Mes& m = *child_mes[j];
    if (m.root != kids[j].node)
      throw InvalidArgument("MES " + std::to_string(j) + " is not rooted at " +
                            g.label(kids[j].node));
    if (!m.terminated.empty())
      throw InvalidArgument("child MES below " + g.label(m.root) +
                            " is type-III");
    if (m.contains(n))
      throw InvalidArgument("node " + g.label(n) +
                            " occurs inside a child MES");
  }

  Mes q;
  std::vector<char> in_q(g.node_count(), 0);
  std::vector<char> has_choice(g.node_count(), 0);

  auto take_node = [&](NodeId x) {
    in_q[x] = 1;
    q.nodes.push_back(x);
  };
  auto take_choice = [&](NodeId x, NodeId y) {
    if (!has_choice[x]) {
      has_choice[x] = 1;
      q.or_choices.push_back({x, y});
    }
  };

  // Q1: the first MES in its entirety.
  {
    const Mes& m = *child_mes[0];
    for (NodeId x : m.nodes) take_node(x);
    q.arcs = m.arcs;
    for (auto [p, c] : m.or_choices) take_choice(p, c);
  }

  // Add(x): depth-first merge from the j-th MES, stopping at known nodes.
  for (std::size_t j = 1; j < child_mes.size(); ++j) {
    const Mes& m = *child_mes[j];
    MesView view(g, m);
    std::function<void(NodeId)> add = [&](NodeId x) {
      if (in_q[x]) return;
      take_node(x);
      for (NodeId y : view.children(x)) {
        q.arcs.push_back({x, y});
        if (g.kind(x) == NodeKind::Or) take_choice(x, y);
        add(y);
      }
    };
    add(m.root);
  }

  // Glue n on top through the arcs to its children.
  Mes out;
  out.root = n;
  out.nodes.push_back(n);
  out.nodes.insert(out.nodes.end(), q.nodes.begin(), q.nodes.end());
  for (const auto& a : kids) out.arcs.push_back({n, a.node});
  out.arcs.insert(out.arcs.end(), q.arcs.begin(), q.arcs.end());
  if (g.kind(n) == NodeKind::Or) out.or_choices.push_back({n, kids[0].node});
  out.or_choices.insert(out.or_choices.end(), q.or_choices.begin(),
                        q.or_choices.end());
  return out;
}

inline Mes compose_qk(const AndOrGraph& g, NodeId n,
                      const std::vector<Mes>& child_mes) {
  std::vector<const Mes*> ptrs;
  ptrs.reserve(child_mes.size());
  for (const Mes& m : child_mes) ptrs.push_back(&m);
  return compose_qk(g, n, std::span<const Mes* const>(ptrs));
}

inline Mes compose_qk(const AndOrGraph& g, NodeId n,
                      std::initializer_list<const Mes*> child_mes) {
  return compose_qk(
      g, n, std::span<const Mes* const>(child_mes.begin(), child_mes.size()));
}

}  // namespace andor
