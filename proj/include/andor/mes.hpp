#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "andor/graph.hpp"

namespace andor {

/// One maximal extendable subgraph: the acyclic structure grown top-down from
/// a root by following children until a choice would close a cycle.
///
/// Identity is (root, choice record): the record keeps the child each OR node
/// selected even when the selection closed a cycle and the construction
/// ceased there, so two structurally equal subgraphs that attempted different
/// children are distinct objects.
struct Mes {
  NodeId root = kNoNode;
  std::vector<NodeId> nodes;                             // construction order
  std::vector<std::pair<NodeId, NodeId>> arcs;           // construction order
  std::vector<std::pair<NodeId, NodeId>> or_choices;     // OR node -> selected
  std::vector<NodeId> terminated;  // nodes where construction ceased

  bool contains(NodeId n) const {
    return std::find(nodes.begin(), nodes.end(), n) != nodes.end();
  }
  bool is_terminated(NodeId n) const {
    return std::find(terminated.begin(), terminated.end(), n) !=
           terminated.end();
  }

  friend bool operator==(const Mes& a, const Mes& b) {
    return a.root == b.root && a.or_choices == b.or_choices;
  }
};

enum class MesType { TypeI, TypeII, TypeIII, NonTypeIII };

inline const char* mes_type_name(MesType t) {
  switch (t) {
    case MesType::TypeI: return "I";
    case MesType::TypeII: return "II";
    case MesType::TypeIII: return "III";
    default: return "NON-III";
  }
}

/// Child adjacency of one Mes, for cost recursion and reachability.
class MesView {
public:
  MesView(const AndOrGraph& g, const Mes& m) : graph_(g), mes_(m) {
    for (NodeId n : m.nodes) children_[n];  // materialize every member
    for (auto [p, c] : m.arcs) children_[p].push_back(c);
  }

  const AndOrGraph& graph() const { return graph_; }
  const Mes& mes() const { return mes_; }

  bool contains(NodeId n) const { return children_.count(n) != 0; }

  const std::vector<NodeId>& children(NodeId n) const {
    auto it = children_.find(n);
    if (it == children_.end())
      throw InvalidArgument("node " + graph_.label(n) + " not in this MES");
    return it->second;
  }

  bool reaches(NodeId from, NodeId target) const {
    if (from == target) return true;
    std::vector<NodeId> stack{from};
    std::unordered_map<NodeId, char> seen{{from, 1}};
    while (!stack.empty()) {
      NodeId x = stack.back();
      stack.pop_back();
      for (NodeId c : children(x)) {
        if (c == target) return true;
        if (!seen.emplace(c, 1).second) continue;
        stack.push_back(c);
      }
    }
    return false;
  }

private:
  const AndOrGraph& graph_;
  const Mes& mes_;
  std::unordered_map<NodeId, std::vector<NodeId>> children_;
};

/// MES classification. For implicit hosts the childless members decide:
/// all terminal -> type-I; all leaves with a nonterminal present -> type-II;
/// any cycle-terminated internal node -> type-III. For explicit hosts the
/// split is two-way: non-type-III (a potential solution graph) iff every
/// childless member is a tip of the host.
inline MesType classify_mes(const AndOrGraph& g, const Mes& m) {
  if (g.role() == GraphRole::Explicit)
    return m.terminated.empty() ? MesType::NonTypeIII : MesType::TypeIII;
  if (!m.terminated.empty()) return MesType::TypeIII;
  for (NodeId n : m.nodes)
    if (g.kind(n) == NodeKind::Nonterminal) return MesType::TypeII;
  return MesType::TypeI;
}

/// Cost of node u inside an MES: 0 on terminal leaves, INF on nonterminal
/// leaves, the heuristic estimate on unexpanded tips of explicit hosts,
/// arc + child cost on OR nodes, the sum over all children on AND nodes.
/// Undefined on cycle-terminated nodes and, by absorption, on every node
/// above one.
inline ExtendedCost beta(const MesView& view, NodeId u) {
  const AndOrGraph& g = view.graph();
  std::unordered_map<NodeId, ExtendedCost> memo;

  std::function<ExtendedCost(NodeId)> cost = [&](NodeId x) -> ExtendedCost {
    if (auto it = memo.find(x); it != memo.end()) return it->second;
    ExtendedCost result;
    const auto& kids = view.children(x);
    if (kids.empty()) {
      switch (g.kind(x)) {
        case NodeKind::Terminal: result = ExtendedCost::finite(0); break;
        case NodeKind::Nonterminal: result = ExtendedCost::infinite(); break;
        default:
          // Childless internal member: an unexpanded tip of an explicit
          // host, or a cycle-terminated node.
          result = (g.role() == GraphRole::Explicit && g.is_tip(x))
                       ? g.heuristic(x)
                       : ExtendedCost::undefined();
      }
    } else if (g.kind(x) == NodeKind::Or) {
      NodeId w = kids.front();
      result = ExtendedCost::finite(g.arc_cost(x, w)) + cost(w);
    } else {
      result = ExtendedCost::finite(0);
      for (NodeId w : kids)
        result += ExtendedCost::finite(g.arc_cost(x, w)) + cost(w);
    }
    memo.emplace(x, result);
    return result;
  };

  if (!view.contains(u))
    throw InvalidArgument("node " + g.label(u) + " not in this MES");
  return cost(u);
}

inline ExtendedCost beta(const AndOrGraph& g, const Mes& m, NodeId u) {
  return beta(MesView(g, m), u);
}

// ---------------------------------------------------------------------------
// Enumeration. Construction is depth-first in child declaration order; at
// each OR node reached, every child is tried in turn, which yields the MESs
// in lexicographic choice-record order. A selection that is the node itself
// or one of its predecessors in the partial structure terminates the
// construction below that node.

namespace detail {

class MesEnumerator {
public:
  using Visitor = std::function<bool(const Mes&)>;  // false stops enumeration

  MesEnumerator(const AndOrGraph& g, NodeId root, std::uint64_t limit,
                Visitor visit)
      : g_(g), root_(root), limit_(limit), visit_(std::move(visit)) {
    in_mes_.assign(g.node_count(), 0);
    mchildren_.resize(g.node_count());
  }

  void run() {
    add_node(root_);
    if (g_.is_internal(root_) && !g_.children(root_).empty())
      pending_.push_back(root_);
    step();
  }

private:
  struct Mark {
    std::size_t nodes, arcs, choices, terminated, pending;
  };

  Mark save() const {
    return {m_.nodes.size(), m_.arcs.size(), m_.or_choices.size(),
            m_.terminated.size(), pending_.size()};
  }

  void restore(const Mark& mk) {
    while (m_.arcs.size() > mk.arcs) {
      auto [p, c] = m_.arcs.back();
      m_.arcs.pop_back();
      mchildren_[p].pop_back();
    }
    while (m_.nodes.size() > mk.nodes) {
      in_mes_[m_.nodes.back()] = 0;
      m_.nodes.pop_back();
    }
    m_.or_choices.resize(mk.choices);
    m_.terminated.resize(mk.terminated);
    pending_.resize(mk.pending);
  }

  void add_node(NodeId n) {
    in_mes_[n] = 1;
    m_.nodes.push_back(n);
  }

  void add_arc(NodeId p, NodeId c) {
    m_.arcs.push_back({p, c});
    mchildren_[p].push_back(c);
  }

  // True iff target is reachable from `from` inside the partial structure.
  bool reaches(NodeId from, NodeId target) {
    if (from == target) return true;
    scratch_.assign(g_.node_count(), 0);
    std::vector<NodeId> stack{from};
    scratch_[from] = 1;
    while (!stack.empty()) {
      NodeId x = stack.back();
      stack.pop_back();
      for (NodeId c : mchildren_[x]) {
        if (c == target) return true;
        if (scratch_[c]) continue;
        scratch_[c] = 1;
        stack.push_back(c);
      }
    }
    return false;
  }

  void emit() {
    if (stopped_) return;
    if (emitted_ == limit_)
      throw LimitError("MES enumeration passed limit of " +
                       std::to_string(limit_));
    ++emitted_;
    Mes out = m_;
    out.root = root_;
    if (!visit_(out)) stopped_ = true;
  }

  void step() {
    if (stopped_) return;
    if (pending_.empty()) {
      emit();
      return;
    }
    NodeId x = pending_.back();
    pending_.pop_back();

    if (g_.kind(x) == NodeKind::Or) {
      for (const auto& a : g_.children(x)) {
        if (stopped_) break;
        NodeId y = a.node;
        Mark mk = save();
        m_.or_choices.push_back({x, y});
        if (y == x || (in_mes_[y] && reaches(y, x))) {
          m_.terminated.push_back(x);
          step();
        } else if (in_mes_[y]) {
          add_arc(x, y);
          step();
        } else {
          add_node(y);
          add_arc(x, y);
          if (!g_.children(y).empty()) pending_.push_back(y);
          step();
        }
        restore(mk);
      }
    } else {
      Mark mk = save();
      bool cycle = false;
      for (const auto& a : g_.children(x)) {
        if (a.node == x || (in_mes_[a.node] && reaches(a.node, x))) {
          cycle = true;
          break;
        }
      }
      if (cycle) {
        m_.terminated.push_back(x);
      } else {
        std::vector<NodeId> fresh;
        for (const auto& a : g_.children(x)) {
          NodeId y = a.node;
          if (!in_mes_[y]) {
            add_node(y);
            add_arc(x, y);
            if (!g_.children(y).empty()) fresh.push_back(y);
          } else {
            add_arc(x, y);
          }
        }
        for (auto it = fresh.rbegin(); it != fresh.rend(); ++it)
          pending_.push_back(*it);
      }
      step();
      restore(mk);
    }

    pending_.push_back(x);
  }

  const AndOrGraph& g_;
  NodeId root_;
  std::uint64_t limit_;
  Visitor visit_;

  Mes m_;
  std::vector<char> in_mes_;
  std::vector<std::vector<NodeId>> mchildren_;
  std::vector<NodeId> pending_;
  std::vector<char> scratch_;
  std::uint64_t emitted_ = 0;
  bool stopped_ = false;
};

}  // namespace detail

inline constexpr std::uint64_t kDefaultMesLimit = 1'000'000;

/// Visits all distinct MESs rooted at n in deterministic (lexicographic
/// choice-record) order. The visitor may return false to stop early.
/// Throws LimitError when the count passes `limit`. At least one MES exists
/// below every node.
inline void for_each_mes(const AndOrGraph& g, NodeId n,
                         const std::function<bool(const Mes&)>& visit,
                         std::uint64_t limit = kDefaultMesLimit) {
  if (n < 0 || n >= g.node_count())
    throw InvalidArgument("unknown node id " + std::to_string(n));
  detail::MesEnumerator(g, n, limit, visit).run();
}

inline std::vector<Mes> enumerate_mes(const AndOrGraph& g, NodeId n,
                                      std::uint64_t limit = kDefaultMesLimit) {
  std::vector<Mes> out;
  for_each_mes(
      g, n,
      [&](const Mes& m) {
        out.push_back(m);
        return true;
      },
      limit);
  return out;
}

// ---------------------------------------------------------------------------

struct SubMes {
  Mes mes;
  /// Whether the sub-MES is itself an MES of the host graph: true iff each
  /// of its cycle-ceased members can justify ceasing against the host's
  /// child sets.
  bool is_host_mes = false;
};

/// The unique sub-MES below x inside m: the part of m reachable from x, with
/// choice and termination records inherited.
inline SubMes sub_mes(const AndOrGraph& g, const Mes& m, NodeId x) {
  MesView view(g, m);
  if (!view.contains(x))
    throw InvalidArgument("node " + g.label(x) + " not in this MES");

  SubMes out;
  Mes& sub = out.mes;
  sub.root = x;
  std::vector<char> in_sub(g.node_count(), 0);
  std::vector<NodeId> stack{x};
  in_sub[x] = 1;
  while (!stack.empty()) {
    NodeId u = stack.back();
    stack.pop_back();
    sub.nodes.push_back(u);
    for (NodeId c : view.children(u)) {
      sub.arcs.push_back({u, c});
      if (!in_sub[c]) {
        in_sub[c] = 1;
        stack.push_back(c);
      }
    }
  }
  for (auto [p, c] : m.or_choices)
    if (in_sub[p]) sub.or_choices.push_back({p, c});
  for (NodeId t : m.terminated)
    if (in_sub[t]) sub.terminated.push_back(t);

  // The sub-structure is an MES of the host iff every childless internal
  // member could have ceased there: some host child is the node itself or
  // one of its predecessors within the sub-structure.
  MesView sview(g, sub);
  out.is_host_mes = true;
  for (NodeId u : sub.nodes) {
    if (!sview.children(u).empty() || g.is_tip(u)) continue;
    bool justified = false;
    for (const auto& a : g.children(u)) {
      if (a.node == u || (in_sub[a.node] && sview.reaches(a.node, u))) {
        justified = true;
        break;
      }
    }
    if (!justified) {
      out.is_host_mes = false;
      break;
    }
  }
  return out;
}

/// Structural sanity check used by tests: acyclic, rooted, choice-consistent.
inline bool mes_well_formed(const AndOrGraph& g, const Mes& m,
                            std::string* why = nullptr) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (m.nodes.empty() || m.nodes.front() != m.root)
    return fail("root must be the first member");
  MesView view(g, m);

  // acyclic: every member reaches itself only trivially
  for (NodeId n : m.nodes) {
    for (NodeId c : view.children(n))
      if (view.reaches(c, n)) return fail("cycle through " + g.label(n));
  }
  for (NodeId n : m.nodes) {
    const auto& kids = view.children(n);
    bool term = m.is_terminated(n);
    if (term && !kids.empty()) return fail("terminated node with children");
    if (term && g.is_tip(n)) return fail("tip marked terminated");
    if (!kids.empty()) {
      if (g.kind(n) == NodeKind::Or && kids.size() != 1)
        return fail("OR node with several children");
      if (g.kind(n) == NodeKind::And && kids.size() != g.children(n).size())
        return fail("AND node missing children");
    }
    if (kids.empty() && !term && !g.is_tip(n))
      return fail("internal node neither expanded nor terminated");
  }
  for (auto [p, c] : m.arcs) {
    bool found = false;
    for (const auto& a : g.children(p)) found |= (a.node == c);
    if (!found) return fail("arc not in host graph");
  }
  return true;
}

}  // namespace andor
