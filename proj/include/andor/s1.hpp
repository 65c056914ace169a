#pragma once

#include <queue>
#include <vector>

#include "andor/graph.hpp"
#include "andor/result.hpp"

namespace andor {

// Algorithm S1: uninformed bottom-up best-first search over a finite
// implicit AND/OR graph.
//
// All leaf nodes start in OPEN (0 for terminal, INF for nonterminal).
// Each iteration removes the eligible OPEN node with minimum h and settles
// it in CLOSED, then evaluates its parents: an OR parent is inserted or
// relaxed; an AND parent accumulates arc + child cost per settling child and
// becomes eligible once every child is in CLOSED. A settled node never
// returns to OPEN. Ties on h always favour the start node, then fall back
// to insertion order.

namespace detail {

struct S1Engine {
  struct QEntry {
    ExtendedCost h;
    bool not_start;
    std::uint64_t seq;
    NodeId node;

    // min-priority: smaller h first, the start node wins ties, then FIFO
    bool operator>(const QEntry& o) const {
      if (h != o.h) return total_less(o.h, h);
      if (not_start != o.not_start) return not_start;
      return seq > o.seq;
    }
  };

  explicit S1Engine(const AndOrGraph& g) : graph(g) {
    if (g.role() != GraphRole::Implicit)
      throw InvalidArgument("s1 runs on implicit graphs");
    h.assign(g.node_count(), ExtendedCost::infinite());
    in_open.assign(g.node_count(), 0);
    closed.assign(g.node_count(), 0);
    eligible.assign(g.node_count(), 0);
    seq_of.assign(g.node_count(), 0);
    closed_children.assign(g.node_count(), 0);

    for (NodeId n = 0; n < g.node_count(); ++n) {
      if (!g.is_leaf(n)) continue;
      h[n] = g.kind(n) == NodeKind::Terminal ? ExtendedCost::finite(0)
                                             : ExtendedCost::infinite();
      insert_open(n, true);
    }
  }

  void insert_open(NodeId n, bool elig) {
    in_open[n] = 1;
    eligible[n] = elig;
    seq_of[n] = next_seq++;
    if (elig) push(n);
  }

  void push(NodeId n) {
    queue.push({h[n], n != graph.start(), seq_of[n], n});
  }

  // Removes the best eligible node, or kNoNode when none is left.
  NodeId pop_min() {
    while (!queue.empty()) {
      QEntry e = queue.top();
      queue.pop();
      if (closed[e.node] || !in_open[e.node]) continue;
      if (e.h != h[e.node]) continue;  // superseded by a relaxation
      return e.node;
    }
    return kNoNode;
  }

  // Evaluates one parent of a freshly settled node n.
  void evaluate_parent(NodeId p, CostUnits arc_cost, NodeId n,
                       Counters& counters) {
    ++counters.evaluations;
    ExtendedCost through = ExtendedCost::finite(arc_cost) + h[n];
    if (graph.kind(p) == NodeKind::Or) {
      if (!in_open[p] && !closed[p]) {
        h[p] = through;
        insert_open(p, true);
      } else if (in_open[p] && total_less(through, h[p])) {
        h[p] = through;
        push(p);
      } else if (closed[p] && total_less(through, h[p])) {
        throw InternalError("settled OR node " + graph.label(p) +
                            " saw a better cost");
      }
    } else {
      if (closed[p])
        throw InternalError("AND node " + graph.label(p) +
                            " settled before child " + graph.label(n));
      if (!in_open[p]) {
        h[p] = through;
        insert_open(p, false);
      } else {
        h[p] += through;
      }
      if (++closed_children[p] ==
          static_cast<int>(graph.children(p).size())) {
        eligible[p] = 1;
        push(p);
      }
    }
  }

  const AndOrGraph& graph;
  std::vector<ExtendedCost> h;
  std::vector<char> in_open, closed, eligible;
  std::vector<std::uint64_t> seq_of;
  std::vector<int> closed_children;
  std::uint64_t next_seq = 0;
  std::priority_queue<QEntry, std::vector<QEntry>, std::greater<QEntry>> queue;
};

}  // namespace detail

inline SearchResult s1_solve(const AndOrGraph& g) {
  detail::S1Engine eng(g);
  SearchResult out;

  while (true) {
    NodeId n = eng.pop_min();
    if (n == kNoNode) {
      // no eligible node left: the start node is beyond reach of any
      // cycle-free structure
      out.status = Status::Failure;
      out.reason = FailureReason::StartTypeIII;
      out.cost = ExtendedCost::infinite();
      return out;
    }
    ++out.counters.iterations;
    ++out.counters.selections;
    eng.in_open[n] = 0;
    eng.closed[n] = 1;
    out.closed_trace.push_back({g.label(n), eng.h[n]});

    if (n == g.start()) {
      if (eng.h[n].is_infinite()) {
        out.status = Status::Failure;
        out.reason = FailureReason::NoSolution;
        out.cost = ExtendedCost::infinite();
      } else {
        out.status = Status::Success;
        out.cost = eng.h[n];
      }
      return out;
    }
    for (const auto& a : g.parents(n))
      eng.evaluate_parent(a.node, a.cost, n, out.counters);
  }
}

/// Runs the same settle loop to exhaustion, ignoring the start node's
/// termination rule. Every settled node ends with its exact minimal cost;
/// nodes that never settle get an undefined cost (no cycle-free structure
/// reaches the leaves below them). This is the polynomial route to the
/// whole cost map.
inline std::vector<ExtendedCost> s1_all_costs(const AndOrGraph& g,
                                              Counters* counters = nullptr) {
  detail::S1Engine eng(g);
  Counters local;
  while (true) {
    NodeId n = eng.pop_min();
    if (n == kNoNode) break;
    ++local.iterations;
    ++local.selections;
    eng.in_open[n] = 0;
    eng.closed[n] = 1;
    for (const auto& a : g.parents(n))
      eng.evaluate_parent(a.node, a.cost, n, local);
  }
  std::vector<ExtendedCost> out(g.node_count(), ExtendedCost::undefined());
  for (NodeId n = 0; n < g.node_count(); ++n)
    if (eng.closed[n]) out[n] = eng.h[n];
  if (counters) *counters = local;
  return out;
}

}  // namespace andor
