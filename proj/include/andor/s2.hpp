#pragma once

#include <functional>
#include <queue>
#include <span>
#include <vector>

#include "andor/explicit_graph.hpp"
#include "andor/result.hpp"
#include "andor/source.hpp"

namespace andor {

// Algorithm S2: heuristically guided top-down search. Each iteration expands
// front(start), a tip of a minimal-cost potential solution graph, and then
// reruns the bottom-up cost revision over the grown explicit graph. The
// revision seeds OPEN with every tip, settles eligible nodes in best-first
// order, recomputes each settled node's front, and evaluates parents exactly
// like the uninformed bottom-up search. If the start node never settles its
// cost becomes INF. The search stops when front(start) is a terminal leaf
// (success) or the start cost is INF (failure).

struct S2Snapshot {
  int iteration;
  NodeId expanded;  // explicit index; kNoNode before the first expansion
  const ExplicitGraph& graph;
  const ImplicitSource& source;
  std::span<const NodeId> closed_order;
};

struct S2Options {
  // Expansion cap. 0 selects ten times the node count on finite sources;
  // infinite sources must set an explicit budget.
  std::uint64_t budget = 0;
  std::function<void(const S2Snapshot&)> on_iteration;
};

namespace detail {

class BottomUp {
public:
  BottomUp(ExplicitGraph& xg, NodeId start) : xg_(xg), start_(start) {
    in_open_.assign(xg.size(), 0);
    closed_.assign(xg.size(), 0);
    eligible_.assign(xg.size(), 0);
    initial_.assign(xg.size(), 0);
    seq_of_.assign(xg.size(), 0);
    closed_children_.assign(xg.size(), 0);
    // OPEN starts as the set of tips, all eligible and initial.
    for (NodeId n = 0; n < xg.size(); ++n) {
      if (!xg.is_tip(n)) continue;
      initial_[n] = 1;
      insert_open(n, true);
    }
  }

  // Runs the revision; returns the closing order.
  std::vector<NodeId> run(Counters& counters) {
    std::vector<NodeId> closed_order;
    while (!closed_[start_]) {
      NodeId q = pop_min();
      if (q == kNoNode) break;
      ++counters.selections;
      if (!initial_[q]) decide_front(q);
      in_open_[q] = 0;
      closed_[q] = 1;
      closed_order.push_back(q);
      for (const auto& a : xg_.at(q).parents)
        evaluate_parent(a.node, a.cost, q, counters);
    }
    // Drop whatever is left in OPEN; when the start node never settled, no
    // cycle-free structure reaches it in the current explicit graph.
    if (!closed_[start_]) xg_.at(start_).h = ExtendedCost::infinite();
    return closed_order;
  }

  bool start_settled() const { return closed_[start_] != 0; }

private:
  struct QEntry {
    ExtendedCost h;
    bool not_start;
    std::uint64_t seq;
    NodeId node;

    bool operator>(const QEntry& o) const {
      if (h != o.h) return total_less(o.h, h);
      if (not_start != o.not_start) return not_start;
      return seq > o.seq;
    }
  };

  void insert_open(NodeId n, bool elig) {
    in_open_[n] = 1;
    eligible_[n] = elig;
    seq_of_[n] = next_seq_++;
    if (elig) push(n);
  }

  void push(NodeId n) {
    queue_.push({xg_.at(n).h, n != start_, seq_of_[n], n});
  }

  NodeId pop_min() {
    while (!queue_.empty()) {
      QEntry e = queue_.top();
      queue_.pop();
      if (closed_[e.node] || !in_open_[e.node] || !eligible_[e.node]) continue;
      if (e.h != xg_.at(e.node).h) continue;
      return e.node;
    }
    return kNoNode;
  }

  // Recomputes the front of a non-initial node as it settles. OR nodes take
  // the front of a cheapest settled child; AND nodes follow the leftmost
  // child still pointing at unsolved work.
  void decide_front(NodeId q) {
    auto& node = xg_.at(q);
    if (node.kind == NodeKind::Or) {
      std::vector<AdjArc> settled;
      for (const auto& a : node.children)
        if (closed_[a.node]) settled.push_back(a);
      if (settled.empty())
        throw InternalError("OR node settled without a settled child");
      NodeId j = xg_.pick_or_child(settled);
      node.front = xg_.at(j).front;
    } else {
      NodeId j = xg_.pick_and_child(node.children);
      node.front = xg_.at(j).front;
    }
  }

  void evaluate_parent(NodeId p, CostUnits arc_cost, NodeId q,
                       Counters& counters) {
    ++counters.evaluations;
    auto& parent = xg_.at(p);
    ExtendedCost through = ExtendedCost::finite(arc_cost) + xg_.at(q).h;
    if (parent.kind == NodeKind::Or) {
      if (!in_open_[p] && !closed_[p]) {
        parent.h = through;
        insert_open(p, true);
      } else if (in_open_[p] && total_less(through, parent.h)) {
        parent.h = through;
        push(p);
      } else if (closed_[p] && total_less(through, parent.h)) {
        throw InternalError("settled OR node saw a better cost");
      }
    } else {
      if (closed_[p])
        throw InternalError("AND node settled before one of its children");
      if (!in_open_[p]) {
        parent.h = through;
        insert_open(p, false);
      } else {
        parent.h += through;
      }
      if (++closed_children_[p] == static_cast<int>(parent.children.size())) {
        eligible_[p] = 1;
        push(p);
      }
    }
  }

  ExplicitGraph& xg_;
  NodeId start_;
  std::vector<char> in_open_, closed_, eligible_, initial_;
  std::vector<std::uint64_t> seq_of_;
  std::vector<int> closed_children_;
  std::uint64_t next_seq_ = 0;
  std::priority_queue<QEntry, std::vector<QEntry>, std::greater<QEntry>> queue_;
};

}  // namespace detail

inline SearchResult s2_solve(const ImplicitSource& src, S2Options opts = {}) {
  std::uint64_t budget = opts.budget;
  if (budget == 0) {
    auto size = src.finite_size();
    if (!size)
      throw InvalidArgument("an explicit budget is required on infinite sources");
    budget = 10 * static_cast<std::uint64_t>(*size);
  }

  SearchResult out;
  ExplicitGraph xg;
  NodeId s = xg.install(src, src.start());

  auto report = [&](int iteration, NodeId expanded,
                    const std::vector<NodeId>& closed) {
    IterationSummary summary;
    summary.expanded =
        expanded == kNoNode ? "" : src.label(xg.at(expanded).source_id);
    summary.h_start = xg.at(s).h;
    summary.front_start = src.label(xg.at(xg.at(s).front).source_id);
    for (NodeId n : closed)
      summary.closed.push_back({src.label(xg.at(n).source_id), xg.at(n).h});
    out.iteration_trace.push_back(std::move(summary));
    if (opts.on_iteration)
      opts.on_iteration({iteration, expanded, xg, src,
                         std::span<const NodeId>(closed)});
  };

  int iteration = 0;
  bool start_settled = true;  // trivially, before any revision has run
  while (!xg.is_terminal(xg.at(s).front) && !xg.at(s).h.is_infinite()) {
    if (out.counters.expansions >= budget) {
      out.status = Status::Failure;
      out.reason = FailureReason::BudgetExhausted;
      out.cost = xg.at(s).h;
      return out;
    }
    ++iteration;
    ++out.counters.iterations;

    NodeId n = xg.at(s).front;
    if (xg.at(n).expanded || kind_is_leaf(xg.at(n).kind))
      throw InternalError("front points at an expanded or leaf node");
    xg.at(n).expanded = true;
    ++out.counters.expansions;
    const SourceId expanded_id = xg.at(n).source_id;
    out.expansion_trace.push_back(src.label(expanded_id));
    // installing children may grow the node table, so no references into it
    // survive this loop
    for (const auto& arc : src.expand(expanded_id)) {
      NodeId c = xg.install(src, arc.child);
      xg.add_arc(n, c, arc.cost);
    }
    if (xg.is_tip(n))
      throw InternalError("internal node expanded to no children");

    detail::BottomUp revision(xg, s);
    std::vector<NodeId> closed = revision.run(out.counters);
    start_settled = revision.start_settled();
    out.closed_trace.clear();
    for (NodeId c : closed)
      out.closed_trace.push_back({src.label(xg.at(c).source_id), xg.at(c).h});
    report(iteration, n, closed);
  }

  if (xg.is_terminal(xg.at(s).front) && !xg.at(s).h.is_infinite()) {
    out.status = Status::Success;
    out.cost = xg.at(s).h;
  } else {
    out.status = Status::Failure;
    // INF on a start node the revision never settled means cycles cut it off
    // in the final snapshot; INF on a settled start means every structure
    // runs into nonterminal leaves.
    out.reason = start_settled ? FailureReason::NoSolution
                               : FailureReason::StartTypeIII;
    out.cost = ExtendedCost::infinite();
  }
  return out;
}

inline SearchResult s2_solve(const AndOrGraph& g, S2Options opts = {}) {
  GraphSource src(g);
  return s2_solve(src, std::move(opts));
}

}  // namespace andor
