#pragma once

#include <algorithm>
#include <vector>

#include "andor/explicit_graph.hpp"
#include "andor/result.hpp"
#include "andor/source.hpp"

namespace andor {

// Arc-marking AO* over an explicit graph, for regression comparison on
// acyclic inputs. Cost revision runs over a worklist in topological order;
// the two ways that order breaks down on cyclic inputs are surfaced as
// diagnostics instead of hangs:
//
//   Stuck:        the worklist holds mutually reachable nodes, so no member
//                  can be revised before the others;
//   LoopDetected: a node comes up for revision twice in one pass, which
//                  only happens when the marked structure closed a cycle.
//
// Tip selection reuses the shared front-pointer rules, so on acyclic graphs
// with the same heuristic this expands the same tips as the top-down search.

enum class AoStatus : std::uint8_t {
  Solved,
  Unsolvable,
  Stuck,
  LoopDetected,
  BudgetExhausted
};

inline const char* ao_status_name(AoStatus s) {
  switch (s) {
    case AoStatus::Solved: return "SOLVED";
    case AoStatus::Unsolvable: return "UNSOLVABLE";
    case AoStatus::Stuck: return "STUCK";
    case AoStatus::LoopDetected: return "LOOP-DETECTED";
    default: return "BUDGET-EXHAUSTED";
  }
}

struct AoResult {
  AoStatus status = AoStatus::Unsolvable;
  ExtendedCost cost = ExtendedCost::infinite();
  Counters counters;
  std::vector<std::string> expansion_trace;
  std::vector<std::string> pending_revisions;  // worklist content at Stuck
  std::vector<IterationSummary> iteration_trace;
};

namespace detail {

class AoEngine {
public:
  AoEngine(const ImplicitSource& src, std::uint64_t budget)
      : src_(src), budget_(budget) {}

  AoResult run() {
    AoResult out;
    NodeId s = xg_.install(src_, src_.start());
    grow_aux();
    if (xg_.at(s).kind == NodeKind::Terminal) {
      out.status = AoStatus::Solved;
      out.cost = ExtendedCost::finite(0);
      return out;
    }
    if (xg_.at(s).kind == NodeKind::Nonterminal) {
      out.status = AoStatus::Unsolvable;
      return out;
    }

    while (true) {
      if (solved_[s]) {
        out.status = AoStatus::Solved;
        out.cost = xg_.at(s).h;
        return out;
      }
      if (xg_.at(s).h.is_infinite()) {
        out.status = AoStatus::Unsolvable;
        return out;
      }
      if (out.counters.expansions >= budget_) {
        out.status = AoStatus::BudgetExhausted;
        out.cost = xg_.at(s).h;
        return out;
      }

      NodeId n = xg_.at(s).front;
      if (xg_.at(n).expanded || kind_is_leaf(xg_.at(n).kind))
        throw InternalError("expansion tip is expanded or a leaf");
      xg_.at(n).expanded = true;
      ++out.counters.expansions;
      ++out.counters.iterations;
      const SourceId expanded_id = xg_.at(n).source_id;
      out.expansion_trace.push_back(src_.label(expanded_id));
      // installing children may grow the node table, so no references into
      // it survive this loop
      for (const auto& arc : src_.expand(expanded_id)) {
        NodeId c = xg_.install(src_, arc.child);
        grow_aux();
        xg_.add_arc(n, c, arc.cost);
      }
      if (xg_.is_tip(n))
        throw InternalError("internal node expanded to no children");

      std::vector<std::string> revised;
      AoStatus pass = revise_pass(n, out.counters, revised, out.pending_revisions);
      out.iteration_trace.push_back(
          {src_.label(expanded_id), xg_.at(s).h,
           src_.label(xg_.at(xg_.at(s).front).source_id), {}});
      for (const auto& r : revised)
        out.iteration_trace.back().closed.push_back(
            {r, ExtendedCost::finite(0)});
      if (pass != AoStatus::Solved) {
        out.status = pass;
        out.cost = xg_.at(s).h;
        return out;
      }
    }
  }

private:
  void grow_aux() {
    solved_.resize(xg_.size(), 0);
    marked_.resize(xg_.size(), kNoNode);
    for (NodeId n = 0; n < xg_.size(); ++n)
      if (xg_.at(n).kind == NodeKind::Terminal) solved_[n] = 1;
  }

  // One bottom-up cost-revision pass, seeded with the freshly expanded node.
  // Returns Solved when the pass completed, otherwise the diagnostic.
  AoStatus revise_pass(NodeId seed, Counters& counters,
                       std::vector<std::string>& revised_order,
                       std::vector<std::string>& pending_out) {
    std::vector<char> in_z(xg_.size(), 0), changed_once(xg_.size(), 0);
    std::vector<NodeId> z{seed};
    in_z[seed] = 1;

    std::vector<int> topo_rank;
    bool acyclic = topological_ranks(topo_rank);

    while (!z.empty()) {
      NodeId pick = kNoNode;
      if (acyclic) {
        // children rank above parents, so the max-rank member has no
        // pending descendant
        std::size_t best = 0;
        for (std::size_t i = 1; i < z.size(); ++i)
          if (topo_rank[z[i]] > topo_rank[z[best]]) best = i;
        pick = z[best];
        z.erase(z.begin() + best);
      } else {
        std::size_t at = z.size();
        for (std::size_t i = 0; i < z.size(); ++i) {
          if (!reaches_member(z[i], z)) {
            if (at == z.size() || z[i] < z[at]) at = i;
          }
        }
        if (at == z.size()) {
          // every member waits on another member
          std::sort(z.begin(), z.end());
          for (NodeId m : z) pending_out.push_back(src_.label(xg_.at(m).source_id));
          return AoStatus::Stuck;
        }
        pick = z[at];
        z.erase(z.begin() + at);
      }
      in_z[pick] = 0;

      revised_order.push_back(src_.label(xg_.at(pick).source_id));
      if (revise(pick, counters)) {
        // a node whose value changes twice within one pass is chasing a
        // marked cycle
        if (changed_once[pick]) return AoStatus::LoopDetected;
        changed_once[pick] = 1;
        for (const auto& a : xg_.at(pick).parents) {
          if (!in_z[a.node]) {
            in_z[a.node] = 1;
            z.push_back(a.node);
          }
        }
      }
    }
    return AoStatus::Solved;
  }

  // Recomputes cost, marking, solved label and front of one node.
  // Returns whether anything changed.
  bool revise(NodeId n, Counters& counters) {
    ++counters.selections;
    ++counters.evaluations;
    auto& node = xg_.at(n);
    ExtendedCost h;
    NodeId mark = kNoNode;
    bool solved;
    NodeId front;
    if (node.kind == NodeKind::Or) {
      mark = xg_.pick_or_child(node.children);
      h = ExtendedCost::finite(xg_.arc_to(n, mark)) + xg_.at(mark).h;
      solved = solved_[mark] != 0;
      front = xg_.at(mark).front;
    } else {
      h = ExtendedCost::finite(0);
      solved = true;
      for (const auto& a : node.children) {
        h += ExtendedCost::finite(a.cost) + xg_.at(a.node).h;
        solved = solved && solved_[a.node];
      }
      front = xg_.at(xg_.pick_and_child(node.children)).front;
    }
    bool changed = node.h != h || marked_[n] != mark ||
                   solved_[n] != static_cast<char>(solved) ||
                   node.front != front;
    node.h = h;
    marked_[n] = mark;
    solved_[n] = solved;
    node.front = front;
    return changed;
  }

  // True iff some other worklist member is reachable from n (self excluded).
  bool reaches_member(NodeId n, const std::vector<NodeId>& z) const {
    std::vector<char> seen(xg_.size(), 0);
    std::vector<NodeId> stack;
    for (const auto& a : xg_.at(n).children) {
      if (!seen[a.node]) {
        seen[a.node] = 1;
        stack.push_back(a.node);
      }
    }
    while (!stack.empty()) {
      NodeId x = stack.back();
      stack.pop_back();
      if (x != n)
        for (NodeId m : z)
          if (m == x) return true;
      for (const auto& a : xg_.at(x).children) {
        if (!seen[a.node]) {
          seen[a.node] = 1;
          stack.push_back(a.node);
        }
      }
    }
    return false;
  }

  // Kahn ranks; false when the explicit graph has a cycle.
  bool topological_ranks(std::vector<int>& rank) const {
    rank.assign(xg_.size(), 0);
    std::vector<int> indeg(xg_.size(), 0);
    for (NodeId n = 0; n < xg_.size(); ++n)
      for (const auto& a : xg_.at(n).children) ++indeg[a.node];
    std::vector<NodeId> ready;
    for (NodeId n = 0; n < xg_.size(); ++n)
      if (indeg[n] == 0) ready.push_back(n);
    int next = 0;
    std::size_t head = 0;
    while (head < ready.size()) {
      NodeId n = ready[head++];
      rank[n] = next++;
      for (const auto& a : xg_.at(n).children)
        if (--indeg[a.node] == 0) ready.push_back(a.node);
    }
    return next == static_cast<int>(xg_.size());
  }

  const ImplicitSource& src_;
  std::uint64_t budget_;
  ExplicitGraph xg_;
  std::vector<char> solved_;
  std::vector<NodeId> marked_;
};

}  // namespace detail

inline AoResult ao_star(const ImplicitSource& src, std::uint64_t budget = 0) {
  if (budget == 0) {
    auto size = src.finite_size();
    if (!size)
      throw InvalidArgument("an explicit budget is required on infinite sources");
    budget = 10 * static_cast<std::uint64_t>(*size);
  }
  return detail::AoEngine(src, budget).run();
}

inline AoResult ao_star(const AndOrGraph& g, std::uint64_t budget = 0) {
  GraphSource src(g);
  return ao_star(src, budget);
}

}  // namespace andor
