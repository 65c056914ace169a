#pragma once

#include <queue>
#include <vector>

#include "andor/graph.hpp"
#include "andor/result.hpp"

namespace andor {

// Strictly bottom-up baseline over a finite implicit graph, reconstructed
// from its published behaviour. All leaves start in OPEN with their known
// costs. Repeatedly the least-costly OPEN node is removed and finalized
// (cost dominance makes the minimum final), then an upward phase walks its
// parents: a parent whose children are all finalized is finalized in place
// with its exact value and the walk continues above it; an OR parent with
// unfinished children receives an upper bound and waits in OPEN; an AND
// parent with unfinished children blocks the walk. The search stops the
// moment the start node is finalized.
//
// The in-place finalization is what makes this non-best-first: an upward
// phase can finalize nodes far costlier than the cheapest OPEN candidate.
// closed_trace records every finalization in order.

namespace detail {

class RevStarEngine {
public:
  explicit RevStarEngine(const AndOrGraph& g) : g_(g) {
    if (g.role() != GraphRole::Implicit)
      throw InvalidArgument("rev* runs on implicit graphs");
    ub_.assign(g.node_count(), ExtendedCost::infinite());
    found_.assign(g.node_count(), 0);
    processed_.assign(g.node_count(), 0);
    in_open_.assign(g.node_count(), 0);
  }

  SearchResult run() {
    NodeId s = g_.start();
    for (NodeId n = 0; n < g_.node_count(); ++n) {
      if (!g_.is_leaf(n)) continue;
      ub_[n] = g_.kind(n) == NodeKind::Terminal ? ExtendedCost::finite(0)
                                                : ExtendedCost::infinite();
      found_[n] = 1;
      push(n);
    }

    while (!done_) {
      NodeId u = pop_min();
      if (u == kNoNode) break;
      ++out_.counters.iterations;
      ++out_.counters.selections;
      if (!processed_[u]) {
        processed_[u] = 1;
        found_[u] = 1;  // the least-costly candidate cannot improve
        out_.closed_trace.push_back({g_.label(u), ub_[u]});
        if (u == s) {
          done_ = true;
          break;
        }
      }
      // A node reinserted k times is taken out k times, and each take-out
      // walks upward again; only the first one finalizes it.
      upward(u);
    }

    if (found_[s]) {
      if (ub_[s].is_infinite()) {
        out_.status = Status::Failure;
        out_.reason = FailureReason::NoSolution;
        out_.cost = ExtendedCost::infinite();
      } else {
        out_.status = Status::Success;
        out_.cost = ub_[s];
      }
    } else {
      out_.status = Status::Failure;
      out_.reason = FailureReason::StartTypeIII;
      out_.cost = ExtendedCost::infinite();
    }
    return std::move(out_);
  }

private:
  struct QEntry {
    ExtendedCost ub;
    std::uint64_t seq;
    NodeId node;

    bool operator>(const QEntry& o) const {
      if (ub != o.ub) return total_less(o.ub, ub);
      return seq > o.seq;
    }
  };

  void push(NodeId n) {
    in_open_[n] = 1;
    queue_.push({ub_[n], next_seq_++, n});
  }

  NodeId pop_min() {
    if (queue_.empty()) return kNoNode;
    QEntry e = queue_.top();
    queue_.pop();
    return e.node;
  }

  void finalize(NodeId n, ExtendedCost value) {
    ub_[n] = value;
    found_[n] = 1;
    processed_[n] = 1;
    out_.closed_trace.push_back({g_.label(n), value});
    if (n == g_.start()) done_ = true;
  }

  void upward(NodeId u) {
    for (const auto& arc : g_.parents(u)) {
      if (done_) return;
      NodeId p = arc.node;
      // every upward visit recomputes the parent's cost; on an already
      // finalized parent that work confirms the stored value
      ++out_.counters.evaluations;
      if (found_[p]) continue;
      bool complete = true;
      for (const auto& a : g_.children(p)) complete = complete && found_[a.node];
      if (g_.kind(p) == NodeKind::Or) {
        ExtendedCost best = ExtendedCost::infinite();
        bool any = false;
        for (const auto& a : g_.children(p)) {
          if (!found_[a.node]) continue;
          ExtendedCost c = ExtendedCost::finite(a.cost) + ub_[a.node];
          best = any ? min_cost(best, c) : c;
          any = true;
        }
        if (complete) {
          finalize(p, best);
          upward(p);
        } else if (any && (!in_open_[p] || total_less(best, ub_[p]))) {
          ub_[p] = best;
          push(p);
        }
      } else {
        if (!complete) continue;  // an AND node cannot be bounded early
        ExtendedCost sum = ExtendedCost::finite(0);
        for (const auto& a : g_.children(p))
          sum += ExtendedCost::finite(a.cost) + ub_[a.node];
        finalize(p, sum);
        upward(p);
      }
    }
  }

  const AndOrGraph& g_;
  std::vector<ExtendedCost> ub_;
  std::vector<char> found_, processed_, in_open_;
  std::priority_queue<QEntry, std::vector<QEntry>, std::greater<QEntry>> queue_;
  std::uint64_t next_seq_ = 0;
  SearchResult out_;
  bool done_ = false;
};

}  // namespace detail

inline SearchResult rev_star(const AndOrGraph& g) {
  return detail::RevStarEngine(g).run();
}

}  // namespace andor
