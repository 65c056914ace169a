#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "andor/cost.hpp"

namespace andor {

enum class Status : std::uint8_t { Success, Failure };

enum class FailureReason : std::uint8_t {
  None,
  NoSolution,     // start settled with an infinite cost
  StartTypeIII,   // search exhausted without ever settling the start node
  BudgetExhausted
};

inline const char* failure_reason_name(FailureReason r) {
  switch (r) {
    case FailureReason::NoSolution: return "no-solution";
    case FailureReason::StartTypeIII: return "start-type-iii";
    case FailureReason::BudgetExhausted: return "budget-exhausted";
    default: return "none";
  }
}

struct Counters {
  std::uint64_t iterations = 0;
  std::uint64_t selections = 0;   // nodes taken from the candidate list
  std::uint64_t evaluations = 0;  // cost computations during bottom-up work
  std::uint64_t expansions = 0;   // nodes whose children were generated
};

struct TraceEntry {
  std::string node;
  ExtendedCost h;

  friend bool operator==(const TraceEntry&, const TraceEntry&) = default;
};

// One top-level iteration of an explicit-graph-growing search.
struct IterationSummary {
  std::string expanded;
  ExtendedCost h_start;
  std::string front_start;
  std::vector<TraceEntry> closed;
};

struct SearchResult {
  Status status = Status::Failure;
  FailureReason reason = FailureReason::None;
  ExtendedCost cost = ExtendedCost::infinite();
  Counters counters;

  // Bottom-up searches: settle order. Explicit-graph searches: the closing
  // order of the final cost-revision pass.
  std::vector<TraceEntry> closed_trace;
  std::vector<std::string> expansion_trace;
  std::vector<IterationSummary> iteration_trace;

  bool contains_in_closed(const std::string& label) const {
    for (const auto& e : closed_trace)
      if (e.node == label) return true;
    return false;
  }
};

}  // namespace andor
