#pragma once

#include <string>
#include <vector>

#include "andor/io.hpp"
#include "andor/result.hpp"

namespace andor::test {

inline std::string fixture_path(const std::string& name) {
  return std::string(ANDOR_FIXTURE_DIR) + "/" + name;
}

inline AndOrGraph fixture(const std::string& name,
                          RoleMode mode = RoleMode::Auto) {
  return load_graph(fixture_path(name), mode);
}

inline NodeId id(const AndOrGraph& g, const std::string& label) {
  auto n = g.find(label);
  if (!n) throw InvalidArgument("fixture has no node '" + label + "'");
  return *n;
}

inline std::vector<std::string> labels(const std::vector<TraceEntry>& trace) {
  std::vector<std::string> out;
  for (const auto& e : trace) out.push_back(e.node);
  return out;
}

inline std::vector<CostUnits> costs(const std::vector<TraceEntry>& trace) {
  std::vector<CostUnits> out;
  for (const auto& e : trace)
    out.push_back(e.h.is_finite() ? e.h.units() : -1);
  return out;
}

}  // namespace andor::test
