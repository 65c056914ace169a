#pragma once

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "andor/graph.hpp"

namespace andor {

// Text format ".aog", UTF-8, line oriented, '#' starts a comment:
//
//   start <id>
//   node <id> OR|AND|TERMINAL|NONTERMINAL
//   arc <parent-id> <child-id> <cost>
//   heur <id> <value|INF>
//
// Sections may interleave. Costs are decimal integers at the default
// fixed-point scale (one unit per cost point). Canonical form, as written by
// store_graph: start line, nodes in declaration order, arcs grouped by
// parent, heur lines last.

namespace detail {

inline std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

inline CostUnits parse_units(const std::string& tok, int line) {
  // Accepts a nonnegative decimal; fractional digits must be zero at the
  // default scale of one unit per cost point.
  std::size_t dot = tok.find('.');
  std::string whole = tok.substr(0, dot);
  if (dot != std::string::npos) {
    for (std::size_t i = dot + 1; i < tok.size(); ++i)
      if (tok[i] != '0')
        throw ParseError("cost '" + tok + "' not representable at scale 1", line);
  }
  if (whole.empty() || whole.find_first_not_of("0123456789") != std::string::npos)
    throw ParseError("expected nonnegative decimal, got '" + tok + "'", line);
  try {
    return std::stoll(whole);
  } catch (const std::exception&) {
    throw ParseError("cost '" + tok + "' out of range", line);
  }
}

// A heuristic estimate is a nonnegative decimal or INF; UNDEF is a computed
// outcome, never an input.
inline ExtendedCost parse_value(const std::string& tok, int line) {
  if (tok == "INF") return ExtendedCost::infinite();
  return ExtendedCost::finite(parse_units(tok, line));
}

}  // namespace detail

inline GraphSpec parse_aog(std::istream& in) {
  GraphSpec spec;
  std::string line;
  int lineno = 0;
  bool saw_node = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    auto toks = detail::split_ws(line);
    if (toks.empty()) continue;
    const std::string& kw = toks[0];
    if (kw == "start") {
      if (toks.size() != 2) throw ParseError("start expects one id", lineno);
      spec.start = toks[1];
    } else if (kw == "node") {
      if (toks.size() != 3) throw ParseError("node expects id and kind", lineno);
      NodeKind kind;
      if (toks[2] == "OR") kind = NodeKind::Or;
      else if (toks[2] == "AND") kind = NodeKind::And;
      else if (toks[2] == "TERMINAL") kind = NodeKind::Terminal;
      else if (toks[2] == "NONTERMINAL") kind = NodeKind::Nonterminal;
      else throw ParseError("unknown node kind '" + toks[2] + "'", lineno);
      spec.node(toks[1], kind);
      saw_node = true;
    } else if (kw == "arc") {
      if (toks.size() != 4)
        throw ParseError("arc expects parent, child and cost", lineno);
      spec.arc(toks[1], toks[2], detail::parse_units(toks[3], lineno));
    } else if (kw == "heur") {
      if (toks.size() != 3) throw ParseError("heur expects id and value", lineno);
      spec.heuristic(toks[1], detail::parse_value(toks[2], lineno));
    } else {
      throw ParseError("unknown directive '" + kw + "'", lineno);
    }
  }
  if (!saw_node) throw ParseError("empty node section", lineno);
  return spec;
}

inline GraphSpec parse_aog_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  return parse_aog(in);
}

inline AndOrGraph load_graph(const std::string& path,
                             RoleMode mode = RoleMode::Auto) {
  return compile(parse_aog_file(path), mode);
}

inline void write_aog(const AndOrGraph& g, std::ostream& out) {
  out << "start " << g.label(g.start()) << '\n';
  for (NodeId n = 0; n < g.node_count(); ++n)
    out << "node " << g.label(n) << ' ' << kind_name(g.kind(n)) << '\n';
  for (NodeId n = 0; n < g.node_count(); ++n)
    for (const auto& a : g.children(n))
      out << "arc " << g.label(n) << ' ' << g.label(a.node) << ' ' << a.cost
          << '\n';
  if (g.has_heuristic())
    for (NodeId n = 0; n < g.node_count(); ++n)
      out << "heur " << g.label(n) << ' ' << g.heuristic(n).to_string() << '\n';
}

inline std::string to_aog(const AndOrGraph& g) {
  std::ostringstream out;
  write_aog(g, out);
  return out.str();
}

inline void store_graph(const AndOrGraph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  write_aog(g, out);
}

}  // namespace andor
