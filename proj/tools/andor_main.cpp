// Command-line front end: solve / oracle / gen / bench / validate over .aog
// files. Exit codes: 0 success (or clean report), 1 search failure, 2 usage
// or input errors.

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "andor/ao_star.hpp"
#include "andor/bench.hpp"
#include "andor/gen.hpp"
#include "andor/io.hpp"
#include "andor/mes.hpp"
#include "andor/oracle.hpp"
#include "andor/rev_star.hpp"
#include "andor/s1.hpp"
#include "andor/s2.hpp"

namespace {

using namespace andor;

constexpr int kExitSuccess = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  return out;
}

void write_flat_trace(const SearchResult& r, std::ostream& out) {
  out << "iter,node,h\n";
  std::size_t i = 0;
  for (const auto& e : r.closed_trace)
    out << ++i << ',' << e.node << ',' << e.h.to_string() << '\n';
}

void write_iteration_trace(const std::vector<IterationSummary>& iters,
                           std::ostream& out) {
  out << "iter,expanded,closed_order,h(s),front(s)\n";
  std::size_t i = 0;
  for (const auto& it : iters) {
    out << ++i << ',' << it.expanded << ',';
    for (std::size_t k = 0; k < it.closed.size(); ++k)
      out << (k ? "|" : "") << it.closed[k].node;
    out << ',' << it.h_start.to_string() << ',' << it.front_start << '\n';
  }
}

NodeId need_node(const AndOrGraph& g, const std::string& label) {
  auto n = g.find(label);
  if (!n) throw InvalidArgument("no node '" + label + "' in this graph");
  return *n;
}

void dump_mes(const AndOrGraph& g, const Mes& m, std::ostream& out) {
  out << "root " << g.label(m.root) << '\n';
  for (auto [p, c] : m.or_choices) {
    out << "choice " << g.label(p) << ' ' << g.label(c);
    if (m.is_terminated(p)) out << " TERMINATED";
    out << '\n';
  }
  for (NodeId t : m.terminated)
    if (g.kind(t) == NodeKind::And) out << "terminated " << g.label(t) << '\n';
}

int run_solve(const std::string& alg, const std::string& graph_path,
              const std::string& trace_path, std::uint64_t budget,
              const std::string& source_name) {
  SearchResult result;
  AoResult ao;
  bool is_ao = alg == "aostar";

  std::unique_ptr<ImplicitSource> source;
  AndOrGraph graph = [&] {
    if (!source_name.empty()) {
      // built-in demo sources: chain:<depth> and chain-unsolvable:<depth>
      auto colon = source_name.find(':');
      std::string kind = source_name.substr(0, colon);
      std::int64_t depth =
          colon == std::string::npos
              ? 10
              : std::stoll(source_name.substr(colon + 1));
      if (kind == "chain")
        source = std::make_unique<ChainSource>(depth, true);
      else if (kind == "chain-unsolvable")
        source = std::make_unique<ChainSource>(depth, false);
      else
        throw InvalidArgument("unknown source '" + source_name + "'");
      GraphSpec trivial;
      trivial.node("s", NodeKind::Terminal).start_at("s");
      return compile(trivial);  // placeholder, unused with a source
    }
    return load_graph(graph_path, RoleMode::Implicit);
  }();

  if (source && (alg == "s1" || alg == "revstar"))
    throw InvalidArgument(alg + " needs the whole graph, not a source");

  if (alg == "s1") {
    result = s1_solve(graph);
  } else if (alg == "s2") {
    S2Options opts;
    opts.budget = budget;
    result = source ? s2_solve(*source, opts) : s2_solve(graph, opts);
  } else if (alg == "revstar") {
    result = rev_star(graph);
  } else if (is_ao) {
    ao = source ? ao_star(*source, budget) : ao_star(graph, budget);
  } else {
    throw InvalidArgument("unknown algorithm '" + alg + "'");
  }

  if (is_ao) {
    switch (ao.status) {
      case AoStatus::Solved:
        std::cout << "SUCCESS," << ao.cost.to_string() << '\n';
        break;
      case AoStatus::Unsolvable:
        std::cout << "FAILURE,INF\n";
        break;
      default:
        std::cout << "FAILURE," << ao_status_name(ao.status) << '\n';
        break;
    }
    if (!trace_path.empty()) {
      auto out = open_out(trace_path);
      write_iteration_trace(ao.iteration_trace, out);
    }
    return ao.status == AoStatus::Solved ? kExitSuccess : kExitFailure;
  }

  std::cout << (result.status == Status::Success ? "SUCCESS" : "FAILURE") << ','
            << result.cost.to_string() << '\n';
  if (result.reason == FailureReason::BudgetExhausted)
    std::cerr << "note: expansion budget exhausted\n";
  if (!trace_path.empty()) {
    auto out = open_out(trace_path);
    if (alg == "s2")
      write_iteration_trace(result.iteration_trace, out);
    else
      write_flat_trace(result, out);
  }
  return result.status == Status::Success ? kExitSuccess : kExitFailure;
}

int run_oracle(const std::string& verb, const std::string& graph_path,
               const std::string& node_label, std::uint64_t limit,
               std::size_t index, const std::string& picks) {
  AndOrGraph g = load_graph(graph_path, RoleMode::Auto);

  if (verb == "enumerate") {
    NodeId n = need_node(g, node_label);
    auto all = enumerate_mes(g, n, limit);
    for (std::size_t i = 0; i < all.size(); ++i) {
      std::cout << "# " << i << " (" << mes_type_name(classify_mes(g, all[i]))
                << ")\n";
      dump_mes(g, all[i], std::cout);
    }
    std::cout << "count " << all.size() << '\n';
    return kExitSuccess;
  }
  if (verb == "classify-node") {
    NodeId n = need_node(g, node_label);
    auto c = classify_node(g, n, limit);
    std::cout << node_type_name(c.type)
              << (c.dual_checked ? "" : " (recursive only)") << '\n';
    return kExitSuccess;
  }
  if (verb == "classify-mes") {
    NodeId n = need_node(g, node_label);
    auto all = enumerate_mes(g, n, limit);
    if (index >= all.size())
      throw InvalidArgument("index " + std::to_string(index) +
                            " out of range (count " +
                            std::to_string(all.size()) + ")");
    std::cout << mes_type_name(classify_mes(g, all[index])) << '\n';
    return kExitSuccess;
  }
  if (verb == "hstar") {
    std::cout << h_star(g, need_node(g, node_label), limit).to_string() << '\n';
    return kExitSuccess;
  }
  if (verb == "hprime") {
    std::cout << h_prime(g, need_node(g, node_label), limit).to_string()
              << '\n';
    return kExitSuccess;
  }
  if (verb == "compose") {
    NodeId n = need_node(g, node_label);
    // Pick, per child, the index'th structure without cycle terminations
    // (comma-separated indices; zero for every child by default).
    std::vector<std::size_t> want(g.children(n).size(), 0);
    if (!picks.empty()) {
      std::istringstream in(picks);
      std::string item;
      std::size_t at = 0;
      while (std::getline(in, item, ',') && at < want.size())
        want[at++] = std::stoull(item);
    }
    std::vector<Mes> chosen;
    for (std::size_t j = 0; j < g.children(n).size(); ++j) {
      std::size_t seen = 0;
      bool found = false;
      for_each_mes(
          g, g.children(n)[j].node,
          [&](const Mes& m) {
            if (!m.terminated.empty()) return true;
            if (seen++ == want[j]) {
              chosen.push_back(m);
              found = true;
              return false;
            }
            return true;
          },
          limit);
      if (!found)
        throw InvalidArgument("child " + g.label(g.children(n)[j].node) +
                              " has no usable structure at that index");
    }
    Mes combined = compose_qk(g, n, chosen);
    dump_mes(g, combined, std::cout);
    std::cout << "class " << mes_type_name(classify_mes(g, combined)) << '\n';
    return kExitSuccess;
  }
  throw InvalidArgument("unknown oracle verb '" + verb + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Best-first search over cyclic AND/OR graphs"};
  app.require_subcommand(1);

  std::string alg = "s1", graph_path, trace_path, source_name;
  std::uint64_t budget = 0;
  auto* solve = app.add_subcommand("solve", "Run a search algorithm");
  solve->add_option("--alg", alg, "s1|s2|aostar|revstar");
  solve->add_option("--graph", graph_path, "input .aog file");
  solve->add_option("--trace", trace_path, "write a trace CSV here");
  solve->add_option("--budget", budget, "expansion budget (0 = automatic)");
  solve->add_option("--source", source_name,
                    "built-in implicit source (chain:<depth>, "
                    "chain-unsolvable:<depth>)");

  std::string verb, node_label, picks;
  std::uint64_t limit = kDefaultMesLimit;
  std::size_t index = 0;
  auto* oracle = app.add_subcommand(
      "oracle", "Exhaustive reference computations on small graphs");
  oracle->add_option("verb", verb,
                     "enumerate|classify-node|classify-mes|hstar|hprime|compose")
      ->required();
  oracle->add_option("--graph", graph_path, "input .aog file")->required();
  oracle->add_option("--node", node_label, "node id");
  oracle->add_option("--limit", limit, "enumeration cap");
  oracle->add_option("--index", index, "which structure (classify-mes)");
  oracle->add_option("--pick", picks, "per-child structure indices (compose)");

  GenParams params;
  std::string out_path, band_text;
  bool no_heur = false;
  auto* gen = app.add_subcommand("gen", "Generate a random instance");
  gen->add_option("--out", out_path, "output .aog file")->required();
  gen->add_option("--nodes", params.node_count, "node count");
  gen->add_option("--and-pct", params.and_pct, "percentage of AND nodes");
  gen->add_flag("--cyclic", params.cyclic, "allow back arcs");
  gen->add_option("--branching", params.branching, "children per node");
  gen->add_option("--seed", params.seed, "rng seed");
  gen->add_option("--terminal-pct", params.terminal_pct,
                  "share of terminal leaves");
  gen->add_option("--nonterminal-pct", params.nonterminal_pct,
                  "share of nonterminal leaves");
  gen->add_option("--back-edge-permille", params.back_edge_permille,
                  "cyclic rewiring rate");
  gen->add_option("--band", band_text, "heuristic band, e.g. 90:100");
  gen->add_flag("--no-heur", no_heur, "skip the heuristic section");

  std::string config_path, csv_path;
  auto* bench = app.add_subcommand("bench", "Run an experiment grid");
  bench->add_option("--config", config_path, "experiment config")->required();
  bench->add_option("--out", csv_path, "output CSV (overrides config)");

  std::string role_text = "implicit";
  auto* val = app.add_subcommand("validate", "Check an .aog file");
  val->add_option("--graph", graph_path, "input .aog file")->required();
  val->add_option("--role", role_text, "implicit|explicit|auto");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (solve->parsed())
      return run_solve(alg, graph_path, trace_path, budget, source_name);

    if (oracle->parsed())
      return run_oracle(verb, graph_path, node_label, limit, index, picks);

    if (gen->parsed()) {
      if (!band_text.empty()) {
        auto colon = band_text.find(':');
        if (colon == std::string::npos)
          throw InvalidArgument("band must look like lo:hi");
        params.band.lo_p100k = std::stoll(band_text.substr(0, colon)) * 1000;
        params.band.hi_p100k = std::stoll(band_text.substr(colon + 1)) * 1000;
      }
      GenStats stats;
      AndOrGraph g = no_heur ? generate(params, &stats)
                             : generate_with_heuristic(params, &stats);
      store_graph(g, out_path);
      std::cout << "wrote " << out_path << " (" << g.node_count() << " nodes, "
                << g.arc_count() << " arcs, " << stats.rejected
                << " rejected draws)\n";
      return kExitSuccess;
    }

    if (bench->parsed()) {
      std::ifstream in(config_path);
      if (!in) throw Error("cannot open '" + config_path + "'");
      ExperimentConfig cfg = parse_experiment_config(in);
      if (!csv_path.empty()) cfg.out = csv_path;
      auto records = run_experiment(cfg);
      if (cfg.out.empty()) {
        write_csv(records, std::cout);
      } else {
        auto out = open_out(cfg.out);
        write_csv(records, out);
        std::cout << "wrote " << cfg.out << '\n';
      }
      return kExitSuccess;
    }

    if (val->parsed()) {
      RoleMode mode = RoleMode::Implicit;
      if (role_text == "explicit") mode = RoleMode::Explicit;
      else if (role_text == "auto") mode = RoleMode::Auto;
      else if (role_text != "implicit")
        throw InvalidArgument("role must be implicit, explicit or auto");
      ValidationReport report = validate(parse_aog_file(graph_path), mode);
      if (report.ok()) {
        std::cout << "ok ("
                  << (report.resolved_role == GraphRole::Implicit ? "implicit"
                                                                  : "explicit")
                  << ")\n";
        return kExitSuccess;
      }
      std::cout << report.to_string();
      return kExitUsage;
    }
  } catch (const ValidationError& e) {
    std::cerr << e.what();
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
