#pragma once

#include <chrono>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "andor/ao_star.hpp"
#include "andor/gen.hpp"
#include "andor/rev_star.hpp"
#include "andor/s1.hpp"
#include "andor/s2.hpp"

namespace andor {

enum class Algorithm : std::uint8_t { S1, S2, AoStar, RevStar };

inline const char* algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::S1: return "s1";
    case Algorithm::S2: return "s2";
    case Algorithm::AoStar: return "aostar";
    default: return "revstar";
  }
}

inline Algorithm algorithm_from_name(const std::string& name) {
  if (name == "s1") return Algorithm::S1;
  if (name == "s2") return Algorithm::S2;
  if (name == "aostar") return Algorithm::AoStar;
  if (name == "revstar") return Algorithm::RevStar;
  throw InvalidArgument("unknown algorithm '" + name + "'");
}

// Experiment grid: every combination of node count, AND percentage and
// cyclicity forms a cell; each cell runs `trials` instances and every
// algorithm sees the same instances and the same derived heuristic.
struct ExperimentConfig {
  std::vector<Algorithm> algorithms;
  std::vector<int> node_counts;
  std::vector<int> and_pcts;
  std::vector<bool> cyclics;
  int trials = 100;
  std::uint64_t seed = 1;
  int branching = 3;
  HeurBand band;
  std::string out;
};

/// key=value lines, '#' comments. Lists are comma separated:
///   algs=s1,revstar
///   nodes=1000,2000
///   and_pct=30,50
///   cyclic=true,false
///   trials=100
///   seed=7
///   out=results.csv
inline ExperimentConfig parse_experiment_config(std::istream& in) {
  ExperimentConfig cfg;
  std::string line;
  int lineno = 0;
  auto split_list = [](const std::string& s) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream ss(s);
    while (std::getline(ss, item, ',')) out.push_back(item);
    return out;
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto eq = line.find('=');
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (eq == std::string::npos)
      throw ParseError("expected key=value", lineno);
    auto trim = [](std::string s) {
      auto b = s.find_first_not_of(" \t\r");
      auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    try {
      if (key == "algs") {
        for (const auto& a : split_list(value))
          cfg.algorithms.push_back(algorithm_from_name(a));
      } else if (key == "nodes") {
        for (const auto& v : split_list(value)) cfg.node_counts.push_back(std::stoi(v));
      } else if (key == "and_pct") {
        for (const auto& v : split_list(value)) cfg.and_pcts.push_back(std::stoi(v));
      } else if (key == "cyclic") {
        for (const auto& v : split_list(value)) {
          if (v != "true" && v != "false")
            throw InvalidArgument("cyclic must be true or false");
          cfg.cyclics.push_back(v == "true");
        }
      } else if (key == "trials") {
        cfg.trials = std::stoi(value);
      } else if (key == "seed") {
        cfg.seed = std::stoull(value);
      } else if (key == "branching") {
        cfg.branching = std::stoi(value);
      } else if (key == "out") {
        cfg.out = value;
      } else {
        throw InvalidArgument("unknown key '" + key + "'");
      }
    } catch (const InvalidArgument& e) {
      throw ParseError(e.what(), lineno);
    } catch (const std::exception&) {
      throw ParseError("bad value for '" + key + "'", lineno);
    }
  }
  if (cfg.algorithms.empty() || cfg.node_counts.empty() ||
      cfg.and_pcts.empty() || cfg.cyclics.empty())
    throw InvalidArgument("config needs algs, nodes, and_pct and cyclic");
  return cfg;
}

struct Stats {
  double mean = 0.0;
  double stddev = 0.0;

  static Stats of(const std::vector<double>& xs) {
    Stats s;
    if (xs.empty()) return s;
    for (double x : xs) s.mean += x;
    s.mean /= static_cast<double>(xs.size());
    double var = 0.0;
    for (double x : xs) var += (x - s.mean) * (x - s.mean);
    s.stddev = std::sqrt(var / static_cast<double>(xs.size()));
    return s;
  }
};

struct BenchRecord {
  Algorithm algorithm;
  int nodes;
  int and_pct;
  bool cyclic;
  int trials;
  int failures = 0;  // trials that did not end in success
  Stats time_us, evals, selections, expansions;
};

struct TrialMetrics {
  double time_us = 0.0;
  Counters counters;
  bool success = false;
};

inline TrialMetrics run_one(Algorithm alg, const AndOrGraph& g) {
  TrialMetrics m;
  auto t0 = std::chrono::steady_clock::now();
  switch (alg) {
    case Algorithm::S1: {
      SearchResult r = s1_solve(g);
      m.counters = r.counters;
      m.success = r.status == Status::Success;
      break;
    }
    case Algorithm::S2: {
      SearchResult r = s2_solve(g);
      m.counters = r.counters;
      m.success = r.status == Status::Success;
      break;
    }
    case Algorithm::AoStar: {
      AoResult r = ao_star(g);
      m.counters = r.counters;
      m.success = r.status == AoStatus::Solved;
      break;
    }
    case Algorithm::RevStar: {
      SearchResult r = rev_star(g);
      m.counters = r.counters;
      m.success = r.status == Status::Success;
      break;
    }
  }
  auto t1 = std::chrono::steady_clock::now();
  m.time_us =
      std::chrono::duration_cast<std::chrono::duration<double, std::micro>>(
          t1 - t0)
          .count();
  return m;
}

/// Runs the whole grid. Per-trial failures are recorded in the cell, never
/// fatal. Counters are deterministic for a fixed seed; times are not.
inline std::vector<BenchRecord> run_experiment(const ExperimentConfig& cfg) {
  std::vector<BenchRecord> out;
  std::uint64_t cell_index = 0;
  for (int nodes : cfg.node_counts) {
    for (int and_pct : cfg.and_pcts) {
      for (bool cyclic : cfg.cyclics) {
        ++cell_index;
        std::vector<std::vector<TrialMetrics>> metrics(cfg.algorithms.size());
        for (int trial = 0; trial < cfg.trials; ++trial) {
          GenParams p;
          p.node_count = nodes;
          p.and_pct = and_pct;
          p.cyclic = cyclic;
          p.branching = cfg.branching;
          p.band = cfg.band;
          p.seed = rng::mix(cfg.seed, cell_index * 1'000'003ULL +
                                          static_cast<std::uint64_t>(trial));
          AndOrGraph g = generate_with_heuristic(p);
          for (std::size_t a = 0; a < cfg.algorithms.size(); ++a)
            metrics[a].push_back(run_one(cfg.algorithms[a], g));
        }
        for (std::size_t a = 0; a < cfg.algorithms.size(); ++a) {
          BenchRecord rec;
          rec.algorithm = cfg.algorithms[a];
          rec.nodes = nodes;
          rec.and_pct = and_pct;
          rec.cyclic = cyclic;
          rec.trials = cfg.trials;
          std::vector<double> t, ev, sel, ex;
          for (const auto& m : metrics[a]) {
            if (!m.success) ++rec.failures;
            t.push_back(m.time_us);
            ev.push_back(static_cast<double>(m.counters.evaluations));
            sel.push_back(static_cast<double>(m.counters.selections));
            ex.push_back(static_cast<double>(m.counters.expansions));
          }
          rec.time_us = Stats::of(t);
          rec.evals = Stats::of(ev);
          rec.selections = Stats::of(sel);
          rec.expansions = Stats::of(ex);
          out.push_back(rec);
        }
      }
    }
  }
  return out;
}

inline void write_csv(const std::vector<BenchRecord>& records,
                      std::ostream& out) {
  out << "alg,nodes,and_pct,cyclic,trials,mean_time_us,mean_evals,"
         "mean_selections,mean_expansions,stddev_time_us,stddev_evals,"
         "stddev_selections,stddev_expansions\n";
  for (const auto& r : records) {
    out << algorithm_name(r.algorithm) << ',' << r.nodes << ',' << r.and_pct
        << ',' << (r.cyclic ? "true" : "false") << ',' << r.trials << ','
        << r.time_us.mean << ',' << r.evals.mean << ',' << r.selections.mean
        << ',' << r.expansions.mean << ',' << r.time_us.stddev << ','
        << r.evals.stddev << ',' << r.selections.stddev << ','
        << r.expansions.stddev << '\n';
  }
}

}  // namespace andor
