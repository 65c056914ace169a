#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "andor/graph.hpp"
#include "andor/s1.hpp"

namespace andor {

// Deterministic pseudo-random generation. The draws below avoid standard
// distributions on purpose: their output is implementation-defined, and the
// generator contract is identical bytes for identical seeds everywhere.

namespace rng {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Uniform draw in [0, n) by 128-bit multiply.
inline std::uint64_t bounded(std::uint64_t& state, std::uint64_t n) {
  return static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(splitmix64(state)) * n) >> 64);
}

inline std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a ^ (b * 0x9e3779b97f4a7c15ULL + 0x7f4a7c15ULL);
  return splitmix64(s);
}

}  // namespace rng

/// Sentinel heuristic for internal nodes without a finite exact cost: large
/// enough to push heuristic searches away immediately, finite so ordinary
/// arithmetic applies. Admissible because those nodes cost INF or worse.
inline constexpr CostUnits kSentinelHeuristic = 1'000'000'000;

struct HeurBand {
  // Fractions of the exact cost, in hundred-thousandths. The default band
  // spans 90% to 100%; the upper bound may not exceed 100% or the result
  // would stop being a lower bound.
  std::int64_t lo_p100k = 90'000;
  std::int64_t hi_p100k = 100'000;
};

struct GenParams {
  int node_count = 100;
  int and_pct = 30;
  bool cyclic = false;
  int branching = 3;
  int back_edge_permille = 150;  // cyclic graphs: chance a child slot rewires
  int terminal_pct = 18;         // share of nodes that are terminal leaves
  int nonterminal_pct = 2;       // share that are nonterminal leaves
  HeurBand band;
  std::uint64_t seed = 1;
  int max_rejects = 1000;
};

inline void check_params(const GenParams& p) {
  if (p.node_count < 1) throw InvalidArgument("node_count must be positive");
  if (p.and_pct < 0 || p.and_pct > 100)
    throw InvalidArgument("and_pct must lie in [0, 100]");
  if (p.branching < 1) throw InvalidArgument("branching must be positive");
  if (p.terminal_pct < 0 || p.nonterminal_pct < 0 ||
      p.terminal_pct + p.nonterminal_pct > 100)
    throw InvalidArgument("leaf percentages must fit in [0, 100]");
  if (p.back_edge_permille < 0 || p.back_edge_permille > 1000)
    throw InvalidArgument("back_edge_permille must lie in [0, 1000]");
  if (p.band.lo_p100k <= 0 || p.band.lo_p100k > p.band.hi_p100k ||
      p.band.hi_p100k > 100'000)
    throw InvalidArgument("heuristic band must satisfy 0 < lo <= hi <= 1");
}

namespace detail {

// One topology draw. Nodes are laid out in declaration order with all the
// leaves at the end; each internal node draws `branching` distinct children
// from the strictly-later nodes, and cyclic graphs rewire each slot with
// probability back_edge_permille/1000 to a uniform node anywhere, which is
// what introduces back arcs and self-loops.
inline GraphSpec draw_topology(const GenParams& p, std::uint64_t& state) {
  const int n = p.node_count;
  int leaves = n == 1 ? 1 : std::max(1, n * (p.terminal_pct + p.nonterminal_pct) / 100);
  if (leaves >= n) leaves = n == 1 ? 1 : n - 1;
  const int internals = n - leaves;
  int leaf_mix = p.terminal_pct + p.nonterminal_pct;
  int terminals =
      leaf_mix == 0
          ? leaves
          : static_cast<int>((static_cast<std::int64_t>(leaves) *
                                  p.terminal_pct +
                              leaf_mix / 2) /
                             leaf_mix);

  GraphSpec spec;
  for (int i = 0; i < internals; ++i) {
    bool is_and = rng::bounded(state, 100) < static_cast<std::uint64_t>(p.and_pct);
    spec.node("n" + std::to_string(i), is_and ? NodeKind::And : NodeKind::Or);
  }
  for (int i = internals; i < n; ++i) {
    bool terminal = (i - internals) < terminals;
    spec.node(terminal ? "t" + std::to_string(i) : "u" + std::to_string(i),
              terminal ? NodeKind::Terminal : NodeKind::Nonterminal);
  }
  spec.start_at(spec.nodes[0].label);

  for (int i = 0; i < internals; ++i) {
    std::vector<int> picked;
    int want = std::min(p.branching, n - i - 1);
    int guard = 0;
    while (static_cast<int>(picked.size()) < want && guard++ < 64 * want) {
      int child;
      if (p.cyclic && rng::bounded(state, 1000) <
                          static_cast<std::uint64_t>(p.back_edge_permille))
        child = static_cast<int>(rng::bounded(state, n));
      else
        child = i + 1 + static_cast<int>(rng::bounded(state, n - i - 1));
      bool dup = false;
      for (int c : picked) dup = dup || c == child;
      if (!dup) picked.push_back(child);
    }
    if (picked.empty()) picked.push_back(i + 1);
    for (int c : picked) {
      CostUnits cost = 1 + static_cast<CostUnits>(rng::bounded(state, 10));
      spec.arc(spec.nodes[i].label, spec.nodes[c].label, cost);
    }
  }
  return spec;
}

}  // namespace detail

struct GenStats {
  int attempts = 0;
  int rejected = 0;
};

/// Draws random instances until one has a solvable start node; instances
/// without a solution below the start are discarded. Deterministic per seed.
inline AndOrGraph generate(const GenParams& p, GenStats* stats = nullptr) {
  check_params(p);
  GenStats local;
  for (int attempt = 0; attempt < p.max_rejects; ++attempt) {
    std::uint64_t state = rng::mix(p.seed, static_cast<std::uint64_t>(attempt));
    AndOrGraph g = compile(detail::draw_topology(p, state), RoleMode::Implicit);
    ++local.attempts;
    if (s1_solve(g).status == Status::Success) {
      if (stats) *stats = local;
      return g;
    }
    ++local.rejected;
  }
  if (stats) *stats = local;
  throw Error("gave up after " + std::to_string(local.attempts) +
              " draws without a solvable start (seed " +
              std::to_string(p.seed) + ")");
}

/// floor(units * fraction) with the fraction in hundred-thousandths.
inline CostUnits scale_down(CostUnits units, std::int64_t p100k) {
  return static_cast<CostUnits>(
      (static_cast<__int128>(units) * p100k) / 100'000);
}

/// Synthesizes an admissible heuristic: each solvable node gets a uniform
/// draw from the band times its exact minimal cost, rounded down to the cost
/// grid; unsolvable internal nodes get the large finite sentinel; terminal
/// leaves 0 and nonterminal leaves INF by convention.
inline std::vector<ExtendedCost> derive_heuristic(const AndOrGraph& g,
                                                  HeurBand band,
                                                  std::uint64_t seed) {
  if (band.lo_p100k <= 0 || band.lo_p100k > band.hi_p100k ||
      band.hi_p100k > 100'000)
    throw InvalidArgument("heuristic band must satisfy 0 < lo <= hi <= 1");
  std::vector<ExtendedCost> exact = s1_all_costs(g);
  std::vector<ExtendedCost> out(g.node_count());
  std::uint64_t state = rng::mix(seed, 0x68657572ULL);
  for (NodeId n = 0; n < g.node_count(); ++n) {
    switch (g.kind(n)) {
      case NodeKind::Terminal:
        out[n] = ExtendedCost::finite(0);
        break;
      case NodeKind::Nonterminal:
        out[n] = ExtendedCost::infinite();
        break;
      default: {
        if (exact[n].is_finite()) {
          std::int64_t span = band.hi_p100k - band.lo_p100k + 1;
          std::int64_t frac =
              band.lo_p100k +
              static_cast<std::int64_t>(rng::bounded(state, span));
          out[n] = ExtendedCost::finite(scale_down(exact[n].units(), frac));
        } else {
          out[n] = ExtendedCost::finite(kSentinelHeuristic);
        }
      }
    }
  }
  return out;
}

inline AndOrGraph generate_with_heuristic(const GenParams& p,
                                          GenStats* stats = nullptr) {
  AndOrGraph g = generate(p, stats);
  return g.with_heuristic(derive_heuristic(g, p.band, rng::mix(p.seed, 77)));
}

}  // namespace andor
