#include "andor/gen.hpp"

#include <gtest/gtest.h>

#include "andor/io.hpp"
#include "andor/oracle.hpp"
#include "andor/s1.hpp"
#include "test_util.hpp"

using namespace andor;

TEST(Generate, DeterministicBytes) {
  GenParams p;
  p.node_count = 20;
  p.and_pct = 30;
  p.cyclic = true;
  p.seed = 42;
  EXPECT_EQ(to_aog(generate(p)), to_aog(generate(p)));

  GenParams q = p;
  q.seed = 43;
  EXPECT_NE(to_aog(generate(p)), to_aog(generate(q)));
}

TEST(Generate, ParameterValidation) {
  GenParams p;
  p.and_pct = 101;
  EXPECT_THROW(generate(p), InvalidArgument);
  p = GenParams{};
  p.node_count = 0;
  EXPECT_THROW(generate(p), InvalidArgument);
  p = GenParams{};
  p.band.hi_p100k = 120'000;
  EXPECT_THROW(generate_with_heuristic(p), InvalidArgument);
  p = GenParams{};
  p.terminal_pct = 80;
  p.nonterminal_pct = 40;
  EXPECT_THROW(generate(p), InvalidArgument);
}

TEST(Generate, PostConditions) {
  for (auto [nodes, cyclic, seed] :
       {std::tuple{50, true, 7ull}, {200, false, 8ull}, {1000, false, 7ull}}) {
    GenParams p;
    p.node_count = nodes;
    p.and_pct = 30;
    p.cyclic = cyclic;
    p.seed = seed;
    AndOrGraph g = generate(p);
    EXPECT_EQ(g.node_count(), nodes);
    EXPECT_TRUE(validate(to_spec(g)).ok());
    EXPECT_EQ(s1_solve(g).status, Status::Success);
  }
}

TEST(Generate, AcyclicFlagMeansNoCycles) {
  GenParams p;
  p.node_count = 120;
  p.cyclic = false;
  p.seed = 3;
  AndOrGraph g = generate(p);
  // children only ever point at later declarations
  for (NodeId n = 0; n < g.node_count(); ++n)
    for (const auto& a : g.children(n)) EXPECT_GT(a.node, n);
}

TEST(Generate, GivesUpOnHopelessParameters) {
  GenParams p;
  p.node_count = 30;
  p.terminal_pct = 0;
  p.nonterminal_pct = 20;  // no terminal leaves: nothing is ever solvable
  p.max_rejects = 10;
  try {
    generate(p);
    FAIL() << "expected the generator to give up";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("10"), std::string::npos);
  }
}

TEST(Heuristic, BandedFloor) {
  EXPECT_EQ(scale_down(14, 95'000), 13);  // floor(14 * 0.95)
  EXPECT_EQ(scale_down(14, 100'000), 14);
  EXPECT_EQ(scale_down(14, 90'000), 12);
  EXPECT_EQ(scale_down(0, 95'000), 0);
}

TEST(Heuristic, LeafConventionsAndSentinel) {
  AndOrGraph g = test::fixture("classify_g2.aog");
  auto h = derive_heuristic(g, HeurBand{}, 5);
  auto types = classify_nodes_recursive(g);
  for (NodeId n = 0; n < g.node_count(); ++n) {
    switch (g.kind(n)) {
      case NodeKind::Terminal:
        EXPECT_EQ(h[n], ExtendedCost::finite(0));
        break;
      case NodeKind::Nonterminal:
        EXPECT_EQ(h[n], ExtendedCost::infinite());
        break;
      default:
        if (types[n] != NodeType::TypeI) {
          EXPECT_EQ(h[n], ExtendedCost::finite(kSentinelHeuristic));
        }
        break;
    }
  }
}

TEST(Heuristic, AdmissibleOnOracleCheckableGraphs) {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    GenParams p;
    p.node_count = 10;
    p.and_pct = 35;
    p.cyclic = true;
    p.branching = 2;
    p.terminal_pct = 25;
    p.nonterminal_pct = 8;
    p.seed = seed;
    AndOrGraph g = generate(p);
    auto h = derive_heuristic(g, HeurBand{}, seed);
    for (NodeId n = 0; n < g.node_count(); ++n) {
      ExtendedCost truth = h_star(g, n);
      if (truth.is_finite()) {
        ASSERT_TRUE(h[n].is_finite());
        EXPECT_LE(h[n].units(), truth.units()) << "seed " << seed;
        EXPECT_GE(h[n].units(), scale_down(truth.units(), 90'000));
      }
      // nodes with infinite or undefined exact cost carry no obligation
    }
  }
}

TEST(Heuristic, AdmissibleViaExhaustiveSearchOnBiggerGraphs) {
  GenParams p;
  p.node_count = 400;
  p.and_pct = 30;
  p.cyclic = true;
  p.seed = 99;
  AndOrGraph g = generate(p);
  auto h = derive_heuristic(g, HeurBand{}, 99);
  auto exact = s1_all_costs(g);
  for (NodeId n = 0; n < g.node_count(); ++n) {
    if (exact[n].is_finite() && g.is_internal(n)) {
      EXPECT_LE(h[n].units(), exact[n].units());
    }
  }
}
