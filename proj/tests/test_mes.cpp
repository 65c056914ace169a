#include "andor/mes.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>

#include "andor/gen.hpp"
#include "test_util.hpp"

using namespace andor;
using andor::test::fixture;
using andor::test::id;

namespace {

// Finds the unique MES below root whose arc set matches exactly.
Mes find_by_arcs(const AndOrGraph& g, NodeId root,
                 const std::set<std::pair<std::string, std::string>>& want) {
  for (const Mes& m : enumerate_mes(g, root)) {
    std::set<std::pair<std::string, std::string>> got;
    for (auto [p, c] : m.arcs) got.insert({g.label(p), g.label(c)});
    if (got == want) return m;
  }
  throw std::runtime_error("no MES with the requested arcs");
}

std::set<std::string> label_set(const AndOrGraph& g,
                                const std::vector<NodeId>& nodes) {
  std::set<std::string> out;
  for (NodeId n : nodes) out.insert(g.label(n));
  return out;
}

}  // namespace

TEST(Enumerate, SmallCycleFixtureCounts) {
  AndOrGraph g = fixture("mes_small.aog");
  EXPECT_EQ(enumerate_mes(g, id(g, "s")).size(), 5u);
  EXPECT_EQ(enumerate_mes(g, id(g, "n")).size(), 5u);
  EXPECT_EQ(enumerate_mes(g, id(g, "t")).size(), 1u);
  EXPECT_EQ(enumerate_mes(g, id(g, "r")).size(), 1u);
}

TEST(Enumerate, SingleLeafHasExactlyItself) {
  GraphSpec spec;
  spec.node("t", NodeKind::Terminal).start_at("t");
  AndOrGraph g = compile(spec);
  auto all = enumerate_mes(g, 0);
  ASSERT_EQ(all.size(), 1u);
  EXPECT_EQ(all[0].nodes, std::vector<NodeId>{0});
  EXPECT_TRUE(all[0].arcs.empty());
}

TEST(Enumerate, DuplicateLookingStructuresStayDistinct) {
  // Two of the five structures below s consist of {s, n} with the arc s->n:
  // they differ only in the child n attempted before terminating.
  AndOrGraph g = fixture("mes_small.aog");
  std::vector<Mes> two_node;
  for (const Mes& m : enumerate_mes(g, id(g, "s")))
    if (m.nodes.size() == 2 && m.is_terminated(id(g, "n")))
      two_node.push_back(m);
  ASSERT_EQ(two_node.size(), 2u);
  EXPECT_FALSE(two_node[0] == two_node[1]);
  EXPECT_NE(two_node[0].or_choices, two_node[1].or_choices);
}

TEST(Enumerate, CompleteOrGraphCounts) {
  AndOrGraph g = fixture("all_or3.aog");
  std::map<std::size_t, int> per_size_rooted_s;
  for (const Mes& m : enumerate_mes(g, id(g, "s")))
    per_size_rooted_s[m.nodes.size()]++;
  EXPECT_EQ(per_size_rooted_s[1], 1);
  EXPECT_EQ(per_size_rooted_s[2], 4);
  EXPECT_EQ(per_size_rooted_s[3], 6);

  // Rooted anywhere, size k counts k * P(3, k): 3, 12, 18.
  std::map<std::size_t, int> per_size_all;
  for (NodeId n = 0; n < g.node_count(); ++n)
    for (const Mes& m : enumerate_mes(g, n)) per_size_all[m.nodes.size()]++;
  EXPECT_EQ(per_size_all[1], 3);
  EXPECT_EQ(per_size_all[2], 12);
  EXPECT_EQ(per_size_all[3], 18);
}

TEST(Enumerate, DeterministicOrder) {
  AndOrGraph g = fixture("mixed.aog");
  auto a = enumerate_mes(g, id(g, "n"));
  auto b = enumerate_mes(g, id(g, "n"));
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].or_choices, b[i].or_choices);
    EXPECT_EQ(a[i].nodes, b[i].nodes);
  }
}

TEST(Enumerate, LimitGuard) {
  AndOrGraph g = fixture("all_or3.aog");
  EXPECT_THROW(enumerate_mes(g, id(g, "s"), 10), LimitError);
  EXPECT_NO_THROW(enumerate_mes(g, id(g, "s"), 11));
}

TEST(Enumerate, EveryStructureIsWellFormedAndAcyclic) {
  for (const char* name :
       {"mes_small.aog", "all_or3.aog", "mixed.aog", "g1.aog", "g2.aog"}) {
    AndOrGraph g = fixture(name);
    for (NodeId n = 0; n < g.node_count(); ++n) {
      for (const Mes& m : enumerate_mes(g, n)) {
        std::string why;
        EXPECT_TRUE(mes_well_formed(g, m, &why)) << name << ": " << why;
      }
    }
  }
}

TEST(ClassifyMes, MixedFixture) {
  AndOrGraph g = fixture("mixed.aog");
  // Below n: through q to the terminal, through q to the nonterminal,
  // through the AND node p (x cycles back to n), and q's self-loop.
  auto below_n = enumerate_mes(g, id(g, "n"));
  ASSERT_EQ(below_n.size(), 4u);

  Mes solution = find_by_arcs(g, id(g, "n"), {{"n", "q"}, {"q", "t"}});
  EXPECT_EQ(classify_mes(g, solution), MesType::TypeI);

  Mes dead = find_by_arcs(g, id(g, "n"), {{"n", "q"}, {"q", "r"}});
  EXPECT_EQ(classify_mes(g, dead), MesType::TypeII);

  Mes cyclic =
      find_by_arcs(g, id(g, "n"), {{"n", "p"}, {"p", "x"}, {"p", "t"}});
  EXPECT_EQ(classify_mes(g, cyclic), MesType::TypeIII);
  EXPECT_TRUE(cyclic.is_terminated(id(g, "x")));

  Mes self_stop = find_by_arcs(g, id(g, "n"), {{"n", "q"}});
  EXPECT_EQ(classify_mes(g, self_stop), MesType::TypeIII);
}

TEST(ClassifyMes, ExplicitSnapshots) {
  // A snapshot where the tip x keeps the structure viable, then the same
  // structure after expanding x into a cycle.
  GraphSpec before;
  before.node("s", NodeKind::Or)
      .node("n", NodeKind::Or)
      .node("p", NodeKind::And)
      .node("q", NodeKind::Or)
      .node("x", NodeKind::Or)
      .node("t", NodeKind::Terminal);
  before.arc("s", "n").arc("n", "p").arc("n", "q").arc("p", "x").arc("p", "t");
  before.start_at("s").heuristic("x", ExtendedCost::finite(4));
  before.heuristic("q", ExtendedCost::finite(9));
  AndOrGraph g1 = compile(before, RoleMode::Explicit);

  Mes psg = find_by_arcs(g1, id(g1, "n"), {{"n", "p"}, {"p", "x"}, {"p", "t"}});
  EXPECT_EQ(classify_mes(g1, psg), MesType::NonTypeIII);

  GraphSpec after = before;
  after.arc("x", "n");
  AndOrGraph g2 = compile(after, RoleMode::Explicit);
  Mes broken =
      find_by_arcs(g2, id(g2, "n"), {{"n", "p"}, {"p", "x"}, {"p", "t"}});
  EXPECT_EQ(classify_mes(g2, broken), MesType::TypeIII);
  EXPECT_TRUE(broken.is_terminated(id(g2, "x")));
}

TEST(SubMes, IdentityAtRoot) {
  AndOrGraph g = fixture("mixed.aog");
  for (const Mes& m : enumerate_mes(g, id(g, "n"))) {
    SubMes s = sub_mes(g, m, id(g, "n"));
    EXPECT_EQ(label_set(g, s.mes.nodes), label_set(g, m.nodes));
    EXPECT_TRUE(s.is_host_mes);  // rooted where the host structure is rooted
  }
}

TEST(SubMes, MayOrMayNotBeHostMes) {
  AndOrGraph g = fixture("mixed.aog");

  // Below s, pick the structure s -> n -> p -> {x, t} with x terminated.
  Mes m = find_by_arcs(g, id(g, "s"),
                       {{"s", "n"}, {"n", "p"}, {"p", "x"}, {"p", "t"}});
  // The piece below p has x childless, but in the whole graph x's only child
  // n is outside the piece, so nothing justifies ceasing there.
  SubMes at_p = sub_mes(g, m, id(g, "p"));
  EXPECT_EQ(label_set(g, at_p.mes.nodes),
            (std::set<std::string>{"p", "x", "t"}));
  EXPECT_FALSE(at_p.is_host_mes);

  // The piece below n in n -> q -> t is a genuine MES of the graph.
  Mes clean = find_by_arcs(g, id(g, "n"), {{"n", "q"}, {"q", "t"}});
  SubMes at_n = sub_mes(g, clean, id(g, "n"));
  EXPECT_TRUE(at_n.is_host_mes);

  // p -> {x, t} with the extra arc x -> n and n ceasing against its
  // predecessor p: that one is an MES of the graph.
  Mes wide = find_by_arcs(g, id(g, "p"), {{"p", "x"}, {"p", "t"}, {"x", "n"}});
  SubMes whole = sub_mes(g, wide, id(g, "p"));
  EXPECT_TRUE(whole.is_host_mes);
  EXPECT_TRUE(wide.is_terminated(id(g, "n")));
}

TEST(SubMes, UniquePerNode) {
  AndOrGraph g = fixture("g1.aog");
  for (const Mes& m : enumerate_mes(g, g.start())) {
    for (NodeId n : m.nodes) {
      SubMes a = sub_mes(g, m, n);
      SubMes b = sub_mes(g, m, n);
      EXPECT_EQ(a.mes.or_choices, b.mes.or_choices);
      EXPECT_EQ(a.mes.nodes, b.mes.nodes);
    }
  }
}

TEST(SubMes, NodeOutsideThrows) {
  AndOrGraph g = fixture("mes_small.aog");
  auto all = enumerate_mes(g, id(g, "t"));
  EXPECT_THROW(sub_mes(g, all[0], id(g, "s")), InvalidArgument);
}

TEST(Beta, SolvableStructure) {
  AndOrGraph g = fixture("g1.aog");
  // s -> {p, q}, p -> t1, q -> r, r -> p: the minimal solution.
  Mes m = find_by_arcs(
      g, id(g, "s"),
      {{"s", "p"}, {"s", "q"}, {"p", "t1"}, {"q", "r"}, {"r", "p"}});
  EXPECT_EQ(beta(g, m, id(g, "t1")), ExtendedCost::finite(0));
  EXPECT_EQ(beta(g, m, id(g, "p")), ExtendedCost::finite(5));
  EXPECT_EQ(beta(g, m, id(g, "r")), ExtendedCost::finite(6));
  EXPECT_EQ(beta(g, m, id(g, "q")), ExtendedCost::finite(7));
  EXPECT_EQ(beta(g, m, id(g, "s")), ExtendedCost::finite(14));
}

TEST(Beta, NonterminalMakesItInfinite) {
  AndOrGraph g = fixture("g2.aog");
  // q -> x, x AND {t2, y}: the nonterminal y pushes everything to INF.
  Mes m = find_by_arcs(g, id(g, "q"), {{"q", "x"}, {"x", "t2"}, {"x", "y"}});
  EXPECT_EQ(beta(g, m, id(g, "t2")), ExtendedCost::finite(0));
  EXPECT_EQ(beta(g, m, id(g, "y")), ExtendedCost::infinite());
  EXPECT_EQ(beta(g, m, id(g, "x")), ExtendedCost::infinite());
  EXPECT_EQ(beta(g, m, id(g, "q")), ExtendedCost::infinite());
}

TEST(Beta, TerminationMakesAncestorsUndefined) {
  AndOrGraph g = fixture("g2.aog");
  // s -> {p, q}, p AND {t1, r}, q -> r, r ceases (its child p is above it).
  Mes m = find_by_arcs(
      g, id(g, "s"),
      {{"s", "p"}, {"s", "q"}, {"p", "t1"}, {"p", "r"}, {"q", "r"}});
  ASSERT_TRUE(m.is_terminated(id(g, "r")));
  EXPECT_EQ(beta(g, m, id(g, "t1")), ExtendedCost::finite(0));
  EXPECT_EQ(beta(g, m, id(g, "r")), ExtendedCost::undefined());
  EXPECT_EQ(beta(g, m, id(g, "p")), ExtendedCost::undefined());
  EXPECT_EQ(beta(g, m, id(g, "q")), ExtendedCost::undefined());
  EXPECT_EQ(beta(g, m, id(g, "s")), ExtendedCost::undefined());
}

TEST(Beta, ExplicitTipUsesEstimate) {
  AndOrGraph g = fixture("explicit_a.aog");
  Mes m = find_by_arcs(g, id(g, "q"), {});
  EXPECT_EQ(beta(g, m, id(g, "q")), ExtendedCost::finite(5));
}
