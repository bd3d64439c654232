#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "oracles.hpp"

using namespace arbor;

namespace {

std::set<std::vector<std::uint32_t>> cut_sets(const std::vector<MinimalCut> &cuts)
{
  std::set<std::vector<std::uint32_t>> out;
  for (const auto &c : cuts)
    out.insert(c.cut);
  return out;
}

std::set<std::vector<std::uint32_t>> oracle_cut_sets(const FiniteGroup &G)
{
  auto v = oracle::minimal_cuts_by_subsets(G, G.num_edges());
  return {v.begin(), v.end()};
}

bool subset(const Subgraph &x, const Subgraph &y)
{
  for (std::size_t i = 0; i < x.vertices.size(); ++i)
    if (x.vertices[i] && !y.vertices[i])
      return false;
  for (std::size_t e = 0; e < x.edges.size(); ++e)
    if (x.edges[e] && !y.edges[e])
      return false;
  return true;
}

} // namespace

TEST(MinimalCuts, Z2HasOneCutOfAllEdges)
{
  auto G = oracle::z2();
  auto cuts = minimal_cut_sets(*G);
  ASSERT_EQ(cuts.size(), 1u);
  EXPECT_EQ(cuts[0].cut.size(), 4u);
  EXPECT_EQ(cut_sets(cuts), oracle_cut_sets(*G));
}

TEST(MinimalCuts, KleinHasSix)
{
  auto G = oracle::klein();
  auto cuts = minimal_cut_sets(*G);
  EXPECT_EQ(cuts.size(), 6u);
  std::size_t singletons = 0;
  for (const auto &c : cuts)
    singletons += c.far.size() == 1 || c.far.size() == 3;
  EXPECT_EQ(singletons, 4u);
  EXPECT_EQ(cut_sets(cuts), oracle_cut_sets(*G));
}

TEST(MinimalCuts, Z3HasThree)
{
  auto G = oracle::z3();
  auto cuts = minimal_cut_sets(*G);
  EXPECT_EQ(cuts.size(), 3u);
  EXPECT_EQ(cut_sets(cuts), oracle_cut_sets(*G));
}

TEST(MinimalCutsProperty, AgreeWithSubsetOracle)
{
  for (const char *spec : {"cyclic(4; a=1, b=1)", "cyclic(4; a=1, b=2)", "cyclic(3; a=1)", "cyclic(5; a=1)",
                           "cyclic(2; a=1, b=0)"}) {
    auto G = oracle::group(spec);
    EXPECT_EQ(cut_sets(minimal_cut_sets(*G)), oracle_cut_sets(*G)) << spec;
  }
}

TEST(MinimalCuts, VertexBoundIsEnforced)
{
  EXPECT_THROW(minimal_cut_sets(*oracle::group("cyclic(30; a=1)")), OrderBoundError);
}

TEST(MaximalConstellations, Counts)
{
  auto z2 = maximal_constellations(*oracle::z2());
  EXPECT_EQ(z2.size(), 14u);
  for (const auto &pr : z2)
    EXPECT_EQ(pr.far_component, (std::vector<std::uint32_t>{1}));
  EXPECT_EQ(maximal_constellations(*oracle::klein()).size(), 84u);
}

TEST(MaximalConstellationsProperty, CountIsSumOverCutsAndPairsAreConstellations)
{
  for (const char *spec : {"cyclic(2; a=1, b=1)", "klein(a=10, b=01)", "cyclic(3; a=1, b=1)", "cyclic(4; a=1, b=2)"}) {
    auto G = oracle::group(spec);
    std::size_t expected = 0;
    for (const auto &c : oracle::minimal_cuts_by_subsets(*G, G->num_edges()))
      expected += (std::size_t{1} << c.size()) - 2;
    auto pairs = maximal_constellations(*G);
    EXPECT_EQ(pairs.size(), expected) << spec;
    for (const auto &pr : pairs) {
      // Ξ ∪ Θ = Γ and Ξ ∩ Θ = Γ minus the cut
      auto both = intersect(pr.xi, pr.theta);
      EXPECT_EQ(both.num_edges() + pr.c_xi.size() + pr.c_theta.size(), G->num_edges());
      EXPECT_EQ(num_components(*G, both), 2u);
      for (auto g : pr.far_component)
        EXPECT_EQ(constellation_defect(*G, pr.at(g)), "");
    }
  }
}

TEST(MaximalConstellations, EveryDeltaIsDominatedByAPair)
{
  for (const auto &G : {oracle::z2(), oracle::klein(), oracle::z3()}) {
    auto pairs = maximal_constellations(*G);
    for (auto x : delta_letters(*G)) {
      auto d = delta(*G, x);
      bool found = std::any_of(pairs.begin(), pairs.end(), [&](const MaxConstellationPair &pr) {
        bool far = std::find(pr.far_component.begin(), pr.far_component.end(), d.g) != pr.far_component.end();
        return far && pr.xi == d.xi && subset(d.theta, pr.theta);
      });
      EXPECT_TRUE(found);
    }
  }
  // over Z/2 each Δ_x is literally one of the pairs
  auto G = oracle::z2();
  auto pairs = maximal_constellations(*G);
  auto d = delta(*G, {0, 1});
  EXPECT_TRUE(std::any_of(pairs.begin(), pairs.end(),
                          [&](const MaxConstellationPair &pr) { return pr.xi == d.xi && pr.theta == d.theta; }));
}

TEST(Delta, Examples)
{
  auto G = oracle::z2();
  auto d = delta(*G, {0, 1});
  EXPECT_EQ(d.g, 1u);
  EXPECT_EQ(d.xi.num_edges(), 3u);
  EXPECT_EQ(d.theta.num_edges(), 1u);
  EXPECT_TRUE(d.theta.edges[G->edge_id(0, 0)]);

  auto Z3 = oracle::z3();
  auto db = delta(*Z3, {1, 1});
  EXPECT_EQ(db.g, Z3->generator(1));
  EXPECT_EQ(db.xi.num_edges(), Z3->num_edges() - 1);

  auto degenerate = oracle::group("cyclic(2; a=1, b=0)");
  EXPECT_THROW(delta(*degenerate, {1, 1}), PreconditionError);
}

TEST(Amalgam, IdenticalCopiesFoldTogether)
{
  for (const auto &G : {oracle::z2(), oracle::klein()}) {
    auto full = Subgraph::full(*G);
    EXPECT_TRUE(isomorphic_pointed(amalgam(*G, full, full), G->cayley_graph()));
  }
}

TEST(Amalgam, SingleEdge)
{
  auto G = oracle::z2();
  auto e = Subgraph::empty(*G);
  e.add_edge(*G, G->edge_id(0, 0));
  auto a = amalgam(*G, e, e);
  EXPECT_EQ(a.num_vertices(), 2u);
  EXPECT_EQ(a.num_edges(), 1u);
}

TEST(Amalgam, NonConstellationPairCanFoldToCompleteGraph)
{
  // Ξ = Γ∖(1,b), Θ = Γ∖(1,a) over Z/2: 1 and g stay joined in Ξ∩Θ, so
  // this is not a constellation and the amalgam collapses to Γ(Z/2)
  auto G = oracle::z2();
  auto xi = Subgraph::full(*G);
  xi.edges[G->edge_id(0, 1)] = false;
  auto theta = Subgraph::full(*G);
  theta.edges[G->edge_id(0, 0)] = false;
  EXPECT_NE(constellation_defect(*G, {xi, 1, theta}), "");
  auto a = amalgam(*G, xi, theta);
  EXPECT_TRUE(isomorphic_pointed(a, G->cayley_graph()));
}

TEST(AmalgamProperty, MaximalPairAmalgamsAreIncompleteAndContainBothCopies)
{
  for (const auto &G : {oracle::z2(), oracle::klein()}) {
    for (const auto &pr : maximal_constellations(*G)) {
      auto a = amalgam(*G, pr.xi, pr.theta);
      EXPECT_FALSE(a.is_complete());
      for (const auto *s : {&pr.xi, &pr.theta}) {
        auto sub = subgraph_automaton(*G, *s, 0);
        EXPECT_TRUE(embed_check(sub, a, a.base()).has_value());
      }
    }
  }
}

TEST(AssembleAG, Z2ContainsSevenAmalgams)
{
  auto G = oracle::z2();
  auto ag = assemble_AG(*G);
  EXPECT_EQ(ag.amalgams.size(), 7u);
  EXPECT_TRUE(ag.automaton.is_connected());
  EXPECT_FALSE(ag.automaton.is_complete());
  std::set<std::string> distinct;
  for (std::size_t i = 0; i < ag.amalgams.size(); ++i) {
    EXPECT_TRUE(embed_check(ag.amalgams[i], ag.automaton, ag.offset[i]).has_value());
    distinct.insert(canonical_encoding(ag.amalgams[i]));
  }
  // every ordered pair's amalgam is one of the assembled ones
  for (const auto &pr : maximal_constellations(*G))
    EXPECT_TRUE(distinct.count(canonical_encoding(amalgam(*G, pr.xi, pr.theta))) ||
                distinct.count(canonical_encoding(amalgam(*G, pr.theta, pr.xi))));
}

TEST(AssembleAG, SinglePairChainsToSink)
{
  auto G = oracle::group("cyclic(2; a=1)");
  auto ag = assemble_AG(*G);
  ASSERT_EQ(ag.amalgams.size(), 1u);
  EXPECT_EQ(ag.automaton.num_vertices(), ag.amalgams[0].num_vertices() + 1);
  EXPECT_EQ(ag.automaton.num_edges(), ag.amalgams[0].num_edges() + 1);
  EXPECT_EQ(ag.sink, ag.automaton.num_vertices() - 1);
}

TEST(AssembleAG, KleinContainsFortyTwoAmalgams)
{
  auto ag = assemble_AG(*oracle::klein());
  EXPECT_EQ(ag.amalgams.size(), 42u);
  for (std::size_t i = 0; i < ag.amalgams.size(); ++i)
    EXPECT_TRUE(embed_check(ag.amalgams[i], ag.automaton, ag.offset[i]).has_value());
}

TEST(AssembleAG, DeterministicText)
{
  EXPECT_EQ(write_aut(assemble_AG(*oracle::z2()).automaton), write_aut(assemble_AG(*oracle::z2()).automaton));
}
