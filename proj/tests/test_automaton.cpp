#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"

using namespace arbor;
using oracle::w;

namespace {

LabeledGraph bouquet(const std::vector<Word> &loops, std::size_t letters)
{
  LabeledGraph g;
  g.num_letters = letters;
  g.num_vertices = 1;
  g.base = 0;
  for (const auto &x : loops) {
    std::uint32_t cur = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      std::uint32_t nxt = i + 1 == x.size() ? 0u : static_cast<std::uint32_t>(g.num_vertices++);
      auto l = x.letters[i];
      if (l.sign > 0)
        g.edges.push_back({cur, l.index, nxt});
      else
        g.edges.push_back({nxt, l.index, cur});
      cur = nxt;
    }
  }
  return g;
}

InverseAutomaton single_a_edge()
{
  InverseAutomaton a(2, 2, 0);
  a.add_edge(0, 0, 1);
  return a;
}

InverseAutomaton a_loop()
{
  InverseAutomaton a(1, 2, 0);
  a.add_edge(0, 0, 0);
  return a;
}

} // namespace

TEST(Fold, BouquetOfSquareAndConjugate)
{
  auto a = fold(bouquet({w("aa"), w("abA")}, 2));
  ASSERT_EQ(a.num_vertices(), 2u);
  ASSERT_EQ(a.num_edges(), 3u);
  auto x = a.next(a.base(), 0);
  ASSERT_NE(x, kNone);
  EXPECT_NE(x, a.base());
  EXPECT_EQ(a.next(x, 0), a.base());
  EXPECT_EQ(a.next(x, 1), x);
}

TEST(Fold, FoldedInputIsFixedUpToRenaming)
{
  auto core = core_of_words({w("aa"), w("b")}, 2);
  EXPECT_TRUE(isomorphic_pointed(fold(core.graph()), core));
}

TEST(Fold, ParallelEqualLoopsMerge)
{
  auto a = fold(bouquet({w("a"), w("a")}, 2));
  EXPECT_EQ(a.num_vertices(), 1u);
  EXPECT_EQ(a.num_edges(), 1u);
  EXPECT_EQ(a.next(0, 0), 0u);
}

TEST(FoldProperty, ConfluentUnderEdgeOrder)
{
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Word> gens;
    for (int i = 0; i < 3; ++i)
      gens.push_back(oracle::random_word(rng, 2, 6, true));
    auto g = bouquet(gens, 2);
    auto ref = canonical(fold(g));
    for (int k = 0; k < 20; ++k) {
      std::shuffle(g.edges.begin(), g.edges.end(), rng);
      EXPECT_EQ(canonical(fold(g)), ref);
    }
  }
}

TEST(Core, SquareAndB)
{
  auto c = core_of_words({w("aa"), w("b")}, 2);
  EXPECT_EQ(c.num_vertices(), 2u);
  EXPECT_EQ(c.num_edges(), 3u);
  EXPECT_EQ(c.next(c.base(), 1), c.base());
  EXPECT_EQ(rank_from_core(c), 2);
}

TEST(Core, SingleLetterIsALoop)
{
  auto c = core_of_words({w("a")}, 2);
  EXPECT_EQ(c.num_vertices(), 1u);
  EXPECT_EQ(c.next(0, 0), 0u);
}

TEST(Core, AlreadyReducedFoldStaysAfterTrim)
{
  auto c = core_of_words({w("aa"), w("abA")}, 2);
  EXPECT_TRUE(isomorphic_pointed(c, fold(bouquet({w("aa"), w("abA")}, 2))));
}

TEST(Member, Examples)
{
  auto c = core_of_words({w("aa"), w("b")}, 2);
  EXPECT_TRUE(member(c, w("aab")));
  EXPECT_TRUE(member(c, Word{}));
  EXPECT_FALSE(member(c, w("a")));
}

TEST(MemberProperty, AgreesWithProductEnumeration)
{
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Word> gens{oracle::random_word(rng, 2, 3, true), oracle::random_word(rng, 2, 3, true)};
    auto c = core_of_words(gens, 2);
    auto ball = oracle::subgroup_ball(gens, 8);
    for (const auto &x : oracle::all_reduced_words(2, 4))
      EXPECT_EQ(member(c, x), ball.count(oracle::key(x)) > 0) << format_word(x, Alphabet::standard(2));
  }
}

TEST(Rank, Examples)
{
  auto bouquet2 = core_of_words({w("a"), w("b")}, 2);
  EXPECT_EQ(rank_from_core(bouquet2), 2);
  auto bouquet3 = core_of_words({w("a"), w("b"), w("c", 3)}, 3);
  EXPECT_EQ(rank_from_core(bouquet3), 3);
  InverseAutomaton two(2, 2, 0);
  two.add_edge(0, 0, 1);
  two.add_edge(1, 0, 0);
  two.add_edge(0, 1, 1);
  two.add_edge(1, 1, 0);
  EXPECT_EQ(rank_from_core(two), 3);
}

TEST(EmbedCheck, Examples)
{
  auto cay = oracle::z2()->cayley_graph();
  auto e = embed_check(single_a_edge(), cay, 0);
  ASSERT_TRUE(e.has_value());
  EXPECT_EQ((*e)[0], 0u);
  EXPECT_EQ((*e)[1], 1u);
  EXPECT_FALSE(embed_check(a_loop(), cay, 0).has_value());
  auto c = core_of_words({w("aa"), w("abA")}, 2);
  auto id = embed_check(c, c, c.base());
  ASSERT_TRUE(id.has_value());
  for (std::uint32_t v = 0; v < c.num_vertices(); ++v)
    EXPECT_EQ((*id)[v], v);
}

TEST(Product, Examples)
{
  auto ca = core_of_words({w("a")}, 2);
  auto caa = core_of_words({w("aa")}, 2);
  EXPECT_TRUE(isomorphic_pointed(product_automaton(ca, caa), caa));
  EXPECT_TRUE(isomorphic_pointed(product_automaton(caa, caa), caa));
  auto cb = core_of_words({w("b")}, 2);
  auto meet = product_automaton(ca, cb);
  EXPECT_EQ(meet.num_vertices(), 1u);
  EXPECT_EQ(meet.num_edges(), 0u);
}

TEST(ProductProperty, RecognizesIntersection)
{
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 15; ++trial) {
    auto a = core_of_words({oracle::random_word(rng, 2, 4, true), oracle::random_word(rng, 2, 4, true)}, 2);
    auto b = core_of_words({oracle::random_word(rng, 2, 4, true), oracle::random_word(rng, 2, 4, true)}, 2);
    auto p = product_automaton(a, b);
    for (const auto &x : oracle::all_reduced_words(2, 6))
      EXPECT_EQ(member(p, x), member(a, x) && member(b, x));
  }
}

TEST(TransitionGroup, Examples)
{
  auto z3 = transition_group(oracle::z3()->cayley_graph());
  auto three = Permutation::parse("(0 1 2)", 3);
  EXPECT_EQ(z3.gens[0], three);
  EXPECT_EQ(z3.gens[1], three);

  InverseAutomaton one(1, 2, 0);
  one.add_edge(0, 0, 0);
  one.add_edge(0, 1, 0);
  for (const auto &g : transition_group(one).gens)
    EXPECT_EQ(g, Permutation::identity(1));

  for (const auto &g : transition_group(oracle::klein()->cayley_graph()).gens) {
    auto type = g.cycle_type();
    std::sort(type.begin(), type.end());
    EXPECT_EQ(type, (std::vector<std::size_t>{2, 2}));
  }
}

TEST(SpanFromBase, Examples)
{
  auto G = oracle::z2();
  auto full = span_from_base(core_of_words({w("a"), w("b")}, 2), *G);
  EXPECT_EQ(full.subgraph, Subgraph::full(*G));

  auto loop = span_from_base(a_loop(), *G);
  EXPECT_EQ(loop.subgraph.num_vertices(), 2u);
  EXPECT_EQ(loop.subgraph.num_edges(), 2u);
  EXPECT_TRUE(loop.subgraph.edges[G->edge_id(0, 0)]);
  EXPECT_TRUE(loop.subgraph.edges[G->edge_id(1, 0)]);

  auto edge = span_from_base(single_a_edge(), *G);
  EXPECT_EQ(edge.subgraph.num_edges(), 1u);
  EXPECT_TRUE(edge.subgraph.edges[G->edge_id(0, 0)]);
}

TEST(AutIo, CoreWritesThreeEdgesAndBase)
{
  auto text = write_aut(core_of_words({w("aa"), w("b")}, 2));
  auto count = [&](const std::string &kw) {
    std::size_t n = 0;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
      n += line.rfind(kw, 0) == 0;
    return n;
  };
  EXPECT_EQ(count("edge "), 3u);
  EXPECT_EQ(count("base "), 1u);
}

TEST(AutIo, EmptyGraphWithBase)
{
  EXPECT_EQ(write_aut(InverseAutomaton(1, 0, 0)), "vertex 0\nbase 0\n");
}

TEST(AutIo, RoundTripIsByteIdentical)
{
  for (const auto &a : {core_of_words({w("aa"), w("abA")}, 2), oracle::klein()->cayley_graph(),
                        assemble_AG(*oracle::z2()).automaton}) {
    auto text = write_aut(a);
    EXPECT_EQ(write_aut(read_aut(text)), text);
    EXPECT_EQ(automaton_from_graph(read_aut(text)), a);
  }
}

TEST(AutIo, RejectsMalformedInput)
{
  EXPECT_THROW(read_aut("edge 0 a\n"), InputError);
  EXPECT_THROW(read_aut("frobnicate 1\n"), InputError);
  EXPECT_THROW(automaton_from_graph(read_aut("edge 0 a 1\nedge 0 a 2\n")), InputError);
}

TEST(AutIo, DotMentionsEveryEdge)
{
  auto dot = to_dot(core_of_words({w("aa"), w("b")}, 2));
  EXPECT_NE(dot.find("digraph"), std::string::npos);
  EXPECT_EQ(std::count(dot.begin(), dot.end(), '>'), 3);
}
