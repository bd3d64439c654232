#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

using namespace arbor;
using oracle::w;

namespace {

/// core({a², b}) plus a pendant b-edge from the non-base vertex.
InverseAutomaton padded_core()
{
  auto c = core_of_words({w("aa"), w("b")}, 2);
  InverseAutomaton a(3, 2, c.base());
  for (const auto &e : c.edges())
    a.add_edge(e.src, e.label, e.dst);
  auto far = c.next(c.base(), 0);
  a.add_edge(far, 1, 2);
  return a;
}

} // namespace

TEST(SmallestPrimeGreater, Examples)
{
  EXPECT_EQ(smallest_prime_greater(3), 5u);
  EXPECT_EQ(smallest_prime_greater(4), 5u);
  EXPECT_EQ(smallest_prime_greater(5), 7u);
}

TEST(Completion, PaddedCoreAtMinimalN)
{
  auto A = padded_core();
  auto r = complete_to_alternating(A, 10);
  EXPECT_EQ(r.plan.q, 5u);
  EXPECT_EQ(r.plan.k, 0u);
  EXPECT_TRUE(r.certificate.valid());
  EXPECT_TRUE(check_completion(A, r).ok());
}

TEST(Completion, NTooSmallIsRejected)
{
  try {
    complete_to_alternating(padded_core(), 9);
    FAIL() << "expected a precondition error";
  } catch (const PreconditionError &e) {
    EXPECT_NE(std::string(e.what()).find("n < m+q+2"), std::string::npos);
  }
}

TEST(Completion, RandomFiveVertexAutomaton)
{
  std::mt19937_64 rng(2);
  auto A = random_incomplete_automaton(5, 2, rng);
  auto r = complete_to_alternating(A, 14);
  EXPECT_EQ(r.plan.q, 7u);
  EXPECT_EQ(r.plan.k, 0u);
  EXPECT_TRUE(r.certificate.valid());
  EXPECT_TRUE(check_completion(A, r).ok());
}

TEST(Completion, PreconditionsAreChecked)
{
  InverseAutomaton one_letter(3, 1, 0);
  one_letter.add_edge(0, 0, 1);
  EXPECT_THROW(complete_to_alternating(one_letter, 20), PreconditionError);
  InverseAutomaton small(2, 2, 0);
  small.add_edge(0, 0, 1);
  EXPECT_THROW(complete_to_alternating(small, 20), PreconditionError);
  InverseAutomaton disconnected(3, 2, 0);
  disconnected.add_edge(0, 0, 1);
  EXPECT_THROW(complete_to_alternating(disconnected, 20), PreconditionError);
  EXPECT_THROW(complete_to_alternating(oracle::klein()->cayley_graph(), 20), PreconditionError);
}

TEST(Completion, SameSeedSameAutomaton)
{
  auto A = padded_core();
  for (std::uint64_t seed : {0u, 7u, 99u})
    EXPECT_EQ(complete_to_alternating(A, 12, seed).automaton, complete_to_alternating(A, 12, seed).automaton);
}

TEST(CompletionProperty, CorpusOverThreeLetters)
{
  // a third letter exercises the free-spare branch of the letter closure
  for (const auto &A : corpus(5, 8, 3, 7, 3))
    for (std::size_t extra : {0u, 1u, 3u}) {
      auto n = A.num_vertices() + smallest_prime_greater(A.num_vertices()) + 2 + extra;
      auto r = complete_to_alternating(A, n, extra);
      EXPECT_TRUE(check_completion(A, r).ok());
      EXPECT_EQ(r.automaton.num_vertices(), n);
    }
}

TEST(CompletionProperty, CertificateImpliesAlternatingOrderOnSmallDegree)
{
  // smallest legal degree is 10 (m=3, q=5); 10!/2 is too many to enumerate
  // by closure, so compare with the library's bounded enumerator instead
  auto r = complete_to_alternating(padded_core(), 10);
  ASSERT_TRUE(r.certificate.valid());
  EXPECT_EQ(enumerate_order(transition_group(r.automaton), 2000000), std::optional<std::size_t>(1814400));
}

TEST(Predissolver, AGOfZ2IsCertified)
{
  auto ag = assemble_AG(*oracle::z2());
  auto m = ag.automaton.num_vertices();
  auto r = complete_to_alternating(ag.automaton, m + smallest_prime_greater(m) + 2);
  auto cert = predissolver_certificate(r.automaton, ag.amalgams);
  EXPECT_EQ(cert.witness.size(), 7u);
  EXPECT_TRUE(cert.certified());
}

TEST(Predissolver, ForeignAmalgamIsReportedMissing)
{
  auto ag = assemble_AG(*oracle::z2());
  auto m = ag.automaton.num_vertices();
  auto r = complete_to_alternating(ag.automaton, m + smallest_prime_greater(m) + 2);
  // an a-path longer than the whole completion cannot embed
  std::vector<InverseAutomaton> foreign;
  InverseAutomaton long_path(80, 2, 0);
  for (std::uint32_t v = 0; v + 1 < 80; ++v)
    long_path.add_edge(v, 0, v + 1);
  foreign.push_back(long_path);
  auto cert = predissolver_certificate(r.automaton, foreign);
  EXPECT_FALSE(cert.certified());
}

TEST(Predissolver, EmptyListIsVacuous)
{
  EXPECT_TRUE(predissolver_certificate(oracle::z2()->cayley_graph(), {}).certified());
}

TEST(AlternatingKernel, ProductWithZ2HasKernelA5)
{
  auto a5 = oracle::group("perm(5; a=(0 1 2), b=(0 1 2 3 4))");
  ASSERT_EQ(a5->order(), 60u);
  auto P = product_A(a5, oracle::z2());
  EXPECT_EQ(P->order(), 120u);
  auto phi = canonical_morphism(P, oracle::z2());
  ASSERT_TRUE(phi.has_value());
  EXPECT_EQ(kernel_elements(*phi).size(), 60u);
}

TEST(Corpus, DeterministicAndValid)
{
  auto x = corpus(1, 10, 3, 8);
  auto y = corpus(1, 10, 3, 8);
  ASSERT_EQ(x.size(), 10u);
  for (std::size_t i = 0; i < x.size(); ++i) {
    EXPECT_EQ(write_aut(x[i]), write_aut(y[i]));
    EXPECT_TRUE(x[i].is_connected());
    EXPECT_FALSE(x[i].is_complete());
    EXPECT_GE(x[i].num_vertices(), 3u);
    EXPECT_LE(x[i].num_vertices(), 8u);
    EXPECT_EQ(fold(x[i].graph()).num_edges(), x[i].num_edges());
  }
  EXPECT_THROW(corpus(1, 10, 2, 8), InputError);
}
