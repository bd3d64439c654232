#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "automaton.hpp"
#include "error.hpp"
#include "gaschuetz.hpp"
#include "group.hpp"
#include "subgraph.hpp"
#include "word.hpp"

namespace arbor {

/// T = {[w]_G : w ∈ ⟨gens⟩} as a membership mask.
inline std::vector<bool> image_subgroup(const FiniteGroup &G, const std::vector<Word> &gens)
{
  std::vector<std::uint32_t> images;
  for (const auto &w : gens)
    images.push_back(G.evaluate(w));
  return subgroup_generated(G, images);
}

/// Σ(G, T, A) on right cosets Tg, base T; coset[g] gives the vertex of g.
struct SchreierGraph
{
  InverseAutomaton automaton{1, 1, 0};
  std::vector<std::uint32_t> coset;
};

inline SchreierGraph schreier_graph(const FiniteGroup &G, const std::vector<bool> &T)
{
  std::vector<std::uint32_t> members;
  for (std::uint32_t t = 0; t < G.order(); ++t)
    if (T[t])
      members.push_back(t);
  SchreierGraph s;
  s.coset.assign(G.order(), kNone);
  // cosets numbered in BFS order from T, letters in alphabet order
  std::vector<std::uint32_t> reps{0};
  for (auto t : members)
    s.coset[t] = 0;
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < reps.size(); ++i)
    for (std::uint32_t a = 0; a < G.num_letters(); ++a) {
      auto g = G.right(reps[i], a);
      if (s.coset[g] == kNone) {
        auto id = static_cast<std::uint32_t>(reps.size());
        reps.push_back(g);
        for (auto t : members)
          s.coset[G.multiply(t, g)] = id;
      }
      edges.push_back({static_cast<std::uint32_t>(i), a, s.coset[g]});
    }
  s.automaton = InverseAutomaton(reps.size(), G.num_letters(), 0);
  for (const auto &e : edges)
    s.automaton.add_edge(e.src, e.label, e.dst);
  ensure(s.automaton.is_complete(), "Schreier graph is not complete");
  return s;
}

/// Stallings automaton of the level-G closure of ⟨gens⟩: core of Σ(G,T,A).
inline InverseAutomaton closure_at_level(const std::vector<Word> &gens, const FiniteGroup &G)
{
  return trim(schreier_graph(G, image_subgroup(G, gens)).automaton);
}

struct ExtendibilityReport
{
  bool extendible = false;         ///< ψ(𝒜^G) ≅ 𝒜
  bool embeds = false;             ///< 𝒜 embeds into Σ at T
  InverseAutomaton quotient{1, 1, 0}; ///< ψ(𝒜^G)
};

/// Both decision routes: the image of 𝒜^G in Σ(G,T,A), and direct embedding.
inline ExtendibilityReport extendible_at_level(const InverseAutomaton &A, const FiniteGroup &G)
{
  if (!A.is_connected())
    throw PreconditionError("automaton must be connected");
  auto span = span_from_base(A, G);
  std::vector<bool> T(G.order(), false);
  for (auto h : span.fiber[A.base()])
    T[h] = true;
  auto sigma = schreier_graph(G, T);

  // ψ(𝒜^G): vertices and edges of 𝒜^G pushed to cosets
  const auto nc = sigma.automaton.num_vertices();
  std::vector<std::uint32_t> index(nc, kNone);
  std::uint32_t m = 0;
  for (std::uint32_t h = 0; h < G.order(); ++h)
    if (span.subgraph.vertices[h] && index[sigma.coset[h]] == kNone)
      index[sigma.coset[h]] = m++;
  InverseAutomaton q(m, G.num_letters(), index[sigma.coset[0]]);
  for (std::uint32_t e = 0; e < G.num_edges(); ++e)
    if (span.subgraph.edges[e])
      q.add_edge(index[sigma.coset[G.edge_source(e)]], G.edge_label(e), index[sigma.coset[G.edge_target(e)]]);

  ExtendibilityReport r;
  r.quotient = canonical(q);
  r.extendible = isomorphic_pointed(r.quotient, A);
  r.embeds = embed_check(A, sigma.automaton, 0).has_value();
  return r;
}

/// [w]_G ∈ T_1·T_2·…·T_n, the set product computed literally.
inline bool product_membership_at_level(const Word &w, const std::vector<std::vector<Word>> &subgroups,
                                        const FiniteGroup &G)
{
  std::vector<bool> current(G.order(), false);
  current[0] = true;
  for (const auto &gens : subgroups) {
    auto T = image_subgroup(G, gens);
    std::vector<bool> next(G.order(), false);
    for (std::uint32_t x = 0; x < G.order(); ++x)
      if (current[x])
        for (std::uint32_t t = 0; t < G.order(); ++t)
          if (T[t])
            next[G.multiply(x, t)] = true;
    current = std::move(next);
  }
  return current[G.evaluate(w)];
}

/// Membership of w in the level closure at every level of a materialized tower.
inline std::vector<bool> closure_chain(const Word &w, const std::vector<Word> &gens, const Tower &t)
{
  std::vector<bool> out;
  for (const auto &level : t.levels) {
    out.push_back(member(closure_at_level(gens, *level), w));
    if (out.size() >= 2)
      ensure(out[out.size() - 2] || !out.back(), "closure chain is not monotone");
  }
  return out;
}

} // namespace arbor
