#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "automaton.hpp"
#include "error.hpp"
#include "group.hpp"
#include "subgraph.hpp"
#include "word.hpp"

namespace arbor {

/// (Ξ, g, Θ) inside Γ(G).
struct Constellation
{
  Subgraph xi;
  std::uint32_t g = 0;
  Subgraph theta;
};

/// Reason the triple is not a constellation, or empty when it is one.
inline std::string constellation_defect(const FiniteGroup &G, const Constellation &c)
{
  check_subgraph(G, c.xi);
  check_subgraph(G, c.theta);
  if (c.g >= G.order())
    return "g is not a vertex";
  if (c.g == 0)
    return "g equals 1";
  for (const auto *s : {&c.xi, &c.theta})
    if (!s->vertices[0] || !s->vertices[c.g])
      return "both subgraphs must contain 1 and g";
  if (!is_connected(G, c.xi))
    return "Xi is not connected";
  if (!is_connected(G, c.theta))
    return "Theta is not connected";
  auto labels = component_labels(G, intersect(c.xi, c.theta));
  if (labels[0] == labels[c.g])
    return "1 and g lie in one component of the intersection";
  return {};
}

inline void validate(const FiniteGroup &G, const Constellation &c)
{
  if (auto why = constellation_defect(G, c); !why.empty())
    throw InvariantError("not a constellation: " + why);
}

/// A vertex bipartition with both sides connected, and its crossing edges.
struct MinimalCut
{
  std::vector<bool> near;          ///< side containing 1
  std::vector<std::uint32_t> cut;  ///< crossing positive-edge ids, ascending
  std::vector<std::uint32_t> far;  ///< vertices of the far side, ascending
};

inline constexpr std::size_t kCutVertexBound = 20;

/// All minimal cut sets of Γ(G): bipartitions (V1 ∋ 1, V2) with both sides
/// inducing connected subgraphs, enumerated by the bitmask of V1.
inline std::vector<MinimalCut> minimal_cut_sets(const FiniteGroup &G, std::size_t vertex_bound = kCutVertexBound)
{
  const std::size_t n = G.order();
  if (n > vertex_bound)
    throw OrderBoundError("minimal cut enumeration is limited to " + std::to_string(vertex_bound) + " vertices");
  std::vector<MinimalCut> out;
  if (n < 2)
    return out;
  auto side_connected = [&](std::uint64_t mask, bool want) {
    std::uint32_t start = kNone;
    std::size_t count = 0;
    for (std::uint32_t v = 0; v < n; ++v)
      if (((mask >> v) & 1) == want) {
        ++count;
        if (start == kNone)
          start = v;
      }
    if (count == 0)
      return false;
    std::uint64_t seen = 1ull << start;
    std::vector<std::uint32_t> queue{start};
    for (std::size_t i = 0; i < queue.size(); ++i)
      for (std::uint32_t code = 0; code < 2 * G.num_letters(); ++code) {
        auto w = G.act(queue[i], SignedLetter::from_code(code));
        if (((mask >> w) & 1) == want && !((seen >> w) & 1)) {
          seen |= 1ull << w;
          queue.push_back(w);
        }
      }
    return queue.size() == count;
  };
  const std::uint64_t full = (n == 64) ? ~0ull : ((1ull << n) - 1);
  // bit 0 always set: V1 contains the identity
  for (std::uint64_t rest = 0; rest < (1ull << (n - 1)); ++rest) {
    std::uint64_t mask = (rest << 1) | 1;
    if (mask == full)
      continue;
    if (!side_connected(mask, true) || !side_connected(mask, false))
      continue;
    MinimalCut c;
    c.near.assign(n, false);
    for (std::uint32_t v = 0; v < n; ++v) {
      c.near[v] = (mask >> v) & 1;
      if (!c.near[v])
        c.far.push_back(v);
    }
    for (std::uint32_t e = 0; e < G.num_edges(); ++e)
      if (c.near[G.edge_source(e)] != c.near[G.edge_target(e)])
        c.cut.push_back(e);
    out.push_back(std::move(c));
  }
  return out;
}

/// One ordered partition (C_Ξ, C_Θ) of a minimal cut; Ξ = Γ∖C_Θ, Θ = Γ∖C_Ξ.
struct MaxConstellationPair
{
  std::size_t cut_index = 0;
  std::vector<std::uint32_t> c_xi;
  std::vector<std::uint32_t> c_theta;
  std::vector<std::uint32_t> far_component;
  Subgraph xi;
  Subgraph theta;

  Constellation at(std::uint32_t g) const { return {xi, g, theta}; }
};

/// Every ordered nonempty partition of every minimal cut; each (pair, g)
/// with g in the far component is validated as a constellation.
inline std::vector<MaxConstellationPair> maximal_constellations(const FiniteGroup &G,
                                                                std::size_t vertex_bound = kCutVertexBound)
{
  auto cuts = minimal_cut_sets(G, vertex_bound);
  std::vector<MaxConstellationPair> out;
  for (std::size_t ci = 0; ci < cuts.size(); ++ci) {
    const auto &cut = cuts[ci].cut;
    if (cut.size() >= 63)
      throw OrderBoundError("cut too large to split");
    const std::uint64_t parts = 1ull << cut.size();
    for (std::uint64_t m = 1; m + 1 < parts; ++m) {
      MaxConstellationPair pr;
      pr.cut_index = ci;
      pr.far_component = cuts[ci].far;
      pr.xi = Subgraph::full(G);
      pr.theta = Subgraph::full(G);
      for (std::size_t j = 0; j < cut.size(); ++j) {
        if ((m >> j) & 1) {
          pr.c_xi.push_back(cut[j]);
          pr.theta.edges[cut[j]] = false;
        } else {
          pr.c_theta.push_back(cut[j]);
          pr.xi.edges[cut[j]] = false;
        }
      }
      for (auto g : pr.far_component)
        validate(G, pr.at(g));
      out.push_back(std::move(pr));
    }
  }
  return out;
}

/// Δ_x = (Γ∖(1,x)^{±1}, [x], {1, (1,x)^{±1}, x}).
inline Constellation delta(const FiniteGroup &G, SignedLetter x)
{
  if (x.index >= G.num_letters())
    throw InputError("letter outside the group's alphabet");
  auto e = G.geometric_edge(0, x);
  Constellation c;
  c.g = G.act(0, x);
  if (c.g == 0)
    throw PreconditionError("Delta is degenerate: the letter acts trivially at 1");
  c.xi = Subgraph::full(G);
  c.xi.edges[e] = false;
  c.theta = Subgraph::empty(G);
  c.theta.add_edge(G, e);
  if (auto why = constellation_defect(G, c); !why.empty())
    throw PreconditionError("Delta is not a constellation: " + why);
  return c;
}

/// Ξ ⊔₁ Θ: disjoint copies with the two copies of 1 identified, then folded.
inline InverseAutomaton amalgam(const FiniteGroup &G, const Subgraph &xi, const Subgraph &theta)
{
  check_subgraph(G, xi);
  check_subgraph(G, theta);
  if (!xi.vertices[0] || !theta.vertices[0])
    throw InputError("amalgam inputs must contain the vertex 1");
  const auto n = static_cast<std::uint32_t>(G.order());
  // vertex h of the Θ copy is n + h, except that 1 maps to 0
  auto theta_id = [&](std::uint32_t h) { return h == 0 ? 0u : n + h; };
  LabeledGraph lg;
  lg.num_vertices = 2 * n;
  lg.num_letters = G.num_letters();
  lg.base = 0;
  for (std::uint32_t e = 0; e < G.num_edges(); ++e) {
    if (xi.edges[e])
      lg.edges.push_back({G.edge_source(e), G.edge_label(e), G.edge_target(e)});
    if (theta.edges[e])
      lg.edges.push_back({theta_id(G.edge_source(e)), G.edge_label(e), theta_id(G.edge_target(e))});
  }
  // drop vertices outside both copies before folding
  std::vector<bool> keep(2 * n, false);
  for (std::uint32_t h = 0; h < n; ++h) {
    keep[h] = xi.vertices[h];
    if (theta.vertices[h])
      keep[theta_id(h)] = true;
  }
  std::vector<std::uint32_t> index(2 * n, kNone);
  std::uint32_t m = 0;
  for (std::uint32_t v = 0; v < 2 * n; ++v)
    if (keep[v])
      index[v] = m++;
  for (auto &e : lg.edges) {
    e.src = index[e.src];
    e.dst = index[e.dst];
  }
  lg.num_vertices = m;
  lg.base = index[0];
  return fold(lg);
}

/// Canonical text of an automaton, used to order amalgams.
inline std::string canonical_encoding(const InverseAutomaton &a)
{
  auto c = canonical(a);
  std::string s = std::to_string(c.num_vertices()) + ":";
  for (const auto &e : c.edges())
    s += std::to_string(e.src) + "," + std::to_string(e.label) + "," + std::to_string(e.dst) + ";";
  return s;
}

struct AssembledAG
{
  InverseAutomaton automaton{1, 1, 0};
  std::vector<InverseAutomaton> amalgams;   ///< in chain order
  std::vector<std::uint32_t> letter;        ///< chain letter of each amalgam
  std::vector<std::uint32_t> offset;        ///< vertex of each amalgam's base in the result
  std::uint32_t sink = 0;
};

/// 𝒜G: one amalgam per unordered maximal pair, chained per letter by bridge
/// edges and attached to a fresh sink.
inline AssembledAG assemble_AG(const FiniteGroup &G, std::size_t vertex_bound = kCutVertexBound)
{
  auto pairs = maximal_constellations(G, vertex_bound);
  const std::size_t L = G.num_letters();

  struct Item
  {
    std::string key;
    InverseAutomaton a;
    std::uint32_t letter;
  };
  std::vector<Item> items;
  for (const auto &pr : pairs) {
    // unordered: keep the orientation whose C_Ξ holds the smallest cut edge
    if (pr.c_xi.front() > pr.c_theta.front())
      continue;
    auto a = amalgam(G, pr.xi, pr.theta);
    std::uint32_t letter = kNone;
    for (std::uint32_t l = 0; l < L; ++l)
      if (!a.is_total(l)) {
        letter = l;
        break;
      }
    if (letter == kNone)
      throw InvariantError("amalgam of a maximal constellation is complete");
    items.push_back({canonical_encoding(a), std::move(a), letter});
  }
  std::stable_sort(items.begin(), items.end(), [](const Item &x, const Item &y) {
    return x.letter != y.letter ? x.letter < y.letter : x.key < y.key;
  });

  AssembledAG out;
  std::size_t total = 1;
  for (const auto &it : items)
    total += it.a.num_vertices();
  InverseAutomaton ag(total, L, 0);
  std::uint32_t next = 0;
  for (const auto &it : items) {
    out.offset.push_back(next);
    for (const auto &e : it.a.edges())
      ag.add_edge(next + e.src, e.label, next + e.dst);
    next += static_cast<std::uint32_t>(it.a.num_vertices());
  }
  out.sink = next;

  auto first_lacking = [&](std::size_t i, std::uint32_t l, bool outgoing) {
    const auto &a = items[i].a;
    for (std::uint32_t v = 0; v < a.num_vertices(); ++v) {
      auto w = out.offset[i] + v;
      if ((outgoing ? ag.next(w, l) : ag.prev(w, l)) == kNone)
        return w;
    }
    throw InvariantError("no free vertex for a bridge edge");
  };
  for (std::size_t i = 0; i < items.size(); ++i) {
    auto l = items[i].letter;
    bool last = i + 1 == items.size() || items[i + 1].letter != l;
    auto from = first_lacking(i, l, true);
    ag.add_edge(from, l, last ? out.sink : first_lacking(i + 1, l, false));
  }

  for (auto &it : items) {
    out.letter.push_back(it.letter);
    out.amalgams.push_back(std::move(it.a));
  }
  out.automaton = std::move(ag);

  ensure(out.automaton.is_connected(), "assembled automaton is disconnected");
  ensure(!out.automaton.is_complete(), "assembled automaton is complete");
  for (std::size_t i = 0; i < out.amalgams.size(); ++i)
    ensure(embed_check(out.amalgams[i], out.automaton, out.offset[i]).has_value(),
           "amalgam does not embed in the assembled automaton");
  return out;
}

} // namespace arbor
