#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "automaton.hpp"
#include "error.hpp"
#include "group.hpp"
#include "word.hpp"

namespace arbor {

/// A subgraph of Γ(G): a positive-edge mask plus a vertex mask that
/// contains every edge endpoint.
struct Subgraph
{
  std::vector<bool> vertices;
  std::vector<bool> edges;

  static Subgraph full(const FiniteGroup &g)
  {
    return {std::vector<bool>(g.order(), true), std::vector<bool>(g.num_edges(), true)};
  }
  static Subgraph empty(const FiniteGroup &g)
  {
    return {std::vector<bool>(g.order(), false), std::vector<bool>(g.num_edges(), false)};
  }

  void add_edge(const FiniteGroup &g, std::uint32_t e)
  {
    edges[e] = true;
    vertices[g.edge_source(e)] = true;
    vertices[g.edge_target(e)] = true;
  }

  std::size_t num_vertices() const { return static_cast<std::size_t>(std::count(vertices.begin(), vertices.end(), true)); }
  std::size_t num_edges() const { return static_cast<std::size_t>(std::count(edges.begin(), edges.end(), true)); }

  bool contains(const Subgraph &other) const
  {
    for (std::size_t v = 0; v < vertices.size(); ++v)
      if (other.vertices[v] && !vertices[v])
        return false;
    for (std::size_t e = 0; e < edges.size(); ++e)
      if (other.edges[e] && !edges[e])
        return false;
    return true;
  }

  bool operator==(const Subgraph &) const = default;
};

inline Subgraph intersect(const Subgraph &x, const Subgraph &y)
{
  Subgraph s = x;
  for (std::size_t v = 0; v < s.vertices.size(); ++v)
    s.vertices[v] = x.vertices[v] && y.vertices[v];
  for (std::size_t e = 0; e < s.edges.size(); ++e)
    s.edges[e] = x.edges[e] && y.edges[e];
  return s;
}

inline void check_subgraph(const FiniteGroup &g, const Subgraph &s)
{
  if (s.vertices.size() != g.order() || s.edges.size() != g.num_edges())
    throw InputError("subgraph does not match the Cayley graph size");
  for (std::uint32_t e = 0; e < s.edges.size(); ++e)
    if (s.edges[e] && (!s.vertices[g.edge_source(e)] || !s.vertices[g.edge_target(e)]))
      throw InputError("subgraph edge with an endpoint outside the vertex set");
}

/// Component labels over the subgraph's vertices (kNone outside), numbered
/// in order of their smallest vertex.
inline std::vector<std::uint32_t> component_labels(const FiniteGroup &g, const Subgraph &s)
{
  std::vector<std::uint32_t> label(g.order(), kNone);
  std::uint32_t next = 0;
  std::vector<std::uint32_t> queue;
  for (std::uint32_t r = 0; r < g.order(); ++r) {
    if (!s.vertices[r] || label[r] != kNone)
      continue;
    label[r] = next;
    queue.assign(1, r);
    for (std::size_t i = 0; i < queue.size(); ++i) {
      auto v = queue[i];
      for (std::uint32_t a = 0; a < g.num_letters(); ++a) {
        if (s.edges[g.edge_id(v, a)]) {
          auto w = g.right(v, a);
          if (label[w] == kNone) {
            label[w] = next;
            queue.push_back(w);
          }
        }
        auto u = g.right_inverse(v, a);
        if (s.edges[g.edge_id(u, a)] && label[u] == kNone) {
          label[u] = next;
          queue.push_back(u);
        }
      }
    }
    ++next;
  }
  return label;
}

inline std::size_t num_components(const FiniteGroup &g, const Subgraph &s)
{
  std::uint32_t most = 0;
  bool any = false;
  for (auto l : component_labels(g, s))
    if (l != kNone) {
      most = std::max(most, l);
      any = true;
    }
  return any ? most + 1 : 0;
}

inline bool is_connected(const FiniteGroup &g, const Subgraph &s) { return num_components(g, s) == 1; }

/// The component of `root` as a subgraph.
inline Subgraph component_of(const FiniteGroup &g, const Subgraph &s, std::uint32_t root)
{
  auto labels = component_labels(g, s);
  Subgraph out = Subgraph::empty(g);
  if (!s.vertices[root])
    return out;
  for (std::uint32_t v = 0; v < g.order(); ++v)
    out.vertices[v] = labels[v] == labels[root];
  for (std::uint32_t e = 0; e < g.num_edges(); ++e)
    out.edges[e] = s.edges[e] && out.vertices[g.edge_source(e)];
  return out;
}

/// Shortest word labelling a path from `from` to `to` inside s. With
/// `positive_first`, paths using positive letters only are preferred.
inline std::optional<Word> path_word(const FiniteGroup &g, const Subgraph &s, std::uint32_t from, std::uint32_t to,
                                     bool positive_first = true)
{
  auto search = [&](bool directed) -> std::optional<Word> {
    std::vector<std::uint32_t> prev(g.order(), kNone);
    std::vector<SignedLetter> via(g.order());
    std::vector<std::uint32_t> queue{from};
    prev[from] = from;
    for (std::size_t i = 0; i < queue.size() && prev[to] == kNone; ++i) {
      auto v = queue[i];
      for (std::uint32_t code = 0; code < 2 * g.num_letters(); ++code) {
        auto x = SignedLetter::from_code(code);
        if (directed && x.sign < 0)
          continue;
        if (!s.edges[g.geometric_edge(v, x)])
          continue;
        auto w = g.act(v, x);
        if (prev[w] == kNone) {
          prev[w] = v;
          via[w] = x;
          queue.push_back(w);
        }
      }
    }
    if (prev[to] == kNone)
      return std::nullopt;
    Word w;
    for (auto v = to; v != from; v = prev[v])
      w.letters.push_back(via[v]);
    std::reverse(w.letters.begin(), w.letters.end());
    return w;
  };
  if (!s.vertices[from] || !s.vertices[to])
    return std::nullopt;
  if (positive_first)
    if (auto w = search(true))
      return w;
  return search(false);
}

/// True when the path of w from `start` stays inside s.
inline bool path_inside(const FiniteGroup &g, const Subgraph &s, const Word &w, std::uint32_t start = 0)
{
  if (!s.vertices[start])
    return false;
  auto v = start;
  for (auto x : w.letters) {
    if (!s.edges[g.geometric_edge(v, x)])
      return false;
    v = g.act(v, x);
  }
  return true;
}

/// Dense mod-p edge vectors of tree paths from `root` in its component of s
/// (index by vertex; empty for vertices outside the component), plus the
/// fundamental cycles of the spanning tree.
struct CycleData
{
  std::vector<std::vector<std::uint32_t>> potential;
  std::vector<std::vector<std::uint32_t>> cycles;
};

inline CycleData spanning_tree_cycles(const FiniteGroup &g, const Subgraph &s, std::uint32_t root, std::uint32_t p)
{
  const std::size_t dim = g.num_edges();
  CycleData d;
  d.potential.assign(g.order(), {});
  if (!s.vertices[root])
    return d;
  std::vector<bool> tree_edge(dim, false);
  d.potential[root].assign(dim, 0);
  std::vector<std::uint32_t> queue{root};
  for (std::size_t i = 0; i < queue.size(); ++i) {
    auto v = queue[i];
    for (std::uint32_t code = 0; code < 2 * g.num_letters(); ++code) {
      auto x = SignedLetter::from_code(code);
      auto e = g.geometric_edge(v, x);
      if (!s.edges[e])
        continue;
      auto w = g.act(v, x);
      if (!d.potential[w].empty())
        continue;
      d.potential[w] = d.potential[v];
      auto &entry = d.potential[w][e];
      entry = (entry + (x.sign > 0 ? 1 : p - 1)) % p;
      tree_edge[e] = true;
      queue.push_back(w);
    }
  }
  for (std::uint32_t e = 0; e < dim; ++e) {
    if (!s.edges[e] || tree_edge[e] || d.potential[g.edge_source(e)].empty())
      continue;
    auto c = d.potential[g.edge_source(e)];
    const auto &t = d.potential[g.edge_target(e)];
    for (std::size_t j = 0; j < dim; ++j)
      c[j] = (c[j] + p - t[j]) % p;
    c[e] = (c[e] + 1) % p;
    d.cycles.push_back(std::move(c));
  }
  return d;
}

/// The subgraph 𝒜^G of Γ(G) spanned by all edges on paths from 1 whose
/// labels are readable in 𝒜 from its base; also returns which product
/// states (automaton vertex, group element) are reachable.
struct Span
{
  Subgraph subgraph;
  std::vector<std::vector<std::uint32_t>> fiber; ///< fiber[v] = elements h with (v, h) reachable
};

inline Span span_from_base(const InverseAutomaton &a, const FiniteGroup &g)
{
  if (a.num_letters() != g.num_letters())
    throw InputError("automaton and group use different alphabets");
  Span out{Subgraph::empty(g), std::vector<std::vector<std::uint32_t>>(a.num_vertices())};
  std::vector<bool> seen(a.num_vertices() * g.order(), false);
  auto key = [&](std::uint32_t v, std::uint32_t h) { return static_cast<std::size_t>(v) * g.order() + h; };
  std::vector<std::pair<std::uint32_t, std::uint32_t>> queue{{a.base(), 0}};
  seen[key(a.base(), 0)] = true;
  out.subgraph.vertices[0] = true;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    auto [v, h] = queue[i];
    for (std::uint32_t code = 0; code < 2 * a.num_letters(); ++code) {
      auto x = SignedLetter::from_code(code);
      auto v2 = a.act(v, x);
      if (v2 == kNone)
        continue;
      auto h2 = g.act(h, x);
      out.subgraph.add_edge(g, g.geometric_edge(h, x));
      if (!seen[key(v2, h2)]) {
        seen[key(v2, h2)] = true;
        queue.push_back({v2, h2});
      }
    }
  }
  for (auto [v, h] : queue)
    out.fiber[v].push_back(h);
  for (auto &f : out.fiber)
    std::sort(f.begin(), f.end());
  return out;
}

/// Inverse automaton of a subgraph, vertices renumbered by increasing element
/// index; `base` must be a vertex of s.
inline InverseAutomaton subgraph_automaton(const FiniteGroup &g, const Subgraph &s, std::uint32_t base,
                                           std::vector<std::uint32_t> *index_out = nullptr)
{
  if (!s.vertices[base])
    throw InputError("base vertex is not in the subgraph");
  std::vector<std::uint32_t> index(g.order(), kNone);
  std::uint32_t n = 0;
  for (std::uint32_t v = 0; v < g.order(); ++v)
    if (s.vertices[v])
      index[v] = n++;
  InverseAutomaton a(n, g.num_letters(), index[base]);
  for (std::uint32_t e = 0; e < g.num_edges(); ++e)
    if (s.edges[e])
      a.add_edge(index[g.edge_source(e)], g.edge_label(e), index[g.edge_target(e)]);
  if (index_out)
    *index_out = std::move(index);
  return a;
}

} // namespace arbor
