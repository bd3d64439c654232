#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <utility>
#include <vector>

#include "error.hpp"
#include "perm.hpp"
#include "word.hpp"

namespace arbor {

inline constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

/// Positive edge src --label--> dst; the inverse edge is implicit.
struct Edge
{
  std::uint32_t src = 0;
  std::uint32_t label = 0;
  std::uint32_t dst = 0;
  auto operator<=>(const Edge &) const = default;
};

/// An A-labeled graph in the Serre convention, not necessarily folded.
struct LabeledGraph
{
  std::size_t num_vertices = 0;
  std::size_t num_letters = 0;
  std::vector<Edge> edges;
  std::optional<std::uint32_t> base;

  void validate() const
  {
    for (const auto &e : edges) {
      if (e.src >= num_vertices || e.dst >= num_vertices)
        throw InputError("edge endpoint is not a vertex");
      if (e.label >= num_letters)
        throw InputError("edge label outside the alphabet");
    }
    if (base && *base >= num_vertices)
      throw InputError("base is not a vertex");
  }

  bool operator==(const LabeledGraph &) const = default;
};

/// A folded pointed graph: each letter acts as a partial injection.
class InverseAutomaton
{
public:
  InverseAutomaton() = default;

  InverseAutomaton(std::size_t num_vertices, std::size_t num_letters, std::uint32_t base = 0)
    : n_(num_vertices), letters_(num_letters), base_(base), out_(num_vertices * num_letters, kNone),
      in_(num_vertices * num_letters, kNone)
  {
    if (num_vertices == 0)
      throw InputError("an automaton needs at least one vertex");
    if (base >= num_vertices)
      throw InputError("base is not a vertex");
  }

  std::size_t num_vertices() const { return n_; }
  std::size_t num_letters() const { return letters_; }
  std::uint32_t base() const { return base_; }
  void set_base(std::uint32_t b)
  {
    if (b >= n_)
      throw InputError("base is not a vertex");
    base_ = b;
  }

  /// Adds v --a--> w. Returns false (and changes nothing) if the edge is
  /// already present; throws if it would violate foldedness.
  bool add_edge(std::uint32_t v, std::uint32_t a, std::uint32_t w)
  {
    if (v >= n_ || w >= n_ || a >= letters_)
      throw InputError("edge outside the automaton");
    auto &o = out_[v * letters_ + a];
    auto &i = in_[w * letters_ + a];
    if (o == w && i == v)
      return false;
    if (o != kNone || i != kNone)
      throw InvariantError("edge would make the automaton unfolded");
    o = w;
    i = v;
    return true;
  }

  std::uint32_t add_vertex()
  {
    ++n_;
    out_.resize(n_ * letters_, kNone);
    in_.resize(n_ * letters_, kNone);
    return static_cast<std::uint32_t>(n_ - 1);
  }

  std::uint32_t next(std::uint32_t v, std::uint32_t a) const { return out_[v * letters_ + a]; }
  std::uint32_t prev(std::uint32_t v, std::uint32_t a) const { return in_[v * letters_ + a]; }

  std::uint32_t act(std::uint32_t v, SignedLetter x) const { return x.sign > 0 ? next(v, x.index) : prev(v, x.index); }

  /// End of the path labeled w from v, if it exists.
  std::optional<std::uint32_t> read(std::uint32_t v, const Word &w) const
  {
    for (auto x : w.letters) {
      if (x.index >= letters_)
        return std::nullopt;
      v = act(v, x);
      if (v == kNone)
        return std::nullopt;
    }
    return v;
  }

  std::size_t num_edges() const
  {
    return static_cast<std::size_t>(std::count_if(out_.begin(), out_.end(), [](auto x) { return x != kNone; }));
  }

  /// Positive edges sorted by (src, label).
  std::vector<Edge> edges() const
  {
    std::vector<Edge> es;
    for (std::uint32_t v = 0; v < n_; ++v)
      for (std::uint32_t a = 0; a < letters_; ++a)
        if (auto w = next(v, a); w != kNone)
          es.push_back({v, a, w});
    return es;
  }

  LabeledGraph graph() const { return {n_, letters_, edges(), base_}; }

  /// Number of positive edges incident to v; a loop counts once.
  std::size_t degree(std::uint32_t v) const
  {
    std::size_t d = 0;
    for (std::uint32_t a = 0; a < letters_; ++a) {
      auto w = next(v, a);
      if (w != kNone)
        ++d;
      auto u = prev(v, a);
      if (u != kNone && u != v)
        ++d;
    }
    return d;
  }

  bool is_total(std::uint32_t a) const
  {
    for (std::uint32_t v = 0; v < n_; ++v)
      if (next(v, a) == kNone)
        return false;
    return true;
  }

  bool is_complete() const
  {
    for (std::uint32_t a = 0; a < letters_; ++a)
      if (!is_total(a))
        return false;
    return true;
  }

  /// Vertices reachable from v, in BFS order over letters a, a^-1, b, b^-1, ...
  std::vector<std::uint32_t> component(std::uint32_t v) const
  {
    std::vector<bool> seen(n_, false);
    std::vector<std::uint32_t> order{v};
    seen[v] = true;
    for (std::size_t i = 0; i < order.size(); ++i)
      for (std::uint32_t code = 0; code < 2 * letters_; ++code) {
        auto w = act(order[i], SignedLetter::from_code(code));
        if (w != kNone && !seen[w]) {
          seen[w] = true;
          order.push_back(w);
        }
      }
    return order;
  }

  bool is_connected() const { return component(base_).size() == n_; }

  bool operator==(const InverseAutomaton &) const = default;

private:
  std::size_t n_ = 0;
  std::size_t letters_ = 0;
  std::uint32_t base_ = 0;
  std::vector<std::uint32_t> out_;
  std::vector<std::uint32_t> in_;
};

/// Restricts to the given vertex list (in that order) keeping the induced
/// edges; vertex i of the result is keep[i].
inline InverseAutomaton induced(const InverseAutomaton &a, const std::vector<std::uint32_t> &keep, std::uint32_t new_base)
{
  std::vector<std::uint32_t> index(a.num_vertices(), kNone);
  for (std::uint32_t i = 0; i < keep.size(); ++i)
    index[keep[i]] = i;
  InverseAutomaton out(keep.size(), a.num_letters(), new_base);
  for (std::uint32_t i = 0; i < keep.size(); ++i)
    for (std::uint32_t l = 0; l < a.num_letters(); ++l) {
      auto w = a.next(keep[i], l);
      if (w != kNone && index[w] != kNone)
        out.add_edge(i, l, index[w]);
    }
  return out;
}

/// Renumbers vertices in BFS order from the base (other components follow
/// by smallest old id). Isomorphic connected pointed automata get equal
/// canonical forms.
inline InverseAutomaton canonical(const InverseAutomaton &a)
{
  std::vector<std::uint32_t> order;
  std::vector<bool> seen(a.num_vertices(), false);
  auto take = [&](std::uint32_t start) {
    for (auto v : a.component(start))
      if (!seen[v]) {
        seen[v] = true;
        order.push_back(v);
      }
  };
  take(a.base());
  for (std::uint32_t v = 0; v < a.num_vertices(); ++v)
    if (!seen[v])
      take(v);
  return induced(a, order, 0);
}

inline bool isomorphic_pointed(const InverseAutomaton &a, const InverseAutomaton &b)
{
  return a.num_letters() == b.num_letters() && canonical(a) == canonical(b);
}

/// Stallings folding by union-find with a worklist of label clashes. The
/// result is in canonical numbering, base = 0.
inline InverseAutomaton fold(const LabeledGraph &g)
{
  g.validate();
  if (g.num_vertices == 0)
    throw InputError("cannot fold an empty graph");
  const std::size_t n = g.num_vertices, L = g.num_letters;
  std::vector<std::uint32_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0u);
  auto find = [&](std::uint32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  std::vector<std::uint32_t> out(n * L, kNone), in(n * L, kNone);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> clashes;

  auto merge_slot = [&](std::vector<std::uint32_t> &table, std::uint32_t cls, std::uint32_t a, std::uint32_t v) {
    auto &slot = table[cls * L + a];
    if (slot == kNone)
      slot = v;
    else
      clashes.emplace_back(slot, v);
  };

  for (const auto &e : g.edges) {
    merge_slot(out, find(e.src), e.label, e.dst);
    merge_slot(in, find(e.dst), e.label, e.src);
    while (!clashes.empty()) {
      auto [x, y] = clashes.back();
      clashes.pop_back();
      x = find(x);
      y = find(y);
      if (x == y)
        continue;
      if (y < x)
        std::swap(x, y);
      parent[y] = x;
      for (std::uint32_t a = 0; a < L; ++a) {
        if (out[y * L + a] != kNone)
          merge_slot(out, x, a, out[y * L + a]);
        if (in[y * L + a] != kNone)
          merge_slot(in, x, a, in[y * L + a]);
      }
    }
  }

  std::vector<std::uint32_t> cls_index(n, kNone);
  std::uint32_t count = 0;
  for (std::uint32_t v = 0; v < n; ++v)
    if (find(v) == v)
      cls_index[v] = count++;
  std::uint32_t base = g.base ? cls_index[find(*g.base)] : 0;
  InverseAutomaton result(count, L, base);
  for (std::uint32_t v = 0; v < n; ++v) {
    if (find(v) != v)
      continue;
    for (std::uint32_t a = 0; a < L; ++a)
      if (out[v * L + a] != kNone)
        result.add_edge(cls_index[v], a, cls_index[find(out[v * L + a])]);
  }
  return canonical(result);
}

/// Base component with degree-1 non-base vertices removed iteratively.
inline InverseAutomaton trim(const InverseAutomaton &a)
{
  auto comp = a.component(a.base());
  std::vector<bool> alive(a.num_vertices(), false);
  for (auto v : comp)
    alive[v] = true;
  auto live_degree = [&](std::uint32_t v) {
    std::size_t d = 0;
    for (std::uint32_t l = 0; l < a.num_letters(); ++l) {
      auto w = a.next(v, l);
      if (w != kNone && alive[w])
        ++d;
      auto u = a.prev(v, l);
      if (u != kNone && u != v && alive[u])
        ++d;
    }
    return d;
  };
  std::queue<std::uint32_t> work;
  for (auto v : comp)
    work.push(v);
  while (!work.empty()) {
    auto v = work.front();
    work.pop();
    if (!alive[v] || v == a.base() || live_degree(v) > 1)
      continue;
    alive[v] = false;
    for (std::uint32_t code = 0; code < 2 * a.num_letters(); ++code) {
      auto w = a.act(v, SignedLetter::from_code(code));
      if (w != kNone && alive[w])
        work.push(w);
    }
  }
  std::vector<std::uint32_t> keep;
  std::uint32_t base_index = 0;
  for (auto v : comp)
    if (alive[v]) {
      if (v == a.base())
        base_index = static_cast<std::uint32_t>(keep.size());
      keep.push_back(v);
    }
  return canonical(induced(a, keep, base_index));
}

/// Stallings automaton of the subgroup generated by gens.
inline InverseAutomaton core_of_words(const std::vector<Word> &gens, std::size_t num_letters)
{
  LabeledGraph bouquet;
  bouquet.num_letters = num_letters;
  bouquet.num_vertices = 1;
  bouquet.base = 0;
  for (const auto &raw : gens) {
    Word w = reduce(raw);
    if (w.empty())
      continue;
    std::uint32_t cur = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (w.letters[i].index >= num_letters)
        throw InputError("generator uses a letter outside the alphabet");
      std::uint32_t nxt = (i + 1 == w.size()) ? 0u : static_cast<std::uint32_t>(bouquet.num_vertices++);
      auto x = w.letters[i];
      if (x.sign > 0)
        bouquet.edges.push_back({cur, x.index, nxt});
      else
        bouquet.edges.push_back({nxt, x.index, cur});
      cur = nxt;
    }
  }
  return trim(fold(bouquet));
}

/// True iff reduce(w) labels a closed path at the base.
inline bool member(const InverseAutomaton &a, const Word &w)
{
  auto end = a.read(a.base(), reduce(w));
  return end && *end == a.base();
}

/// |E| - |V| + 1, the rank of the recognized subgroup.
inline long long rank_from_core(const InverseAutomaton &a)
{
  if (!a.is_connected())
    throw PreconditionError("rank_from_core needs a connected automaton");
  return static_cast<long long>(a.num_edges()) - static_cast<long long>(a.num_vertices()) + 1;
}

/// The unique label-preserving injective graph morphism sending the base of
/// a to start, if it exists.
inline std::optional<std::vector<std::uint32_t>> embed_check(const InverseAutomaton &a, const InverseAutomaton &c,
                                                             std::uint32_t start)
{
  if (!a.is_connected())
    throw PreconditionError("embed_check needs a connected automaton");
  if (a.num_letters() > c.num_letters() || start >= c.num_vertices())
    return std::nullopt;
  std::vector<std::uint32_t> map(a.num_vertices(), kNone), back(c.num_vertices(), kNone);
  map[a.base()] = start;
  back[start] = a.base();
  std::vector<std::uint32_t> queue{a.base()};
  for (std::size_t i = 0; i < queue.size(); ++i) {
    auto v = queue[i];
    for (std::uint32_t code = 0; code < 2 * a.num_letters(); ++code) {
      auto x = SignedLetter::from_code(code);
      auto w = a.act(v, x);
      if (w == kNone)
        continue;
      auto cw = c.act(map[v], x);
      if (cw == kNone)
        return std::nullopt;
      if (map[w] == kNone) {
        if (back[cw] != kNone)
          return std::nullopt;
        map[w] = cw;
        back[cw] = w;
        queue.push_back(w);
      } else if (map[w] != cw) {
        return std::nullopt;
      }
    }
  }
  return map;
}

/// Pullback of two pointed automata: recognizes L(a) ∩ L(b).
inline InverseAutomaton product_automaton(const InverseAutomaton &a, const InverseAutomaton &b)
{
  if (a.num_letters() != b.num_letters())
    throw InputError("product of automata over different alphabets");
  const std::size_t L = a.num_letters();
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> index;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> states{{a.base(), b.base()}};
  index[states[0]] = 0;
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < states.size(); ++i) {
    auto [u, v] = states[i];
    for (std::uint32_t l = 0; l < L; ++l)
      for (int sign : {1, -1}) {
        SignedLetter x{l, sign};
        auto u2 = a.act(u, x), v2 = b.act(v, x);
        if (u2 == kNone || v2 == kNone)
          continue;
        auto [it, fresh] = index.try_emplace({u2, v2}, static_cast<std::uint32_t>(states.size()));
        if (fresh)
          states.emplace_back(u2, v2);
        if (sign > 0)
          edges.push_back({static_cast<std::uint32_t>(i), l, it->second});
      }
  }
  InverseAutomaton prod(states.size(), L, 0);
  for (const auto &e : edges)
    prod.add_edge(e.src, e.label, e.dst);
  return trim(prod);
}

/// One permutation per letter, v -> v·a.
inline PermGroupGens transition_group(const InverseAutomaton &c)
{
  if (!c.is_complete())
    throw PreconditionError("transition group needs a complete automaton");
  std::vector<Permutation> gens;
  for (std::uint32_t a = 0; a < c.num_letters(); ++a) {
    std::vector<std::uint32_t> im(c.num_vertices());
    for (std::uint32_t v = 0; v < c.num_vertices(); ++v)
      im[v] = c.next(v, a);
    gens.emplace_back(std::move(im));
  }
  return PermGroupGens(c.num_vertices(), std::move(gens));
}

} // namespace arbor
