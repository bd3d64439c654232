#pragma once

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "automaton.hpp"
#include "error.hpp"
#include "perm.hpp"
#include "word.hpp"

namespace arbor {

inline constexpr std::size_t kDefaultOrderBound = 1000000;

/// A materialized A-generated finite group. Elements are indices in BFS
/// discovery order from the identity (index 0), letters tried in alphabet
/// order; element g's edge (g, a) goes to g·φ(a).
class FiniteGroup
{
public:
  FiniteGroup(std::size_t num_letters, std::vector<std::uint32_t> right, std::vector<std::uint32_t> parent,
              std::vector<std::uint32_t> parent_letter)
    : letters_(num_letters), right_(std::move(right)), parent_(std::move(parent)),
      parent_letter_(std::move(parent_letter))
  {
    order_ = parent_.size();
    right_inv_.assign(right_.size(), kNone);
    for (std::uint32_t g = 0; g < order_; ++g)
      for (std::uint32_t a = 0; a < letters_; ++a)
        right_inv_[right_[g * letters_ + a] * letters_ + a] = g;
    words_.resize(order_);
    for (std::uint32_t g = 1; g < order_; ++g) {
      // parents are discovered before children
      words_[g] = words_[parent_[g]];
      words_[g].letters.push_back({parent_letter_[g], 1});
    }
    if (order_ <= kTableLimit) {
      table_.resize(order_ * order_);
      for (std::uint32_t g = 0; g < order_; ++g)
        for (std::uint32_t h = 0; h < order_; ++h)
          table_[g * order_ + h] = walk(g, words_[h]);
    }
  }

  std::size_t order() const { return order_; }
  std::size_t num_letters() const { return letters_; }
  static constexpr std::uint32_t identity() { return 0; }

  std::uint32_t right(std::uint32_t g, std::uint32_t a) const { return right_[g * letters_ + a]; }
  std::uint32_t right_inverse(std::uint32_t g, std::uint32_t a) const { return right_inv_[g * letters_ + a]; }
  std::uint32_t act(std::uint32_t g, SignedLetter x) const
  {
    return x.sign > 0 ? right(g, x.index) : right_inverse(g, x.index);
  }

  /// φ(a) as an element.
  std::uint32_t generator(std::uint32_t a) const { return right(0, a); }

  /// g·[w]
  std::uint32_t walk(std::uint32_t g, const Word &w) const
  {
    for (auto x : w.letters) {
      if (x.index >= letters_)
        throw InputError("word uses a letter outside the group's alphabet");
      g = act(g, x);
    }
    return g;
  }

  std::uint32_t evaluate(const Word &w) const { return walk(0, w); }

  std::uint32_t multiply(std::uint32_t g, std::uint32_t h) const
  {
    if (!table_.empty())
      return table_[g * order_ + h];
    return walk(g, words_[h]);
  }

  std::uint32_t inverse(std::uint32_t g) const { return evaluate(invert(words_[g])); }

  /// Positive word of the BFS tree path 1 -> g.
  const Word &word_of(std::uint32_t g) const { return words_[g]; }

  std::uint64_t element_order(std::uint32_t g) const
  {
    std::uint64_t k = 1;
    for (std::uint32_t x = g; x != 0; x = multiply(x, g))
      ++k;
    return k;
  }

  /// Γ(G) as a complete inverse automaton based at the identity.
  InverseAutomaton cayley_graph() const
  {
    InverseAutomaton c(order_, letters_, 0);
    for (std::uint32_t g = 0; g < order_; ++g)
      for (std::uint32_t a = 0; a < letters_; ++a)
        c.add_edge(g, a, right(g, a));
    return c;
  }

  std::size_t num_edges() const { return order_ * letters_; }
  std::uint32_t edge_id(std::uint32_t g, std::uint32_t a) const { return g * static_cast<std::uint32_t>(letters_) + a; }
  std::uint32_t edge_source(std::uint32_t e) const { return e / static_cast<std::uint32_t>(letters_); }
  std::uint32_t edge_label(std::uint32_t e) const { return e % static_cast<std::uint32_t>(letters_); }
  std::uint32_t edge_target(std::uint32_t e) const { return right(edge_source(e), edge_label(e)); }

  /// Positive edge underlying the signed edge (g, x): for x = a^-1 this is (g·a^-1, a).
  std::uint32_t geometric_edge(std::uint32_t g, SignedLetter x) const
  {
    return x.sign > 0 ? edge_id(g, x.index) : edge_id(right_inverse(g, x.index), x.index);
  }

private:
  static constexpr std::size_t kTableLimit = 1024;
  std::size_t letters_;
  std::size_t order_ = 0;
  std::vector<std::uint32_t> right_, right_inv_, parent_, parent_letter_, table_;
  std::vector<Word> words_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// A faithful element representation that can be enumerated by BFS.
template <class Rep>
concept GroupRepresentation = requires(const Rep &r, const typename Rep::element_type &x, std::uint32_t a) {
  typename Rep::hasher;
  { r.num_letters() } -> std::convertible_to<std::size_t>;
  { r.identity() } -> std::convertible_to<typename Rep::element_type>;
  { r.right_multiply(x, a) } -> std::convertible_to<typename Rep::element_type>;
};

template <class Element>
struct Enumeration
{
  GroupPtr group;
  std::vector<Element> elements; ///< elements[i] represents group index i
};

/// BFS enumeration of the group generated by the representation's letters.
template <GroupRepresentation Rep>
Enumeration<typename Rep::element_type> enumerate(const Rep &rep, std::size_t bound = kDefaultOrderBound)
{
  using E = typename Rep::element_type;
  const std::size_t L = rep.num_letters();
  std::vector<E> elements{rep.identity()};
  std::unordered_map<E, std::uint32_t, typename Rep::hasher> index;
  index.emplace(elements[0], 0);
  std::vector<std::uint32_t> right, parent{0}, parent_letter{0};
  for (std::size_t i = 0; i < elements.size(); ++i) {
    for (std::uint32_t a = 0; a < L; ++a) {
      E y = rep.right_multiply(elements[i], a);
      auto [it, fresh] = index.try_emplace(y, static_cast<std::uint32_t>(elements.size()));
      if (fresh) {
        if (elements.size() >= bound)
          throw OrderBoundError("group order exceeds the bound of " + std::to_string(bound) + " elements");
        elements.push_back(std::move(y));
        parent.push_back(static_cast<std::uint32_t>(i));
        parent_letter.push_back(a);
      }
      right.push_back(it->second);
    }
  }
  auto group = std::make_shared<FiniteGroup>(L, std::move(right), std::move(parent), std::move(parent_letter));
  return {std::move(group), std::move(elements)};
}

/// Z/n with letter images given as residues.
struct CyclicRep
{
  using element_type = std::uint64_t;
  using hasher = std::hash<std::uint64_t>;
  std::uint64_t n;
  std::vector<std::uint64_t> images;

  std::size_t num_letters() const { return images.size(); }
  element_type identity() const { return 0; }
  element_type right_multiply(element_type x, std::uint32_t a) const { return (x + images[a]) % n; }
};

/// (Z/2)^k with letter images as bit masks; k = 2 is the Klein group.
struct ElementaryAbelian2Rep
{
  using element_type = std::uint64_t;
  using hasher = std::hash<std::uint64_t>;
  std::size_t dimension;
  std::vector<std::uint64_t> images;

  std::size_t num_letters() const { return images.size(); }
  element_type identity() const { return 0; }
  element_type right_multiply(element_type x, std::uint32_t a) const { return x ^ images[a]; }
};

struct PermRep
{
  using element_type = Permutation;
  using hasher = PermutationHash;
  std::size_t degree;
  std::vector<Permutation> images;

  std::size_t num_letters() const { return images.size(); }
  element_type identity() const { return Permutation::identity(degree); }
  element_type right_multiply(const element_type &x, std::uint32_t a) const { return x * images[a]; }
};

struct PairHash
{
  std::size_t operator()(const std::pair<std::uint32_t, std::uint32_t> &p) const noexcept
  {
    return (static_cast<std::size_t>(p.first) << 32) ^ p.second;
  }
};

/// Pairs over two materialized groups; generates G ×_A H.
struct ProductRep
{
  using element_type = std::pair<std::uint32_t, std::uint32_t>;
  using hasher = PairHash;
  GroupPtr left, right_group;

  std::size_t num_letters() const { return left->num_letters(); }
  element_type identity() const { return {0, 0}; }
  element_type right_multiply(const element_type &x, std::uint32_t a) const
  {
    return {left->right(x.first, a), right_group->right(x.second, a)};
  }
};

/// The A-generated subdirect product G ×_A H.
inline Enumeration<std::pair<std::uint32_t, std::uint32_t>> product_A_enumeration(const GroupPtr &g, const GroupPtr &h,
                                                                                   std::size_t bound = kDefaultOrderBound)
{
  if (g->num_letters() != h->num_letters())
    throw InputError("A-product of groups over different alphabets");
  return enumerate(ProductRep{g, h}, bound);
}

inline GroupPtr product_A(const GroupPtr &g, const GroupPtr &h, std::size_t bound = kDefaultOrderBound)
{
  return product_A_enumeration(g, h, bound).group;
}

/// The canonical morphism between two A-generated groups, as an element map.
struct Morphism
{
  GroupPtr source;
  GroupPtr target;
  std::vector<std::uint32_t> map;

  std::uint32_t operator()(std::uint32_t h) const { return map[h]; }
};

inline Morphism identity_morphism(const GroupPtr &g)
{
  std::vector<std::uint32_t> m(g->order());
  std::iota(m.begin(), m.end(), 0u);
  return {g, g, std::move(m)};
}

/// The generator-respecting morphism H ↠ G if it exists. Existence is
/// equivalent to |H ×_A G| = |H|; the map is read off by walking BFS words
/// and then checked on every Cayley edge.
inline std::optional<Morphism> canonical_morphism(const GroupPtr &h, const GroupPtr &g)
{
  if (h->num_letters() != g->num_letters())
    return std::nullopt;
  std::vector<std::uint32_t> map(h->order());
  for (std::uint32_t x = 0; x < h->order(); ++x)
    map[x] = g->evaluate(h->word_of(x));
  for (std::uint32_t x = 0; x < h->order(); ++x)
    for (std::uint32_t a = 0; a < h->num_letters(); ++a)
      if (map[h->right(x, a)] != g->right(map[x], a))
        return std::nullopt;
  return Morphism{h, g, std::move(map)};
}

/// second ∘ first
inline Morphism compose(const Morphism &first, const Morphism &second)
{
  if (first.target != second.source)
    throw InputError("morphisms are not composable");
  std::vector<std::uint32_t> m(first.map.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    m[i] = second.map[first.map[i]];
  return {first.source, second.target, std::move(m)};
}

/// Letters whose image is the identity; the center characterization is
/// only proved for nontrivial images.
inline std::vector<std::string> identity_letter_warnings(const FiniteGroup &g)
{
  std::vector<std::string> out;
  for (std::uint32_t a = 0; a < g.num_letters(); ++a)
    if (g.generator(a) == 0)
      out.push_back(std::string("letter '") + static_cast<char>('a' + a) + "' maps to the identity");
  return out;
}

inline std::vector<std::uint32_t> kernel_elements(const Morphism &phi)
{
  std::vector<std::uint32_t> out;
  for (std::uint32_t h = 0; h < phi.map.size(); ++h)
    if (phi.map[h] == 0)
      out.push_back(h);
  return out;
}

/// Signed traversal counts per positive Cayley edge of the path π_1^G(w).
using TraversalVector = std::map<std::uint32_t, long long>;

inline TraversalVector traversal_vector(const FiniteGroup &g, const Word &w, std::uint32_t start = 0)
{
  TraversalVector tv;
  std::uint32_t cur = start;
  for (auto x : w.letters) {
    auto e = g.geometric_edge(cur, x);
    tv[e] += x.sign;
    if (tv[e] == 0)
      tv.erase(e);
    cur = g.act(cur, x);
  }
  return tv;
}

/// Boundary condition: out-minus-in balance is δ_start − δ_end at every vertex.
inline bool traversal_boundary_ok(const FiniteGroup &g, const TraversalVector &tv, std::uint32_t start,
                                  std::uint32_t end)
{
  std::vector<long long> balance(g.order(), 0);
  for (auto [e, c] : tv) {
    balance[g.edge_source(e)] += c;
    balance[g.edge_target(e)] -= c;
  }
  for (std::uint32_t v = 0; v < g.order(); ++v) {
    long long expect = (v == start ? 1 : 0) - (v == end ? 1 : 0);
    if (balance[v] != expect)
      return false;
  }
  return true;
}

/// Subgroup generated by a set of elements, closed under right multiplication.
inline std::vector<bool> subgroup_generated(const FiniteGroup &g, const std::vector<std::uint32_t> &gens)
{
  std::vector<bool> in(g.order(), false);
  std::vector<std::uint32_t> queue{0};
  in[0] = true;
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (auto s : gens) {
      auto y = g.multiply(queue[i], s);
      if (!in[y]) {
        in[y] = true;
        queue.push_back(y);
      }
    }
  return in;
}

/// Normal closure of the given elements: closed under right multiplication
/// by them and conjugation by the generator images.
inline std::vector<bool> normal_closure(const FiniteGroup &g, const std::vector<std::uint32_t> &elements)
{
  std::vector<bool> in(g.order(), false);
  std::vector<std::uint32_t> queue{0};
  in[0] = true;
  auto push = [&](std::uint32_t y) {
    if (!in[y]) {
      in[y] = true;
      queue.push_back(y);
    }
  };
  for (std::size_t i = 0; i < queue.size(); ++i) {
    auto x = queue[i];
    for (auto s : elements)
      push(g.multiply(x, s));
    for (std::uint32_t a = 0; a < g.num_letters(); ++a) {
      // φ(a)^-1 x φ(a)
      auto y = g.right(x, a);
      y = g.multiply(g.inverse(g.generator(a)), y);
      push(y);
    }
  }
  return in;
}

inline std::vector<std::uint32_t> commutator_subgroup(const FiniteGroup &g)
{
  std::vector<std::uint32_t> comms;
  for (std::uint32_t a = 0; a < g.num_letters(); ++a)
    for (std::uint32_t b = a + 1; b < g.num_letters(); ++b) {
      Word c({{a, -1}, {b, -1}, {a, 1}, {b, 1}});
      comms.push_back(g.evaluate(c));
    }
  auto mask = normal_closure(g, comms);
  std::vector<std::uint32_t> out;
  for (std::uint32_t x = 0; x < g.order(); ++x)
    if (mask[x])
      out.push_back(x);
  return out;
}

namespace detail {

inline std::vector<std::uint64_t> prime_factors(std::uint64_t n)
{
  std::vector<std::uint64_t> ps;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) {
      ps.push_back(d);
      while (n % d == 0)
        n /= d;
    }
  if (n > 1)
    ps.push_back(n);
  return ps;
}

} // namespace detail

/// Invariant factors d_1 | d_2 | ... of G/[G,G], in increasing order; the
/// trivial group gives an empty list. The p-primary parts are recovered
/// from the counts |{x : x^{p^k} = 1}| of the quotient.
inline std::vector<std::uint64_t> abelianization(const FiniteGroup &g)
{
  auto derived = commutator_subgroup(g);
  std::vector<bool> in_derived(g.order(), false);
  for (auto x : derived)
    in_derived[x] = true;

  // coset labels: x and y share a coset iff x^-1 y ∈ [G,G]
  std::vector<std::uint32_t> coset(g.order(), kNone);
  std::vector<std::uint32_t> reps;
  for (std::uint32_t x = 0; x < g.order(); ++x) {
    if (coset[x] != kNone)
      continue;
    auto id = static_cast<std::uint32_t>(reps.size());
    reps.push_back(x);
    for (auto d : derived)
      coset[g.multiply(x, d)] = id;
  }
  const std::uint64_t q_order = reps.size();
  if (q_order == 1)
    return {};

  auto quotient_order_of = [&](std::uint32_t x) {
    std::uint64_t k = 1;
    for (std::uint32_t y = x; !in_derived[y]; y = g.multiply(y, x))
      ++k;
    return k;
  };
  std::vector<std::uint64_t> orders;
  for (auto r : reps)
    orders.push_back(quotient_order_of(r));

  // exponents[p] = partition of the p-primary part, as a list of exponents
  std::vector<std::vector<std::uint64_t>> primary;
  std::vector<std::uint64_t> primes = detail::prime_factors(q_order);
  for (auto p : primes) {
    std::uint64_t pk = 1;
    std::uint64_t prev_log = 0;
    std::vector<std::uint64_t> omega_logs; // log_p |Ω_k|
    while (true) {
      pk *= p;
      std::uint64_t count = 0;
      for (auto o : orders)
        if (pk % o == 0)
          ++count;
      std::uint64_t logc = 0;
      for (std::uint64_t c = count; c > 1; c /= p)
        ++logc;
      omega_logs.push_back(logc);
      if (logc == prev_log)
        break;
      prev_log = logc;
    }
    // number of cyclic factors with exponent >= k is log|Ω_k| − log|Ω_{k−1}|
    std::vector<std::uint64_t> at_least;
    std::uint64_t last = 0;
    for (auto l : omega_logs) {
      at_least.push_back(l - last);
      last = l;
    }
    std::vector<std::uint64_t> exps;
    for (std::size_t k = 0; k < at_least.size(); ++k) {
      std::uint64_t next = k + 1 < at_least.size() ? at_least[k + 1] : 0;
      for (std::uint64_t c = 0; c < at_least[k] - next; ++c)
        exps.push_back(k + 1);
    }
    std::sort(exps.rbegin(), exps.rend());
    primary.push_back(exps);
  }

  std::size_t width = 0;
  for (const auto &e : primary)
    width = std::max(width, e.size());
  std::vector<std::uint64_t> factors(width, 1);
  for (std::size_t i = 0; i < primes.size(); ++i)
    for (std::size_t j = 0; j < primary[i].size(); ++j)
      for (std::uint64_t k = 0; k < primary[i][j]; ++k)
        factors[j] *= primes[i];
  std::sort(factors.begin(), factors.end());
  return factors;
}

} // namespace arbor
