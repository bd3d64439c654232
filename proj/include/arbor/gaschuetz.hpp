#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "error.hpp"
#include "group.hpp"
#include "linalg.hpp"
#include "perm.hpp"
#include "subgraph.hpp"
#include "word.hpp"

namespace arbor {

using BigInt = boost::multiprecision::cpp_int;

/// Sparse vector in F_p[E]; entries sorted by edge id, residues nonzero.
struct EdgeVector
{
  std::vector<std::pair<std::uint32_t, std::uint32_t>> entries;

  std::uint32_t at(std::uint32_t e) const
  {
    auto it = std::lower_bound(entries.begin(), entries.end(), std::make_pair(e, 0u));
    return it != entries.end() && it->first == e ? it->second : 0;
  }

  static EdgeVector from_dense(const std::vector<std::uint32_t> &d)
  {
    EdgeVector v;
    for (std::uint32_t e = 0; e < d.size(); ++e)
      if (d[e])
        v.entries.emplace_back(e, d[e]);
    return v;
  }

  std::vector<std::uint32_t> dense(std::size_t dim) const
  {
    std::vector<std::uint32_t> d(dim, 0);
    for (auto [e, c] : entries)
      d[e] = c;
    return d;
  }

  bool is_zero() const { return entries.empty(); }
  bool operator==(const EdgeVector &) const = default;
};

/// (α, g) ∈ F_p[E] ⋊ G; tilde elements are kept in normal form.
struct GaschuetzElement
{
  EdgeVector alpha;
  std::uint32_t g = 0;

  bool operator==(const GaschuetzElement &) const = default;
};

struct GaschuetzElementHash
{
  std::size_t operator()(const GaschuetzElement &x) const noexcept
  {
    std::size_t h = std::hash<std::uint32_t>{}(x.g);
    for (auto [e, c] : x.alpha.entries)
      h = h * 1000003u ^ (static_cast<std::size_t>(e) << 8 ^ c);
    return h;
  }
};

/// |G^{Z/p}| = |G|·p^{|G|(|A|−1)+1};  |G^{~Z/p}| = |G|·p^{(|G|−1)(|A|−1)}.
inline BigInt gaschutz_order_formula(std::size_t order, std::size_t letters, std::uint32_t p, bool tilde)
{
  BigInt n = order;
  long long exponent = tilde ? static_cast<long long>(order - 1) * static_cast<long long>(letters - 1)
                             : static_cast<long long>(order) * static_cast<long long>(letters - 1) + 1;
  if (exponent < 0)
    throw InputError("order formula needs a nonempty alphabet");
  return n * boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(exponent));
}

/// Lazy G^{Z/p} or G^{~Z/p} over a materialized base: generator a is
/// (e_{(1,a)}, φ(a)) and (α,g)(β,h) = (α + g·β, gh) with g·(h,a) = (gh,a).
class GaschutzGroup
{
public:
  using element_type = GaschuetzElement;
  using hasher = GaschuetzElementHash;

  GaschutzGroup(GroupPtr base, std::uint32_t p, bool tilde) : base_(std::move(base)), p_(p), tilde_(tilde)
  {
    if (!base_)
      throw InputError("Gaschuetz layer needs a base group");
    if (!is_prime(p_))
      throw InputError("Gaschuetz layer modulus " + std::to_string(p_) + " is not prime");
    if (base_->num_letters() == 0)
      throw InputError("Gaschuetz layer needs a nonempty alphabet");
  }

  const GroupPtr &base() const { return base_; }
  std::uint32_t modulus() const { return p_; }
  bool tilde() const { return tilde_; }
  std::size_t num_letters() const { return base_->num_letters(); }
  std::size_t dim() const { return base_->num_edges(); }

  BigInt order_formula() const { return gaschutz_order_formula(base_->order(), num_letters(), p_, tilde_); }

  element_type identity() const { return {}; }
  element_type generator(std::uint32_t a) const { return right_multiply(identity(), a); }

  /// x·(e_{(1,a)}, φ(a)) = (α + e_{(g,a)}, g·φ(a))
  element_type right_multiply(const element_type &x, std::uint32_t a) const
  {
    auto d = x.alpha.dense(dim());
    auto e = base_->edge_id(x.g, a);
    d[e] = (d[e] + 1) % p_;
    return make(std::move(d), base_->right(x.g, a));
  }

  element_type multiply(const element_type &x, const element_type &y) const
  {
    auto d = x.alpha.dense(dim());
    for (auto [e, c] : y.alpha.entries) {
      auto s = shifted_edge(x.g, e);
      d[s] = (d[s] + c) % p_;
    }
    return make(std::move(d), base_->multiply(x.g, y.g));
  }

  /// (α,g)^{-1} = (−g^{-1}·α, g^{-1})
  element_type inverse(const element_type &x) const
  {
    auto gi = base_->inverse(x.g);
    std::vector<std::uint32_t> d(dim(), 0);
    for (auto [e, c] : x.alpha.entries)
      d[shifted_edge(gi, e)] = (p_ - c) % p_;
    return make(std::move(d), gi);
  }

  /// Traversal route: [w] = (π_1^G(w) mod p, [w]_G).
  element_type evaluate(const Word &w) const
  {
    std::vector<std::uint32_t> d(dim(), 0);
    for (auto [e, c] : traversal_vector(*base_, w)) {
      long long r = c % static_cast<long long>(p_);
      d[e] = static_cast<std::uint32_t>(r < 0 ? r + p_ : r);
    }
    return make(std::move(d), base_->evaluate(w));
  }

  /// Multiplication route, independent of traversal counting.
  element_type evaluate_by_multiplication(const Word &w) const
  {
    element_type x = identity();
    for (auto l : w.letters) {
      if (l.index >= num_letters())
        throw InputError("word uses a letter outside the group's alphabet");
      auto gen = generator(l.index);
      x = multiply(x, l.sign > 0 ? gen : inverse(gen));
    }
    return x;
  }

  /// Word-problem criterion: [w]_G = 1 and every count ≡ 0 (plain) or all
  /// counts of each label congruent (tilde), untraversed edges counting 0.
  bool is_identity(const Word &w) const
  {
    if (base_->evaluate(w) != 0)
      return false;
    auto tv = traversal_vector(*base_, w);
    std::vector<long long> counts(dim(), 0);
    for (auto [e, c] : tv)
      counts[e] = c;
    const auto P = static_cast<long long>(p_);
    auto residue = [&](long long c) { return ((c % P) + P) % P; };
    for (std::uint32_t a = 0; a < num_letters(); ++a) {
      long long ref = tilde_ ? residue(counts[base_->edge_id(0, a)]) : 0;
      for (std::uint32_t h = 0; h < base_->order(); ++h)
        if (residue(counts[base_->edge_id(h, a)]) != ref)
          return false;
    }
    return true;
  }

  bool is_identity(const element_type &x) const { return x.g == 0 && x.alpha.is_zero(); }

  /// Canonical coset representative modulo the constant-per-label span.
  std::vector<std::uint32_t> normalize(std::vector<std::uint32_t> d) const
  {
    for (std::uint32_t a = 0; a < num_letters(); ++a) {
      auto c = d[base_->edge_id(0, a)];
      if (c == 0)
        continue;
      for (std::uint32_t h = 0; h < base_->order(); ++h) {
        auto &x = d[base_->edge_id(h, a)];
        x = (x + p_ - c) % p_;
      }
    }
    return d;
  }

  /// α constant on the edges of each label.
  bool constant_per_label(const EdgeVector &alpha) const
  {
    for (std::uint32_t a = 0; a < num_letters(); ++a) {
      auto ref = alpha.at(base_->edge_id(0, a));
      for (std::uint32_t h = 1; h < base_->order(); ++h)
        if (alpha.at(base_->edge_id(h, a)) != ref)
          return false;
    }
    return true;
  }

private:
  std::uint32_t shifted_edge(std::uint32_t g, std::uint32_t e) const
  {
    return base_->edge_id(base_->multiply(g, base_->edge_source(e)), base_->edge_label(e));
  }

  element_type make(std::vector<std::uint32_t> d, std::uint32_t g) const
  {
    if (tilde_)
      d = normalize(std::move(d));
    return {EdgeVector::from_dense(d), g};
  }

  GroupPtr base_;
  std::uint32_t p_;
  bool tilde_;
};

using GaschutzPtr = std::shared_ptr<const GaschutzGroup>;

/// A materialized Gaschuetz layer with its projection onto the base.
struct GaschutzLevel
{
  GaschutzPtr lazy;
  GroupPtr group;
  std::vector<GaschuetzElement> elements;
  Morphism projection;
};

inline GaschutzLevel materialize_gaschutz(const GaschutzPtr &lazy, std::size_t bound = kDefaultOrderBound)
{
  auto en = enumerate(*lazy, bound);
  std::vector<std::uint32_t> map(en.elements.size());
  for (std::size_t i = 0; i < map.size(); ++i)
    map[i] = en.elements[i].g;
  Morphism proj{en.group, lazy->base(), std::move(map)};
  return {lazy, en.group, std::move(en.elements), std::move(proj)};
}

inline GaschutzLevel materialize_gaschutz(const GroupPtr &base, std::uint32_t p, bool tilde,
                                          std::size_t bound = kDefaultOrderBound)
{
  return materialize_gaschutz(std::make_shared<const GaschutzGroup>(base, p, tilde), bound);
}

/// Elements commuting with every generator image.
inline std::vector<std::uint32_t> brute_force_center(const FiniteGroup &g)
{
  std::vector<std::uint32_t> out;
  for (std::uint32_t z = 0; z < g.order(); ++z) {
    bool central = true;
    for (std::uint32_t a = 0; a < g.num_letters() && central; ++a)
      central = g.right(z, a) == g.multiply(g.generator(a), z);
    if (central)
      out.push_back(z);
  }
  return out;
}

struct CenterReport
{
  /// basis[a] = indicator of all a-labelled edges
  std::vector<EdgeVector> basis;
  /// witness[a] evaluates to (basis[a], 1)
  std::vector<Word> witnesses;
  BigInt order;
  bool witnesses_verified = false;
};

/// Center of a plain layer: {(α,1) : α constant per label}, order p^{|A|},
/// with words w_a = Π w_i a^e w_i^{-1} over representatives of the a-cycles.
inline CenterReport center(const GaschutzGroup &h)
{
  if (h.tilde())
    throw PreconditionError("center() describes the plain layer G^{Z/p}");
  const auto &g = *h.base();
  CenterReport rep;
  rep.order = boost::multiprecision::pow(BigInt(h.modulus()), static_cast<unsigned>(g.num_letters()));
  rep.witnesses_verified = true;
  for (std::uint32_t a = 0; a < g.num_letters(); ++a) {
    std::vector<std::uint32_t> d(g.num_edges(), 0);
    for (std::uint32_t x = 0; x < g.order(); ++x)
      d[g.edge_id(x, a)] = 1 % h.modulus();
    rep.basis.push_back(EdgeVector::from_dense(d));

    const auto e = static_cast<long long>(g.element_order(g.generator(a)));
    std::vector<bool> seen(g.order(), false);
    Word w;
    for (std::uint32_t v = 0; v < g.order(); ++v) {
      if (seen[v])
        continue;
      for (auto x = v; !seen[x]; x = g.right(x, a))
        seen[x] = true;
      const Word &wi = g.word_of(v);
      w = w * wi * power(letter_word(a), e) * invert(wi);
    }
    rep.witnesses.push_back(w);
    auto val = h.evaluate(w);
    rep.witnesses_verified = rep.witnesses_verified && val.g == 0 && val.alpha == rep.basis.back();
  }
  return rep;
}

struct Layer
{
  std::uint32_t p = 2;
  bool tilde = true;
  bool operator==(const Layer &) const = default;
};

/// "~2,~2,2": `~` marks a tilde layer.
inline std::vector<Layer> parse_layers(std::string_view text)
{
  std::vector<Layer> out;
  std::string tok;
  auto flush = [&] {
    std::string t;
    for (char c : tok)
      if (!std::isspace(static_cast<unsigned char>(c)))
        t.push_back(c);
    tok.clear();
    if (t.empty())
      return;
    Layer l;
    l.tilde = t[0] == '~';
    auto digits = l.tilde ? t.substr(1) : t;
    if (digits.empty() || digits.size() > 6 || !std::all_of(digits.begin(), digits.end(), ::isdigit))
      throw InputError("bad layer '" + t + "' (expected p or ~p)");
    l.p = static_cast<std::uint32_t>(std::stoul(digits));
    if (!is_prime(l.p))
      throw InputError("layer modulus " + digits + " is not prime");
    out.push_back(l);
  };
  for (char c : text) {
    if (c == ',')
      flush();
    else
      tok.push_back(c);
  }
  flush();
  return out;
}

inline std::string format_layers(const std::vector<Layer> &layers)
{
  std::string s;
  for (std::size_t i = 0; i < layers.size(); ++i) {
    if (i)
      s += ',';
    s += (layers[i].tilde ? "~" : "") + std::to_string(layers[i].p);
  }
  return s;
}

/// G_0 = base, G_i = G_{i-1}^{(~)Z/p_i}. All levels below the top are
/// materialized; the top layer stays lazy unless `materialize_top`.
struct Tower
{
  std::vector<GroupPtr> levels;
  std::vector<Morphism> projections; ///< projections[i]: levels[i+1] ↠ levels[i]
  GaschutzPtr top;                   ///< null when there are no layers
  std::vector<Layer> layers;

  /// Order of the top level (formula for a lazy top, enumeration otherwise).
  BigInt top_order() const
  {
    if (levels.size() == layers.size() + 1)
      return BigInt(levels.back()->order());
    return top->order_formula();
  }

  /// Composed morphism levels[k] ↠ levels[0].
  Morphism to_base(std::size_t k) const
  {
    Morphism m = identity_morphism(levels.at(k));
    for (std::size_t i = k; i > 0; --i)
      m = compose(m, projections[i - 1]);
    return m;
  }
};

inline Tower tower(const GroupPtr &base, const std::vector<Layer> &layers, std::size_t bound = kDefaultOrderBound,
                   bool materialize_top = false)
{
  Tower t;
  t.layers = layers;
  t.levels.push_back(base);
  for (std::size_t i = 0; i < layers.size(); ++i) {
    auto lazy = std::make_shared<const GaschutzGroup>(t.levels.back(), layers[i].p, layers[i].tilde);
    if (i + 1 == layers.size()) {
      t.top = lazy;
      if (!materialize_top)
        break;
    }
    auto lvl = materialize_gaschutz(lazy, bound);
    t.levels.push_back(lvl.group);
    t.projections.push_back(lvl.projection);
  }
  return t;
}

/// Mod-p cycle-space identity for a plain layer: the kernel of G^{Z/p} ↠ G
/// is elementary abelian and equals the cycle space of Γ(G).
struct KernelRankReport
{
  std::size_t kernel_order = 0;
  std::size_t kernel_rank = 0;     ///< log_p |kernel|
  std::size_t span_rank = 0;       ///< rank of the kernel α-vectors
  std::size_t cycle_rank = 0;      ///< E − V + 1 of Γ(G)
  std::size_t formula_rank = 0;    ///< |G|(|A|−1)+1
  bool kernel_in_cycle_space = false;
  bool elementary_abelian = false;
  /// The tilde layer loses |A| dimensions to the center.
  std::size_t tilde_kernel_rank = 0;

  bool ok() const
  {
    return kernel_in_cycle_space && elementary_abelian && kernel_rank == span_rank && span_rank == cycle_rank &&
           cycle_rank == formula_rank;
  }
};

inline KernelRankReport kernel_rank_check(const GroupPtr &base, std::uint32_t p, std::size_t bound = kDefaultOrderBound)
{
  auto lvl = materialize_gaschutz(base, p, false, bound);
  const auto &g = *base;
  KernelRankReport r;
  auto kernel = kernel_elements(lvl.projection);
  r.kernel_order = kernel.size();
  for (std::size_t n = kernel.size(); n > 1; n /= p)
    ++r.kernel_rank;
  r.formula_rank = g.order() * (g.num_letters() - 1) + 1;
  r.cycle_rank = g.num_edges() - g.order() + 1;

  auto cycles = spanning_tree_cycles(g, Subgraph::full(g), 0, p);
  ModpBasis cycle_space(g.num_edges(), p);
  for (auto &c : cycles.cycles)
    cycle_space.insert(c);
  ModpBasis span(g.num_edges(), p);
  r.kernel_in_cycle_space = true;
  r.elementary_abelian = true;
  for (auto k : kernel) {
    auto d = lvl.elements[k].alpha.dense(g.num_edges());
    r.kernel_in_cycle_space = r.kernel_in_cycle_space && cycle_space.contains(d);
    span.insert(d);
    // exponent p
    std::uint32_t x = 0;
    for (std::uint32_t i = 0; i < p; ++i)
      x = lvl.group->multiply(x, k);
    r.elementary_abelian = r.elementary_abelian && x == 0;
  }
  r.span_rank = span.rank();
  r.kernel_in_cycle_space = r.kernel_in_cycle_space && cycle_space.rank() == r.cycle_rank;
  r.tilde_kernel_rank = r.kernel_rank - g.num_letters();
  return r;
}

/// Gaschütz's decomposition needs p ∤ |G|: order, exponent and center checks.
struct Satz4Report
{
  BigInt expected_order;
  std::size_t actual_order = 0;
  std::size_t kernel_dimension = 0; ///< 1 + (|A|−1)|G|
  bool kernel_elementary_abelian = false;
  bool kernel_abelian = false;
  std::size_t center_order = 0;
  std::size_t expected_center_order = 0;

  bool ok() const
  {
    return expected_order == actual_order && kernel_elementary_abelian && kernel_abelian &&
           center_order == expected_center_order;
  }
};

inline Satz4Report satz4_checks(const GroupPtr &base, std::uint32_t p, std::size_t bound = kDefaultOrderBound)
{
  if (!is_prime(p))
    throw InputError("modulus is not prime");
  if (base->order() % p == 0)
    throw PreconditionError("p divides |G|; the decomposition requires p not dividing |G|");
  auto lvl = materialize_gaschutz(base, p, false, bound);
  const auto &h = *lvl.group;
  Satz4Report r;
  r.kernel_dimension = 1 + (base->num_letters() - 1) * base->order();
  r.expected_order = BigInt(base->order()) * boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(r.kernel_dimension));
  r.actual_order = h.order();
  auto kernel = kernel_elements(lvl.projection);
  r.kernel_elementary_abelian = true;
  for (auto k : kernel) {
    std::uint32_t x = 0;
    for (std::uint32_t i = 0; i < p; ++i)
      x = h.multiply(x, k);
    r.kernel_elementary_abelian = r.kernel_elementary_abelian && x == 0;
  }
  r.kernel_abelian = true;
  for (std::size_t i = 0; i < kernel.size() && r.kernel_abelian; ++i)
    for (std::size_t j = i + 1; j < kernel.size() && r.kernel_abelian; ++j)
      r.kernel_abelian = h.multiply(kernel[i], kernel[j]) == h.multiply(kernel[j], kernel[i]);
  r.center_order = brute_force_center(h).size();
  r.expected_center_order = 1;
  for (std::size_t i = 0; i < base->num_letters(); ++i)
    r.expected_center_order *= p;
  return r;
}

} // namespace arbor
