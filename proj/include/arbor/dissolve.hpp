#pragma once

#include <algorithm>
#include <cstdint>
#include <iterator>
#include <optional>
#include <string>
#include <vector>

#include "constellation.hpp"
#include "error.hpp"
#include "gaschuetz.hpp"
#include "group.hpp"
#include "linalg.hpp"
#include "subgraph.hpp"
#include "word.hpp"

namespace arbor {

/// Ξ̂ = component of 1 in φ^{-1}(Ξ) ⊆ Γ(H), and its fibers over Γ(G).
struct Lift
{
  Subgraph graph;
  std::vector<std::vector<std::uint32_t>> fibers; ///< fibers[g] ascending
};

inline Subgraph preimage(const Morphism &phi, const Subgraph &s)
{
  const auto &H = *phi.source;
  const auto &G = *phi.target;
  Subgraph out = Subgraph::empty(H);
  for (std::uint32_t h = 0; h < H.order(); ++h) {
    out.vertices[h] = s.vertices[phi(h)];
    for (std::uint32_t a = 0; a < H.num_letters(); ++a)
      out.edges[H.edge_id(h, a)] = s.edges[G.edge_id(phi(h), a)];
  }
  return out;
}

inline Lift reachable_lift(const Morphism &phi, const Subgraph &xi)
{
  if (!xi.vertices[0])
    throw PreconditionError("the subgraph must contain 1");
  const auto &H = *phi.source;
  Lift l{component_of(H, preimage(phi, xi), 0), std::vector<std::vector<std::uint32_t>>(phi.target->order())};
  for (std::uint32_t h = 0; h < H.order(); ++h)
    if (l.graph.vertices[h])
      l.fibers[phi(h)].push_back(h);
  return l;
}

enum class DissolveMethod
{
  reachability,
  linear
};

struct DissolveReport
{
  std::size_t constellation_id = 0;
  std::uint32_t g = 0;
  bool dissolved = true;
  DissolveMethod method = DissolveMethod::reachability;
  /// reachability witness: [u]_H = [v]_H, u inside Ξ, v inside Θ
  std::optional<Word> u, v;
  /// linear witness: shared endpoint in Γ(G_k)
  std::optional<std::uint32_t> shared_endpoint;
  std::optional<std::vector<std::uint32_t>> offending_vector;
};

namespace detail {

inline std::optional<std::uint32_t> first_common(const std::vector<std::uint32_t> &x, const std::vector<std::uint32_t> &y)
{
  std::size_t i = 0, j = 0;
  while (i < x.size() && j < y.size()) {
    if (x[i] == y[j])
      return x[i];
    if (x[i] < y[j])
      ++i;
    else
      ++j;
  }
  return std::nullopt;
}

} // namespace detail

/// Exact decision on a materialized H ↠ G using precomputed lifts.
inline DissolveReport dissolves_materialized(const Morphism &phi, const Lift &xi_hat, const Lift &theta_hat,
                                             std::uint32_t g)
{
  DissolveReport r;
  r.g = g;
  r.method = DissolveMethod::reachability;
  auto h = detail::first_common(xi_hat.fibers[g], theta_hat.fibers[g]);
  if (!h)
    return r;
  r.dissolved = false;
  const auto &H = *phi.source;
  r.u = path_word(H, xi_hat.graph, 0, *h);
  r.v = path_word(H, theta_hat.graph, 0, *h);
  ensure(r.u && r.v, "lift fiber without a path");
  return r;
}

inline DissolveReport dissolves_materialized(const Morphism &phi, const Constellation &c)
{
  validate(*phi.target, c);
  return dissolves_materialized(phi, reachable_lift(phi, c.xi), reachable_lift(phi, c.theta), c.g);
}

/// Re-checks a negative witness: [u]_H = [v]_H, u runs in Ξ and v in Θ.
inline bool verify_witness(const Morphism &phi, const Constellation &c, const Word &u, const Word &v)
{
  const auto &G = *phi.target;
  const auto &H = *phi.source;
  return H.evaluate(u) == H.evaluate(v) && G.evaluate(u) == c.g && path_inside(G, c.xi, u) &&
         path_inside(G, c.theta, v);
}

/// Decision for a top layer (G_k)^{(~)Z/p} given only materialized G_k.
/// Endpoints of Ξ-paths over h form v_Ξ,h + C_p(Ξ̂) (modulo the per-label
/// constants when tilde), so the two endpoint sets meet iff the difference
/// of reference vectors lies in the sum of the two cycle spaces.
class LinearDissolver
{
public:
  LinearDissolver(Morphism to_bottom, std::uint32_t p, bool tilde)
    : phi_(std::move(to_bottom)), p_(p), tilde_(tilde)
  {
    if (!is_prime(p_))
      throw InputError("layer modulus is not prime");
  }

  DissolveReport decide(const Constellation &c) const
  {
    validate(*phi_.target, c);
    const auto &Gk = *phi_.source;
    auto xi_hat = reachable_lift(phi_, c.xi);
    auto theta_hat = reachable_lift(phi_, c.theta);
    DissolveReport r;
    r.g = c.g;
    r.method = DissolveMethod::linear;
    const auto &fx = xi_hat.fibers[c.g];
    const auto &ft = theta_hat.fibers[c.g];
    std::vector<std::uint32_t> shared;
    std::set_intersection(fx.begin(), fx.end(), ft.begin(), ft.end(), std::back_inserter(shared));
    if (shared.empty())
      return r;

    auto cx = spanning_tree_cycles(Gk, xi_hat.graph, 0, p_);
    auto ct = spanning_tree_cycles(Gk, theta_hat.graph, 0, p_);
    ModpBasis basis(Gk.num_edges(), p_);
    for (auto &v : cx.cycles)
      basis.insert(v);
    for (auto &v : ct.cycles)
      basis.insert(v);
    if (tilde_)
      for (std::uint32_t a = 0; a < Gk.num_letters(); ++a) {
        std::vector<std::uint32_t> d(Gk.num_edges(), 0);
        for (std::uint32_t h = 0; h < Gk.order(); ++h)
          d[Gk.edge_id(h, a)] = 1 % p_;
        basis.insert(d);
      }
    for (auto h : shared) {
      auto diff = cx.potential[h];
      const auto &t = ct.potential[h];
      for (std::size_t j = 0; j < diff.size(); ++j)
        diff[j] = (diff[j] + p_ - t[j]) % p_;
      if (basis.contains(diff)) {
        r.dissolved = false;
        r.shared_endpoint = h;
        r.offending_vector = diff;
        return r;
      }
    }
    return r;
  }

private:
  Morphism phi_;
  std::uint32_t p_;
  bool tilde_;
};

inline DissolveReport dissolves_linear(const Tower &t, const Constellation &c)
{
  if (!t.top)
    throw PreconditionError("tower has no lazy top layer");
  auto k = t.levels.size() - 1;
  return LinearDissolver(t.to_base(k), t.top->modulus(), t.top->tilde()).decide(c);
}

/// Signed letters x with Δ_x a genuine constellation.
inline std::vector<SignedLetter> delta_letters(const FiniteGroup &G)
{
  std::vector<SignedLetter> out;
  for (std::uint32_t code = 0; code < 2 * G.num_letters(); ++code) {
    auto x = SignedLetter::from_code(code);
    try {
      delta(G, x);
      out.push_back(x);
    } catch (const PreconditionError &) {
    }
  }
  return out;
}

/// Generic driver over a decision function (constellation -> report).
template <class Decide>
std::vector<DissolveReport> decide_all_maximal(const FiniteGroup &G, Decide &&decide, bool stop_early = false)
{
  std::vector<DissolveReport> out;
  std::size_t id = 0;
  for (const auto &pr : maximal_constellations(G)) {
    for (auto g : pr.far_component) {
      auto r = decide(pr.at(g));
      r.constellation_id = id++;
      out.push_back(std::move(r));
      if (stop_early && !out.back().dissolved)
        return out;
    }
  }
  return out;
}

template <class Decide>
std::vector<DissolveReport> decide_all_delta(const FiniteGroup &G, Decide &&decide, bool stop_early = false)
{
  std::vector<DissolveReport> out;
  std::size_t id = 0;
  for (auto x : delta_letters(G)) {
    auto r = decide(delta(G, x));
    r.constellation_id = id++;
    out.push_back(std::move(r));
    if (stop_early && !out.back().dissolved)
      return out;
  }
  return out;
}

inline bool all_dissolved(const std::vector<DissolveReport> &rs)
{
  return std::all_of(rs.begin(), rs.end(), [](const DissolveReport &r) { return r.dissolved; });
}

inline bool is_weak_dissolver(const Morphism &phi)
{
  return all_dissolved(decide_all_delta(
      *phi.target, [&](const Constellation &c) { return dissolves_materialized(phi, c); }, true));
}

inline bool is_dissolver(const Morphism &phi)
{
  const auto &G = *phi.target;
  for (const auto &pr : maximal_constellations(G)) {
    auto xi_hat = reachable_lift(phi, pr.xi);
    auto theta_hat = reachable_lift(phi, pr.theta);
    for (auto g : pr.far_component)
      if (!dissolves_materialized(phi, xi_hat, theta_hat, g).dissolved)
        return false;
  }
  return true;
}

inline bool is_dissolver_linear(const Tower &t)
{
  auto k = t.levels.size() - 1;
  LinearDissolver d(t.to_base(k), t.top->modulus(), t.top->tilde());
  return all_dissolved(decide_all_maximal(*t.levels[0], [&](const Constellation &c) { return d.decide(c); }, true));
}

inline bool is_weak_dissolver_linear(const Tower &t)
{
  auto k = t.levels.size() - 1;
  LinearDissolver d(t.to_base(k), t.top->modulus(), t.top->tilde());
  return all_dissolved(decide_all_delta(*t.levels[0], [&](const Constellation &c) { return d.decide(c); }, true));
}

/// Γ(H) with the geometric edges {(n·s, a) : n ∈ N} removed.
inline Subgraph remove_translates(const FiniteGroup &H, const std::vector<std::uint32_t> &translators, std::uint32_t s,
                                  std::uint32_t a)
{
  Subgraph out = Subgraph::full(H);
  for (auto n : translators)
    out.edges[H.edge_id(H.multiply(n, s), a)] = false;
  return out;
}

struct DisconnectionReport
{
  bool disconnected = false;           ///< (1)
  bool one_and_a_separated = false;    ///< (2)
  bool all_translates_separated = false; ///< (3)
  bool dissolves_delta = false;        ///< (4)

  bool agree() const
  {
    return disconnected == one_and_a_separated && one_and_a_separated == all_translates_separated &&
           all_translates_separated == dissolves_delta;
  }
};

/// The four conditions for φ: H ↠ G and a signed letter x, computed
/// independently.
inline DisconnectionReport disconnection_equivalence(const Morphism &phi, SignedLetter x)
{
  const auto &H = *phi.source;
  auto N = kernel_elements(phi);
  // (1,x)^{±1} as a positive edge (s, a)
  auto e = H.geometric_edge(0, x);
  auto cut = remove_translates(H, N, H.edge_source(e), H.edge_label(e));
  auto labels = component_labels(H, cut);
  DisconnectionReport r;
  r.disconnected = std::any_of(labels.begin(), labels.end(), [](std::uint32_t l) { return l != 0; });
  auto xa = H.act(0, x);
  r.one_and_a_separated = labels[0] != labels[xa];
  r.all_translates_separated = true;
  for (auto n : N)
    r.all_translates_separated = r.all_translates_separated && labels[n] != labels[H.act(n, x)];
  r.dissolves_delta = dissolves_materialized(phi, delta(*phi.target, x)).dissolved;
  return r;
}

/// For H = G^{~Z/p} (materialized with its projection) and L = φ^{-1}(K):
/// Γ(H)∖L(g,a)^{±1} separates g from ga.
inline bool key_lemma_check(const Morphism &projection, const std::vector<std::uint32_t> &K, std::uint32_t g,
                            std::uint32_t a)
{
  const auto &H = *projection.source;
  if (K.size() < 2)
    throw PreconditionError("the key lemma needs a nontrivial subgroup K");
  std::vector<bool> in_k(projection.target->order(), false);
  for (auto k : K)
    in_k[k] = true;
  std::vector<std::uint32_t> L;
  for (std::uint32_t h = 0; h < H.order(); ++h)
    if (in_k[projection(h)])
      L.push_back(h);
  auto labels = component_labels(H, remove_translates(H, L, g, a));
  return labels[g] != labels[H.right(g, a)];
}

/// π_1^G(w)(e) = Σ_{f ∈ φ^{-1}(e)} π_1^H(w)(f) for every edge e of Γ(G).
inline bool counting_lifts_holds(const Morphism &phi, const Word &w)
{
  const auto &H = *phi.source;
  const auto &G = *phi.target;
  auto down = traversal_vector(G, w);
  std::vector<long long> summed(G.num_edges(), 0);
  for (auto [f, c] : traversal_vector(H, w))
    summed[G.edge_id(phi(H.edge_source(f)), H.edge_label(f))] += c;
  for (std::uint32_t e = 0; e < G.num_edges(); ++e) {
    auto it = down.find(e);
    if ((it == down.end() ? 0 : it->second) != summed[e])
      return false;
  }
  return true;
}

/// Signed count of lifted border crossings of Υ (component of 1 in Ξ∩Θ);
/// equals 1 whenever [w]_G = g and π_1^G(w) ⊆ Ξ.
inline long long detecting_edges_sum(const Morphism &phi, const Constellation &c, const Word &w)
{
  const auto &H = *phi.source;
  const auto &G = *phi.target;
  validate(G, c);
  if (G.evaluate(w) != c.g || !path_inside(G, c.xi, w))
    throw PreconditionError("the word must run inside Xi from 1 to g");
  auto upsilon = component_of(G, intersect(c.xi, c.theta), 0);
  auto in_up = [&](std::uint32_t v) { return static_cast<bool>(upsilon.vertices[v]); };
  long long sum = 0;
  for (auto [f, cnt] : traversal_vector(H, w)) {
    auto e = G.edge_id(phi(H.edge_source(f)), H.edge_label(f));
    if (!c.xi.edges[e])
      continue;
    bool from = in_up(G.edge_source(e)), to = in_up(G.edge_target(e));
    if (from && !to)
      sum += cnt;
    else if (!from && to)
      sum -= cnt;
  }
  return sum;
}

inline bool detecting_edges_check(const Morphism &phi, const Constellation &c, const Word &w)
{
  return detecting_edges_sum(phi, c, w) == 1;
}

} // namespace arbor
