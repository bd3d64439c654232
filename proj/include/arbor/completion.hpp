#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "automaton.hpp"
#include "error.hpp"
#include "perm.hpp"

namespace arbor {

inline std::uint64_t smallest_prime_greater(std::uint64_t m)
{
  if (m < 1)
    throw InputError("smallest_prime_greater needs m >= 1");
  auto q = m + 1;
  while (!is_prime(q))
    ++q;
  return q;
}

/// Gadget layout on W = {x_1..x_q, y, z, t_1..t_k} appended after V.
struct CompletionPlan
{
  std::size_t m = 0;
  std::size_t q = 0;
  std::size_t k = 0;
  std::size_t n = 0;
  std::uint32_t a = 0; ///< letter with a missing outgoing edge
  std::uint32_t v = 0; ///< smallest vertex lacking an outgoing a-edge
  std::uint32_t b = 0; ///< smallest letter other than a

  std::uint32_t x(std::size_t i) const { return static_cast<std::uint32_t>(m + i - 1); } ///< 1-based
  std::uint32_t y() const { return static_cast<std::uint32_t>(m + q); }
  std::uint32_t z() const { return static_cast<std::uint32_t>(m + q + 1); }
  std::uint32_t t(std::size_t i) const { return static_cast<std::uint32_t>(m + q + 1 + i); } ///< 1-based
};

inline CompletionPlan plan_completion(const InverseAutomaton &A, std::size_t n)
{
  CompletionPlan plan;
  plan.m = A.num_vertices();
  if (A.num_letters() < 2)
    throw PreconditionError("completion needs at least two letters");
  if (plan.m < 3)
    throw PreconditionError("completion needs m >= 3 vertices");
  if (!A.is_connected())
    throw PreconditionError("automaton is disconnected");
  if (A.is_complete())
    throw PreconditionError("automaton is already complete");
  plan.q = smallest_prime_greater(plan.m);
  if (n < plan.m + plan.q + 2)
    throw PreconditionError("n < m+q+2 (m=" + std::to_string(plan.m) + ", q=" + std::to_string(plan.q) +
                            ", need n >= " + std::to_string(plan.m + plan.q + 2) + ")");
  plan.n = n;
  plan.k = n - plan.m - plan.q - 2;
  bool found = false;
  for (std::uint32_t l = 0; l < A.num_letters() && !found; ++l)
    for (std::uint32_t u = 0; u < plan.m; ++u)
      if (A.next(u, l) == kNone) {
        plan.a = l;
        plan.v = u;
        found = true;
        break;
      }
  plan.b = plan.a == 0 ? 1 : 0;
  return plan;
}

struct CompletionResult
{
  InverseAutomaton automaton{1, 1, 0};
  AlternatingCertificate certificate;
  CompletionPlan plan;
};

namespace detail {

/// Closes every maximal open chain of `letter` into its own cycle. If the
/// resulting permutation is odd, two singleton chains from `spares` are
/// merged into a 2-cycle instead (chosen by the seeded generator).
inline void close_letter(InverseAutomaton &C, std::uint32_t letter, const std::vector<std::uint32_t> &spares,
                         std::mt19937_64 &rng)
{
  const auto n = static_cast<std::uint32_t>(C.num_vertices());
  auto is_singleton = [&](std::uint32_t u) { return C.next(u, letter) == kNone && C.prev(u, letter) == kNone; };

  // parity of the closed permutation: a cycle of length L contributes L-1
  std::size_t transpositions = 0;
  {
    std::vector<bool> seen(n, false);
    for (std::uint32_t u = 0; u < n; ++u) {
      if (seen[u] || C.prev(u, letter) != kNone)
        continue;
      std::size_t len = 0;
      for (auto w = u; w != kNone && !seen[w]; w = C.next(w, letter)) {
        seen[w] = true;
        ++len;
      }
      transpositions += len - 1;
    }
    for (std::uint32_t u = 0; u < n; ++u) {
      if (seen[u])
        continue;
      std::size_t len = 0;
      for (auto w = u; !seen[w]; w = C.next(w, letter)) {
        seen[w] = true;
        ++len;
      }
      transpositions += len - 1;
    }
  }
  if (transpositions % 2 == 1) {
    std::vector<std::uint32_t> free;
    for (auto u : spares)
      if (is_singleton(u))
        free.push_back(u);
    if (free.size() < 2)
      throw InvariantError("no two free gadget vertices to repair parity");
    std::shuffle(free.begin(), free.end(), rng);
    auto u = std::min(free[0], free[1]);
    auto w = std::max(free[0], free[1]);
    C.add_edge(u, letter, w);
    C.add_edge(w, letter, u);
  }
  for (std::uint32_t u = 0; u < n; ++u) {
    if (C.prev(u, letter) != kNone)
      continue;
    auto end = u;
    while (C.next(end, letter) != kNone)
      end = C.next(end, letter);
    C.add_edge(end, letter, u);
  }
}

} // namespace detail

/// Extends A to a permutation automaton on n vertices whose transition
/// group is the alternating group, with a Jordan certificate.
inline CompletionResult complete_to_alternating(const InverseAutomaton &A, std::size_t n, std::uint64_t seed = 0)
{
  auto plan = plan_completion(A, n);
  InverseAutomaton C(n, A.num_letters(), A.base());
  for (const auto &e : A.edges())
    C.add_edge(e.src, e.label, e.dst);

  const auto a = plan.a, b = plan.b;
  C.add_edge(plan.v, a, plan.x(1));
  // y → x2 → x3 → t1 → … → tk → z → y
  std::vector<std::uint32_t> ring{plan.y(), plan.x(2), plan.x(3)};
  for (std::size_t i = 1; i <= plan.k; ++i)
    ring.push_back(plan.t(i));
  ring.push_back(plan.z());
  for (std::size_t i = 0; i < ring.size(); ++i)
    C.add_edge(ring[i], a, ring[(i + 1) % ring.size()]);
  for (std::size_t i = 1; i <= plan.q; ++i)
    C.add_edge(plan.x(i), b, plan.x(i % plan.q + 1));

  std::mt19937_64 rng(seed);
  for (std::uint32_t l = 0; l < C.num_letters(); ++l) {
    std::vector<std::uint32_t> spares;
    if (l == a)
      for (std::size_t i = 4; i <= plan.q; ++i)
        spares.push_back(plan.x(i));
    else if (l == b) {
      spares = {plan.y(), plan.z()};
      for (std::size_t i = 1; i <= plan.k; ++i)
        spares.push_back(plan.t(i));
    } else {
      for (auto u = static_cast<std::uint32_t>(plan.m); u < n; ++u)
        spares.push_back(u);
    }
    detail::close_letter(C, l, spares, rng);
  }
  ensure(C.is_complete(), "completion left a partial letter");

  CompletionResult r;
  r.certificate = alternating_certificate(transition_group(C), b);
  r.automaton = std::move(C);
  r.plan = plan;
  return r;
}

/// Literal checks of the completion postconditions.
struct CompletionChecks
{
  bool extends = false;
  bool all_even = false;
  bool b_cycles_short = false;
  bool certificate_valid = false;

  bool ok() const { return extends && all_even && b_cycles_short && certificate_valid; }
};

inline CompletionChecks check_completion(const InverseAutomaton &A, const CompletionResult &r)
{
  CompletionChecks c;
  const auto &C = r.automaton;
  c.extends = C.num_letters() == A.num_letters() && C.num_vertices() >= A.num_vertices();
  for (const auto &e : A.edges())
    c.extends = c.extends && C.next(e.src, e.label) == e.dst;
  auto T = transition_group(C);
  c.all_even = std::all_of(T.gens.begin(), T.gens.end(), [](const Permutation &p) { return parity(p) == Parity::even; });
  c.b_cycles_short = true;
  std::size_t big = 0;
  for (const auto &cyc : T.gens[r.plan.b].cycles()) {
    if (cyc.size() == r.plan.q && cyc[0] >= r.plan.m)
      ++big;
    else if (cyc.size() >= r.plan.q)
      c.b_cycles_short = false;
  }
  c.b_cycles_short = c.b_cycles_short && big == 1;
  c.certificate_valid = r.certificate.valid();
  return c;
}

struct PredissolverReport
{
  /// witness[i] = vertex of 𝒞 at which amalgam i embeds
  std::vector<std::optional<std::uint32_t>> witness;

  bool certified() const
  {
    return std::all_of(witness.begin(), witness.end(), [](const auto &w) { return w.has_value(); });
  }
};

inline PredissolverReport predissolver_certificate(const InverseAutomaton &C, const std::vector<InverseAutomaton> &amalgams)
{
  PredissolverReport r;
  for (const auto &am : amalgams) {
    std::optional<std::uint32_t> found;
    for (std::uint32_t v = 0; v < C.num_vertices() && !found; ++v)
      if (embed_check(am, C, v))
        found = v;
    r.witness.push_back(found);
  }
  return r;
}

} // namespace arbor
