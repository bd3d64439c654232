#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <numeric>
#include <optional>
#include <queue>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "error.hpp"

namespace arbor {

inline bool is_prime(std::uint64_t n)
{
  if (n < 2)
    return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0)
      return false;
  return true;
}

/// A permutation of {0, ..., n-1}, acting on the right: (p * q)[i] = q[p[i]].
class Permutation
{
public:
  Permutation() = default;

  explicit Permutation(std::vector<std::uint32_t> images) : images_(std::move(images))
  {
    std::vector<bool> seen(images_.size(), false);
    for (auto x : images_) {
      if (x >= images_.size() || seen[x])
        throw InputError("permutation images are not a bijection");
      seen[x] = true;
    }
  }

  static Permutation identity(std::size_t degree)
  {
    std::vector<std::uint32_t> im(degree);
    std::iota(im.begin(), im.end(), 0u);
    return Permutation(std::move(im));
  }

  static Permutation from_cycles(std::size_t degree, const std::vector<std::vector<std::uint32_t>> &cycles)
  {
    std::vector<std::uint32_t> im(degree);
    std::iota(im.begin(), im.end(), 0u);
    std::vector<bool> used(degree, false);
    for (const auto &cycle : cycles) {
      for (auto x : cycle) {
        if (x >= degree)
          throw InputError("cycle point " + std::to_string(x) + " exceeds degree " + std::to_string(degree));
        if (used[x])
          throw InputError("cycles are not disjoint at point " + std::to_string(x));
        used[x] = true;
      }
      for (std::size_t i = 0; i < cycle.size(); ++i)
        im[cycle[i]] = cycle[(i + 1) % cycle.size()];
    }
    return Permutation(std::move(im));
  }

  /// Disjoint cycle notation over 0-based points, e.g. "(0 1 2)(3 4)"; "()" is the identity.
  static Permutation parse(std::string_view text, std::size_t degree)
  {
    std::vector<std::vector<std::uint32_t>> cycles;
    std::size_t i = 0;
    auto skip_ws = [&] {
      while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
        ++i;
    };
    skip_ws();
    while (i < text.size()) {
      if (text[i] != '(')
        throw InputError("expected '(' in permutation \"" + std::string(text) + "\"");
      ++i;
      std::vector<std::uint32_t> cycle;
      while (true) {
        while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ','))
          ++i;
        if (i >= text.size())
          throw InputError("unterminated cycle in \"" + std::string(text) + "\"");
        if (text[i] == ')') {
          ++i;
          break;
        }
        if (!std::isdigit(static_cast<unsigned char>(text[i])))
          throw InputError("bad character in permutation \"" + std::string(text) + "\"");
        std::uint64_t v = 0;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
          v = v * 10 + static_cast<std::uint64_t>(text[i] - '0');
          if (v > 1u << 24)
            throw InputError("permutation point too large");
          ++i;
        }
        cycle.push_back(static_cast<std::uint32_t>(v));
      }
      if (!cycle.empty())
        cycles.push_back(std::move(cycle));
      skip_ws();
    }
    return from_cycles(degree, cycles);
  }

  std::size_t degree() const { return images_.size(); }
  std::uint32_t operator[](std::size_t i) const { return images_[i]; }
  const std::vector<std::uint32_t> &images() const { return images_; }

  Permutation operator*(const Permutation &rhs) const
  {
    if (rhs.degree() != degree())
      throw InputError("degree mismatch in permutation product");
    std::vector<std::uint32_t> im(degree());
    for (std::size_t i = 0; i < degree(); ++i)
      im[i] = rhs.images_[images_[i]];
    Permutation out;
    out.images_ = std::move(im);
    return out;
  }

  Permutation inverse() const
  {
    Permutation out;
    out.images_.resize(degree());
    for (std::size_t i = 0; i < degree(); ++i)
      out.images_[images_[i]] = static_cast<std::uint32_t>(i);
    return out;
  }

  Permutation pow(long long k) const
  {
    Permutation base = k < 0 ? inverse() : *this;
    unsigned long long e = static_cast<unsigned long long>(k < 0 ? -k : k);
    Permutation result = identity(degree());
    while (e) {
      if (e & 1)
        result = result * base;
      base = base * base;
      e >>= 1;
    }
    return result;
  }

  bool is_identity() const
  {
    for (std::size_t i = 0; i < degree(); ++i)
      if (images_[i] != i)
        return false;
    return true;
  }

  /// All cycles, including fixed points when requested, each starting at its smallest point.
  std::vector<std::vector<std::uint32_t>> cycles(bool include_fixed = false) const
  {
    std::vector<std::vector<std::uint32_t>> out;
    std::vector<bool> seen(degree(), false);
    for (std::uint32_t i = 0; i < degree(); ++i) {
      if (seen[i])
        continue;
      std::vector<std::uint32_t> cycle;
      for (std::uint32_t x = i; !seen[x]; x = images_[x]) {
        seen[x] = true;
        cycle.push_back(x);
      }
      if (cycle.size() > 1 || include_fixed)
        out.push_back(std::move(cycle));
    }
    return out;
  }

  /// Cycle lengths (fixed points included), sorted in decreasing order.
  std::vector<std::size_t> cycle_type() const
  {
    std::vector<std::size_t> t;
    for (const auto &c : cycles(true))
      t.push_back(c.size());
    std::sort(t.rbegin(), t.rend());
    return t;
  }

  std::string to_string() const
  {
    std::ostringstream os;
    auto cs = cycles();
    if (cs.empty())
      return "()";
    for (const auto &c : cs) {
      os << '(';
      for (std::size_t i = 0; i < c.size(); ++i)
        os << (i ? " " : "") << c[i];
      os << ')';
    }
    return os.str();
  }

  bool operator==(const Permutation &) const = default;
  auto operator<=>(const Permutation &) const = default;

private:
  std::vector<std::uint32_t> images_;
};

struct PermutationHash
{
  std::size_t operator()(const Permutation &p) const noexcept
  {
    std::size_t h = p.degree();
    for (auto x : p.images())
      h = h * 1000003u ^ x;
    return h;
  }
};

enum class Parity { even, odd };

inline Parity parity(const Permutation &p)
{
  std::size_t transpositions = 0;
  for (const auto &c : p.cycles())
    transpositions += c.size() - 1;
  return transpositions % 2 ? Parity::odd : Parity::even;
}

/// One permutation per alphabet letter, all of the same degree.
struct PermGroupGens
{
  std::size_t degree = 0;
  std::vector<Permutation> gens;

  PermGroupGens() = default;
  PermGroupGens(std::size_t n, std::vector<Permutation> g) : degree(n), gens(std::move(g))
  {
    for (const auto &p : gens)
      if (p.degree() != degree)
        throw InputError("generator degree differs from group degree");
  }
};

inline std::vector<std::uint32_t> orbit(const PermGroupGens &g, std::uint32_t start)
{
  std::vector<bool> seen(g.degree, false);
  std::vector<std::uint32_t> out{start};
  seen[start] = true;
  for (std::size_t i = 0; i < out.size(); ++i)
    for (const auto &p : g.gens) {
      auto y = p[out[i]];
      if (!seen[y]) {
        seen[y] = true;
        out.push_back(y);
      }
    }
  return out;
}

inline bool is_transitive(const PermGroupGens &g)
{
  if (g.degree == 0)
    throw PreconditionError("transitivity needs degree >= 1");
  return orbit(g, 0).size() == g.degree;
}

/// Smallest block of imprimitivity containing {alpha, beta}, returned as a
/// class label per point (Atkinson's union-find closure).
inline std::vector<std::uint32_t> minimal_block_labels(const PermGroupGens &g, std::uint32_t alpha, std::uint32_t beta)
{
  std::vector<std::uint32_t> parent(g.degree);
  std::iota(parent.begin(), parent.end(), 0u);
  auto find = [&](std::uint32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  std::queue<std::pair<std::uint32_t, std::uint32_t>> pending;
  auto unite = [&](std::uint32_t x, std::uint32_t y) {
    x = find(x);
    y = find(y);
    if (x == y)
      return;
    parent[std::max(x, y)] = std::min(x, y);
    pending.emplace(x, y);
  };
  unite(alpha, beta);
  while (!pending.empty()) {
    auto [x, y] = pending.front();
    pending.pop();
    for (const auto &p : g.gens)
      unite(p[x], p[y]);
  }
  std::vector<std::uint32_t> labels(g.degree);
  for (std::uint32_t i = 0; i < g.degree; ++i)
    labels[i] = find(i);
  return labels;
}

inline bool is_primitive(const PermGroupGens &g)
{
  if (!is_transitive(g))
    throw PreconditionError("primitivity is only defined for transitive groups");
  if (g.degree <= 2)
    return true;
  for (std::uint32_t beta = 1; beta < g.degree; ++beta) {
    auto labels = minimal_block_labels(g, 0, beta);
    for (auto l : labels)
      if (l != labels[0])
        return false;
  }
  return true;
}

struct PrimePowerCycle
{
  std::uint64_t q = 0;     ///< prime cycle length
  std::uint64_t power = 0; ///< p^power is a single q-cycle
  bool operator==(const PrimePowerCycle &) const = default;
};

/// All primes q such that p has exactly one q-cycle and q divides no other
/// cycle length; power is the lcm of the other cycle lengths.
inline std::vector<PrimePowerCycle> prime_power_cycles(const Permutation &p)
{
  auto type = p.cycle_type();
  std::vector<PrimePowerCycle> out;
  for (std::size_t i = 0; i < type.size(); ++i) {
    auto q = type[i];
    if (!is_prime(q) || (i > 0 && type[i - 1] == q))
      continue;
    bool ok = true;
    std::uint64_t r = 1;
    for (std::size_t j = 0; j < type.size(); ++j) {
      if (j == i)
        continue;
      if (type[j] % q == 0) {
        ok = false;
        break;
      }
      r = std::lcm(r, static_cast<std::uint64_t>(type[j]));
    }
    if (ok)
      out.push_back({q, r});
  }
  return out;
}

/// The largest qualifying prime, if any.
inline std::optional<PrimePowerCycle> prime_power_cycle(const Permutation &p)
{
  auto all = prime_power_cycles(p);
  if (all.empty())
    return std::nullopt;
  return all.front();
}

/// Jordan-theorem evidence that a permutation group is the alternating group.
struct AlternatingCertificate
{
  struct PrimeCycle
  {
    std::uint64_t q = 0;
    std::uint64_t power = 0;
    std::uint32_t letter = 0;
  };

  std::size_t degree = 0;
  bool transitive = false;
  bool primitive = false;
  bool all_even = false;
  std::optional<PrimeCycle> prime_cycle;
  /// True when gens[letter]^power was recomputed and is a single q-cycle.
  bool cycle_verified = false;

  bool valid() const
  {
    return transitive && primitive && all_even && prime_cycle && is_prime(prime_cycle->q) &&
           prime_cycle->q + 3 <= degree && cycle_verified;
  }
};

/// `prefer` names a letter whose prime cycle is tried first.
inline AlternatingCertificate alternating_certificate(const PermGroupGens &g,
                                                      std::optional<std::uint32_t> prefer = std::nullopt)
{
  if (g.degree < 5)
    throw PreconditionError("alternating certificate needs degree >= 5");
  AlternatingCertificate cert;
  cert.degree = g.degree;
  cert.transitive = is_transitive(g);
  cert.primitive = cert.transitive && is_primitive(g);
  cert.all_even = std::all_of(g.gens.begin(), g.gens.end(), [](const Permutation &p) { return parity(p) == Parity::even; });
  std::vector<std::uint32_t> order;
  if (prefer && *prefer < g.gens.size())
    order.push_back(*prefer);
  for (std::uint32_t letter = 0; letter < g.gens.size(); ++letter)
    if (!prefer || letter != *prefer)
      order.push_back(letter);
  for (auto letter : order) {
    if (cert.prime_cycle)
      break;
    for (const auto &c : prime_power_cycles(g.gens[letter]))
      if (c.q + 3 <= g.degree) {
        cert.prime_cycle = AlternatingCertificate::PrimeCycle{c.q, c.power, letter};
        break;
      }
  }
  if (cert.prime_cycle) {
    auto cyc = g.gens[cert.prime_cycle->letter].pow(static_cast<long long>(cert.prime_cycle->power)).cycles();
    cert.cycle_verified = cyc.size() == 1 && cyc[0].size() == cert.prime_cycle->q;
  }
  return cert;
}

/// Brute-force closure of the generated group; nullopt once more than bound
/// elements have been found.
inline std::optional<std::size_t> enumerate_order(const PermGroupGens &g, std::size_t bound)
{
  std::unordered_set<Permutation, PermutationHash> seen;
  std::vector<Permutation> queue{Permutation::identity(g.degree)};
  seen.insert(queue.front());
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (const auto &p : g.gens) {
      Permutation y = queue[i] * p;
      if (seen.insert(y).second) {
        if (seen.size() > bound)
          return std::nullopt;
        queue.push_back(std::move(y));
      }
    }
  }
  return seen.size();
}

} // namespace arbor
