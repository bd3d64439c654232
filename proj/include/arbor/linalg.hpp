#pragma once

#include <cstdint>
#include <vector>

#include "error.hpp"
#include "perm.hpp"

namespace arbor {

inline std::uint32_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint32_t p)
{
  std::uint64_t r = 1 % p;
  base %= p;
  while (exp) {
    if (exp & 1)
      r = r * base % p;
    base = base * base % p;
    exp >>= 1;
  }
  return static_cast<std::uint32_t>(r);
}

inline std::uint32_t mod_inverse(std::uint32_t x, std::uint32_t p) { return mod_pow(x, p - 2, p); }

/// Row-echelon basis of a subspace of F_p^dim. Each stored row has a pivot
/// entry 1 and is zero at the pivots of all earlier rows, so a single pass
/// in insertion order reduces any vector.
class ModpBasis
{
public:
  using Vector = std::vector<std::uint32_t>;

  ModpBasis(std::size_t dim, std::uint32_t p) : dim_(dim), p_(p)
  {
    if (!is_prime(p))
      throw InputError("modulus " + std::to_string(p) + " is not prime");
  }

  std::size_t dim() const { return dim_; }
  std::uint32_t modulus() const { return p_; }
  std::size_t rank() const { return rows_.size(); }

  Vector reduce(Vector v) const
  {
    check(v);
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      std::uint64_t c = v[pivots_[i]];
      if (c == 0)
        continue;
      const auto &r = rows_[i];
      for (std::size_t j = 0; j < dim_; ++j)
        if (r[j])
          v[j] = static_cast<std::uint32_t>((v[j] + (p_ - c) * r[j]) % p_);
    }
    return v;
  }

  bool contains(const Vector &v) const
  {
    auto r = reduce(v);
    for (auto x : r)
      if (x)
        return false;
    return true;
  }

  /// Returns true if v was independent of the current span.
  bool insert(Vector v)
  {
    v = reduce(std::move(v));
    std::size_t pivot = dim_;
    for (std::size_t j = 0; j < dim_; ++j)
      if (v[j]) {
        pivot = j;
        break;
      }
    if (pivot == dim_)
      return false;
    std::uint64_t inv = mod_inverse(v[pivot], p_);
    for (auto &x : v)
      x = static_cast<std::uint32_t>(x * inv % p_);
    rows_.push_back(std::move(v));
    pivots_.push_back(pivot);
    return true;
  }

private:
  void check(Vector &v) const
  {
    if (v.size() != dim_)
      throw InvariantError("vector dimension mismatch in mod-p basis");
    for (auto &x : v)
      x %= p_;
  }

  std::size_t dim_;
  std::uint32_t p_;
  std::vector<Vector> rows_;
  std::vector<std::size_t> pivots_;
};

} // namespace arbor
