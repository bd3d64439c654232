#pragma once

#include <cctype>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"
#include "gaschuetz.hpp"
#include "group.hpp"
#include "perm.hpp"
#include "word.hpp"

namespace arbor {

/// Expression tree of the group-spec language:
///   cyclic(n; a=1, b=1) | klein(a=10, b=01) | perm(n; a=(0 1 2), b=(0 1))
///   gaschutz(spec, p) | tilde(spec, p) | prodA(spec, spec)
struct GroupSpec
{
  enum class Kind
  {
    cyclic,
    klein,
    perm,
    gaschutz,
    tilde,
    prodA
  };

  Kind kind = Kind::cyclic;
  std::uint64_t n = 0;                            ///< cyclic modulus or perm degree
  std::map<std::uint32_t, std::string> images;    ///< letter -> raw image text (leaves)
  std::uint32_t p = 0;                            ///< gaschutz/tilde modulus
  std::vector<std::shared_ptr<const GroupSpec>> children;

  bool is_leaf() const { return kind == Kind::cyclic || kind == Kind::klein || kind == Kind::perm; }

  /// Highest letter index used anywhere in the tree, plus one.
  std::size_t letters_used() const
  {
    std::size_t m = images.empty() ? 0 : images.rbegin()->first + 1;
    for (const auto &c : children)
      m = std::max(m, c->letters_used());
    return m;
  }
};

using GroupSpecPtr = std::shared_ptr<const GroupSpec>;

namespace detail {

class SpecParser
{
public:
  explicit SpecParser(std::string_view text) : s_(text) {}

  GroupSpecPtr parse()
  {
    auto g = spec();
    skip();
    if (i_ != s_.size())
      fail("unexpected trailing text");
    return g;
  }

private:
  [[noreturn]] void fail(const std::string &why) const
  {
    throw InputError("group spec, position " + std::to_string(i_) + ": " + why);
  }

  void skip()
  {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_])))
      ++i_;
  }

  bool accept(char c)
  {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }

  void expect(char c)
  {
    if (!accept(c))
      fail(std::string("expected '") + c + "'");
  }

  std::string identifier()
  {
    skip();
    std::size_t start = i_;
    while (i_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[i_])))
      ++i_;
    if (start == i_)
      fail("expected a group constructor");
    return std::string(s_.substr(start, i_ - start));
  }

  std::uint64_t number()
  {
    skip();
    std::size_t start = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_])))
      ++i_;
    if (start == i_ || i_ - start > 9)
      fail("expected a number");
    return std::stoull(std::string(s_.substr(start, i_ - start)));
  }

  /// letter=value pairs; value runs until ',' or ')' outside parentheses.
  void assignments(GroupSpec &g)
  {
    skip();
    if (i_ < s_.size() && s_[i_] == ')')
      return;
    do {
      skip();
      if (i_ >= s_.size() || s_[i_] < 'a' || s_[i_] > 'z')
        fail("expected a letter");
      auto letter = static_cast<std::uint32_t>(s_[i_++] - 'a');
      expect('=');
      skip();
      std::size_t start = i_;
      int depth = 0;
      while (i_ < s_.size()) {
        char c = s_[i_];
        if (c == '(')
          ++depth;
        else if (c == ')') {
          if (depth == 0)
            break;
          --depth;
        } else if (c == ',' && depth == 0)
          break;
        ++i_;
      }
      std::string value(s_.substr(start, i_ - start));
      while (!value.empty() && std::isspace(static_cast<unsigned char>(value.back())))
        value.pop_back();
      if (value.empty())
        fail("empty image");
      if (!g.images.emplace(letter, value).second)
        fail(std::string("letter '") + static_cast<char>('a' + letter) + "' assigned twice");
    } while (accept(','));
  }

  GroupSpecPtr spec()
  {
    auto g = std::make_shared<GroupSpec>();
    auto name = identifier();
    expect('(');
    if (name == "cyclic" || name == "perm") {
      g->kind = name == "cyclic" ? GroupSpec::Kind::cyclic : GroupSpec::Kind::perm;
      g->n = number();
      if (g->n == 0)
        fail(name + " needs a positive size");
      expect(';');
      assignments(*g);
    } else if (name == "klein") {
      g->kind = GroupSpec::Kind::klein;
      assignments(*g);
    } else if (name == "gaschutz" || name == "tilde") {
      g->kind = name == "gaschutz" ? GroupSpec::Kind::gaschutz : GroupSpec::Kind::tilde;
      g->children.push_back(spec());
      expect(',');
      auto p = number();
      if (!is_prime(p))
        fail(std::to_string(p) + " is not prime");
      g->p = static_cast<std::uint32_t>(p);
    } else if (name == "prodA") {
      g->kind = GroupSpec::Kind::prodA;
      g->children.push_back(spec());
      expect(',');
      g->children.push_back(spec());
    } else {
      fail("unknown group constructor '" + name + "'");
    }
    expect(')');
    return g;
  }

  std::string_view s_;
  std::size_t i_ = 0;
};

} // namespace detail

inline GroupSpecPtr parse_group_spec(std::string_view text) { return detail::SpecParser(text).parse(); }

inline std::string format_group_spec(const GroupSpec &g)
{
  auto assigns = [&] {
    std::string s;
    for (const auto &[l, v] : g.images) {
      if (!s.empty())
        s += ", ";
      s += static_cast<char>('a' + l);
      s += "=" + v;
    }
    return s;
  };
  switch (g.kind) {
  case GroupSpec::Kind::cyclic:
    return "cyclic(" + std::to_string(g.n) + "; " + assigns() + ")";
  case GroupSpec::Kind::perm:
    return "perm(" + std::to_string(g.n) + "; " + assigns() + ")";
  case GroupSpec::Kind::klein:
    return "klein(" + assigns() + ")";
  case GroupSpec::Kind::gaschutz:
  case GroupSpec::Kind::tilde:
    return std::string(g.kind == GroupSpec::Kind::tilde ? "tilde(" : "gaschutz(") + format_group_spec(*g.children[0]) +
           ", " + std::to_string(g.p) + ")";
  case GroupSpec::Kind::prodA:
    return "prodA(" + format_group_spec(*g.children[0]) + ", " + format_group_spec(*g.children[1]) + ")";
  }
  return {};
}

struct MaterializedGroup
{
  GroupPtr group;
  std::vector<std::string> warnings;
};

namespace detail {

inline GroupPtr materialize_node(const GroupSpec &g, std::size_t letters, std::size_t bound,
                                 std::vector<std::string> &warnings)
{
  auto unassigned = [&](const char *what) {
    for (std::uint32_t a = 0; a < letters; ++a)
      if (!g.images.count(a))
        warnings.push_back(std::string(what) + ": letter '" + static_cast<char>('a' + a) +
                           "' unassigned, mapped to the identity");
  };
  switch (g.kind) {
  case GroupSpec::Kind::cyclic: {
    CyclicRep rep{g.n, std::vector<std::uint64_t>(letters, 0)};
    std::uint64_t gcd = g.n;
    for (const auto &[l, v] : g.images) {
      if (v.empty() || !std::all_of(v.begin(), v.end(), ::isdigit) || v.size() > 9)
        throw InputError("cyclic image '" + v + "' is not a residue");
      rep.images[l] = std::stoull(v) % g.n;
      gcd = std::gcd(gcd, rep.images[l]);
    }
    if (gcd != 1 && g.n != 1)
      throw InputError("cyclic(" + std::to_string(g.n) + ") images do not generate the group");
    unassigned("cyclic");
    return enumerate(rep, bound).group;
  }
  case GroupSpec::Kind::klein: {
    ElementaryAbelian2Rep rep{2, std::vector<std::uint64_t>(letters, 0)};
    for (const auto &[l, v] : g.images) {
      if (v.size() != 2 || (v[0] != '0' && v[0] != '1') || (v[1] != '0' && v[1] != '1'))
        throw InputError("klein image '" + v + "' must be a two-digit bit string");
      rep.images[l] = static_cast<std::uint64_t>((v[0] - '0') << 1 | (v[1] - '0'));
    }
    unassigned("klein");
    auto group = enumerate(rep, bound).group;
    if (group->order() != 4)
      throw InputError("klein images do not generate the Klein group");
    return group;
  }
  case GroupSpec::Kind::perm: {
    if (g.n > 1000)
      throw InputError("permutation degree too large");
    PermRep rep{g.n, std::vector<Permutation>(letters, Permutation::identity(g.n))};
    for (const auto &[l, v] : g.images)
      rep.images[l] = Permutation::parse(v, g.n);
    unassigned("perm");
    return enumerate(rep, bound).group;
  }
  case GroupSpec::Kind::gaschutz:
  case GroupSpec::Kind::tilde: {
    auto base = materialize_node(*g.children[0], letters, bound, warnings);
    return materialize_gaschutz(base, g.p, g.kind == GroupSpec::Kind::tilde, bound).group;
  }
  case GroupSpec::Kind::prodA: {
    auto x = materialize_node(*g.children[0], letters, bound, warnings);
    auto y = materialize_node(*g.children[1], letters, bound, warnings);
    return product_A(x, y, bound);
  }
  }
  throw InvariantError("unhandled group spec kind");
}

} // namespace detail

/// Alphabet size of a spec: highest letter used anywhere, at least one.
inline std::size_t spec_alphabet_size(const GroupSpec &g) { return std::max<std::size_t>(1, g.letters_used()); }

inline MaterializedGroup materialize(const GroupSpec &g, std::size_t bound = kDefaultOrderBound,
                                     std::optional<std::size_t> letters = std::nullopt)
{
  MaterializedGroup out;
  auto L = letters.value_or(spec_alphabet_size(g));
  if (L < g.letters_used())
    throw InputError("spec uses letters beyond the requested alphabet");
  out.group = detail::materialize_node(g, L, bound, out.warnings);
  return out;
}

inline MaterializedGroup materialize(std::string_view text, std::size_t bound = kDefaultOrderBound)
{
  return materialize(*parse_group_spec(text), bound);
}

/// An A-generated group that is either materialized or a lazy Gaschuetz
/// layer over a materialized base.
struct AGroup
{
  GroupPtr materialized;
  GaschutzPtr lazy;
  std::vector<std::string> warnings;

  std::size_t num_letters() const { return materialized ? materialized->num_letters() : lazy->num_letters(); }
  bool is_lazy() const { return !materialized; }

  bool is_identity(const Word &w) const { return materialized ? materialized->evaluate(w) == 0 : lazy->is_identity(w); }

  BigInt order() const { return materialized ? BigInt(materialized->order()) : lazy->order_formula(); }
};

/// Lazy when the outermost constructor is gaschutz/tilde, else materialized.
inline AGroup realize(const GroupSpec &g, std::size_t bound = kDefaultOrderBound)
{
  AGroup out;
  if (g.kind == GroupSpec::Kind::gaschutz || g.kind == GroupSpec::Kind::tilde) {
    auto base = materialize(*g.children[0], bound, spec_alphabet_size(g));
    out.warnings = base.warnings;
    out.lazy = std::make_shared<const GaschutzGroup>(base.group, g.p, g.kind == GroupSpec::Kind::tilde);
  } else {
    auto m = materialize(g, bound);
    out.warnings = m.warnings;
    out.materialized = m.group;
  }
  return out;
}

} // namespace arbor
