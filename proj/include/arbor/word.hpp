#pragma once

#include <cctype>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"

namespace arbor {

/// A letter of A or its formal inverse.
struct SignedLetter
{
  std::uint32_t index = 0;
  int sign = 1;

  constexpr SignedLetter inverse() const { return {index, -sign}; }

  /// Dense code over the doubled alphabet: a=0, a^-1=1, b=2, b^-1=3, ...
  constexpr std::uint32_t code() const { return 2 * index + (sign < 0 ? 1u : 0u); }

  static constexpr SignedLetter from_code(std::uint32_t code)
  {
    return {code / 2, (code % 2) ? -1 : 1};
  }

  constexpr auto operator<=>(const SignedLetter &) const = default;
};

class Alphabet
{
public:
  explicit Alphabet(std::string names) : names_(std::move(names))
  {
    for (std::size_t i = 0; i < names_.size(); ++i) {
      char c = names_[i];
      if (c < 'a' || c > 'z')
        throw InputError(std::string("alphabet letters must be lowercase a-z, got '") + c + "'");
      for (std::size_t j = 0; j < i; ++j)
        if (names_[j] == c)
          throw InputError(std::string("duplicate alphabet letter '") + c + "'");
    }
  }

  /// The first n letters a, b, c, ...
  static Alphabet standard(std::size_t n)
  {
    if (n > 26)
      throw InputError("at most 26 named letters are supported");
    std::string names;
    for (std::size_t i = 0; i < n; ++i)
      names.push_back(static_cast<char>('a' + i));
    return Alphabet(names);
  }

  std::size_t size() const { return names_.size(); }
  char name(std::uint32_t index) const { return names_.at(index); }
  const std::string &names() const { return names_; }

  std::optional<std::uint32_t> index_of(char c) const
  {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == c)
        return static_cast<std::uint32_t>(i);
    return std::nullopt;
  }

  bool operator==(const Alphabet &) const = default;

private:
  std::string names_;
};

/// An element of the free group written as a (not necessarily reduced)
/// sequence of signed letters.
struct Word
{
  std::vector<SignedLetter> letters;

  Word() = default;
  explicit Word(std::vector<SignedLetter> ls) : letters(std::move(ls)) {}

  std::size_t size() const { return letters.size(); }
  bool empty() const { return letters.empty(); }

  bool is_reduced() const
  {
    for (std::size_t i = 1; i < letters.size(); ++i)
      if (letters[i] == letters[i - 1].inverse())
        return false;
    return true;
  }

  bool operator==(const Word &) const = default;
};

inline Word reduce(const Word &w)
{
  std::vector<SignedLetter> stack;
  stack.reserve(w.size());
  for (auto x : w.letters) {
    if (!stack.empty() && stack.back() == x.inverse())
      stack.pop_back();
    else
      stack.push_back(x);
  }
  return Word(std::move(stack));
}

inline Word invert(const Word &w)
{
  Word out;
  out.letters.reserve(w.size());
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
    out.letters.push_back(it->inverse());
  return out;
}

inline Word concat(const Word &u, const Word &v)
{
  Word out = u;
  out.letters.insert(out.letters.end(), v.letters.begin(), v.letters.end());
  return out;
}

inline Word operator*(const Word &u, const Word &v) { return concat(u, v); }

/// w^k for any integer k (negative powers use the inverse).
inline Word power(const Word &w, long long k)
{
  const Word base = k < 0 ? invert(w) : w;
  Word out;
  for (long long i = 0; i < (k < 0 ? -k : k); ++i)
    out = concat(out, base);
  return out;
}

inline Word letter_word(std::uint32_t index, int sign = 1)
{
  return Word({SignedLetter{index, sign}});
}

/// Parses "abA" (uppercase = inverse) and the verbose form "a b^-1 a^2".
/// Whitespace, '.' and '*' separate tokens; "1" alone is the empty word.
inline Word parse_word(std::string_view text, const Alphabet &alphabet)
{
  Word w;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == '.' || text[i] == '*'))
      ++i;
  };
  skip();
  if (i < text.size() && text[i] == '1') {
    std::size_t j = i + 1;
    while (j < text.size() && std::isspace(static_cast<unsigned char>(text[j])))
      ++j;
    if (j == text.size())
      return w;
  }
  while (true) {
    skip();
    if (i >= text.size())
      break;
    char c = text[i++];
    if (!std::isalpha(static_cast<unsigned char>(c)))
      throw InputError(std::string("unexpected character '") + c + "' in word");
    bool upper = std::isupper(static_cast<unsigned char>(c));
    char lower = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    auto idx = alphabet.index_of(lower);
    if (!idx)
      throw InputError(std::string("unknown letter '") + lower + "' (alphabet is \"" + alphabet.names() + "\")");
    long long exponent = 1;
    if (i < text.size() && text[i] == '^') {
      ++i;
      bool negative = false;
      if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
        negative = text[i] == '-';
        ++i;
      }
      std::size_t start = i;
      long long value = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        value = value * 10 + (text[i] - '0');
        if (value > 1000000)
          throw InputError("exponent too large");
        ++i;
      }
      if (start == i)
        throw InputError("missing exponent after '^'");
      exponent = negative ? -value : value;
    }
    SignedLetter x{*idx, upper ? -1 : 1};
    if (exponent < 0) {
      x = x.inverse();
      exponent = -exponent;
    }
    for (long long k = 0; k < exponent; ++k)
      w.letters.push_back(x);
  }
  return w;
}

/// Compact form: lowercase for letters, uppercase for inverses.
inline std::string format_word(const Word &w, const Alphabet &alphabet)
{
  std::string out;
  out.reserve(w.size());
  for (auto x : w.letters) {
    char c = alphabet.name(x.index);
    out.push_back(x.sign < 0 ? static_cast<char>(std::toupper(static_cast<unsigned char>(c))) : c);
  }
  return out;
}

} // namespace arbor
