#pragma once

#include <stdexcept>
#include <string>

namespace arbor {

/// Malformed user input: bad word syntax, unknown letters, bad group specs,
/// unreadable .aut files.
class InputError : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

/// An operation was called outside its hypothesis (e.g. m < 3 for the
/// alternating completion, p | |G| for the Satz 4 checks).
class PreconditionError : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

/// Element enumeration would exceed the configured bound.
class OrderBoundError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// A mathematical invariant that must hold by construction was violated.
class InvariantError : public std::logic_error
{
public:
  using std::logic_error::logic_error;
};

inline void ensure(bool condition, const std::string &what)
{
  if (!condition)
    throw InvariantError(what);
}

} // namespace arbor
