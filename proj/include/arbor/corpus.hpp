#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "automaton.hpp"
#include "error.hpp"

namespace arbor {

/// Random connected, folded, incomplete automaton on m vertices. Draws use
/// raw engine output so the result is identical across standard libraries.
inline InverseAutomaton random_incomplete_automaton(std::size_t m, std::size_t letters, std::mt19937_64 &rng,
                                                    double extra_density = 0.5)
{
  if (m < 1 || letters < 1)
    throw InputError("random automaton needs m >= 1 and at least one letter");
  auto pick = [&](std::size_t n) { return static_cast<std::uint32_t>(rng() % n); };
  InverseAutomaton a(m, letters, 0);
  // spanning tree: vertex v hangs off an earlier vertex by a free slot
  for (std::uint32_t v = 1; v < m; ++v) {
    while (true) {
      auto u = pick(v);
      auto x = SignedLetter::from_code(pick(2 * letters));
      if (a.act(u, x) != kNone)
        continue;
      if (x.sign > 0)
        a.add_edge(u, x.index, v);
      else
        a.add_edge(v, x.index, u);
      break;
    }
  }
  const std::size_t slots = m * letters;
  auto target = static_cast<std::size_t>(extra_density * static_cast<double>(slots - (m - 1)));
  for (std::size_t tries = 0; tries < 4 * slots && target > 0; ++tries) {
    if (a.num_edges() + 1 >= slots)
      break;
    auto u = pick(m), w = pick(m);
    auto l = pick(letters);
    if (a.next(u, l) != kNone || a.prev(w, l) != kNone)
      continue;
    a.add_edge(u, l, w);
    --target;
  }
  ensure(a.is_connected() && !a.is_complete(), "random automaton postcondition");
  return a;
}

/// Deterministic batch: count automata with m drawn from [m_min, m_max].
inline std::vector<InverseAutomaton> corpus(std::uint64_t seed, std::size_t count, std::size_t m_min, std::size_t m_max,
                                            std::size_t letters = 2)
{
  if (m_min < 3)
    throw InputError("corpus vertex range must start at 3 or more (completion needs m >= 3)");
  if (m_max < m_min)
    throw InputError("empty corpus vertex range");
  std::mt19937_64 rng(seed);
  std::vector<InverseAutomaton> out;
  for (std::size_t i = 0; i < count; ++i) {
    auto m = m_min + static_cast<std::size_t>(rng() % (m_max - m_min + 1));
    out.push_back(random_incomplete_automaton(m, letters, rng));
  }
  return out;
}

} // namespace arbor
