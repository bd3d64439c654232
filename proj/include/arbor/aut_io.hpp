#pragma once

#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "automaton.hpp"
#include "error.hpp"
#include "word.hpp"

namespace arbor {

/// Line-oriented .aut text:
///   alphabet a b        (optional on input)
///   vertex <int>        (optional; only isolated vertices are written)
///   edge <src> <letter> <dst>
///   base <int>
///   # comment
inline LabeledGraph read_aut(std::string_view text)
{
  LabeledGraph g;
  std::string alphabet_names;
  bool have_alphabet = false;
  std::size_t max_vertex_plus_one = 0;
  char max_letter = 0;
  struct RawEdge
  {
    std::uint32_t src;
    char letter;
    std::uint32_t dst;
  };
  std::vector<RawEdge> raw;

  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  auto fail = [&](const std::string &why) { throw InputError("line " + std::to_string(lineno) + ": " + why); };
  auto parse_vertex = [&](std::istringstream &ls) {
    long long v = -1;
    if (!(ls >> v) || v < 0 || v > (1LL << 30))
      fail("expected a non-negative vertex id");
    max_vertex_plus_one = std::max(max_vertex_plus_one, static_cast<std::size_t>(v) + 1);
    return static_cast<std::uint32_t>(v);
  };

  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    std::istringstream ls(line);
    std::string keyword;
    if (!(ls >> keyword))
      continue;
    if (keyword == "alphabet") {
      std::string tok;
      while (ls >> tok) {
        if (tok.size() != 1)
          fail("alphabet letters are single characters");
        alphabet_names.push_back(tok[0]);
      }
      have_alphabet = true;
    } else if (keyword == "vertex") {
      parse_vertex(ls);
    } else if (keyword == "edge") {
      RawEdge e{};
      e.src = parse_vertex(ls);
      std::string letter;
      if (!(ls >> letter) || letter.size() != 1 || letter[0] < 'a' || letter[0] > 'z')
        fail("expected a lowercase letter");
      e.letter = letter[0];
      e.dst = parse_vertex(ls);
      max_letter = std::max(max_letter, e.letter);
      raw.push_back(e);
    } else if (keyword == "base") {
      g.base = parse_vertex(ls);
    } else {
      fail("unknown keyword '" + keyword + "'");
    }
    std::string extra;
    if (ls >> extra)
      fail("trailing text '" + extra + "'");
  }

  Alphabet alphabet = have_alphabet ? Alphabet(alphabet_names)
                                    : Alphabet::standard(max_letter ? static_cast<std::size_t>(max_letter - 'a' + 1) : 0);
  g.num_letters = alphabet.size();
  g.num_vertices = max_vertex_plus_one;
  for (const auto &e : raw) {
    auto idx = alphabet.index_of(e.letter);
    if (!idx)
      throw InputError(std::string("edge letter '") + e.letter + "' not in alphabet");
    g.edges.push_back({e.src, *idx, e.dst});
  }
  if (g.num_vertices == 0 && g.base)
    g.num_vertices = *g.base + 1;
  g.validate();
  return g;
}

inline std::string write_aut(const LabeledGraph &g)
{
  Alphabet alphabet = Alphabet::standard(g.num_letters);
  std::ostringstream os;
  if (g.num_letters > 0) {
    os << "alphabet";
    for (char c : alphabet.names())
      os << ' ' << c;
    os << '\n';
  }
  std::vector<bool> touched(g.num_vertices, false);
  for (const auto &e : g.edges)
    touched[e.src] = touched[e.dst] = true;
  for (std::uint32_t v = 0; v < g.num_vertices; ++v)
    if (!touched[v])
      os << "vertex " << v << '\n';
  for (const auto &e : g.edges)
    os << "edge " << e.src << ' ' << alphabet.name(e.label) << ' ' << e.dst << '\n';
  if (g.base)
    os << "base " << *g.base << '\n';
  return os.str();
}

inline std::string write_aut(const InverseAutomaton &a) { return write_aut(a.graph()); }

/// Inverse automaton from .aut text; the text must already be folded.
inline InverseAutomaton automaton_from_graph(const LabeledGraph &g)
{
  g.validate();
  if (g.num_vertices == 0)
    throw InputError("automaton has no vertices");
  InverseAutomaton a(g.num_vertices, g.num_letters, g.base.value_or(0));
  for (const auto &e : g.edges) {
    try {
      a.add_edge(e.src, e.label, e.dst);
    } catch (const InvariantError &) {
      throw InputError("graph is not folded at vertex " + std::to_string(e.src) + " (use fold first)");
    }
  }
  return a;
}

inline std::string to_dot(const LabeledGraph &g)
{
  Alphabet alphabet = Alphabet::standard(g.num_letters);
  std::ostringstream os;
  os << "digraph automaton {\n  rankdir=LR;\n  node [shape=circle];\n";
  for (std::uint32_t v = 0; v < g.num_vertices; ++v)
    os << "  " << v << (g.base && *g.base == v ? " [shape=doublecircle];\n" : ";\n");
  for (const auto &e : g.edges)
    os << "  " << e.src << " -> " << e.dst << " [label=\"" << alphabet.name(e.label) << "\"];\n";
  os << "}\n";
  return os.str();
}

inline std::string to_dot(const InverseAutomaton &a) { return to_dot(a.graph()); }

} // namespace arbor
