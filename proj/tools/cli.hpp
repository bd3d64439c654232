#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "arbor/arbor.hpp"

namespace arbor::cli {

using json = nlohmann::ordered_json;

enum ExitCode : int
{
  kOk = 0,
  kPropertyFails = 1,
  kInputError = 2
};

namespace detail {

inline std::string read_file(const std::string &path)
{
  std::ifstream in(path);
  if (!in)
    throw InputError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string &path, const std::string &text)
{
  std::ofstream out(path);
  if (!out)
    throw InputError("cannot write '" + path + "'");
  out << text;
}

inline std::vector<std::string> split(const std::string &text, char sep)
{
  std::vector<std::string> parts;
  std::string cur;
  for (char c : text) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  parts.push_back(cur);
  return parts;
}

/// Alphabet large enough for every letter in the texts (at least `min`).
inline Alphabet alphabet_for(const std::vector<std::string> &texts, std::size_t min = 2)
{
  std::size_t n = min;
  for (const auto &t : texts)
    for (char c : t)
      if (std::isalpha(static_cast<unsigned char>(c)))
        n = std::max<std::size_t>(n, static_cast<std::size_t>(std::tolower(static_cast<unsigned char>(c)) - 'a') + 1);
  return Alphabet::standard(n);
}

inline std::vector<Word> parse_word_list(const std::string &text, const Alphabet &ab)
{
  std::vector<Word> out;
  for (const auto &part : split(text, ',')) {
    bool blank = std::all_of(part.begin(), part.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
    if (!blank)
      out.push_back(parse_word(part, ab));
  }
  return out;
}

inline json edge_json(const FiniteGroup &G, std::uint32_t e)
{
  return json::array({G.edge_source(e), std::string(1, static_cast<char>('a' + G.edge_label(e)))});
}

inline json edges_json(const FiniteGroup &G, const std::vector<std::uint32_t> &edges)
{
  json arr = json::array();
  for (auto e : edges)
    arr.push_back(edge_json(G, e));
  return arr;
}

inline json certificate_json(const AlternatingCertificate &c)
{
  json j;
  j["degree"] = c.degree;
  j["transitive"] = c.transitive;
  j["primitive"] = c.primitive;
  j["all_even"] = c.all_even;
  if (c.prime_cycle)
    j["prime_cycle"] = {{"q", c.prime_cycle->q}, {"power", c.prime_cycle->power},
                        {"letter", std::string(1, static_cast<char>('a' + c.prime_cycle->letter))}};
  else
    j["prime_cycle"] = nullptr;
  j["valid"] = c.valid();
  return j;
}

inline std::string big_string(const BigInt &x) { return x.str(); }

inline json header(const std::string &command)
{
  json j;
  j["schema"] = 1;
  j["command"] = command;
  return j;
}

inline void emit(std::ostream &out, const json &j) { out << j.dump(2) << '\n'; }

inline void emit_text(std::ostream &out, const std::string &text, const std::string &path)
{
  if (path.empty())
    out << text;
  else
    write_file(path, text);
}

inline MaterializedGroup load_group(const std::string &spec, std::size_t bound)
{
  return materialize(*parse_group_spec(spec), bound);
}

inline std::string format_element(const GaschutzGroup &h, const GaschuetzElement &x)
{
  std::ostringstream os;
  os << "(";
  bool first = true;
  for (auto [e, c] : x.alpha.entries) {
    os << (first ? "" : " + ") << c << "*(" << h.base()->edge_source(e) << ","
       << static_cast<char>('a' + h.base()->edge_label(e)) << ")";
    first = false;
  }
  if (first)
    os << "0";
  os << ", " << x.g << ")";
  return os.str();
}

} // namespace detail

/// Runs one CLI invocation; returns the process exit code.
inline int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
  using namespace detail;
  CLI::App app{"arbor: finite-level constructions on A-generated groups and inverse automata", "arbor"};
  app.require_subcommand(1);
  std::size_t bound = kDefaultOrderBound;
  app.add_option("--bound", bound, "materialization bound on group orders")->capture_default_str();

  int code = kOk;
  auto on = [&](CLI::App *sub, std::function<void()> f) { sub->callback(std::move(f)); };

  // fold
  std::string aut_path, out_path;
  bool dot = false;
  auto *fold_cmd = app.add_subcommand("fold", "fold an .aut graph into an inverse automaton");
  fold_cmd->add_option("--automaton", aut_path)->required();
  fold_cmd->add_option("--out", out_path);
  fold_cmd->add_flag("--dot", dot, "emit DOT instead of .aut");
  on(fold_cmd, [&] {
    auto a = fold(read_aut(read_file(aut_path)));
    emit_text(out, dot ? to_dot(a) : write_aut(a), out_path);
  });

  // core
  std::string gens_text;
  std::size_t letters = 0;
  auto *core_cmd = app.add_subcommand("core", "Stallings core automaton of a list of words");
  core_cmd->add_option("--gens", gens_text, "comma-separated words, e.g. \"aa,b\"")->required();
  core_cmd->add_option("--letters", letters, "alphabet size (default: inferred, at least 2)");
  core_cmd->add_option("--out", out_path);
  core_cmd->add_flag("--dot", dot);
  on(core_cmd, [&] {
    auto ab = letters ? Alphabet::standard(letters) : alphabet_for({gens_text});
    auto a = core_of_words(parse_word_list(gens_text, ab), ab.size());
    emit_text(out, dot ? to_dot(a) : write_aut(a), out_path);
  });

  // member
  std::string word_text;
  auto *member_cmd = app.add_subcommand("member", "subgroup membership via an automaton or generators");
  member_cmd->add_option("--automaton", aut_path);
  member_cmd->add_option("--gens", gens_text);
  member_cmd->add_option("--word", word_text)->required();
  on(member_cmd, [&] {
    if (aut_path.empty() == gens_text.empty())
      throw InputError("give exactly one of --automaton and --gens");
    InverseAutomaton a = aut_path.empty()
                             ? core_of_words(parse_word_list(gens_text, alphabet_for({gens_text, word_text})),
                                             alphabet_for({gens_text, word_text}).size())
                             : automaton_from_graph(read_aut(read_file(aut_path)));
    auto w = parse_word(word_text, Alphabet::standard(a.num_letters()));
    bool m = member(a, w);
    out << (m ? "true" : "false") << '\n';
    code = m ? kOk : kPropertyFails;
  });

  // cayley
  std::string group_text;
  auto *cayley_cmd = app.add_subcommand("cayley", "Cayley graph of a group spec");
  cayley_cmd->add_option("--group", group_text)->required();
  cayley_cmd->add_option("--out", out_path);
  cayley_cmd->add_flag("--dot", dot);
  on(cayley_cmd, [&] {
    auto G = load_group(group_text, bound);
    for (const auto &w : G.warnings)
      err << "warning: " << w << '\n';
    auto c = G.group->cayley_graph();
    emit_text(out, dot ? to_dot(c) : write_aut(c), out_path);
  });

  // constellations
  auto *cons_cmd = app.add_subcommand("constellations", "maximal constellations from minimal cut sets (JSON)");
  cons_cmd->add_option("--group", group_text)->required();
  on(cons_cmd, [&] {
    auto G = load_group(group_text, bound).group;
    auto cuts = minimal_cut_sets(*G);
    json j = header("constellations");
    j["group_order"] = G->order();
    json cuts_json = json::array();
    for (const auto &c : cuts)
      cuts_json.push_back({{"cut", edges_json(*G, c.cut)}, {"far_component", c.far}});
    j["cuts"] = cuts_json;
    json list = json::array();
    for (const auto &pr : maximal_constellations(*G))
      list.push_back({{"cut", pr.cut_index},
                      {"partition", {{"c_xi", edges_json(*G, pr.c_xi)}, {"c_theta", edges_json(*G, pr.c_theta)}}},
                      {"far_component", pr.far_component}});
    j["count"] = list.size();
    j["constellations"] = list;
    emit(out, j);
  });

  // amalgam
  std::size_t index = 0;
  auto *amalgam_cmd = app.add_subcommand("amalgam", "Xi ⊔₁ Theta of the i-th maximal constellation pair");
  amalgam_cmd->add_option("--group", group_text)->required();
  amalgam_cmd->add_option("--index", index, "index into the constellations list")->capture_default_str();
  amalgam_cmd->add_option("--out", out_path);
  amalgam_cmd->add_flag("--dot", dot);
  on(amalgam_cmd, [&] {
    auto G = load_group(group_text, bound).group;
    auto pairs = maximal_constellations(*G);
    if (index >= pairs.size())
      throw InputError("index out of range (" + std::to_string(pairs.size()) + " pairs)");
    auto a = amalgam(*G, pairs[index].xi, pairs[index].theta);
    emit_text(out, dot ? to_dot(a) : write_aut(a), out_path);
  });

  // ag
  auto *ag_cmd = app.add_subcommand("ag", "assemble the automaton AG from all amalgams");
  ag_cmd->add_option("--group", group_text)->required();
  ag_cmd->add_option("--out", out_path);
  ag_cmd->add_flag("--dot", dot);
  on(ag_cmd, [&] {
    auto G = load_group(group_text, bound).group;
    auto ag = assemble_AG(*G);
    emit_text(out, dot ? to_dot(ag.automaton) : write_aut(ag.automaton), out_path);
  });

  // complete-alternating
  std::size_t n_opt = 0, k_opt = 0;
  std::uint64_t seed = 0;
  std::string cert_path;
  auto *complete_cmd = app.add_subcommand("complete-alternating", "complete an automaton to one with group A_n");
  complete_cmd->add_option("--automaton", aut_path)->required();
  auto *n_flag = complete_cmd->add_option("--n", n_opt, "total vertex count");
  auto *k_flag = complete_cmd->add_option("--k", k_opt, "number of extra t-vertices (n = m+q+k+2)");
  n_flag->excludes(k_flag);
  complete_cmd->add_option("--seed", seed)->capture_default_str();
  complete_cmd->add_option("--out", out_path, "write the completed automaton here");
  on(complete_cmd, [&] {
    auto A = automaton_from_graph(read_aut(read_file(aut_path)));
    std::size_t n = n_opt;
    if (!*n_flag) {
      auto q = smallest_prime_greater(A.num_vertices());
      n = A.num_vertices() + q + 2 + k_opt;
    }
    auto r = complete_to_alternating(A, n, seed);
    auto checks = check_completion(A, r);
    json j = header("complete-alternating");
    j["m"] = r.plan.m;
    j["q"] = r.plan.q;
    j["k"] = r.plan.k;
    j["n"] = r.plan.n;
    j["seed"] = seed;
    const json cert = certificate_json(r.certificate);
    for (const auto &[key, value] : cert.items())
      j[key] = value;
    j["checks"] = {{"extends", checks.extends},
                   {"all_even", checks.all_even},
                   {"b_cycles_short", checks.b_cycles_short}};
    if (out_path.empty())
      j["automaton"] = write_aut(r.automaton);
    else
      write_file(out_path, write_aut(r.automaton));
    emit(out, j);
    code = checks.ok() ? kOk : kPropertyFails;
  });

  // certify-an
  auto *certify_cmd = app.add_subcommand("certify-an", "Jordan certificate for the transition group of a complete automaton");
  certify_cmd->add_option("--automaton", aut_path)->required();
  on(certify_cmd, [&] {
    auto C = automaton_from_graph(read_aut(read_file(aut_path)));
    if (!C.is_complete())
      throw InputError("automaton is not complete");
    auto cert = alternating_certificate(transition_group(C));
    json j = header("certify-an");
    j["certificate"] = certificate_json(cert);
    emit(out, j);
    code = cert.valid() ? kOk : kPropertyFails;
  });

  // gaschutz-info
  std::uint32_t p = 2;
  bool tilde_flag = false;
  auto *ginfo_cmd = app.add_subcommand("gaschutz-info", "orders and checks for G^{Z/p} or its center quotient");
  ginfo_cmd->add_option("--group", group_text, "base group spec")->required();
  ginfo_cmd->add_option("--p", p)->required();
  ginfo_cmd->add_flag("--tilde", tilde_flag);
  on(ginfo_cmd, [&] {
    auto G = load_group(group_text, bound).group;
    GaschutzGroup h(G, p, tilde_flag);
    json j = header("gaschutz-info");
    j["base_order"] = G->order();
    j["p"] = p;
    j["tilde"] = tilde_flag;
    j["order_formula"] = big_string(h.order_formula());
    try {
      auto lvl = materialize_gaschutz(std::make_shared<const GaschutzGroup>(h), bound);
      j["order_enumerated"] = lvl.group->order();
      j["formula_matches"] = BigInt(lvl.group->order()) == h.order_formula();
    } catch (const OrderBoundError &) {
      j["order_enumerated"] = nullptr;
    }
    if (!tilde_flag && G->order() % p != 0) {
      auto s = satz4_checks(G, p, bound);
      j["satz4"] = {{"expected_order", big_string(s.expected_order)},
                    {"actual_order", s.actual_order},
                    {"kernel_elementary_abelian", s.kernel_elementary_abelian},
                    {"center_order", s.center_order},
                    {"ok", s.ok()}};
      code = s.ok() ? kOk : kPropertyFails;
    }
    emit(out, j);
  });

  // center
  auto *center_cmd = app.add_subcommand("center", "center of G^{Z/p} with witness words");
  center_cmd->add_option("--group", group_text, "base group spec")->required();
  center_cmd->add_option("--p", p)->required();
  on(center_cmd, [&] {
    auto G = load_group(group_text, bound);
    for (const auto &w : identity_letter_warnings(*G.group))
      err << "warning: " << w << '\n';
    auto lazy = std::make_shared<const GaschutzGroup>(G.group, p, false);
    auto rep = center(*lazy);
    auto ab = Alphabet::standard(G.group->num_letters());
    json j = header("center");
    j["order"] = big_string(rep.order);
    json wit = json::array();
    for (const auto &w : rep.witnesses)
      wit.push_back(format_word(w, ab));
    j["witnesses"] = wit;
    j["witnesses_verified"] = rep.witnesses_verified;
    bool ok = rep.witnesses_verified;
    try {
      auto lvl = materialize_gaschutz(lazy, bound);
      auto bf = brute_force_center(*lvl.group);
      bool same = BigInt(bf.size()) == rep.order;
      for (auto z : bf)
        same = same && lvl.elements[z].g == 0 && lazy->constant_per_label(lvl.elements[z].alpha);
      j["brute_force_order"] = bf.size();
      j["matches_brute_force"] = same;
      ok = ok && same;
    } catch (const OrderBoundError &) {
      j["brute_force_order"] = nullptr;
    }
    emit(out, j);
    code = ok ? kOk : kPropertyFails;
  });

  // evaluate
  auto *eval_cmd = app.add_subcommand("evaluate", "evaluate a word in a group spec");
  eval_cmd->add_option("--group", group_text)->required();
  eval_cmd->add_option("--word", word_text)->required();
  on(eval_cmd, [&] {
    auto g = realize(*parse_group_spec(group_text), bound);
    auto w = parse_word(word_text, Alphabet::standard(g.num_letters()));
    if (g.is_identity(w)) {
      out << "identity\n";
    } else if (g.lazy) {
      out << format_element(*g.lazy, g.lazy->evaluate(w)) << '\n';
    } else {
      auto x = g.materialized->evaluate(w);
      out << "element " << x << " = " << format_word(g.materialized->word_of(x), Alphabet::standard(g.num_letters()))
          << '\n';
    }
  });

  // dissolve
  std::string layers_text, method = "auto";
  bool weak = false, as_json = false;
  auto *dissolve_cmd = app.add_subcommand("dissolve", "decide whether a tower over G dissolves G's constellations");
  dissolve_cmd->add_option("--group", group_text, "bottom group G")->required();
  dissolve_cmd->add_option("--layers", layers_text, "e.g. \"~2,~2,~2\"")->required();
  dissolve_cmd->add_flag("--weak", weak, "only the constellations Delta_x");
  dissolve_cmd->add_flag("--json", as_json);
  dissolve_cmd->add_option("--method", method, "auto | reachability | linear")
      ->check(CLI::IsMember({"auto", "reachability", "linear"}))
      ->capture_default_str();
  on(dissolve_cmd, [&] {
    auto G = load_group(group_text, bound).group;
    auto layers = parse_layers(layers_text);
    if (layers.empty())
      throw InputError("at least one layer is required");
    auto t = tower(G, layers, bound);
    std::optional<GaschutzLevel> top;
    if (method != "linear") {
      try {
        top = materialize_gaschutz(t.top, std::min<std::size_t>(bound, 200000));
      } catch (const OrderBoundError &) {
        if (method == "reachability")
          throw;
      }
    }
    std::vector<DissolveReport> reports;
    Morphism phi;
    if (top) {
      phi = compose(top->projection, t.to_base(t.levels.size() - 1));
      auto decide = [&](const Constellation &c) { return dissolves_materialized(phi, c); };
      reports = weak ? decide_all_delta(*G, decide, true) : decide_all_maximal(*G, decide, true);
    } else {
      LinearDissolver d(t.to_base(t.levels.size() - 1), t.top->modulus(), t.top->tilde());
      auto decide = [&](const Constellation &c) { return d.decide(c); };
      reports = weak ? decide_all_delta(*G, decide, true) : decide_all_maximal(*G, decide, true);
    }
    bool ok = all_dissolved(reports);
    json j = header("dissolve");
    j["group_order"] = G->order();
    j["layers"] = format_layers(layers);
    j["top_order"] = big_string(t.top_order());
    j["method"] = top ? "reachability" : "linear";
    j["weak"] = weak;
    j["checked"] = reports.size();
    j["dissolver"] = ok;
    if (!ok) {
      const auto &r = reports.back();
      auto ab = Alphabet::standard(G->num_letters());
      json w;
      w["constellation_id"] = r.constellation_id;
      w["g"] = r.g;
      if (r.u)
        w["u"] = format_word(*r.u, ab);
      if (r.v)
        w["v"] = format_word(*r.v, ab);
      if (r.shared_endpoint)
        w["shared_endpoint"] = *r.shared_endpoint;
      j["witness"] = w;
    }
    if (as_json)
      emit(out, j);
    else
      out << (ok ? "dissolver" : "not a dissolver") << " (" << (weak ? "weak, " : "") << reports.size()
          << " constellations checked)\n";
    code = ok ? kOk : kPropertyFails;
  });

  // disconnect
  std::string quotient_text, letter_text = "a";
  auto *disc_cmd = app.add_subcommand("disconnect", "the four equivalent disconnection conditions for H ->> G");
  disc_cmd->add_option("--group", group_text, "H")->required();
  disc_cmd->add_option("--quotient", quotient_text, "G")->required();
  disc_cmd->add_option("--letter", letter_text, "signed letter, e.g. a or A")->capture_default_str();
  on(disc_cmd, [&] {
    auto H = load_group(group_text, bound).group;
    auto G = load_group(quotient_text, bound).group;
    auto phi = canonical_morphism(H, G);
    if (!phi)
      throw InputError("no canonical morphism from the group onto the quotient");
    auto w = parse_word(letter_text, Alphabet::standard(G->num_letters()));
    if (w.size() != 1)
      throw InputError("--letter must be a single signed letter");
    auto r = disconnection_equivalence(*phi, w.letters[0]);
    json j = header("disconnect");
    j["disconnected"] = r.disconnected;
    j["one_and_a_separated"] = r.one_and_a_separated;
    j["all_translates_separated"] = r.all_translates_separated;
    j["dissolves_delta"] = r.dissolves_delta;
    j["agree"] = r.agree();
    emit(out, j);
    code = r.agree() ? kOk : kPropertyFails;
  });

  // key-lemma
  std::string subgroup_text;
  auto *key_cmd = app.add_subcommand("key-lemma", "check the key lemma on every edge of the tilde layer");
  key_cmd->add_option("--group", group_text, "base group G")->required();
  key_cmd->add_option("--p", p)->required();
  key_cmd->add_option("--subgroup", subgroup_text, "generators of K (default: K = G)");
  on(key_cmd, [&] {
    auto G = load_group(group_text, bound).group;
    auto lvl = materialize_gaschutz(G, p, true, bound);
    std::vector<std::uint32_t> K;
    auto ab = Alphabet::standard(G->num_letters());
    std::vector<bool> mask(G->order(), true);
    if (!subgroup_text.empty()) {
      std::vector<std::uint32_t> imgs;
      for (const auto &w : parse_word_list(subgroup_text, ab))
        imgs.push_back(G->evaluate(w));
      mask = subgroup_generated(*G, imgs);
    }
    for (std::uint32_t x = 0; x < G->order(); ++x)
      if (mask[x])
        K.push_back(x);
    std::size_t checked = 0, failed = 0;
    for (std::uint32_t g = 0; g < lvl.group->order(); ++g)
      for (std::uint32_t a = 0; a < G->num_letters(); ++a) {
        ++checked;
        if (!key_lemma_check(lvl.projection, K, g, a))
          ++failed;
      }
    json j = header("key-lemma");
    j["tilde_order"] = lvl.group->order();
    j["subgroup_order"] = K.size();
    j["edges_checked"] = checked;
    j["edges_failed"] = failed;
    emit(out, j);
    code = failed == 0 ? kOk : kPropertyFails;
  });

  // rank-check
  auto *rank_cmd = app.add_subcommand("rank-check", "kernel rank of G^{Z/p} ->> G against |G|(|A|-1)+1");
  rank_cmd->add_option("--group", group_text, "base group G")->required();
  rank_cmd->add_option("--p", p)->required();
  on(rank_cmd, [&] {
    auto G = load_group(group_text, bound).group;
    auto r = kernel_rank_check(G, p, bound);
    json j = header("rank-check");
    j["kernel_order"] = r.kernel_order;
    j["kernel_rank"] = r.kernel_rank;
    j["span_rank"] = r.span_rank;
    j["cycle_rank"] = r.cycle_rank;
    j["formula_rank"] = r.formula_rank;
    j["elementary_abelian"] = r.elementary_abelian;
    j["kernel_in_cycle_space"] = r.kernel_in_cycle_space;
    j["tilde_kernel_rank"] = r.tilde_kernel_rank;
    j["ok"] = r.ok();
    emit(out, j);
    code = r.ok() ? kOk : kPropertyFails;
  });

  // abelianization
  auto *ab_cmd = app.add_subcommand("abelianization", "invariant factors of G/[G,G]");
  ab_cmd->add_option("--group", group_text)->required();
  on(ab_cmd, [&] {
    auto G = load_group(group_text, bound).group;
    json j = header("abelianization");
    j["order"] = G->order();
    j["invariant_factors"] = abelianization(*G);
    emit(out, j);
  });

  // closure
  std::string level_text;
  auto *closure_cmd = app.add_subcommand("closure", "closure of <gens> at a finite level");
  closure_cmd->add_option("--gens", gens_text)->required();
  closure_cmd->add_option("--level", level_text, "group spec of the level")->required();
  closure_cmd->add_option("--out", out_path, "write the core automaton here");
  on(closure_cmd, [&] {
    auto G = load_group(level_text, bound).group;
    auto ab = Alphabet::standard(G->num_letters());
    auto gens = parse_word_list(gens_text, ab);
    auto core = closure_at_level(gens, *G);
    auto T = image_subgroup(*G, gens);
    auto t = static_cast<std::size_t>(std::count(T.begin(), T.end(), true));
    json j = header("closure");
    j["image_order"] = t;
    j["index"] = G->order() / t;
    j["rank"] = rank_from_core(core);
    j["schreier_rank"] = (G->order() / t) * (G->num_letters() - 1) + 1;
    if (out_path.empty())
      j["automaton"] = write_aut(core);
    else
      write_file(out_path, write_aut(core));
    emit(out, j);
  });

  // rz-member
  std::string subgroups_text;
  auto *rz_cmd = app.add_subcommand("rz-member", "w in T_1...T_n at a finite level");
  rz_cmd->add_option("--word", word_text)->required();
  rz_cmd->add_option("--subgroups", subgroups_text, "e.g. \"aa|bb\"")->required();
  rz_cmd->add_option("--level", level_text)->required();
  on(rz_cmd, [&] {
    auto G = load_group(level_text, bound).group;
    auto ab = Alphabet::standard(G->num_letters());
    std::vector<std::vector<Word>> subs;
    for (const auto &part : split(subgroups_text, '|'))
      subs.push_back(parse_word_list(part, ab));
    bool m = product_membership_at_level(parse_word(word_text, ab), subs, *G);
    out << (m ? "true" : "false") << '\n';
    code = m ? kOk : kPropertyFails;
  });

  // corpus
  std::string dir = "corpus";
  std::size_t count = 10, m_min = 3, m_max = 8;
  auto *corpus_cmd = app.add_subcommand("corpus", "generate connected folded incomplete automata");
  corpus_cmd->add_option("--seed", seed)->capture_default_str();
  corpus_cmd->add_option("--count", count)->capture_default_str();
  corpus_cmd->add_option("--m-min", m_min)->capture_default_str();
  corpus_cmd->add_option("--m-max", m_max)->capture_default_str();
  corpus_cmd->add_option("--letters", letters, "alphabet size (default 2)");
  corpus_cmd->add_option("--dir", dir)->capture_default_str();
  on(corpus_cmd, [&] {
    auto autos = corpus(seed, count, m_min, m_max, letters ? letters : 2);
    std::filesystem::create_directories(dir);
    for (std::size_t i = 0; i < autos.size(); ++i) {
      std::ostringstream name;
      name << dir << "/corpus_" << std::setw(3) << std::setfill('0') << i << ".aut";
      write_file(name.str(), write_aut(autos[i]));
      out << name.str() << '\n';
    }
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp &) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError &e) {
    err << "error: " << e.what() << '\n' << app.help();
    return kInputError;
  } catch (const InputError &e) {
    err << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const PreconditionError &e) {
    err << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const OrderBoundError &e) {
    err << "input error: " << e.what() << '\n';
    return kInputError;
  }
  return code;
}

} // namespace arbor::cli
