// latmon: batch front end. Every command prints one JSON document (or JSON
// lines for `variety suite`) and exits 0 on success / true, 2 on false or a
// witness, 3 on an exhausted budget, 1 on any error.

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "latmon/automaton.hpp"
#include "latmon/error.hpp"
#include "latmon/io.hpp"
#include "latmon/lattice.hpp"
#include "latmon/markov.hpp"
#include "latmon/ordered_monoid.hpp"
#include "latmon/syntactic.hpp"
#include "latmon/variety.hpp"

using nlohmann::json;
using namespace latmon;

namespace {

enum Exit { kOk = 0, kError = 1, kFalse = 2, kBudget = 3 };

struct Options {
  std::string format = "json";
  std::uint64_t seed = 0;
  std::size_t max_len = 8;
  std::optional<std::size_t> budget;
  std::string mode = "both";
  std::string word;
  std::string at;
  std::size_t n = 2;
  std::string decomposition;
  std::string initial;
  std::size_t horizon = 16;
  bool inject = false;
  std::vector<std::string> files;
};

void render_text(const json& j, int depth, std::ostream& os) {
  const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (v.is_structured() && !v.empty()) {
        os << pad << k << ":\n";
        render_text(v, depth + 1, os);
      } else {
        os << pad << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
      }
    }
  } else if (j.is_array()) {
    for (const auto& v : j) {
      if (v.is_structured() && !v.empty()) {
        os << pad << "-\n";
        render_text(v, depth + 1, os);
      } else {
        os << pad << "- " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
      }
    }
  } else {
    os << pad << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

void emit(const Options& o, const json& j) {
  if (o.format == "text") {
    render_text(j, 0, std::cout);
  } else {
    std::cout << j.dump() << "\n";
  }
}

LatticeAutomaton load_automaton(const std::string& path) {
  return io::automaton_from_json(io::read_json_file(path));
}

MonoidPtr load_monoid(const std::string& path) {
  return std::make_shared<const OrderedMonoid>(io::monoid_from_json(io::read_json_file(path)));
}

// "{1}", "x" or a JSON value such as ["1"].
Lattice::Element parse_element(const Lattice& l, const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded() || !(j.is_array() || j.is_string())) j = text;
  return io::element_from_json(l, j);
}

// LatticeAutomaton is not assignable; rebuild it over a shared lattice.
LatticeAutomaton on_lattice(const LatticePtr& l, const LatticeAutomaton& a) {
  return LatticeAutomaton(l, a.alphabet(), a.states(), a.initial(), a.delta(), a.outputs());
}

DivisionBudget budget_of(const Options& o) {
  DivisionBudget b;
  if (o.budget) b.max_search_nodes = *o.budget;
  return b;
}

// ---------------------------------------------------------------------------

int lattice_cmd(const std::string& action, const Options& o) {
  const Lattice l = io::lattice_from_json(io::read_json_file(o.files.at(0)));
  if (action == "check") {
    emit(o, {{"valid", true}, {"size", l.size()},
             {"top", io::element_to_json(l, l.top())}, {"bottom", io::element_to_json(l, l.bottom())}});
  } else {
    emit(o, io::lattice_to_json(l.dual()));
  }
  return kOk;
}

int monoid_cmd(const std::string& action, const Options& o) {
  if (action == "check") {
    const MonoidPtr m = load_monoid(o.files.at(0));
    emit(o, {{"valid", true}, {"size", m->size()}, {"identity", m->name(m->identity())},
             {"aperiodic", is_aperiodic(*m)}, {"identity_is_greatest", identity_is_greatest(*m)}});
    return kOk;
  }
  if (action == "aperiodic") {
    const bool ap = is_aperiodic(*load_monoid(o.files.at(0)));
    emit(o, {{"aperiodic", ap}});
    return ap ? kOk : kFalse;
  }
  if (action == "product") {
    std::vector<MonoidPtr> factors;
    for (const auto& f : o.files) factors.push_back(load_monoid(f));
    emit(o, io::monoid_to_json(*direct_product(factors).product));
    return kOk;
  }
  // divides DIVISOR MONOID
  const MonoidPtr d = load_monoid(o.files.at(0));
  const MonoidPtr m = load_monoid(o.files.at(1));
  const DivisionVerdict v = divides(*d, *m, budget_of(o));
  json out{{"divides", v.kind == DivisionVerdict::Kind::Yes}};
  if (v.kind == DivisionVerdict::Kind::BudgetExhausted) {
    out = {{"divides", nullptr}, {"budget_exhausted", true}};
    emit(o, out);
    return kBudget;
  }
  if (v.kind == DivisionVerdict::Kind::Yes) {
    json gens = json::array(), mapping = json::object();
    for (auto g : v.generators) gens.push_back(m->name(g));
    for (auto [x, y] : v.mapping) mapping[m->name(x)] = d->name(y);
    out["generators"] = gens;
    out["mapping"] = mapping;
  }
  emit(o, out);
  return v.kind == DivisionVerdict::Kind::Yes ? kOk : kFalse;
}

int lang_cmd(const std::string& action, const std::string& op, const Options& o) {
  const LatticeAutomaton a = load_automaton(o.files.at(0));
  if (action == "eval") {
    emit(o, {{"value", io::element_to_json(a.lattice(), evaluate(a, parse_word(a.alphabet(), o.word)))}});
    return kOk;
  }
  if (action == "minimize") {
    emit(o, io::automaton_to_json(minimize(a)));
    return kOk;
  }
  if (action == "equiv") {
    const LatticeAutomaton braw = load_automaton(o.files.at(1));
    if (!(a.lattice() == braw.lattice())) throw Error(ErrorKind::MismatchedLattice, "automata use different lattices");
    const LatticeAutomaton b = on_lattice(a.lattice_ptr(), braw);
    const auto w = find_difference(a, b);
    if (!w) {
      emit(o, {{"equivalent", true}});
      return kOk;
    }
    emit(o, {{"equivalent", false},
             {"witness", {{"word", io::word_to_json(a.alphabet(), *w)},
                          {"left", io::element_to_json(a.lattice(), evaluate(a, *w))},
                          {"right", io::element_to_json(a.lattice(), evaluate(b, *w))}}}});
    return kFalse;
  }
  if (action == "syntactic") {
    emit(o, io::syntactic_to_json(syntactic(a)));
    return kOk;
  }
  if (action == "cut") {
    emit(o, io::automaton_to_json(minimize(cut(a, parse_element(a.lattice(), o.at)))));
    return kOk;
  }
  if (action == "reconstruct") {
    const CutReconstruction rec = reconstruct_from_cuts(a);
    json out{{"equal", rec.equal}, {"product_size", rec.triple.monoid->size()},
             {"restricted_to_image", rec.restricted_to_image}};
    if (!rec.equal) {
      const auto w = find_difference(triple_to_automaton(rec.triple), a);
      if (w) out["witness"] = {{"word", io::word_to_json(a.alphabet(), *w)}};
    }
    emit(o, out);
    return rec.equal ? kOk : kFalse;
  }
  if (action == "shuffle-check") {
    const bool algebraic = is_shuffle_ideal(a);
    const auto w = shuffle_ideal_falsify(a, o.max_len);
    json out{{"shuffle_ideal", algebraic}, {"max_len", o.max_len}, {"witness", nullptr}};
    if (w) {
      out["witness"] = {{"subword", io::word_to_json(a.alphabet(), w->subword)},
                        {"word", io::word_to_json(a.alphabet(), w->word)},
                        {"subword_value", io::element_to_json(a.lattice(), evaluate(a, w->subword))},
                        {"word_value", io::element_to_json(a.lattice(), evaluate(a, w->word))}};
    }
    emit(o, out);
    return algebraic && !w ? kOk : kFalse;
  }

  // op
  if (op == "join" || op == "meet") {
    const LatticeAutomaton b = load_automaton(o.files.at(1));
    if (!(a.lattice() == b.lattice())) throw Error(ErrorKind::MismatchedLattice, "automata use different lattices");
    emit(o, io::automaton_to_json(minimize(product_combine(op == "join" ? CombineKind::Join : CombineKind::Meet,
                                                           a, on_lattice(a.lattice_ptr(), b)))));
  } else if (op == "quotl" || op == "quotr") {
    const Word u = parse_word(a.alphabet(), o.word);
    emit(o, io::automaton_to_json(minimize(quotient(op == "quotl" ? Side::Left : Side::Right, a, u))));
  } else if (op == "invhom") {
    const FreeMorphism h = io::free_morphism_from_json(io::read_json_file(o.files.at(1)), a.alphabet());
    emit(o, io::automaton_to_json(minimize(inverse_hom(a, h))));
  } else {
    const LatticeMorphism alpha = io::lattice_morphism_from_json(a.lattice_ptr(), io::read_json_file(o.files.at(1)));
    emit(o, io::automaton_to_json(minimize(recolor(a, alpha))));
  }
  return kOk;
}

int variety_cmd(const std::string& action, const Options& o) {
  if (action == "enumerate") {
    json monoids = json::array();
    const auto all = enumerate_ordered_monoids(o.n);
    for (const auto& m : all) monoids.push_back(io::monoid_to_json(m));
    emit(o, {{"n", o.n}, {"count", all.size()}, {"monoids", monoids}});
    return kOk;
  }
  if (action == "subdirect") {
    const VerificationReport r = subdirect_embedding(load_monoid(o.files.at(0)));
    emit(o, r.to_json());
    return r.verdict == VerificationReport::Verdict::Pass ? kOk : kFalse;
  }
  SuiteSizes sizes;
  sizes.inject_bad_instance = o.inject;
  int code = kOk;
  for (const auto& r : run_suite(o.seed, sizes)) {
    emit(o, r.to_json());
    if (r.verdict == VerificationReport::Verdict::Fail) code = kFalse;
    else if (r.verdict == VerificationReport::Verdict::BudgetExhausted && code == kOk) code = kBudget;
  }
  return code;
}

int markov_cmd(const std::string& action, const Options& o) {
  const MarkovChain chain = chain_from_json(io::read_json_file(o.files.at(0)));
  validate_chain(chain);
  if (action == "decompose") {
    const Decomposition d = decompose(chain);
    validate_decomposition(chain, d);
    emit(o, decomposition_to_json(chain, d));
    return kOk;
  }
  if (action == "absorb") {
    const ErgodicStructure e = ergodic_structure(chain);
    const auto table = absorption_probabilities(chain);
    json out = json::object();
    const auto ergodic = e.ergodic_classes();
    for (std::size_t i = 0; i < table.size(); ++i) {
      json row = json::object();
      for (std::size_t s = 0; s < chain.size(); ++s) row[chain.states[s]] = format_rational(table[i][s]);
      json members = json::array();
      for (auto s : e.classes[ergodic[i]]) members.push_back(chain.states[s]);
      out["C" + std::to_string(i + 1)] = {{"states", members}, {"probability", row}};
    }
    emit(o, {{"absorption", out}});
    return kOk;
  }
  AnalyzeOptions opts;
  if (!o.initial.empty()) opts.initial = chain.state_index(o.initial);
  if (!o.decomposition.empty())
    opts.decomposition = decomposition_from_json(chain, io::read_json_file(o.decomposition));
  opts.falsify_bound = o.max_len;
  opts.horizon = o.horizon;
  json report = analyze(chain, opts);
  if (o.mode == "basic") report.erase("reachable");
  if (o.mode == "reachable") report.erase("basic");
  emit(o, report);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lattice-valued languages and ordered monoids"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "text"}));

  std::string group, action, op;
  auto files = [&](CLI::App* c, std::size_t lo, int hi) {
    c->add_option("files", o.files, "Input files")->expected(static_cast<int>(lo), hi < 0 ? 64 : hi)->check(CLI::ExistingFile);
  };

  auto* lattice = app.add_subcommand("lattice", "Finite lattices");
  lattice->require_subcommand(1);
  for (const char* a : {"check", "dual"}) files(lattice->add_subcommand(a), 1, 1);

  auto* monoid = app.add_subcommand("monoid", "Ordered monoids");
  monoid->require_subcommand(1);
  files(monoid->add_subcommand("check"), 1, 1);
  files(monoid->add_subcommand("aperiodic"), 1, 1);
  files(monoid->add_subcommand("product"), 1, -1);
  auto* divides_cmd = monoid->add_subcommand("divides", "Does the first monoid divide the second?");
  files(divides_cmd, 2, 2);
  divides_cmd->add_option("--budget", o.budget, "Search node budget");

  auto* lang = app.add_subcommand("lang", "Lattice-valued regular languages");
  lang->require_subcommand(1);
  auto* eval = lang->add_subcommand("eval");
  files(eval, 1, 1);
  eval->add_option("--word", o.word, "Word to evaluate")->required();
  files(lang->add_subcommand("minimize"), 1, 1);
  files(lang->add_subcommand("equiv"), 2, 2);
  files(lang->add_subcommand("syntactic"), 1, 1);
  auto* cut_cmd = lang->add_subcommand("cut");
  files(cut_cmd, 1, 1);
  cut_cmd->add_option("--at", o.at, "Threshold element")->required();
  files(lang->add_subcommand("reconstruct"), 1, 1);
  auto* shuffle = lang->add_subcommand("shuffle-check");
  files(shuffle, 1, 1);
  shuffle->add_option("--max-len", o.max_len, "Falsifier length bound");
  auto* op_cmd = lang->add_subcommand("op", "Closure operations");
  op_cmd->require_subcommand(1);
  for (const char* name : {"join", "meet", "invhom", "recolor"}) files(op_cmd->add_subcommand(name), 2, 2);
  for (const char* name : {"quotl", "quotr"}) {
    auto* q = op_cmd->add_subcommand(name);
    files(q, 1, 1);
    q->add_option("--word", o.word, "Quotient word")->required();
  }

  auto* variety = app.add_subcommand("variety", "Enumeration and verification");
  variety->require_subcommand(1);
  variety->add_subcommand("enumerate")->add_option("--n", o.n, "Monoid size")->required();
  auto* suite = variety->add_subcommand("suite");
  suite->add_option("--seed", o.seed, "Random seed");
  suite->add_flag("--inject-bad", o.inject, "Add one known-bad instance");
  files(variety->add_subcommand("subdirect"), 1, 1);

  auto* markov = app.add_subcommand("markov", "Markov chain pipeline");
  markov->require_subcommand(1);
  auto* analyze_cmd = markov->add_subcommand("analyze");
  files(analyze_cmd, 1, 1);
  analyze_cmd->add_option("--decomposition", o.decomposition, "Decomposition file")->check(CLI::ExistingFile);
  analyze_cmd->add_option("--initial", o.initial, "Initial state");
  analyze_cmd->add_option("--horizon", o.horizon, "Word-measure length");
  analyze_cmd->add_option("--max-len", o.max_len, "Falsifier length bound")->default_val(6);
  analyze_cmd->add_option("--mode", o.mode, "Coloring mode")->check(CLI::IsMember({"basic", "reachable", "both"}));
  files(markov->add_subcommand("decompose"), 1, 1);
  files(markov->add_subcommand("absorb"), 1, 1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cout << Error(ErrorKind::ParseError, e.what()).to_json().dump() << "\n";
    return kError;
  }

  auto chosen = [](CLI::App* parent) {
    auto subs = parent->get_subcommands();
    return subs.empty() ? nullptr : subs.front();
  };
  CLI::App* g = chosen(&app);
  CLI::App* a = chosen(g);
  CLI::App* p = chosen(a);
  group = g->get_name();
  action = a->get_name();
  op = p ? p->get_name() : "";

  try {
    if (group == "lattice") return lattice_cmd(action, o);
    if (group == "monoid") return monoid_cmd(action, o);
    if (group == "lang") return lang_cmd(action, op, o);
    if (group == "variety") return variety_cmd(action, o);
    return markov_cmd(action, o);
  } catch (const Error& e) {
    std::cout << e.to_json().dump() << "\n";
  } catch (const json::exception& e) {
    std::cout << Error(ErrorKind::ParseError, e.what()).to_json().dump() << "\n";
  } catch (const std::exception& e) {
    std::cout << Error(ErrorKind::InternalInconsistency, e.what()).to_json().dump() << "\n";
  }
  return kError;
}
