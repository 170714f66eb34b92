#include "latmon/io.hpp"

#include <algorithm>
#include <fstream>

#include "latmon/error.hpp"

namespace latmon::io {

namespace {

[[noreturn]] void parse_error(const std::string& what, json witness = nullptr) {
  throw Error(ErrorKind::ParseError, what, std::move(witness));
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) parse_error(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::string as_string(const json& j, const char* what) {
  if (!j.is_string()) parse_error(std::string(what) + " must be a string", j);
  return j.get<std::string>();
}

std::vector<std::string> string_list(const json& j, const char* what) {
  if (!j.is_array()) parse_error(std::string(what) + " must be an array", j);
  std::vector<std::string> out;
  for (const auto& e : j) out.push_back(as_string(e, what));
  return out;
}

bool is_set_name(const std::string& s) {
  return s.size() >= 2 && s.front() == '{' && s.back() == '}';
}

// ["2","1"] -> "{1,2}"; members ordered numerically when they look numeric.
std::string set_name(const json& j) {
  std::vector<std::string> members = string_list(j, "set element member");
  std::sort(members.begin(), members.end(), [](const std::string& a, const std::string& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  std::string out = "{";
  for (std::size_t i = 0; i < members.size(); ++i) out += (i ? "," : "") + members[i];
  return out + "}";
}

std::string name_from_json(const json& j) {
  if (j.is_array()) return set_name(j);
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  return as_string(j, "element name");
}

json name_to_json(const std::string& name) {
  if (!is_set_name(name)) return name;
  json arr = json::array();
  const std::string inner = name.substr(1, name.size() - 2);
  std::size_t pos = 0;
  while (pos < inner.size()) {
    const auto end = std::min(inner.find(',', pos), inner.size());
    arr.push_back(inner.substr(pos, end - pos));
    pos = end + 1;
  }
  return arr;
}

std::vector<std::pair<std::string, std::string>> pair_list(const json& j, const char* what) {
  if (!j.is_array()) parse_error(std::string(what) + " must be an array of pairs", j);
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& p : j) {
    if (!p.is_array() || p.size() != 2) parse_error(std::string(what) + " entries must be pairs", p);
    out.emplace_back(name_from_json(p[0]), name_from_json(p[1]));
  }
  return out;
}

}  // namespace

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) parse_error("cannot open '" + path + "'", path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    parse_error("invalid JSON in '" + path + "': " + e.what(), path);
  }
}

Lattice lattice_from_json(const json& j) {
  if (j.is_object() && j.contains("standard")) {
    const std::string kind = as_string(j.at("standard"), "standard");
    const std::size_t n = j.value("n", std::size_t{2});
    if (kind == "powerset") return standard_lattice(StandardLattice::Powerset, n);
    if (kind == "chain") return standard_lattice(StandardLattice::Chain, n);
    if (kind == "boolean") return standard_lattice(StandardLattice::Boolean, n);
    parse_error("unknown standard lattice '" + kind + "'", kind);
  }
  std::vector<std::string> names;
  const json& elements = field(j, "elements");
  if (!elements.is_array()) parse_error("'elements' must be an array", elements);
  for (const auto& e : elements) names.push_back(name_from_json(e));
  const bool full = j.value("relation", std::string("cover")) == "full";
  const json& rel = full ? field(j, "leq") : (j.contains("cover") ? j.at("cover") : field(j, "leq"));
  auto pairs = pair_list(rel, "order");
  return Lattice::build(std::move(names), pairs,
                        full ? Lattice::Input::FullRelation : Lattice::Input::Covers);
}

json lattice_to_json(const Lattice& l) {
  json elements = json::array();
  for (const auto& n : l.names()) elements.push_back(name_to_json(n));
  std::vector<std::pair<std::string, std::string>> pairs;
  for (auto [a, b] : l.relation()) pairs.emplace_back(l.name(a), l.name(b));
  std::sort(pairs.begin(), pairs.end());
  json leq = json::array();
  for (const auto& [a, b] : pairs) leq.push_back(json::array({name_to_json(a), name_to_json(b)}));
  return {{"elements", elements}, {"leq", leq}, {"relation", "full"}};
}

json element_to_json(const Lattice& l, Lattice::Element e) { return name_to_json(l.name(e)); }

Lattice::Element element_from_json(const Lattice& l, const json& j) {
  return l.index(name_from_json(j));
}

LatticeMorphism lattice_morphism_from_json(const LatticePtr& l, const json& j) {
  const json& mapping = field(j, "mapping");
  if (!mapping.is_object()) parse_error("'mapping' must be an object", mapping);
  std::vector<Lattice::Element> m(l->size());
  std::vector<char> seen(l->size(), 0);
  for (const auto& [key, value] : mapping.items()) {
    const auto e = l->index(key);
    m[e] = element_from_json(*l, value);
    seen[e] = 1;
  }
  for (Lattice::Element e = 0; e < l->size(); ++e)
    if (!seen[e]) parse_error("lattice morphism is not total: missing '" + l->name(e) + "'", l->name(e));
  return LatticeMorphism(l, std::move(m));
}

json lattice_morphism_to_json(const LatticeMorphism& m) {
  json mapping = json::object();
  for (Lattice::Element e = 0; e < m.lattice().size(); ++e)
    mapping[m.lattice().name(e)] = element_to_json(m.lattice(), m(e));
  return {{"mapping", mapping}};
}

OrderedMonoid monoid_from_json(const json& j) {
  std::vector<std::string> names = string_list(field(j, "elements"), "monoid element");
  auto find = [&](const std::string& s) -> std::size_t {
    auto it = std::find(names.begin(), names.end(), s);
    if (it == names.end()) throw Error(ErrorKind::UnknownElement, "unknown monoid element '" + s + "'", s);
    return static_cast<std::size_t>(it - names.begin());
  };
  const std::size_t n = names.size();
  const std::size_t identity = find(as_string(field(j, "identity"), "identity"));
  const json& rows = field(j, "mul");
  if (!rows.is_array() || rows.size() != n) parse_error("'mul' must have one row per element", rows);
  std::vector<std::size_t> mul;
  for (const auto& row : rows) {
    if (!row.is_array() || row.size() != n) parse_error("'mul' rows must have one entry per element", row);
    for (const auto& e : row) mul.push_back(find(as_string(e, "product")));
  }
  std::vector<std::pair<std::size_t, std::size_t>> leq;
  if (j.contains("leq"))
    for (const auto& [a, b] : pair_list(j.at("leq"), "leq")) leq.emplace_back(find(a), find(b));
  return OrderedMonoid::build(std::move(names), identity, std::move(mul), leq);
}

json monoid_to_json(const OrderedMonoid& m) {
  json rows = json::array();
  for (std::size_t x = 0; x < m.size(); ++x) {
    json row = json::array();
    for (std::size_t y = 0; y < m.size(); ++y) row.push_back(m.name(m.mul(x, y)));
    rows.push_back(row);
  }
  std::vector<std::pair<std::string, std::string>> pairs;
  for (std::size_t x = 0; x < m.size(); ++x)
    for (std::size_t y = 0; y < m.size(); ++y)
      if (m.leq(x, y)) pairs.emplace_back(m.name(x), m.name(y));
  std::sort(pairs.begin(), pairs.end());
  json leq = json::array();
  for (const auto& [a, b] : pairs) leq.push_back(json::array({a, b}));
  return {{"elements", m.names()}, {"identity", m.name(m.identity())}, {"mul", rows}, {"leq", leq}};
}

OpColoring coloring_from_json(const json& j) {
  auto monoid = std::make_shared<const OrderedMonoid>(monoid_from_json(field(j, "monoid")));
  auto lattice = std::make_shared<const Lattice>(lattice_from_json(field(j, "lattice")));
  const json& colors = field(j, "colors");
  if (!colors.is_object()) parse_error("'colors' must be an object", colors);
  std::vector<Lattice::Element> c(monoid->size(), lattice->size());
  for (const auto& [key, value] : colors.items()) c[monoid->index(key)] = element_from_json(*lattice, value);
  for (std::size_t x = 0; x < c.size(); ++x)
    if (c[x] == lattice->size()) parse_error("coloring is not total: missing '" + monoid->name(x) + "'", monoid->name(x));
  return OpColoring(monoid, lattice, std::move(c));
}

json coloring_to_json(const OpColoring& c) {
  json colors = json::object();
  for (std::size_t x = 0; x < c.monoid().size(); ++x)
    colors[c.monoid().name(x)] = element_to_json(c.lattice(), c(x));
  return {{"monoid", monoid_to_json(c.monoid())},
          {"lattice", lattice_to_json(c.lattice())},
          {"colors", colors}};
}

LatticeAutomaton automaton_from_json(const json& j) {
  auto lattice = std::make_shared<const Lattice>(lattice_from_json(field(j, "lattice")));
  std::vector<std::string> alphabet = string_list(field(j, "alphabet"), "letter");
  std::vector<std::string> states = string_list(field(j, "states"), "state");
  auto state = [&](const json& s) -> std::size_t {
    const std::string name = as_string(s, "state");
    auto it = std::find(states.begin(), states.end(), name);
    if (it == states.end()) throw Error(ErrorKind::UnknownElement, "unknown state '" + name + "'", name);
    return static_cast<std::size_t>(it - states.begin());
  };
  const std::size_t initial = state(field(j, "initial"));
  const json& delta = field(j, "delta");
  const json& output = field(j, "output");
  const std::size_t k = alphabet.size();
  std::vector<std::size_t> d(states.size() * k);
  std::vector<Lattice::Element> out(states.size());
  for (std::size_t s = 0; s < states.size(); ++s) {
    if (!delta.contains(states[s])) {
      throw Error(ErrorKind::IncompleteAutomaton, "no transitions for state '" + states[s] + "'", states[s]);
    }
    const json& row = delta.at(states[s]);
    for (std::size_t c = 0; c < k; ++c) {
      if (!row.contains(alphabet[c])) {
        throw Error(ErrorKind::IncompleteAutomaton,
                    "missing transition from '" + states[s] + "' on '" + alphabet[c] + "'",
                    nlohmann::json::array({states[s], alphabet[c]}));
      }
      d[s * k + c] = state(row.at(alphabet[c]));
    }
    for (const auto& [letter, target] : row.items()) {
      if (std::find(alphabet.begin(), alphabet.end(), letter) == alphabet.end()) {
        throw Error(ErrorKind::UnknownLetter, "unknown letter '" + letter + "'", letter);
      }
    }
    if (!output.contains(states[s])) {
      throw Error(ErrorKind::IncompleteAutomaton, "no output for state '" + states[s] + "'", states[s]);
    }
    out[s] = element_from_json(*lattice, output.at(states[s]));
  }
  return LatticeAutomaton(lattice, std::move(alphabet), std::move(states), initial, std::move(d),
                          std::move(out));
}

json automaton_to_json(const LatticeAutomaton& a) {
  json delta = json::object();
  json output = json::object();
  for (std::size_t s = 0; s < a.num_states(); ++s) {
    json row = json::object();
    for (std::size_t c = 0; c < a.num_letters(); ++c) row[a.alphabet()[c]] = a.states()[a.next(s, c)];
    delta[a.states()[s]] = row;
    output[a.states()[s]] = element_to_json(a.lattice(), a.output(s));
  }
  return {{"lattice", lattice_to_json(a.lattice())},
          {"alphabet", a.alphabet()},
          {"states", a.states()},
          {"initial", a.states()[a.initial()]},
          {"delta", delta},
          {"output", output}};
}

Word word_from_json(const std::vector<std::string>& alphabet, const json& j) {
  if (j.is_string()) return parse_word(alphabet, j.get<std::string>());
  return parse_word(alphabet, std::span<const std::string>(string_list(j, "letter")));
}

json word_to_json(const std::vector<std::string>& alphabet, const Word& w) {
  const bool single = std::all_of(alphabet.begin(), alphabet.end(),
                                  [](const std::string& s) { return s.size() == 1; });
  if (single) return format_word(alphabet, w);
  json arr = json::array();
  for (auto c : w) arr.push_back(alphabet[c]);
  return arr;
}

FreeMorphism free_morphism_from_json(const json& j, const std::vector<std::string>& target_alphabet) {
  const json& images = field(j, "images");
  if (!images.is_object()) parse_error("'images' must be an object", images);
  FreeMorphism h;
  h.target_alphabet = target_alphabet;
  if (j.contains("alphabet")) {
    h.source_alphabet = string_list(j.at("alphabet"), "letter");
  } else {
    for (const auto& [key, value] : images.items()) h.source_alphabet.push_back(key);
  }
  for (const auto& letter : h.source_alphabet) {
    if (!images.contains(letter)) parse_error("no image for letter '" + letter + "'", letter);
    h.images.push_back(word_from_json(target_alphabet, images.at(letter)));
  }
  return h;
}

json free_morphism_to_json(const FreeMorphism& h) {
  json images = json::object();
  for (std::size_t c = 0; c < h.source_alphabet.size(); ++c)
    images[h.source_alphabet[c]] = word_to_json(h.target_alphabet, h.images[c]);
  return {{"alphabet", h.source_alphabet}, {"images", images}};
}

RecognitionTriple triple_from_json(const json& j) {
  auto monoid = std::make_shared<const OrderedMonoid>(monoid_from_json(field(j, "monoid")));
  json coloring_doc = {{"monoid", j.at("monoid")}, {"lattice", field(j, "lattice")},
                       {"colors", field(j, "colors")}};
  OpColoring coloring = coloring_from_json(coloring_doc);
  OpColoring on_monoid(monoid, coloring.lattice_ptr(), coloring.colors());
  std::vector<std::string> alphabet = string_list(field(j, "alphabet"), "letter");
  const json& images = field(j, "images");
  std::vector<std::size_t> gens;
  for (const auto& letter : alphabet) {
    if (!images.contains(letter)) parse_error("no image for letter '" + letter + "'", letter);
    gens.push_back(monoid->index(as_string(images.at(letter), "monoid element")));
  }
  return RecognitionTriple{std::move(alphabet), std::move(gens), monoid, std::move(on_monoid)};
}

json triple_to_json(const RecognitionTriple& t) {
  json images = json::object();
  for (std::size_t c = 0; c < t.alphabet.size(); ++c)
    images[t.alphabet[c]] = t.monoid->name(t.generator_images[c]);
  json c = coloring_to_json(t.coloring);
  return {{"alphabet", t.alphabet}, {"images", images}, {"monoid", c["monoid"]},
          {"lattice", c["lattice"]}, {"colors", c["colors"]}};
}

json syntactic_to_json(const SyntacticResult& s) {
  json witnesses = json::object();
  for (std::size_t x = 0; x < s.monoid->size(); ++x)
    witnesses[s.monoid->name(x)] = word_to_json(s.alphabet, s.witnesses[x]);
  json morphism = json::object();
  for (std::size_t c = 0; c < s.alphabet.size(); ++c)
    morphism[s.alphabet[c]] = s.monoid->name(s.morphism[c]);
  json colors = json::object();
  for (std::size_t x = 0; x < s.monoid->size(); ++x)
    colors[s.monoid->name(x)] = element_to_json(s.coloring.lattice(), s.coloring(x));
  return {{"monoid", monoid_to_json(*s.monoid)},
          {"size", s.monoid->size()},
          {"morphism", morphism},
          {"colors", colors},
          {"witnesses", witnesses},
          {"identity_is_greatest", identity_is_greatest(*s.monoid)},
          {"aperiodic", is_aperiodic(*s.monoid)}};
}

}  // namespace latmon::io
