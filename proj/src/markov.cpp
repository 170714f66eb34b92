#include "latmon/markov.hpp"

#include <algorithm>
#include <charconv>

#include "latmon/error.hpp"
#include "latmon/io.hpp"
#include "latmon/syntactic.hpp"

namespace latmon {

using nlohmann::json;

namespace {

bool parse_integer(std::string_view text, boost::multiprecision::cpp_int& out) {
  if (text.empty()) return false;
  std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (start == text.size()) return false;
  for (std::size_t i = start; i < text.size(); ++i)
    if (text[i] < '0' || text[i] > '9') return false;
  out = boost::multiprecision::cpp_int(std::string(text.substr(start)));
  if (text[0] == '-') out = -out;
  return true;
}

std::vector<std::vector<bool>> reachability(const MarkovChain& chain) {
  const std::size_t n = chain.size();
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<std::size_t> stack{s};
    reach[s][s] = true;
    while (!stack.empty()) {
      const std::size_t x = stack.back();
      stack.pop_back();
      for (std::size_t t = 0; t < n; ++t)
        if (chain.matrix[x][t] > 0 && !reach[s][t]) {
          reach[s][t] = true;
          stack.push_back(t);
        }
    }
  }
  return reach;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  boost::multiprecision::cpp_int num, den = 1;
  const bool ok = slash == std::string_view::npos
                      ? parse_integer(text, num)
                      : parse_integer(text.substr(0, slash), num) &&
                            parse_integer(text.substr(slash + 1), den);
  if (!ok || den == 0) {
    throw Error(ErrorKind::BadFraction, "bad fraction '" + std::string(text) + "'",
                std::string(text));
  }
  return Rational(num, den);
}

std::string format_rational(const Rational& r) {
  const auto num = boost::multiprecision::numerator(r);
  const auto den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

std::size_t MarkovChain::state_index(std::string_view name) const {
  auto it = std::find(states.begin(), states.end(), name);
  if (it == states.end()) {
    throw Error(ErrorKind::UnknownElement, "unknown state '" + std::string(name) + "'",
                std::string(name));
  }
  return static_cast<std::size_t>(it - states.begin());
}

void validate_chain(const MarkovChain& chain) {
  const std::size_t n = chain.size();
  if (chain.matrix.size() != n) throw Error(ErrorKind::ParseError, "matrix must be square");
  for (std::size_t s = 0; s < n; ++s) {
    if (chain.matrix[s].size() != n) throw Error(ErrorKind::ParseError, "matrix must be square");
    Rational sum = 0;
    for (std::size_t t = 0; t < n; ++t) {
      const Rational& p = chain.matrix[s][t];
      if (p < 0) {
        throw Error(ErrorKind::NegativeEntry, "negative transition probability",
                    {chain.states[s], chain.states[t], format_rational(p)});
      }
      if (p > 1) {
        throw Error(ErrorKind::BadFraction, "transition probability above 1",
                    {chain.states[s], chain.states[t], format_rational(p)});
      }
      sum += p;
    }
    if (sum != 1) {
      throw Error(ErrorKind::RowSumNotOne, "row '" + chain.states[s] + "' sums to " + format_rational(sum),
                  {{"state", chain.states[s]}, {"sum", format_rational(sum)}});
    }
  }
}

MarkovChain chain_from_json(const json& j) {
  if (!j.is_object() || !j.contains("states") || !j.contains("rows")) {
    throw Error(ErrorKind::ParseError, "chain needs 'states' and 'rows'");
  }
  MarkovChain chain;
  for (const auto& s : j.at("states")) {
    if (!s.is_string()) throw Error(ErrorKind::ParseError, "state names must be strings", s);
    chain.states.push_back(s.get<std::string>());
  }
  const std::size_t n = chain.size();
  chain.matrix.assign(n, std::vector<Rational>(n, Rational(0)));
  for (const auto& [from, row] : j.at("rows").items()) {
    const std::size_t s = chain.state_index(from);
    for (const auto& [to, value] : row.items()) {
      const std::size_t t = chain.state_index(to);
      if (value.is_string()) {
        chain.matrix[s][t] = parse_rational(value.get<std::string>());
      } else if (value.is_number_integer()) {
        chain.matrix[s][t] = Rational(value.get<long long>());
      } else {
        throw Error(ErrorKind::BadFraction, "probabilities must be \"p/q\" strings or integers", value);
      }
    }
  }
  validate_chain(chain);
  return chain;
}

MarkovChain load_chain(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ParseError, std::string("invalid chain JSON: ") + e.what());
  }
  return chain_from_json(j);
}

json chain_to_json(const MarkovChain& chain) {
  json rows = json::object();
  for (std::size_t s = 0; s < chain.size(); ++s) {
    json row = json::object();
    for (std::size_t t = 0; t < chain.size(); ++t)
      if (chain.matrix[s][t] != 0) row[chain.states[t]] = format_rational(chain.matrix[s][t]);
    rows[chain.states[s]] = row;
  }
  return {{"states", chain.states}, {"rows", rows}};
}

std::vector<std::size_t> ErgodicStructure::ergodic_classes() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < classes.size(); ++i)
    if (ergodic[i]) out.push_back(i);
  return out;
}

ErgodicStructure ergodic_structure(const MarkovChain& chain) {
  const std::size_t n = chain.size();
  const auto reach = reachability(chain);
  ErgodicStructure e;
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  e.class_of.assign(n, kUnset);
  for (std::size_t s = 0; s < n; ++s) {
    if (e.class_of[s] != kUnset) continue;
    std::vector<std::size_t> members;
    for (std::size_t t = s; t < n; ++t)
      if (reach[s][t] && reach[t][s]) {
        members.push_back(t);
        e.class_of[t] = e.classes.size();
      }
    e.classes.push_back(std::move(members));
  }
  e.class_dag.resize(e.classes.size());
  e.ergodic.assign(e.classes.size(), true);
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t t = 0; t < n; ++t) {
      if (chain.matrix[s][t] == 0 || e.class_of[s] == e.class_of[t]) continue;
      e.ergodic[e.class_of[s]] = false;
      auto& out = e.class_dag[e.class_of[s]];
      if (std::find(out.begin(), out.end(), e.class_of[t]) == out.end()) out.push_back(e.class_of[t]);
    }
  for (auto& out : e.class_dag) std::sort(out.begin(), out.end());
  for (std::size_t s = 0; s < n; ++s)
    if (!e.ergodic[e.class_of[s]]) e.transient_states.push_back(s);
  return e;
}

Decomposition decompose(const MarkovChain& chain) {
  const std::size_t n = chain.size();
  auto residual = chain.matrix;
  Decomposition d;
  for (;;) {
    std::vector<std::size_t> pick(n);
    bool any = false;
    for (std::size_t s = 0; s < n; ++s) {
      std::size_t best = 0;
      for (std::size_t t = 1; t < n; ++t)
        if (residual[s][t] > residual[s][best]) best = t;
      pick[s] = best;
      any = any || residual[s][best] > 0;
    }
    if (!any) break;
    Rational weight = residual[0][pick[0]];
    for (std::size_t s = 1; s < n; ++s)
      if (residual[s][pick[s]] < weight) weight = residual[s][pick[s]];
    for (std::size_t s = 0; s < n; ++s) residual[s][pick[s]] -= weight;
    d.letters.push_back({"ℓ" + std::to_string(d.letters.size() + 1), std::move(pick), weight});
  }
  return d;
}

void validate_decomposition(const MarkovChain& chain, const Decomposition& d) {
  const std::size_t n = chain.size();
  if (d.letters.empty()) throw Error(ErrorKind::BadDecomposition, "decomposition has no letters");
  Rational total = 0;
  std::vector<std::vector<Rational>> sum(n, std::vector<Rational>(n, Rational(0)));
  for (const auto& letter : d.letters) {
    if (letter.weight <= 0) {
      throw Error(ErrorKind::BadDecomposition, "letter '" + letter.name + "' has non-positive weight",
                  letter.name);
    }
    if (letter.map.size() != n) {
      throw Error(ErrorKind::BadDecomposition, "letter '" + letter.name + "' is not total", letter.name);
    }
    total += letter.weight;
    for (std::size_t s = 0; s < n; ++s) {
      if (letter.map[s] >= n) throw Error(ErrorKind::BadDecomposition, "map target out of range", letter.name);
      sum[s][letter.map[s]] += letter.weight;
    }
  }
  if (total != 1) {
    throw Error(ErrorKind::BadDecomposition, "weights sum to " + format_rational(total),
                format_rational(total));
  }
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t t = 0; t < n; ++t)
      if (sum[s][t] != chain.matrix[s][t]) {
        throw Error(ErrorKind::BadDecomposition,
                    "decomposition gives " + format_rational(sum[s][t]) + " for (" + chain.states[s] +
                        ", " + chain.states[t] + ")",
                    {{"from", chain.states[s]}, {"to", chain.states[t]},
                     {"expected", format_rational(chain.matrix[s][t])},
                     {"actual", format_rational(sum[s][t])}});
      }
}

Decomposition decomposition_from_json(const MarkovChain& chain, const json& j) {
  if (!j.is_object() || !j.contains("letters") || !j.at("letters").is_array()) {
    throw Error(ErrorKind::ParseError, "decomposition needs a 'letters' array");
  }
  Decomposition d;
  for (const auto& l : j.at("letters")) {
    DecompositionLetter letter;
    letter.name = l.at("name").get<std::string>();
    letter.weight = parse_rational(l.at("weight").get<std::string>());
    letter.map.assign(chain.size(), chain.size());
    for (const auto& [from, to] : l.at("map").items())
      letter.map[chain.state_index(from)] = chain.state_index(to.get<std::string>());
    for (std::size_t s = 0; s < chain.size(); ++s)
      if (letter.map[s] == chain.size()) {
        throw Error(ErrorKind::BadDecomposition,
                    "letter '" + letter.name + "' has no image for '" + chain.states[s] + "'",
                    nlohmann::json::array({letter.name, chain.states[s]}));
      }
    d.letters.push_back(std::move(letter));
  }
  validate_decomposition(chain, d);
  return d;
}

json decomposition_to_json(const MarkovChain& chain, const Decomposition& d) {
  json letters = json::array();
  for (const auto& l : d.letters) {
    json map = json::object();
    for (std::size_t s = 0; s < chain.size(); ++s) map[chain.states[s]] = chain.states[l.map[s]];
    letters.push_back({{"name", l.name}, {"weight", format_rational(l.weight)}, {"map", map}});
  }
  return {{"letters", letters}};
}

LatticeAutomaton simulating_automaton(const MarkovChain& chain, const Decomposition& d,
                                      ColoringMode mode, std::optional<std::size_t> initial) {
  validate_decomposition(chain, d);
  const std::size_t n = chain.size();
  if (n == 0) throw Error(ErrorKind::NoInitial, "chain has no states");
  const std::size_t start = initial.value_or(0);
  if (start >= n) throw Error(ErrorKind::NoInitial, "initial state out of range", start);
  const ErgodicStructure e = ergodic_structure(chain);
  const auto ergodic = e.ergodic_classes();
  if (ergodic.empty()) throw Error(ErrorKind::NoErgodicClass, "chain has no ergodic class");
  auto lattice = std::make_shared<const Lattice>(standard_lattice(StandardLattice::Powerset, ergodic.size()));
  const std::size_t top = lattice->top();

  std::vector<std::size_t> ergodic_index(e.classes.size(), ergodic.size());
  for (std::size_t i = 0; i < ergodic.size(); ++i) ergodic_index[ergodic[i]] = i;
  const auto reach = reachability(chain);

  std::vector<Lattice::Element> output(n);
  for (std::size_t s = 0; s < n; ++s) {
    const std::size_t ci = ergodic_index[e.class_of[s]];
    if (mode == ColoringMode::Basic) {
      output[s] = ci < ergodic.size() ? (std::size_t{1} << ci) : top;
    } else {
      std::size_t mask = 0;
      for (std::size_t i = 0; i < ergodic.size(); ++i)
        if (reach[s][e.classes[ergodic[i]].front()]) mask |= std::size_t{1} << i;
      output[s] = mask;
    }
  }
  std::vector<std::string> alphabet;
  const std::size_t k = d.letters.size();
  std::vector<std::size_t> delta(n * k);
  for (std::size_t c = 0; c < k; ++c) {
    alphabet.push_back(d.letters[c].name);
    for (std::size_t s = 0; s < n; ++s) delta[s * k + c] = d.letters[c].map[s];
  }
  return LatticeAutomaton(lattice, std::move(alphabet), chain.states, start, std::move(delta),
                          std::move(output));
}

std::vector<std::vector<Rational>> absorption_probabilities(const MarkovChain& chain) {
  const std::size_t n = chain.size();
  const ErgodicStructure e = ergodic_structure(chain);
  const auto ergodic = e.ergodic_classes();
  const auto& transient = e.transient_states;
  const std::size_t m = transient.size();
  std::vector<std::vector<Rational>> table;
  for (std::size_t ci : ergodic) {
    // (I - Q) x = b over transient states, b(s) = Π(s, C).
    std::vector<std::vector<Rational>> a(m, std::vector<Rational>(m + 1, Rational(0)));
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j)
        a[i][j] = (i == j ? Rational(1) : Rational(0)) - chain.matrix[transient[i]][transient[j]];
      for (std::size_t t : e.classes[ci]) a[i][m] += chain.matrix[transient[i]][t];
    }
    for (std::size_t col = 0; col < m; ++col) {
      std::size_t pivot = col;
      while (pivot < m && a[pivot][col] == 0) ++pivot;
      if (pivot == m) throw Error(ErrorKind::SingularSystem, "absorption system is singular");
      std::swap(a[col], a[pivot]);
      for (std::size_t r = 0; r < m; ++r) {
        if (r == col || a[r][col] == 0) continue;
        const Rational f = a[r][col] / a[col][col];
        for (std::size_t c = col; c <= m; ++c) a[r][c] -= f * a[col][c];
      }
    }
    std::vector<Rational> row(n, Rational(0));
    for (std::size_t t : e.classes[ci]) row[t] = 1;
    for (std::size_t i = 0; i < m; ++i) row[transient[i]] = a[i][m] / a[i][i];
    table.push_back(std::move(row));
  }
  return table;
}

std::vector<Rational> word_measure(const LatticeAutomaton& a, const Decomposition& d, std::size_t n) {
  if (a.num_letters() != d.letters.size()) {
    throw Error(ErrorKind::MismatchedAlphabet, "automaton letters and decomposition weights differ");
  }
  for (std::size_t c = 0; c < d.letters.size(); ++c)
    if (a.alphabet()[c] != d.letters[c].name) {
      throw Error(ErrorKind::MismatchedAlphabet, "letter '" + a.alphabet()[c] + "' has no weight",
                  a.alphabet()[c]);
    }
  std::vector<Rational> dist(a.num_states(), Rational(0));
  dist[a.initial()] = 1;
  for (std::size_t step = 0; step < n; ++step) {
    std::vector<Rational> next(a.num_states(), Rational(0));
    for (std::size_t s = 0; s < a.num_states(); ++s) {
      if (dist[s] == 0) continue;
      for (std::size_t c = 0; c < d.letters.size(); ++c) next[a.next(s, c)] += dist[s] * d.letters[c].weight;
    }
    dist = std::move(next);
  }
  std::vector<Rational> out(a.lattice().size(), Rational(0));
  for (std::size_t s = 0; s < a.num_states(); ++s) out[a.output(s)] += dist[s];
  return out;
}

json analyze(const MarkovChain& chain, const AnalyzeOptions& options) {
  const ErgodicStructure e = ergodic_structure(chain);
  const Decomposition d = options.decomposition ? *options.decomposition : decompose(chain);
  validate_decomposition(chain, d);

  auto names = [&](const std::vector<std::size_t>& states) {
    json out = json::array();
    for (auto s : states) out.push_back(chain.states[s]);
    return out;
  };
  json classes = json::array();
  for (std::size_t i = 0; i < e.classes.size(); ++i) {
    json succ = json::array();
    for (auto j : e.class_dag[i]) succ.push_back(j);
    classes.push_back({{"states", names(e.classes[i])}, {"ergodic", static_cast<bool>(e.ergodic[i])},
                       {"successors", succ}});
  }
  json ergodic = json::array();
  for (auto ci : e.ergodic_classes()) ergodic.push_back(names(e.classes[ci]));

  const auto absorb = absorption_probabilities(chain);
  json absorption = json::object();
  for (std::size_t i = 0; i < absorb.size(); ++i) {
    json row = json::object();
    for (std::size_t s = 0; s < chain.size(); ++s) row[chain.states[s]] = format_rational(absorb[i][s]);
    absorption["C" + std::to_string(i + 1)] = row;
  }

  auto language_report = [&](ColoringMode mode) {
    const LatticeAutomaton a = simulating_automaton(chain, d, mode, options.initial);
    const SyntacticResult synt = syntactic(a);
    const auto witness = shuffle_ideal_falsify(a, options.falsify_bound);
    json w = nullptr;
    if (witness) {
      w = {{"subword", io::word_to_json(a.alphabet(), witness->subword)},
           {"word", io::word_to_json(a.alphabet(), witness->word)},
           {"subword_value", io::element_to_json(a.lattice(), evaluate(a, witness->subword))},
           {"word_value", io::element_to_json(a.lattice(), evaluate(a, witness->word))}};
    }
    const auto measure = word_measure(a, d, options.horizon);
    json dist = json::object();
    for (std::size_t x = 0; x < measure.size(); ++x)
      if (measure[x] != 0) dist[a.lattice().name(x)] = format_rational(measure[x]);
    return json{{"automaton", io::automaton_to_json(a)},
                {"minimal_states", minimize(a).num_states()},
                {"syntactic", io::syntactic_to_json(synt)},
                {"shuffle_ideal", identity_is_greatest(*synt.monoid)},
                {"shuffle_witness", w},
                {"falsify_bound", options.falsify_bound},
                {"aperiodic", is_aperiodic(*synt.monoid)},
                {"word_measure", {{"horizon", options.horizon}, {"distribution", dist}}}};
  };

  return {{"states", chain.states},
          {"initial", chain.states[options.initial.value_or(0)]},
          {"classes", classes},
          {"ergodic_classes", ergodic},
          {"transient", names(e.transient_states)},
          {"decomposition", decomposition_to_json(chain, d)},
          {"absorption", absorption},
          {"basic", language_report(ColoringMode::Basic)},
          {"reachable", language_report(ColoringMode::Reachable)}};
}

}  // namespace latmon
