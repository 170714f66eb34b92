#include "latmon/automaton.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

#include "latmon/error.hpp"

namespace latmon {

using State = LatticeAutomaton::State;

namespace {

struct VectorHash {
  std::size_t operator()(const std::vector<State>& v) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (auto x : v) h = (h ^ x) * 0x100000001b3ULL;
    return h;
  }
};

void require_compatible(const LatticeAutomaton& a, const LatticeAutomaton& b) {
  if (a.alphabet() != b.alphabet()) {
    throw Error(ErrorKind::MismatchedAlphabet, "automata use different alphabets",
                {{"left", a.alphabet()}, {"right", b.alphabet()}});
  }
  if (!(a.lattice() == b.lattice())) {
    throw Error(ErrorKind::MismatchedLattice, "automata use different lattices");
  }
}

LatticeAutomaton with_outputs(const LatticeAutomaton& a, std::vector<Lattice::Element> out) {
  return LatticeAutomaton(a.lattice_ptr(), a.alphabet(), a.states(), a.initial(), a.delta(),
                          std::move(out));
}

}  // namespace

LatticeAutomaton::LatticeAutomaton(LatticePtr lattice, std::vector<std::string> alphabet,
                                   std::vector<std::string> states, State initial,
                                   std::vector<State> delta,
                                   std::vector<Lattice::Element> output)
    : lattice_(std::move(lattice)),
      alphabet_(std::move(alphabet)),
      states_(std::move(states)),
      initial_(initial),
      delta_(std::move(delta)),
      output_(std::move(output)) {
  if (states_.empty()) throw Error(ErrorKind::NoInitial, "automaton has no states");
  if (initial_ >= states_.size()) throw Error(ErrorKind::NoInitial, "initial state out of range");
  if (delta_.size() != states_.size() * alphabet_.size()) {
    throw Error(ErrorKind::IncompleteAutomaton, "transition table is not total");
  }
  for (auto t : delta_)
    if (t >= states_.size()) throw Error(ErrorKind::IncompleteAutomaton, "transition target out of range");
  if (output_.size() != states_.size()) {
    throw Error(ErrorKind::IncompleteAutomaton, "output is not total");
  }
  for (auto o : output_)
    if (o >= lattice_->size()) throw Error(ErrorKind::UnknownElement, "output out of range", o);
}

State LatticeAutomaton::run(State s, std::span<const std::size_t> word) const {
  for (auto letter : word) {
    if (letter >= num_letters()) throw Error(ErrorKind::UnknownLetter, "letter out of range", letter);
    s = next(s, letter);
  }
  return s;
}

std::size_t LatticeAutomaton::letter_index(std::string_view letter) const {
  auto it = std::find(alphabet_.begin(), alphabet_.end(), letter);
  if (it == alphabet_.end()) {
    throw Error(ErrorKind::UnknownLetter, "unknown letter '" + std::string(letter) + "'",
                std::string(letter));
  }
  return static_cast<std::size_t>(it - alphabet_.begin());
}

State LatticeAutomaton::state_index(std::string_view state) const {
  auto it = std::find(states_.begin(), states_.end(), state);
  if (it == states_.end()) {
    throw Error(ErrorKind::UnknownElement, "unknown state '" + std::string(state) + "'",
                std::string(state));
  }
  return static_cast<State>(it - states_.begin());
}

Word parse_word(std::span<const std::string> alphabet, std::span<const std::string> letters) {
  Word w;
  for (const auto& l : letters) {
    auto it = std::find(alphabet.begin(), alphabet.end(), l);
    if (it == alphabet.end()) {
      throw Error(ErrorKind::UnknownLetter, "unknown letter '" + l + "'", l);
    }
    w.push_back(static_cast<std::size_t>(it - alphabet.begin()));
  }
  return w;
}

Word parse_word(std::span<const std::string> alphabet, std::string_view text) {
  const bool single = std::all_of(alphabet.begin(), alphabet.end(),
                                  [](const std::string& s) { return s.size() == 1; });
  std::vector<std::string> letters;
  if (single) {
    for (char c : text) letters.emplace_back(1, c);
  } else {
    std::size_t pos = 0;
    while (pos < text.size()) {
      const auto end = std::min(text.find(' ', pos), text.size());
      if (end > pos) letters.emplace_back(text.substr(pos, end - pos));
      pos = end + 1;
    }
  }
  return parse_word(alphabet, std::span<const std::string>(letters));
}

std::string format_word(std::span<const std::string> alphabet, std::span<const std::size_t> word) {
  const bool single = std::all_of(alphabet.begin(), alphabet.end(),
                                  [](const std::string& s) { return s.size() == 1; });
  std::string out;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (!single && i) out += ' ';
    out += alphabet[word[i]];
  }
  return out;
}

Word FreeMorphism::apply(std::span<const std::size_t> word) const {
  Word out;
  for (auto letter : word) {
    if (letter >= images.size()) throw Error(ErrorKind::UnknownLetter, "letter out of range", letter);
    out.insert(out.end(), images[letter].begin(), images[letter].end());
  }
  return out;
}

Lattice::Element evaluate(const LatticeAutomaton& a, std::span<const std::size_t> word) {
  return a.output(a.run(a.initial(), word));
}

LatticeAutomaton product_combine(CombineKind kind, const LatticeAutomaton& a,
                                 const LatticeAutomaton& b) {
  require_compatible(a, b);
  const Lattice& l = a.lattice();
  const std::size_t k = a.num_letters();
  // Only pairs reachable from the initial pair are materialised.
  std::map<std::pair<State, State>, State> index;
  std::vector<std::pair<State, State>> pairs{{a.initial(), b.initial()}};
  index[pairs[0]] = 0;
  std::vector<State> delta;
  for (std::size_t head = 0; head < pairs.size(); ++head) {
    const auto [p, q] = pairs[head];
    for (std::size_t c = 0; c < k; ++c) {
      std::pair<State, State> succ{a.next(p, c), b.next(q, c)};
      auto [it, inserted] = index.emplace(succ, pairs.size());
      if (inserted) pairs.push_back(succ);
      delta.push_back(it->second);
    }
  }
  std::vector<std::string> names;
  std::vector<Lattice::Element> out;
  for (const auto& [p, q] : pairs) {
    names.push_back("(" + a.states()[p] + "," + b.states()[q] + ")");
    out.push_back(kind == CombineKind::Join ? l.join(a.output(p), b.output(q))
                                            : l.meet(a.output(p), b.output(q)));
  }
  return LatticeAutomaton(a.lattice_ptr(), a.alphabet(), std::move(names), 0, std::move(delta),
                          std::move(out));
}

LatticeAutomaton quotient(Side side, const LatticeAutomaton& a,
                          std::span<const std::size_t> u) {
  if (side == Side::Left) {
    const State start = a.run(a.initial(), u);
    return LatticeAutomaton(a.lattice_ptr(), a.alphabet(), a.states(), start, a.delta(),
                            a.outputs());
  }
  std::vector<Lattice::Element> out(a.num_states());
  for (State s = 0; s < a.num_states(); ++s) out[s] = a.output(a.run(s, u));
  return with_outputs(a, std::move(out));
}

LatticeAutomaton inverse_hom(const LatticeAutomaton& a, const FreeMorphism& h) {
  if (h.target_alphabet != a.alphabet()) {
    throw Error(ErrorKind::MismatchedAlphabet,
                "morphism target alphabet differs from the automaton alphabet");
  }
  if (h.images.size() != h.source_alphabet.size()) {
    throw Error(ErrorKind::MismatchedAlphabet, "morphism must give an image for every letter");
  }
  const std::size_t k = h.source_alphabet.size();
  std::vector<State> delta(a.num_states() * k);
  for (State s = 0; s < a.num_states(); ++s)
    for (std::size_t c = 0; c < k; ++c) delta[s * k + c] = a.run(s, h.images[c]);
  return LatticeAutomaton(a.lattice_ptr(), h.source_alphabet, a.states(), a.initial(),
                          std::move(delta), a.outputs());
}

LatticeAutomaton recolor(const LatticeAutomaton& a, const LatticeMorphism& alpha) {
  if (!(alpha.lattice() == a.lattice())) {
    throw Error(ErrorKind::MismatchedLattice, "lattice morphism acts on a different lattice");
  }
  std::vector<Lattice::Element> out(a.num_states());
  for (State s = 0; s < a.num_states(); ++s) out[s] = alpha(a.output(s));
  return with_outputs(a, std::move(out));
}

LatticeAutomaton cut(const LatticeAutomaton& a, Lattice::Element lambda) {
  if (lambda >= a.lattice().size()) {
    throw Error(ErrorKind::UnknownElement, "cut value out of range", lambda);
  }
  return recolor(a, LatticeMorphism::threshold(a.lattice_ptr(), lambda));
}

LatticeAutomaton constant_automaton(LatticePtr lattice, std::vector<std::string> alphabet,
                                    Lattice::Element value) {
  std::vector<State> delta(alphabet.size(), 0);
  return LatticeAutomaton(std::move(lattice), std::move(alphabet), {"q0"}, 0, std::move(delta),
                          {value});
}

LatticeAutomaton trim(const LatticeAutomaton& a) {
  const std::size_t k = a.num_letters();
  constexpr State kUnset = static_cast<State>(-1);
  std::vector<State> local(a.num_states(), kUnset);
  std::vector<State> order{a.initial()};
  local[a.initial()] = 0;
  for (std::size_t head = 0; head < order.size(); ++head)
    for (std::size_t c = 0; c < k; ++c) {
      const State t = a.next(order[head], c);
      if (local[t] == kUnset) {
        local[t] = order.size();
        order.push_back(t);
      }
    }
  std::vector<std::string> names;
  std::vector<State> delta;
  std::vector<Lattice::Element> out;
  for (State s : order) {
    names.push_back(a.states()[s]);
    out.push_back(a.output(s));
    for (std::size_t c = 0; c < k; ++c) delta.push_back(local[a.next(s, c)]);
  }
  return LatticeAutomaton(a.lattice_ptr(), a.alphabet(), std::move(names), 0, std::move(delta),
                          std::move(out));
}

LatticeAutomaton minimize(const LatticeAutomaton& input) {
  const LatticeAutomaton a = trim(input);
  const std::size_t n = a.num_states();
  const std::size_t k = a.num_letters();
  // Moore refinement: blocks start as output classes, then split by the
  // blocks of successors until nothing changes.
  std::vector<std::size_t> block(n);
  {
    std::map<Lattice::Element, std::size_t> ids;
    for (State s = 0; s < n; ++s) block[s] = ids.emplace(a.output(s), ids.size()).first->second;
  }
  for (;;) {
    std::map<std::vector<std::size_t>, std::size_t> ids;
    std::vector<std::size_t> refined(n);
    for (State s = 0; s < n; ++s) {
      std::vector<std::size_t> sig{block[s]};
      for (std::size_t c = 0; c < k; ++c) sig.push_back(block[a.next(s, c)]);
      refined[s] = ids.emplace(std::move(sig), ids.size()).first->second;
    }
    const bool stable =
        ids.size() == std::set<std::size_t>(block.begin(), block.end()).size();
    block = std::move(refined);
    if (stable) break;
  }
  // Number blocks in BFS order from the initial state (trim order already is).
  std::map<std::size_t, State> renumber;
  std::vector<std::vector<std::string>> members;
  for (State s = 0; s < n; ++s) {
    auto [it, inserted] = renumber.emplace(block[s], members.size());
    if (inserted) members.emplace_back();
    members[it->second].push_back(a.states()[s]);
  }
  const std::size_t m = members.size();
  std::vector<State> delta(m * k);
  std::vector<Lattice::Element> out(m);
  std::vector<std::string> names(m);
  for (State s = 0; s < n; ++s) {
    const State b = renumber[block[s]];
    out[b] = a.output(s);
    for (std::size_t c = 0; c < k; ++c) delta[b * k + c] = renumber[block[a.next(s, c)]];
  }
  for (State b = 0; b < m; ++b) {
    if (members[b].size() == 1) {
      names[b] = members[b][0];
      continue;
    }
    std::string name = "{";
    for (std::size_t i = 0; i < members[b].size(); ++i) {
      if (i) name += ',';
      name += members[b][i];
    }
    names[b] = name + "}";
  }
  return LatticeAutomaton(a.lattice_ptr(), a.alphabet(), std::move(names),
                          renumber[block[a.initial()]], std::move(delta), std::move(out));
}

LatticeAutomaton relabel(const LatticeAutomaton& a) {
  std::vector<std::string> names;
  for (State s = 0; s < a.num_states(); ++s) names.push_back("q" + std::to_string(s));
  return LatticeAutomaton(a.lattice_ptr(), a.alphabet(), std::move(names), a.initial(), a.delta(),
                          a.outputs());
}

std::optional<Word> find_difference(const LatticeAutomaton& a, const LatticeAutomaton& b) {
  require_compatible(a, b);
  const std::size_t k = a.num_letters();
  struct Node {
    State p, q;
    std::size_t parent;
    std::size_t letter;
  };
  std::vector<Node> nodes{{a.initial(), b.initial(), 0, 0}};
  std::map<std::pair<State, State>, std::size_t> seen{{{a.initial(), b.initial()}, 0}};
  for (std::size_t head = 0; head < nodes.size(); ++head) {
    const Node node = nodes[head];
    if (a.output(node.p) != b.output(node.q)) {
      Word w;
      for (std::size_t i = head; i != 0; i = nodes[i].parent) w.push_back(nodes[i].letter);
      std::reverse(w.begin(), w.end());
      return w;
    }
    for (std::size_t c = 0; c < k; ++c) {
      const std::pair<State, State> succ{a.next(node.p, c), b.next(node.q, c)};
      if (seen.emplace(succ, nodes.size()).second) {
        nodes.push_back({succ.first, succ.second, head, c});
      }
    }
  }
  return std::nullopt;
}

bool equivalent(const LatticeAutomaton& a, const LatticeAutomaton& b) {
  return !find_difference(a, b).has_value();
}

TransitionMonoid transition_monoid(const LatticeAutomaton& input, std::size_t size_cap) {
  const LatticeAutomaton a = trim(input);
  const std::size_t n = a.num_states();
  const std::size_t k = a.num_letters();
  TransitionMonoid out;
  out.states = a.states();

  std::unordered_map<std::vector<State>, std::size_t, VectorHash> index;
  std::vector<State> id(n);
  for (State s = 0; s < n; ++s) id[s] = s;
  index.emplace(id, 0);
  out.maps.push_back(id);
  out.words.emplace_back();
  // right[x * k + c] = x · letter c, filled during BFS.
  std::vector<std::size_t> right;
  for (std::size_t head = 0; head < out.maps.size(); ++head) {
    for (std::size_t c = 0; c < k; ++c) {
      std::vector<State> next(n);
      for (State s = 0; s < n; ++s) next[s] = a.next(out.maps[head][s], c);
      auto [it, inserted] = index.emplace(next, out.maps.size());
      if (inserted) {
        if (out.maps.size() >= size_cap) {
          throw Error(ErrorKind::SizeCapExceeded,
                      "transition monoid exceeds " + std::to_string(size_cap) + " elements",
                      size_cap);
        }
        out.maps.push_back(std::move(next));
        Word w = out.words[head];
        w.push_back(c);
        out.words.push_back(std::move(w));
      }
      right.push_back(it->second);
    }
  }
  const std::size_t size = out.maps.size();
  for (std::size_t c = 0; c < k; ++c) out.generator_images.push_back(right[c]);
  // x · y follows y's word through the right Cayley graph from x.
  std::vector<OrderedMonoid::Element> mul(size * size);
  for (std::size_t x = 0; x < size; ++x)
    for (std::size_t y = 0; y < size; ++y) {
      std::size_t z = x;
      for (auto c : out.words[y]) z = right[z * k + c];
      mul[x * size + y] = z;
    }
  std::vector<char> leq(size * size, 0);
  std::vector<std::string> names(size);
  for (std::size_t x = 0; x < size; ++x) {
    leq[x * size + x] = 1;
    names[x] = out.words[x].empty() ? "1" : "[" + format_word(a.alphabet(), out.words[x]) + "]";
  }
  out.monoid = std::make_shared<const OrderedMonoid>(
      OrderedMonoid::trusted(std::move(names), 0, std::move(mul), std::move(leq)));
  return out;
}

}  // namespace latmon
