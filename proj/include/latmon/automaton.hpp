#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "latmon/lattice.hpp"
#include "latmon/ordered_monoid.hpp"

namespace latmon {

// Letters are indices into an alphabet.
using Word = std::vector<std::size_t>;

// Complete deterministic Moore machine with lattice-valued outputs. The
// language it represents is w ↦ output(δ*(initial, w)).
class LatticeAutomaton {
 public:
  using State = std::size_t;

  // `delta` is row-major: delta[state * alphabet.size() + letter].
  LatticeAutomaton(LatticePtr lattice, std::vector<std::string> alphabet,
                   std::vector<std::string> states, State initial, std::vector<State> delta,
                   std::vector<Lattice::Element> output);

  const Lattice& lattice() const noexcept { return *lattice_; }
  const LatticePtr& lattice_ptr() const noexcept { return lattice_; }
  const std::vector<std::string>& alphabet() const noexcept { return alphabet_; }
  const std::vector<std::string>& states() const noexcept { return states_; }
  std::size_t num_states() const noexcept { return states_.size(); }
  std::size_t num_letters() const noexcept { return alphabet_.size(); }
  State initial() const noexcept { return initial_; }
  State next(State s, std::size_t letter) const { return delta_[s * num_letters() + letter]; }
  State run(State s, std::span<const std::size_t> word) const;
  Lattice::Element output(State s) const { return output_[s]; }
  const std::vector<State>& delta() const noexcept { return delta_; }
  const std::vector<Lattice::Element>& outputs() const noexcept { return output_; }

  std::size_t letter_index(std::string_view letter) const;  // throws UnknownLetter
  State state_index(std::string_view state) const;          // throws UnknownElement

 private:
  LatticePtr lattice_;
  std::vector<std::string> alphabet_;
  std::vector<std::string> states_;
  State initial_;
  std::vector<State> delta_;
  std::vector<Lattice::Element> output_;
};

// Parses a word: single-character letters are read character by character;
// otherwise letters are separated by spaces. Throws UnknownLetter.
Word parse_word(std::span<const std::string> alphabet, std::string_view text);
Word parse_word(std::span<const std::string> alphabet, std::span<const std::string> letters);
std::string format_word(std::span<const std::string> alphabet, std::span<const std::size_t> word);

// Letter-indexed images, h: (source alphabet)* -> (target alphabet)*.
struct FreeMorphism {
  std::vector<std::string> source_alphabet;
  std::vector<std::string> target_alphabet;
  std::vector<Word> images;

  Word apply(std::span<const std::size_t> word) const;
};

Lattice::Element evaluate(const LatticeAutomaton& a, std::span<const std::size_t> word);


LatticeAutomaton product_combine(CombineKind kind, const LatticeAutomaton& a,
                                 const LatticeAutomaton& b);
// Left: (u\L)(x) = L(ux). Right: (L/u)(x) = L(xu).
LatticeAutomaton quotient(Side side, const LatticeAutomaton& a,
                          std::span<const std::size_t> u);
LatticeAutomaton inverse_hom(const LatticeAutomaton& a, const FreeMorphism& h);
LatticeAutomaton recolor(const LatticeAutomaton& a, const LatticeMorphism& alpha);
// Output 𝟘 where F(q) <= λ and 𝟙 elsewhere.
LatticeAutomaton cut(const LatticeAutomaton& a, Lattice::Element lambda);
// Language with the constant value everywhere, over `alphabet`.
LatticeAutomaton constant_automaton(LatticePtr lattice, std::vector<std::string> alphabet,
                                    Lattice::Element value);

LatticeAutomaton trim(const LatticeAutomaton& a);
LatticeAutomaton minimize(const LatticeAutomaton& a);
// Same automaton with states renamed q0, q1, ...; keeps names from nesting
// when products and minimizations are iterated.
LatticeAutomaton relabel(const LatticeAutomaton& a);

// First word (in BFS order of the synchronous product) on which the two
// languages differ, or nullopt when they are equal.
std::optional<Word> find_difference(const LatticeAutomaton& a, const LatticeAutomaton& b);
bool equivalent(const LatticeAutomaton& a, const LatticeAutomaton& b);

// Transition monoid, state maps composed left to right (m1·m2 applies m1
// first), ordered by equality.
struct TransitionMonoid {
  MonoidPtr monoid;
  std::vector<std::string> states;  // reachable states the maps act on
  std::vector<OrderedMonoid::Element> generator_images;  // per letter
  std::vector<std::vector<LatticeAutomaton::State>> maps;
  std::vector<Word> words;  // shortlex-least word per element
};

inline constexpr std::size_t kDefaultTransitionMonoidCap = 10'000;

// Unreachable states are dropped before the maps are built.
TransitionMonoid transition_monoid(const LatticeAutomaton& a,
                                   std::size_t size_cap = kDefaultTransitionMonoidCap);

}  // namespace latmon
