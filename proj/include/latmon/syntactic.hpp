#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "latmon/automaton.hpp"
#include "latmon/ordered_monoid.hpp"

namespace latmon {

// (η, M, P) with η determined by letter images; recognizes w ↦ P(η(w)).
struct RecognitionTriple {
  std::vector<std::string> alphabet;
  std::vector<OrderedMonoid::Element> generator_images;
  MonoidPtr monoid;
  OpColoring coloring;

  OrderedMonoid::Element image(std::span<const std::size_t> word) const;
};

// Right-regular representation: states are monoid elements, q0 = 1,
// δ(m, a) = m·η(a), outputs given by the coloring.
LatticeAutomaton triple_to_automaton(const RecognitionTriple& t);

bool recognizes(const RecognitionTriple& t, const LatticeAutomaton& a);

struct SyntacticResult {
  MonoidPtr monoid;
  std::vector<OrderedMonoid::Element> morphism;  // letter -> element
  OpColoring coloring;
  std::vector<Word> witnesses;  // shortlex-least word per element
  std::vector<std::string> alphabet;

  OrderedMonoid::Element image(std::span<const std::size_t> word) const;
  RecognitionTriple triple() const;
};

// Greatest relation s ⪯ t with F(s) <= F(t) and δ(s,a) ⪯ δ(t,a) for all a,
// as a row-major matrix over the states of `a` (not trimmed).
std::vector<char> state_preorder(const LatticeAutomaton& a);

SyntacticResult syntactic(const LatticeAutomaton& a,
                          std::size_t size_cap = kDefaultTransitionMonoidCap);

struct CutReconstruction {
  RecognitionTriple triple;
  bool equal;
  // Set when the full product exceeded the cap and the triple lives on the
  // submonoid of the product generated by the letter images.
  bool restricted_to_image;
};

CutReconstruction reconstruct_from_cuts(const LatticeAutomaton& a,
                                        std::size_t product_cap = kDefaultProductCap);

bool is_shuffle_ideal(const LatticeAutomaton& a);

// (w, v) with w a subword of v and L(v) not below L(w).
struct ShuffleWitness {
  Word subword;
  Word word;
};

// Searches v in length-lexicographic order up to max_len; for each v the
// subwords are tried by descending length, then ascending position mask.
std::optional<ShuffleWitness> shuffle_ideal_falsify(const LatticeAutomaton& a,
                                                    std::size_t max_len);

struct IdealLanguage {
  LatticeAutomaton automaton;
  bool equal;
};

// Expresses ι[m]∘η_L through quotients, Λ-morphisms and joins of L.
IdealLanguage ideal_language_construction(const LatticeAutomaton& a,
                                          const SyntacticResult& synt,
                                          OrderedMonoid::Element m);

}  // namespace latmon
