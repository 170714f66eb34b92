#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "latmon/automaton.hpp"
#include "latmon/lattice.hpp"
#include "latmon/ordered_monoid.hpp"
#include "latmon/syntactic.hpp"

namespace latmon {

struct VerificationReport {
  enum class Verdict { Pass, Fail, BudgetExhausted };

  std::string check;
  nlohmann::json instance;  // seed, index, sizes
  nlohmann::json input;     // everything needed to replay the check
  Verdict verdict = Verdict::Pass;
  nlohmann::json witness;   // set on Fail

  nlohmann::json to_json() const;
};

std::string_view to_string(VerificationReport::Verdict v);

inline constexpr std::size_t kEnumerationCap = 4;

// All ordered monoids with n elements up to isomorphism, in canonical order.
// Throws SizeCapExceeded above `cap`.
std::vector<OrderedMonoid> enumerate_ordered_monoids(std::size_t n,
                                                     std::size_t cap = kEnumerationCap);

// T must live on the direct product of the syntactic monoids of `languages`.
// Checks ι[m]∘η = ⋁_i ι[m_i]∘π_i∘η for every m, and that T's language equals
// ⋀_m (ι[m]∘η ∨ cons(P(m))).
VerificationReport verify_recog_by_synt(std::span<const LatticeAutomaton> languages,
                                        const RecognitionTriple& t);

// Throws NotARecognizer unless T recognizes A; passes iff M_L divides T's monoid.
VerificationReport verify_syntactic_minimality(const LatticeAutomaton& a,
                                               const RecognitionTriple& t,
                                               const DivisionBudget& budget = {});

// Embeds M into the product of the syntactic monoids of the languages
// ι[m]∘eval over the alphabet M (Boolean-valued), one per element m.
VerificationReport subdirect_embedding(const MonoidPtr& m);

// Fails with a witness word unless T recognizes A.
VerificationReport verify_recognition(const LatticeAutomaton& a, const RecognitionTriple& t);

// {cons(0), cons(1)} over a lattice with at least three elements is not
// closed under lattice morphisms; passes when a constant outside {0, 1} is
// produced.
VerificationReport cons_boolean_regression(const LatticePtr& lattice);

VerificationReport check_lattice_laws(const Lattice& l);
VerificationReport check_ideal_representation(const OpColoring& p);
// Closure of the coloring algebra plus u\(P∘η) = (η(u)\P)∘η, with η the
// first projection of M × N.
VerificationReport check_coloring_closure(const OpColoring& p1, const OpColoring& p2,
                                          const MonoidPtr& other, OrderedMonoid::Element u,
                                          const LatticeMorphism& alpha);
// Join, meet, quotients, inverse morphism and recoloring agree with their
// pointwise definitions on every word up to `max_len`.
VerificationReport check_closure_theorem(const LatticeAutomaton& a, const LatticeAutomaton& b,
                                         const Word& u, const FreeMorphism& h,
                                         const LatticeMorphism& alpha, std::size_t max_len = 5);
VerificationReport check_cut_reconstruction(const LatticeAutomaton& a);
VerificationReport check_ideal_languages(const LatticeAutomaton& a);
VerificationReport check_shuffle_consistency(const LatticeAutomaton& a, std::size_t bound = 8);

// Re-runs a check from a report's serialized input.
VerificationReport replay(const nlohmann::json& report);

// Seeded generator of random instances.
class InstanceGenerator {
 public:
  explicit InstanceGenerator(std::uint64_t seed) : rng_(seed) {}

  std::size_t below(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }

  // Random graded poset repaired to a lattice by rejection.
  LatticePtr lattice(std::size_t max_size);
  // Drawn from enumerated ordered monoids, their products, and syntactic
  // monoids of small automata.
  MonoidPtr monoid(std::size_t max_size);
  OpColoring coloring(const MonoidPtr& m, const LatticePtr& l);
  LatticeMorphism lattice_morphism(const LatticePtr& l);
  LatticeAutomaton automaton(const LatticePtr& l, std::size_t max_states, std::size_t letters);
  // Recognized by a monoid whose identity is its greatest element.
  LatticeAutomaton shuffle_ideal_automaton(const LatticePtr& l, std::size_t letters);
  Word word(std::size_t max_len, std::size_t letters);

 private:
  const std::vector<MonoidPtr>& pool();

  std::mt19937_64 rng_;
  std::vector<MonoidPtr> pool_;
};

struct SuiteSizes {
  std::size_t lattices = 50;
  std::size_t colorings = 200;
  std::size_t ideal_representations = 100;
  std::size_t closure_pairs = 50;
  std::size_t recognizers = 30;
  std::size_t cuts = 30;
  std::size_t ideal_languages = 20;
  std::size_t shuffle = 30;
  std::size_t recog_by_synt = 10;
  bool inject_bad_instance = false;
};

std::vector<VerificationReport> run_suite(std::uint64_t seed, const SuiteSizes& sizes = {});

}  // namespace latmon
