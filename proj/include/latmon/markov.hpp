#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "json.hpp"
#include "latmon/automaton.hpp"

namespace latmon {

using Rational = boost::multiprecision::cpp_rational;

// "p/q" or "p", reduced. Throws BadFraction.
Rational parse_rational(std::string_view text);
std::string format_rational(const Rational& r);

struct MarkovChain {
  std::vector<std::string> states;
  std::vector<std::vector<Rational>> matrix;  // matrix[s][t] = Π(s, t)

  std::size_t size() const noexcept { return states.size(); }
  std::size_t state_index(std::string_view name) const;
};

// Checks entries in [0, 1] and exact unit row sums.
void validate_chain(const MarkovChain& chain);

// {"states":[...], "rows":{s:{t:"p/q"}}}; omitted entries are 0.
MarkovChain load_chain(std::string_view text);
MarkovChain chain_from_json(const nlohmann::json& j);
nlohmann::json chain_to_json(const MarkovChain& chain);

struct ErgodicStructure {
  // Communicating classes ordered by their smallest state index.
  std::vector<std::vector<std::size_t>> classes;
  std::vector<bool> ergodic;
  std::vector<std::size_t> class_of;  // per state
  std::vector<std::size_t> transient_states;
  // class_dag[i] lists classes j != i directly reachable from i.
  std::vector<std::vector<std::size_t>> class_dag;

  // Indices into `classes` of the ergodic ones, in order; these are C_1..C_k.
  std::vector<std::size_t> ergodic_classes() const;
};

ErgodicStructure ergodic_structure(const MarkovChain& chain);

struct DecompositionLetter {
  std::string name;
  std::vector<std::size_t> map;  // state -> state
  Rational weight;
};

struct Decomposition {
  std::vector<DecompositionLetter> letters;
};

// Greedy: each round takes the largest residual per row (ties to the lowest
// column), weights the letter by the smallest of those residuals.
Decomposition decompose(const MarkovChain& chain);

// Throws BadDecomposition with the offending entry unless the weights are
// positive, sum to 1, and reproduce Π exactly.
void validate_decomposition(const MarkovChain& chain, const Decomposition& d);

Decomposition decomposition_from_json(const MarkovChain& chain, const nlohmann::json& j);
nlohmann::json decomposition_to_json(const MarkovChain& chain, const Decomposition& d);

enum class ColoringMode { Basic, Reachable };

// Lattice is the powerset of ergodic class indices. Basic colors C_i with {i}
// and everything else with the top; reachable colors each state with the set
// of ergodic classes reachable from it.
LatticeAutomaton simulating_automaton(const MarkovChain& chain, const Decomposition& d,
                                      ColoringMode mode,
                                      std::optional<std::size_t> initial = std::nullopt);

// table[i][s] = probability of absorption into the i-th ergodic class from s.
std::vector<std::vector<Rational>> absorption_probabilities(const MarkovChain& chain);

// Exact distribution of L(w) over lattice elements for random words of
// length n with letters drawn by weight.
std::vector<Rational> word_measure(const LatticeAutomaton& a, const Decomposition& d,
                                   std::size_t n);

struct AnalyzeOptions {
  std::optional<std::size_t> initial;
  std::optional<Decomposition> decomposition;
  std::size_t falsify_bound = 6;
  std::size_t horizon = 16;
};

nlohmann::json analyze(const MarkovChain& chain, const AnalyzeOptions& options = {});

}  // namespace latmon
