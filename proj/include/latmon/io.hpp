#pragma once

#include <string>

#include "json.hpp"
#include "latmon/automaton.hpp"
#include "latmon/lattice.hpp"
#include "latmon/ordered_monoid.hpp"
#include "latmon/syntactic.hpp"

// JSON formats. Every loader throws Error(ParseError, ...) on malformed input
// and forwards the validation errors of the underlying constructors.
namespace latmon::io {

using nlohmann::json;

json read_json_file(const std::string& path);

// {"elements":[...], "cover":[[lo,hi],...]},
// {"elements":[...], "leq":[[a,b],...], "relation":"full"}, or
// {"standard":"powerset"|"chain"|"boolean", "n":k}.
// Set-valued names may be given as arrays: ["1","2"] is the element "{1,2}".
Lattice lattice_from_json(const json& j);
// Canonical: element list plus the full order, pairs sorted lexicographically.
json lattice_to_json(const Lattice& l);

json element_to_json(const Lattice& l, Lattice::Element e);
Lattice::Element element_from_json(const Lattice& l, const json& j);

LatticeMorphism lattice_morphism_from_json(const LatticePtr& l, const json& j);
json lattice_morphism_to_json(const LatticeMorphism& m);

// {"elements":[...], "identity":name, "mul":[[name...]...], "leq":[[a,b],...]}
OrderedMonoid monoid_from_json(const json& j);
json monoid_to_json(const OrderedMonoid& m);

// {"monoid":{...}, "lattice":{...}, "colors":{element: latticeElement}}
OpColoring coloring_from_json(const json& j);
json coloring_to_json(const OpColoring& c);

// {"lattice":..., "alphabet":[...], "states":[...], "initial":s,
//  "delta":{state:{letter:state}}, "output":{state:latticeElement}}
LatticeAutomaton automaton_from_json(const json& j);
json automaton_to_json(const LatticeAutomaton& a);

// {"images":{letter:"word" | [letters]}, "alphabet":[source letters]?}
FreeMorphism free_morphism_from_json(const json& j,
                                     const std::vector<std::string>& target_alphabet);
json free_morphism_to_json(const FreeMorphism& h);

// {"alphabet":[...], "images":{letter:element}, "monoid":{...}, "lattice":{...},
//  "colors":{element:latticeElement}}
RecognitionTriple triple_from_json(const json& j);
json triple_to_json(const RecognitionTriple& t);

Word word_from_json(const std::vector<std::string>& alphabet, const json& j);
json word_to_json(const std::vector<std::string>& alphabet, const Word& w);

json syntactic_to_json(const SyntacticResult& s);

}  // namespace latmon::io
