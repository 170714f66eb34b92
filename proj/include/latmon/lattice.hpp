#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace latmon {

// Finite lattice stored as an order matrix plus precomputed join/meet tables.
// Elements are identified by position; names are only for presentation.
class Lattice {
 public:
  using Element = std::size_t;

  static constexpr std::size_t kDefaultSizeCap = 64;

  enum class Input { Covers, FullRelation };

  // Builds from Hasse covers (or an arbitrary relation, closed reflexively
  // and transitively). Throws NotAntisymmetric, NotALattice, TrivialLattice,
  // UnknownElement or SizeCapExceeded.
  static Lattice build(std::vector<std::string> names,
                       std::span<const std::pair<std::string, std::string>> pairs,
                       Input input = Input::Covers,
                       std::size_t size_cap = kDefaultSizeCap);

  static Lattice from_index_pairs(std::vector<std::string> names,
                                  std::span<const std::pair<Element, Element>> pairs,
                                  Input input = Input::Covers,
                                  std::size_t size_cap = kDefaultSizeCap);

  std::size_t size() const noexcept { return names_.size(); }
  const std::string& name(Element e) const { return names_.at(e); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  Element index(std::string_view name) const;  // throws UnknownElement

  bool leq(Element a, Element b) const { return leq_[a * size() + b] != 0; }
  Element join(Element a, Element b) const { return join_[a * size() + b]; }
  Element meet(Element a, Element b) const { return meet_[a * size() + b]; }
  Element top() const noexcept { return top_; }
  Element bottom() const noexcept { return bottom_; }

  // Order-reversed lattice: tables swapped, top and bottom swapped.
  Lattice dual() const;

  // Sorted list of all (a, b) with a <= b.
  std::vector<std::pair<Element, Element>> relation() const;

  friend bool operator==(const Lattice& x, const Lattice& y) {
    return x.names_ == y.names_ && x.leq_ == y.leq_;
  }

 private:
  Lattice() = default;

  std::vector<std::string> names_;
  std::vector<char> leq_;
  std::vector<Element> join_;
  std::vector<Element> meet_;
  Element top_ = 0;
  Element bottom_ = 0;
};

using LatticePtr = std::shared_ptr<const Lattice>;

enum class StandardLattice { Powerset, Chain, Boolean };

// powerset(n): elements named "{}", "{1}", "{1,2}", ... indexed by bitmask.
// chain(n): "0" < "1" < ... < "n-1". boolean: chain(2).
Lattice standard_lattice(StandardLattice kind, std::size_t n);

enum class BoundKind { Join, Meet };

// Join of the empty set is bottom, meet of the empty set is top.
Lattice::Element bound(const Lattice& lattice, BoundKind kind,
                       std::span<const Lattice::Element> subset);

// Order-preserving self-map of a lattice.
class LatticeMorphism {
 public:
  // Throws NotOrderPreserving with the witness pair, or UnknownElement.
  LatticeMorphism(LatticePtr lattice, std::vector<Lattice::Element> mapping);

  static LatticeMorphism identity(LatticePtr lattice);
  static LatticeMorphism constant(LatticePtr lattice, Lattice::Element value);
  // 0 on the down-set of `threshold`, 1 elsewhere.
  static LatticeMorphism threshold(LatticePtr lattice, Lattice::Element threshold);

  const Lattice& lattice() const noexcept { return *lattice_; }
  const LatticePtr& lattice_ptr() const noexcept { return lattice_; }
  const std::vector<Lattice::Element>& mapping() const noexcept { return mapping_; }
  Lattice::Element operator()(Lattice::Element e) const { return mapping_.at(e); }

  // (after ∘ before)(x) = after(before(x)).
  friend LatticeMorphism compose(const LatticeMorphism& after,
                                 const LatticeMorphism& before);

 private:
  LatticePtr lattice_;
  std::vector<Lattice::Element> mapping_;
};

}  // namespace latmon
