#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "latmon/lattice.hpp"

namespace latmon {

// Finite monoid with a multiplication table and a compatible partial order.
class OrderedMonoid {
 public:
  using Element = std::size_t;

  // Validates associativity, the unit laws, the partial order (after
  // reflexive-transitive closure of `leq_pairs`) and compatibility of the
  // order with left and right translations.
  static OrderedMonoid build(std::vector<std::string> names, Element identity,
                             std::vector<Element> mul,
                             std::span<const std::pair<Element, Element>> leq_pairs);

  // For constructions that are correct by design (products, submonoids,
  // transition and syntactic monoids). `leq` must already be a partial order
  // stored as a full n*n matrix. Call validate() to check anyway.
  static OrderedMonoid trusted(std::vector<std::string> names, Element identity,
                               std::vector<Element> mul, std::vector<char> leq);

  void validate() const;

  std::size_t size() const noexcept { return names_.size(); }
  Element identity() const noexcept { return identity_; }
  Element mul(Element x, Element y) const { return mul_[x * size() + y]; }
  bool leq(Element x, Element y) const { return leq_[x * size() + y] != 0; }
  const std::string& name(Element e) const { return names_.at(e); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  Element index(std::string_view name) const;  // throws UnknownElement

  const std::vector<Element>& mul_table() const noexcept { return mul_; }
  const std::vector<char>& leq_matrix() const noexcept { return leq_; }

  friend bool operator==(const OrderedMonoid& a, const OrderedMonoid& b) {
    return a.identity_ == b.identity_ && a.mul_ == b.mul_ && a.leq_ == b.leq_;
  }

 private:
  OrderedMonoid() = default;

  std::vector<std::string> names_;
  Element identity_ = 0;
  std::vector<Element> mul_;
  std::vector<char> leq_;
};

using MonoidPtr = std::shared_ptr<const OrderedMonoid>;

// Order-preserving monoid morphism.
class MonoidMorphism {
 public:
  MonoidMorphism(MonoidPtr source, MonoidPtr target,
                 std::vector<OrderedMonoid::Element> mapping);

  static MonoidMorphism identity(MonoidPtr monoid);

  const MonoidPtr& source() const noexcept { return source_; }
  const MonoidPtr& target() const noexcept { return target_; }
  const std::vector<OrderedMonoid::Element>& mapping() const noexcept {
    return mapping_;
  }
  OrderedMonoid::Element operator()(OrderedMonoid::Element x) const {
    return mapping_.at(x);
  }

 private:
  MonoidPtr source_;
  MonoidPtr target_;
  std::vector<OrderedMonoid::Element> mapping_;
};

// Order-preserving map from an ordered monoid into a lattice.
class OpColoring {
 public:
  OpColoring(MonoidPtr monoid, LatticePtr lattice, std::vector<Lattice::Element> colors);

  const OrderedMonoid& monoid() const noexcept { return *monoid_; }
  const MonoidPtr& monoid_ptr() const noexcept { return monoid_; }
  const Lattice& lattice() const noexcept { return *lattice_; }
  const LatticePtr& lattice_ptr() const noexcept { return lattice_; }
  const std::vector<Lattice::Element>& colors() const noexcept { return colors_; }
  Lattice::Element operator()(OrderedMonoid::Element x) const { return colors_.at(x); }

  friend bool operator==(const OpColoring& a, const OpColoring& b) {
    return a.colors_ == b.colors_ && *a.monoid_ == *b.monoid_ &&
           *a.lattice_ == *b.lattice_;
  }

 private:
  MonoidPtr monoid_;
  LatticePtr lattice_;
  std::vector<Lattice::Element> colors_;
};

// ---------------------------------------------------------------------------
// Constructions on monoids

struct DirectProduct {
  MonoidPtr product;
  std::vector<MonoidMorphism> projections;
  // Mixed-radix layout: last factor varies fastest.
  std::vector<std::size_t> radices;

  OrderedMonoid::Element encode(std::span<const OrderedMonoid::Element> coords) const;
  std::vector<OrderedMonoid::Element> decode(OrderedMonoid::Element e) const;
};

inline constexpr std::size_t kDefaultProductCap = 4096;

DirectProduct direct_product(std::span<const MonoidPtr> factors,
                             std::size_t size_cap = kDefaultProductCap);

struct Submonoid {
  MonoidPtr monoid;
  MonoidMorphism embedding;
  // Carrier in the ambient monoid, sorted ascending.
  std::vector<OrderedMonoid::Element> carrier;
};

Submonoid generated_submonoid(const MonoidPtr& ambient,
                              std::span<const OrderedMonoid::Element> generators);

// Closure of generators ∪ {1} under multiplication, sorted ascending.
std::vector<OrderedMonoid::Element> submonoid_carrier(
    const OrderedMonoid& m, std::span<const OrderedMonoid::Element> generators);

bool is_aperiodic(const OrderedMonoid& m);
bool identity_is_greatest(const OrderedMonoid& m);

// Returns the mapping of an ordered-monoid isomorphism a -> b if one exists.
std::optional<std::vector<OrderedMonoid::Element>> find_isomorphism(
    const OrderedMonoid& a, const OrderedMonoid& b);

// ---------------------------------------------------------------------------
// Division

struct DivisionBudget {
  std::size_t max_generator_subsets = std::size_t{1} << 10;
  std::size_t max_search_nodes = 2'000'000;
};

struct DivisionVerdict {
  enum class Kind { Yes, No, BudgetExhausted };
  Kind kind = Kind::No;
  // On Yes: generators (in the divided-into monoid) of the submonoid N, N's
  // carrier, and the surjective order-preserving morphism N -> divisor, as
  // pairs (element of N, image).
  std::vector<OrderedMonoid::Element> generators;
  std::vector<std::pair<OrderedMonoid::Element, OrderedMonoid::Element>> mapping;
};

// Does `divisor` divide `monoid`, i.e. is it a quotient of a submonoid?
DivisionVerdict divides(const OrderedMonoid& divisor, const OrderedMonoid& monoid,
                        const DivisionBudget& budget = {});

// ---------------------------------------------------------------------------
// Coloring algebra

enum class CombineKind { Join, Meet };
enum class Side { Left, Right };

OpColoring constant_coloring(MonoidPtr monoid, LatticePtr lattice, Lattice::Element value);
OpColoring combine_colorings(CombineKind kind, const OpColoring& a, const OpColoring& b);

struct ProductColoring {
  DirectProduct product;
  OpColoring coloring;
};
// Product join: (⊕P_i)(m) = ⋁ P_i(m_i); product meet with ⋀.
ProductColoring product_coloring(CombineKind kind, std::span<const OpColoring> colorings,
                                 std::size_t size_cap = kDefaultProductCap);

// Left: x ↦ P(u·x). Right: x ↦ P(x·u).
OpColoring quotient_coloring(Side side, const OpColoring& p, OrderedMonoid::Element u);
// x ↦ P(h(x)) on h's source.
OpColoring precompose(const OpColoring& p, const MonoidMorphism& h);
// x ↦ α(P(x)).
OpColoring postcompose(const LatticeMorphism& alpha, const OpColoring& p);

// ι[m](x) = bottom if x <= m, top otherwise.
OpColoring ideal_coloring(MonoidPtr monoid, OrderedMonoid::Element m, LatticePtr lattice);

struct IdealReconstruction {
  OpColoring coloring;
  bool equal;
};
// Builds ⋀_m (ι[m] ∨ cons(P(m))) and compares it with P.
IdealReconstruction reconstruct_from_ideals(const OpColoring& p);

}  // namespace latmon
