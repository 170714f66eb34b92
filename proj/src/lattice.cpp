#include "latmon/lattice.hpp"

#include <algorithm>
#include <unordered_map>

#include "latmon/error.hpp"

namespace latmon {

namespace {

std::string subset_name(std::size_t mask, std::size_t n) {
  std::string out = "{";
  bool first = true;
  for (std::size_t i = 0; i < n; ++i) {
    if (mask & (std::size_t{1} << i)) {
      if (!first) out += ',';
      out += std::to_string(i + 1);
      first = false;
    }
  }
  return out + "}";
}

}  // namespace

Lattice Lattice::build(std::vector<std::string> names,
                       std::span<const std::pair<std::string, std::string>> pairs,
                       Input input, std::size_t size_cap) {
  std::unordered_map<std::string, Element> lookup;
  for (Element i = 0; i < names.size(); ++i) {
    if (!lookup.emplace(names[i], i).second) {
      throw Error(ErrorKind::ParseError, "duplicate element name '" + names[i] + "'",
                  names[i]);
    }
  }
  auto find = [&](const std::string& s) {
    auto it = lookup.find(s);
    if (it == lookup.end()) {
      throw Error(ErrorKind::UnknownElement, "unknown element '" + s + "'", s);
    }
    return it->second;
  };
  std::vector<std::pair<Element, Element>> idx;
  idx.reserve(pairs.size());
  for (const auto& [lo, hi] : pairs) idx.emplace_back(find(lo), find(hi));
  return from_index_pairs(std::move(names), idx, input, size_cap);
}

Lattice Lattice::from_index_pairs(std::vector<std::string> names,
                                  std::span<const std::pair<Element, Element>> pairs,
                                  Input /*input*/, std::size_t size_cap) {
  const std::size_t n = names.size();
  if (n > size_cap) {
    throw Error(ErrorKind::SizeCapExceeded,
                "lattice has " + std::to_string(n) + " elements, cap is " +
                    std::to_string(size_cap),
                n);
  }
  if (n < 2) {
    throw Error(ErrorKind::TrivialLattice, "a lattice needs bottom != top", n);
  }
  Lattice l;
  l.names_ = std::move(names);
  l.leq_.assign(n * n, 0);
  for (Element i = 0; i < n; ++i) l.leq_[i * n + i] = 1;
  for (const auto& [lo, hi] : pairs) {
    if (lo >= n || hi >= n) {
      throw Error(ErrorKind::UnknownElement, "relation references unknown element",
                  nlohmann::json::array({lo, hi}));
    }
    l.leq_[lo * n + hi] = 1;
  }
  // Covers and full relations are both closed here, so the two input modes
  // only differ in what the caller promises.
  for (Element k = 0; k < n; ++k)
    for (Element i = 0; i < n; ++i)
      if (l.leq_[i * n + k])
        for (Element j = 0; j < n; ++j)
          if (l.leq_[k * n + j]) l.leq_[i * n + j] = 1;
  for (Element i = 0; i < n; ++i)
    for (Element j = i + 1; j < n; ++j)
      if (l.leq_[i * n + j] && l.leq_[j * n + i]) {
        throw Error(ErrorKind::NotAntisymmetric,
                    "'" + l.names_[i] + "' and '" + l.names_[j] +
                        "' are mutually below each other",
                    nlohmann::json::array({l.names_[i], l.names_[j]}));
      }

  l.join_.assign(n * n, 0);
  l.meet_.assign(n * n, 0);
  for (Element a = 0; a < n; ++a) {
    for (Element b = a; b < n; ++b) {
      // Least upper bound: an upper bound below every other upper bound.
      std::vector<Element> upper, lower;
      for (Element c = 0; c < n; ++c) {
        if (l.leq(a, c) && l.leq(b, c)) upper.push_back(c);
        if (l.leq(c, a) && l.leq(c, b)) lower.push_back(c);
      }
      auto least = std::find_if(upper.begin(), upper.end(), [&](Element u) {
        return std::all_of(upper.begin(), upper.end(),
                           [&](Element v) { return l.leq(u, v); });
      });
      auto greatest = std::find_if(lower.begin(), lower.end(), [&](Element u) {
        return std::all_of(lower.begin(), lower.end(),
                           [&](Element v) { return l.leq(v, u); });
      });
      if (least == upper.end() || greatest == lower.end()) {
        throw Error(ErrorKind::NotALattice,
                    "'" + l.names_[a] + "' and '" + l.names_[b] + "' lack a unique " +
                        (least == upper.end() ? "least upper" : "greatest lower") +
                        " bound",
                    nlohmann::json::array({l.names_[a], l.names_[b]}));
      }
      l.join_[a * n + b] = l.join_[b * n + a] = *least;
      l.meet_[a * n + b] = l.meet_[b * n + a] = *greatest;
    }
  }
  l.top_ = 0;
  l.bottom_ = 0;
  for (Element a = 1; a < n; ++a) {
    l.top_ = l.join(l.top_, a);
    l.bottom_ = l.meet(l.bottom_, a);
  }
  return l;
}

Lattice::Element Lattice::index(std::string_view name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) {
    throw Error(ErrorKind::UnknownElement, "unknown lattice element '" +
                                               std::string(name) + "'",
                std::string(name));
  }
  return static_cast<Element>(it - names_.begin());
}

Lattice Lattice::dual() const {
  Lattice d = *this;
  const std::size_t n = size();
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b) d.leq_[a * n + b] = leq_[b * n + a];
  std::swap(d.join_, d.meet_);
  std::swap(d.top_, d.bottom_);
  return d;
}

std::vector<std::pair<Lattice::Element, Lattice::Element>> Lattice::relation() const {
  std::vector<std::pair<Element, Element>> out;
  for (Element a = 0; a < size(); ++a)
    for (Element b = 0; b < size(); ++b)
      if (leq(a, b)) out.emplace_back(a, b);
  return out;
}

Lattice standard_lattice(StandardLattice kind, std::size_t n) {
  using Element = Lattice::Element;
  switch (kind) {
    case StandardLattice::Powerset: {
      if (n < 1 || n > 6) {
        throw Error(ErrorKind::SizeOutOfRange,
                    "powerset lattice needs 1 <= n <= 6", n);
      }
      const std::size_t count = std::size_t{1} << n;
      std::vector<std::string> names;
      std::vector<std::pair<Element, Element>> covers;
      for (std::size_t mask = 0; mask < count; ++mask) {
        names.push_back(subset_name(mask, n));
        for (std::size_t i = 0; i < n; ++i)
          if (!(mask & (std::size_t{1} << i)))
            covers.emplace_back(mask, mask | (std::size_t{1} << i));
      }
      return Lattice::from_index_pairs(std::move(names), covers);
    }
    case StandardLattice::Chain: {
      if (n < 2) {
        throw Error(ErrorKind::SizeOutOfRange, "chain lattice needs n >= 2", n);
      }
      std::vector<std::string> names;
      std::vector<std::pair<Element, Element>> covers;
      for (std::size_t i = 0; i < n; ++i) {
        names.push_back(std::to_string(i));
        if (i > 0) covers.emplace_back(i - 1, i);
      }
      return Lattice::from_index_pairs(std::move(names), covers);
    }
    case StandardLattice::Boolean:
      return standard_lattice(StandardLattice::Chain, 2);
  }
  throw Error(ErrorKind::SizeOutOfRange, "unknown standard lattice kind");
}

Lattice::Element bound(const Lattice& lattice, BoundKind kind,
                       std::span<const Lattice::Element> subset) {
  Lattice::Element acc =
      kind == BoundKind::Join ? lattice.bottom() : lattice.top();
  for (auto e : subset) {
    if (e >= lattice.size()) {
      throw Error(ErrorKind::UnknownElement, "element index out of range", e);
    }
    acc = kind == BoundKind::Join ? lattice.join(acc, e) : lattice.meet(acc, e);
  }
  return acc;
}

LatticeMorphism::LatticeMorphism(LatticePtr lattice,
                                 std::vector<Lattice::Element> mapping)
    : lattice_(std::move(lattice)), mapping_(std::move(mapping)) {
  const Lattice& l = *lattice_;
  if (mapping_.size() != l.size()) {
    throw Error(ErrorKind::UnknownElement, "morphism must be total on the lattice",
                mapping_.size());
  }
  for (auto v : mapping_)
    if (v >= l.size())
      throw Error(ErrorKind::UnknownElement, "morphism image out of range", v);
  for (Lattice::Element a = 0; a < l.size(); ++a)
    for (Lattice::Element b = 0; b < l.size(); ++b)
      if (l.leq(a, b) && !l.leq(mapping_[a], mapping_[b])) {
        throw Error(ErrorKind::NotOrderPreserving,
                    "'" + l.name(a) + "' <= '" + l.name(b) +
                        "' but images are not ordered",
                    nlohmann::json::array({l.name(a), l.name(b)}));
      }
}

LatticeMorphism LatticeMorphism::identity(LatticePtr lattice) {
  std::vector<Lattice::Element> m(lattice->size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = i;
  return LatticeMorphism(std::move(lattice), std::move(m));
}

LatticeMorphism LatticeMorphism::constant(LatticePtr lattice, Lattice::Element value) {
  std::vector<Lattice::Element> m(lattice->size(), value);
  return LatticeMorphism(std::move(lattice), std::move(m));
}

LatticeMorphism LatticeMorphism::threshold(LatticePtr lattice,
                                           Lattice::Element threshold) {
  std::vector<Lattice::Element> m(lattice->size());
  for (std::size_t i = 0; i < m.size(); ++i)
    m[i] = lattice->leq(i, threshold) ? lattice->bottom() : lattice->top();
  return LatticeMorphism(std::move(lattice), std::move(m));
}

LatticeMorphism compose(const LatticeMorphism& after, const LatticeMorphism& before) {
  if (!(after.lattice() == before.lattice())) {
    throw Error(ErrorKind::MismatchedLattice, "cannot compose morphisms of different lattices");
  }
  std::vector<Lattice::Element> m(before.mapping_.size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = after(before(i));
  return LatticeMorphism(before.lattice_, std::move(m));
}

}  // namespace latmon
