#include "latmon/ordered_monoid.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "latmon/error.hpp"

namespace latmon {

using Element = OrderedMonoid::Element;

namespace {

void close_order(std::vector<char>& leq, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) leq[i * n + i] = 1;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (leq[i * n + k])
        for (std::size_t j = 0; j < n; ++j)
          if (leq[k * n + j]) leq[i * n + j] = 1;
}

void check_structure(const std::vector<std::string>& names, Element identity,
                     const std::vector<Element>& mul, const std::vector<char>& leq) {
  const std::size_t n = names.size();
  if (n == 0) throw Error(ErrorKind::NoIdentity, "a monoid needs at least one element");
  if (mul.size() != n * n) {
    throw Error(ErrorKind::ParseError, "multiplication table must be n x n", n);
  }
  for (auto v : mul)
    if (v >= n) throw Error(ErrorKind::UnknownElement, "product out of range", v);
  if (identity >= n) throw Error(ErrorKind::NoIdentity, "identity out of range", identity);
  for (Element x = 0; x < n; ++x) {
    if (mul[identity * n + x] != x || mul[x * n + identity] != x) {
      throw Error(ErrorKind::NoIdentity,
                  "'" + names[identity] + "' is not a two-sided unit for '" + names[x] + "'",
                  nlohmann::json::array({names[identity], names[x]}));
    }
  }
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y)
      for (Element z = 0; z < n; ++z)
        if (mul[mul[x * n + y] * n + z] != mul[x * n + mul[y * n + z]]) {
          throw Error(ErrorKind::NotAssociative, "multiplication is not associative",
                      {names[x], names[y], names[z]});
        }
  for (Element x = 0; x < n; ++x)
    for (Element y = x + 1; y < n; ++y)
      if (leq[x * n + y] && leq[y * n + x]) {
        throw Error(ErrorKind::NotAntisymmetric,
                    "'" + names[x] + "' and '" + names[y] + "' are mutually below each other",
                    nlohmann::json::array({names[x], names[y]}));
      }
  // One-sided translations suffice: u·x·v <= u·y·v follows by composing.
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y) {
      if (x == y || !leq[x * n + y]) continue;
      for (Element z = 0; z < n; ++z) {
        if (!leq[mul[z * n + x] * n + mul[z * n + y]]) {
          throw Error(ErrorKind::NotCompatible, "order not compatible with left translation",
                      {{"lower", names[x]}, {"upper", names[y]}, {"by", names[z]},
                       {"side", "left"}});
        }
        if (!leq[mul[x * n + z] * n + mul[y * n + z]]) {
          throw Error(ErrorKind::NotCompatible, "order not compatible with right translation",
                      {{"lower", names[x]}, {"upper", names[y]}, {"by", names[z]},
                       {"side", "right"}});
        }
      }
    }
}

}  // namespace

OrderedMonoid OrderedMonoid::build(std::vector<std::string> names, Element identity,
                                   std::vector<Element> mul,
                                   std::span<const std::pair<Element, Element>> leq_pairs) {
  const std::size_t n = names.size();
  std::vector<char> leq(n * n, 0);
  for (const auto& [a, b] : leq_pairs) {
    if (a >= n || b >= n) {
      throw Error(ErrorKind::UnknownElement, "order references unknown element", {a, b});
    }
    leq[a * n + b] = 1;
  }
  close_order(leq, n);
  check_structure(names, identity, mul, leq);
  return trusted(std::move(names), identity, std::move(mul), std::move(leq));
}

OrderedMonoid OrderedMonoid::trusted(std::vector<std::string> names, Element identity,
                                     std::vector<Element> mul, std::vector<char> leq) {
  OrderedMonoid m;
  m.names_ = std::move(names);
  m.identity_ = identity;
  m.mul_ = std::move(mul);
  m.leq_ = std::move(leq);
  return m;
}

void OrderedMonoid::validate() const {
  std::vector<char> closed = leq_;
  close_order(closed, size());
  if (closed != leq_) {
    throw Error(ErrorKind::InternalInconsistency, "stored order is not transitively closed");
  }
  check_structure(names_, identity_, mul_, leq_);
}

Element OrderedMonoid::index(std::string_view name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) {
    throw Error(ErrorKind::UnknownElement,
                "unknown monoid element '" + std::string(name) + "'", std::string(name));
  }
  return static_cast<Element>(it - names_.begin());
}

MonoidMorphism::MonoidMorphism(MonoidPtr source, MonoidPtr target,
                               std::vector<Element> mapping)
    : source_(std::move(source)), target_(std::move(target)), mapping_(std::move(mapping)) {
  const OrderedMonoid& s = *source_;
  const OrderedMonoid& t = *target_;
  if (mapping_.size() != s.size()) {
    throw Error(ErrorKind::NotAMorphism, "morphism must be total on its source");
  }
  for (auto v : mapping_)
    if (v >= t.size()) throw Error(ErrorKind::UnknownElement, "image out of range", v);
  if (mapping_[s.identity()] != t.identity()) {
    throw Error(ErrorKind::NotAMorphism, "identity not mapped to identity");
  }
  for (Element x = 0; x < s.size(); ++x)
    for (Element y = 0; y < s.size(); ++y) {
      if (mapping_[s.mul(x, y)] != t.mul(mapping_[x], mapping_[y])) {
        throw Error(ErrorKind::NotAMorphism, "morphism is not multiplicative",
                    nlohmann::json::array({s.name(x), s.name(y)}));
      }
      if (s.leq(x, y) && !t.leq(mapping_[x], mapping_[y])) {
        throw Error(ErrorKind::NotOrderPreserving, "morphism is not order-preserving",
                    nlohmann::json::array({s.name(x), s.name(y)}));
      }
    }
}

MonoidMorphism MonoidMorphism::identity(MonoidPtr monoid) {
  std::vector<Element> m(monoid->size());
  std::iota(m.begin(), m.end(), Element{0});
  return MonoidMorphism(monoid, monoid, std::move(m));
}

OpColoring::OpColoring(MonoidPtr monoid, LatticePtr lattice,
                       std::vector<Lattice::Element> colors)
    : monoid_(std::move(monoid)), lattice_(std::move(lattice)), colors_(std::move(colors)) {
  const OrderedMonoid& m = *monoid_;
  const Lattice& l = *lattice_;
  if (colors_.size() != m.size()) {
    throw Error(ErrorKind::MismatchedCarrier, "coloring must be total on the monoid");
  }
  for (auto c : colors_)
    if (c >= l.size()) throw Error(ErrorKind::UnknownElement, "color out of range", c);
  for (Element x = 0; x < m.size(); ++x)
    for (Element y = 0; y < m.size(); ++y)
      if (m.leq(x, y) && !l.leq(colors_[x], colors_[y])) {
        throw Error(ErrorKind::NotOrderPreserving,
                    "'" + m.name(x) + "' <= '" + m.name(y) + "' but colors '" +
                        l.name(colors_[x]) + "' and '" + l.name(colors_[y]) +
                        "' are not ordered",
                    nlohmann::json::array({m.name(x), m.name(y)}));
      }
}

// ---------------------------------------------------------------------------

Element DirectProduct::encode(std::span<const Element> coords) const {
  Element e = 0;
  for (std::size_t i = 0; i < radices.size(); ++i) e = e * radices[i] + coords[i];
  return e;
}

std::vector<Element> DirectProduct::decode(Element e) const {
  std::vector<Element> coords(radices.size());
  for (std::size_t i = radices.size(); i-- > 0;) {
    coords[i] = e % radices[i];
    e /= radices[i];
  }
  return coords;
}

DirectProduct direct_product(std::span<const MonoidPtr> factors, std::size_t size_cap) {
  DirectProduct out;
  std::size_t n = 1;
  for (const auto& f : factors) {
    out.radices.push_back(f->size());
    n *= f->size();
    if (n > size_cap) {
      throw Error(ErrorKind::SizeCapExceeded,
                  "direct product exceeds " + std::to_string(size_cap) + " elements",
                  size_cap);
    }
  }
  const std::size_t k = factors.size();
  std::vector<std::string> names(n);
  std::vector<std::vector<Element>> coords(n);
  for (Element e = 0; e < n; ++e) {
    coords[e] = out.decode(e);
    std::string s = "(";
    for (std::size_t i = 0; i < k; ++i) {
      if (i) s += ',';
      s += factors[i]->name(coords[e][i]);
    }
    names[e] = s + ")";
  }
  std::vector<Element> id(k);
  for (std::size_t i = 0; i < k; ++i) id[i] = factors[i]->identity();
  std::vector<Element> mul(n * n);
  std::vector<char> leq(n * n);
  std::vector<Element> tmp(k);
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y) {
      bool le = true;
      for (std::size_t i = 0; i < k; ++i) {
        tmp[i] = factors[i]->mul(coords[x][i], coords[y][i]);
        le = le && factors[i]->leq(coords[x][i], coords[y][i]);
      }
      mul[x * n + y] = out.encode(tmp);
      leq[x * n + y] = le;
    }
  out.product = std::make_shared<const OrderedMonoid>(
      OrderedMonoid::trusted(std::move(names), out.encode(id), std::move(mul), std::move(leq)));
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<Element> proj(n);
    for (Element e = 0; e < n; ++e) proj[e] = coords[e][i];
    out.projections.emplace_back(out.product, factors[i], std::move(proj));
  }
  return out;
}

std::vector<Element> submonoid_carrier(const OrderedMonoid& m,
                                       std::span<const Element> generators) {
  std::vector<char> seen(m.size(), 0);
  std::vector<Element> queue{m.identity()};
  seen[m.identity()] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Element x = queue[head];
    for (Element g : generators) {
      if (g >= m.size()) throw Error(ErrorKind::UnknownElement, "generator out of range", g);
      const Element y = m.mul(x, g);
      if (!seen[y]) {
        seen[y] = 1;
        queue.push_back(y);
      }
    }
  }
  std::sort(queue.begin(), queue.end());
  return queue;
}

Submonoid generated_submonoid(const MonoidPtr& ambient, std::span<const Element> generators) {
  const OrderedMonoid& m = *ambient;
  std::vector<Element> carrier = submonoid_carrier(m, generators);
  const std::size_t n = carrier.size();
  std::vector<Element> local(m.size(), 0);
  for (Element i = 0; i < n; ++i) local[carrier[i]] = i;
  std::vector<std::string> names(n);
  std::vector<Element> mul(n * n);
  std::vector<char> leq(n * n);
  for (Element i = 0; i < n; ++i) {
    names[i] = m.name(carrier[i]);
    for (Element j = 0; j < n; ++j) {
      mul[i * n + j] = local[m.mul(carrier[i], carrier[j])];
      leq[i * n + j] = m.leq(carrier[i], carrier[j]);
    }
  }
  auto sub = std::make_shared<const OrderedMonoid>(OrderedMonoid::trusted(
      std::move(names), local[m.identity()], std::move(mul), std::move(leq)));
  MonoidMorphism embedding(sub, ambient, carrier);
  return Submonoid{sub, std::move(embedding), std::move(carrier)};
}

bool is_aperiodic(const OrderedMonoid& m) {
  for (Element x = 0; x < m.size(); ++x) {
    Element power = x;
    bool stable = false;
    for (std::size_t k = 1; k <= m.size() && !stable; ++k) {
      const Element next = m.mul(power, x);
      stable = next == power;
      power = next;
    }
    if (!stable) return false;
  }
  return true;
}

bool identity_is_greatest(const OrderedMonoid& m) {
  for (Element x = 0; x < m.size(); ++x)
    if (!m.leq(x, m.identity())) return false;
  return true;
}

std::optional<std::vector<Element>> find_isomorphism(const OrderedMonoid& a,
                                                     const OrderedMonoid& b) {
  const std::size_t n = a.size();
  if (n != b.size()) return std::nullopt;
  constexpr Element kUnset = static_cast<Element>(-1);
  std::vector<Element> f(n, kUnset);
  std::vector<char> used(n, 0);
  std::vector<Element> order;
  order.push_back(a.identity());
  for (Element x = 0; x < n; ++x)
    if (x != a.identity()) order.push_back(x);

  // Checks every constraint that became decidable once `e` was assigned.
  auto consistent = [&](Element e) {
    for (Element x = 0; x < n; ++x) {
      if (f[x] == kUnset) continue;
      if (a.leq(e, x) != b.leq(f[e], f[x]) || a.leq(x, e) != b.leq(f[x], f[e])) return false;
      for (auto [p, q] : {std::pair{e, x}, std::pair{x, e}}) {
        const Element pq = a.mul(p, q);
        if (f[pq] != kUnset && f[pq] != b.mul(f[p], f[q])) return false;
      }
    }
    for (Element x = 0; x < n; ++x)
      for (Element y = 0; y < n; ++y)
        if (a.mul(x, y) == e && f[x] != kUnset && f[y] != kUnset &&
            f[e] != b.mul(f[x], f[y]))
          return false;
    return true;
  };

  auto search = [&](auto&& self, std::size_t depth) -> bool {
    if (depth == n) return true;
    const Element x = order[depth];
    for (Element c = 0; c < n; ++c) {
      if (used[c]) continue;
      if (depth == 0 && c != b.identity()) continue;
      f[x] = c;
      used[c] = 1;
      if (consistent(x) && self(self, depth + 1)) return true;
      used[c] = 0;
      f[x] = kUnset;
    }
    return false;
  };
  if (!search(search, 0)) return std::nullopt;
  return f;
}

// ---------------------------------------------------------------------------

namespace {

enum class SearchResult { Found, NotFound, Exhausted };

// Searches for a surjective order-preserving morphism from the submonoid
// generated by `gens` onto `divisor`, assigning generator images in order and
// propagating along the right Cayley graph.
class QuotientSearch {
 public:
  QuotientSearch(const OrderedMonoid& divisor, const OrderedMonoid& monoid,
                 std::vector<Element> gens, std::size_t& nodes, std::size_t max_nodes)
      : d_(divisor), m_(monoid), gens_(std::move(gens)), nodes_(nodes),
        max_nodes_(max_nodes), images_(gens_.size()) {}

  SearchResult run() {
    propagate(0);
    return extend(0);
  }
  const std::vector<Element>& map() const { return map_; }

  static constexpr Element kUnset = static_cast<Element>(-1);

 private:
  bool propagate(std::size_t count) {
    map_.assign(m_.size(), kUnset);
    map_[m_.identity()] = d_.identity();
    domain_.assign(1, m_.identity());
    for (std::size_t head = 0; head < domain_.size(); ++head) {
      const Element x = domain_[head];
      for (std::size_t i = 0; i < count; ++i) {
        const Element y = m_.mul(x, gens_[i]);
        const Element img = d_.mul(map_[x], images_[i]);
        if (map_[y] == kUnset) {
          map_[y] = img;
          domain_.push_back(y);
        } else if (map_[y] != img) {
          return false;
        }
      }
    }
    for (Element x : domain_)
      for (Element y : domain_)
        if (m_.leq(x, y) && !d_.leq(map_[x], map_[y])) return false;
    return true;
  }

  SearchResult extend(std::size_t depth) {
    if (depth == gens_.size()) {
      std::vector<char> hit(d_.size(), 0);
      for (Element x : domain_) hit[map_[x]] = 1;
      return std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; })
                 ? SearchResult::Found
                 : SearchResult::NotFound;
    }
    for (Element c = 0; c < d_.size(); ++c) {
      if (++nodes_ > max_nodes_) return SearchResult::Exhausted;
      images_[depth] = c;
      if (!propagate(depth + 1)) continue;
      const SearchResult r = extend(depth + 1);
      if (r != SearchResult::NotFound) return r;
    }
    return SearchResult::NotFound;
  }

  const OrderedMonoid& d_;
  const OrderedMonoid& m_;
  std::vector<Element> gens_;
  std::size_t& nodes_;
  std::size_t max_nodes_;
  std::vector<Element> images_;
  std::vector<Element> map_;
  std::vector<Element> domain_;
};

}  // namespace

DivisionVerdict divides(const OrderedMonoid& divisor, const OrderedMonoid& monoid,
                        const DivisionBudget& budget) {
  DivisionVerdict verdict;
  std::vector<Element> pool;
  for (Element x = 0; x < monoid.size(); ++x)
    if (x != monoid.identity()) pool.push_back(x);

  std::set<std::vector<Element>> seen;
  std::size_t subsets = 0;
  std::size_t nodes = 0;
  bool truncated = false;
  // Generator subsets by ascending size, lexicographic within a size.
  for (std::size_t k = 0; k <= pool.size() && !truncated; ++k) {
    std::vector<char> pick(pool.size(), 0);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(k), 1);
    do {
      if (++subsets > budget.max_generator_subsets) {
        truncated = true;
        break;
      }
      std::vector<Element> gens;
      for (std::size_t i = 0; i < pool.size(); ++i)
        if (pick[i]) gens.push_back(pool[i]);
      auto carrier = submonoid_carrier(monoid, gens);
      if (carrier.size() < divisor.size() || !seen.insert(carrier).second) continue;
      QuotientSearch search(divisor, monoid, gens, nodes, budget.max_search_nodes);
      const SearchResult r = search.run();
      if (r == SearchResult::Found) {
        verdict.kind = DivisionVerdict::Kind::Yes;
        verdict.generators = gens;
        for (Element x : carrier) verdict.mapping.emplace_back(x, search.map()[x]);
        return verdict;
      }
      if (r == SearchResult::Exhausted) {
        truncated = true;
        break;
      }
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  verdict.kind = truncated ? DivisionVerdict::Kind::BudgetExhausted : DivisionVerdict::Kind::No;
  return verdict;
}

// ---------------------------------------------------------------------------

namespace {

void require_same_carrier(const OpColoring& a, const OpColoring& b) {
  if (!(*a.monoid_ptr() == *b.monoid_ptr())) {
    throw Error(ErrorKind::MismatchedCarrier, "colorings live on different monoids");
  }
  if (!(a.lattice() == b.lattice())) {
    throw Error(ErrorKind::MismatchedCarrier, "colorings use different lattices");
  }
}

}  // namespace

OpColoring constant_coloring(MonoidPtr monoid, LatticePtr lattice, Lattice::Element value) {
  std::vector<Lattice::Element> colors(monoid->size(), value);
  return OpColoring(std::move(monoid), std::move(lattice), std::move(colors));
}

OpColoring combine_colorings(CombineKind kind, const OpColoring& a, const OpColoring& b) {
  require_same_carrier(a, b);
  const Lattice& l = a.lattice();
  std::vector<Lattice::Element> colors(a.colors().size());
  for (std::size_t x = 0; x < colors.size(); ++x)
    colors[x] = kind == CombineKind::Join ? l.join(a(x), b(x)) : l.meet(a(x), b(x));
  return OpColoring(a.monoid_ptr(), a.lattice_ptr(), std::move(colors));
}

ProductColoring product_coloring(CombineKind kind, std::span<const OpColoring> colorings,
                                 std::size_t size_cap) {
  if (colorings.empty()) {
    throw Error(ErrorKind::MismatchedCarrier, "product coloring needs at least one factor");
  }
  const LatticePtr& lattice = colorings.front().lattice_ptr();
  std::vector<MonoidPtr> factors;
  for (const auto& c : colorings) {
    if (!(c.lattice() == *lattice)) {
      throw Error(ErrorKind::MismatchedLattice, "product coloring factors use different lattices");
    }
    factors.push_back(c.monoid_ptr());
  }
  DirectProduct product = direct_product(factors, size_cap);
  const std::size_t n = product.product->size();
  std::vector<Lattice::Element> colors(n);
  for (Element e = 0; e < n; ++e) {
    const auto coords = product.decode(e);
    Lattice::Element acc = kind == CombineKind::Join ? lattice->bottom() : lattice->top();
    for (std::size_t i = 0; i < coords.size(); ++i) {
      const auto c = colorings[i](coords[i]);
      acc = kind == CombineKind::Join ? lattice->join(acc, c) : lattice->meet(acc, c);
    }
    colors[e] = acc;
  }
  OpColoring coloring(product.product, lattice, std::move(colors));
  return ProductColoring{std::move(product), std::move(coloring)};
}

OpColoring quotient_coloring(Side side, const OpColoring& p, Element u) {
  const OrderedMonoid& m = p.monoid();
  if (u >= m.size()) throw Error(ErrorKind::UnknownElement, "quotient element out of range", u);
  std::vector<Lattice::Element> colors(m.size());
  for (Element x = 0; x < m.size(); ++x)
    colors[x] = p(side == Side::Left ? m.mul(u, x) : m.mul(x, u));
  return OpColoring(p.monoid_ptr(), p.lattice_ptr(), std::move(colors));
}

OpColoring precompose(const OpColoring& p, const MonoidMorphism& h) {
  if (!(*h.target() == p.monoid())) {
    throw Error(ErrorKind::MismatchedCarrier, "morphism target differs from coloring monoid");
  }
  std::vector<Lattice::Element> colors(h.source()->size());
  for (Element x = 0; x < colors.size(); ++x) colors[x] = p(h(x));
  return OpColoring(h.source(), p.lattice_ptr(), std::move(colors));
}

OpColoring postcompose(const LatticeMorphism& alpha, const OpColoring& p) {
  if (!(alpha.lattice() == p.lattice())) {
    throw Error(ErrorKind::MismatchedLattice, "lattice morphism acts on a different lattice");
  }
  std::vector<Lattice::Element> colors(p.colors().size());
  for (Element x = 0; x < colors.size(); ++x) colors[x] = alpha(p(x));
  return OpColoring(p.monoid_ptr(), p.lattice_ptr(), std::move(colors));
}

OpColoring ideal_coloring(MonoidPtr monoid, Element m, LatticePtr lattice) {
  if (m >= monoid->size()) {
    throw Error(ErrorKind::UnknownElement, "ideal element out of range", m);
  }
  std::vector<Lattice::Element> colors(monoid->size());
  for (Element x = 0; x < monoid->size(); ++x)
    colors[x] = monoid->leq(x, m) ? lattice->bottom() : lattice->top();
  return OpColoring(std::move(monoid), std::move(lattice), std::move(colors));
}

IdealReconstruction reconstruct_from_ideals(const OpColoring& p) {
  const Lattice& l = p.lattice();
  OpColoring acc = constant_coloring(p.monoid_ptr(), p.lattice_ptr(), l.top());
  for (Element m = 0; m < p.monoid().size(); ++m) {
    OpColoring term = combine_colorings(
        CombineKind::Join, ideal_coloring(p.monoid_ptr(), m, p.lattice_ptr()),
        constant_coloring(p.monoid_ptr(), p.lattice_ptr(), p(m)));
    acc = combine_colorings(CombineKind::Meet, acc, term);
  }
  const bool equal = acc.colors() == p.colors();
  return IdealReconstruction{std::move(acc), equal};
}

}  // namespace latmon
