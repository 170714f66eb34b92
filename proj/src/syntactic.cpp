#include "latmon/syntactic.hpp"

#include <algorithm>
#include <bit>
#include <map>

#include "latmon/error.hpp"

namespace latmon {

using Element = OrderedMonoid::Element;
using State = LatticeAutomaton::State;

namespace {

std::string element_name(std::span<const std::string> alphabet, const Word& w) {
  return w.empty() ? "1" : "[" + format_word(alphabet, w) + "]";
}

}  // namespace

Element RecognitionTriple::image(std::span<const std::size_t> word) const {
  Element x = monoid->identity();
  for (auto c : word) {
    if (c >= generator_images.size()) throw Error(ErrorKind::UnknownLetter, "letter out of range", c);
    x = monoid->mul(x, generator_images[c]);
  }
  return x;
}

LatticeAutomaton triple_to_automaton(const RecognitionTriple& t) {
  const OrderedMonoid& m = *t.monoid;
  if (!(t.coloring.monoid() == m)) {
    throw Error(ErrorKind::MismatchedCarrier, "coloring does not live on the triple's monoid");
  }
  if (t.generator_images.size() != t.alphabet.size()) {
    throw Error(ErrorKind::MismatchedAlphabet, "every letter needs a generator image");
  }
  const std::size_t k = t.alphabet.size();
  std::vector<State> delta(m.size() * k);
  for (Element x = 0; x < m.size(); ++x)
    for (std::size_t c = 0; c < k; ++c) delta[x * k + c] = m.mul(x, t.generator_images[c]);
  return LatticeAutomaton(t.coloring.lattice_ptr(), t.alphabet, m.names(), m.identity(),
                          std::move(delta), t.coloring.colors());
}

bool recognizes(const RecognitionTriple& t, const LatticeAutomaton& a) {
  return equivalent(triple_to_automaton(t), a);
}

Element SyntacticResult::image(std::span<const std::size_t> word) const {
  Element x = monoid->identity();
  for (auto c : word) {
    if (c >= morphism.size()) throw Error(ErrorKind::UnknownLetter, "letter out of range", c);
    x = monoid->mul(x, morphism[c]);
  }
  return x;
}

RecognitionTriple SyntacticResult::triple() const {
  return RecognitionTriple{alphabet, morphism, monoid, coloring};
}

std::vector<char> state_preorder(const LatticeAutomaton& a) {
  const std::size_t n = a.num_states();
  const std::size_t k = a.num_letters();
  const Lattice& l = a.lattice();
  std::vector<char> rel(n * n);
  for (State s = 0; s < n; ++s)
    for (State t = 0; t < n; ++t) rel[s * n + t] = l.leq(a.output(s), a.output(t));
  for (bool changed = true; changed;) {
    changed = false;
    for (State s = 0; s < n; ++s)
      for (State t = 0; t < n; ++t) {
        if (!rel[s * n + t]) continue;
        for (std::size_t c = 0; c < k; ++c)
          if (!rel[a.next(s, c) * n + a.next(t, c)]) {
            rel[s * n + t] = 0;
            changed = true;
            break;
          }
      }
  }
  return rel;
}

SyntacticResult syntactic(const LatticeAutomaton& input, std::size_t size_cap) {
  const LatticeAutomaton a = trim(input);
  const std::size_t states = a.num_states();
  const std::vector<char> pre = state_preorder(a);
  const TransitionMonoid tm = transition_monoid(a, size_cap);
  const OrderedMonoid& t = *tm.monoid;
  const std::size_t n = t.size();

  // m1 ≼ m2 iff m1(s) ⪯ m2(s) for every reachable s.
  auto below = [&](Element x, Element y) {
    for (State s = 0; s < states; ++s)
      if (!pre[tm.maps[x][s] * states + tm.maps[y][s]]) return false;
    return true;
  };

  std::vector<Element> cls(n);
  std::vector<Element> reps;
  for (Element x = 0; x < n; ++x) {
    auto it = std::find_if(reps.begin(), reps.end(),
                           [&](Element r) { return below(x, r) && below(r, x); });
    if (it == reps.end()) {
      cls[x] = reps.size();
      reps.push_back(x);
    } else {
      cls[x] = static_cast<Element>(it - reps.begin());
    }
  }
  const std::size_t q = reps.size();
  std::vector<Element> mul(q * q);
  for (Element i = 0; i < q; ++i)
    for (Element j = 0; j < q; ++j) mul[i * q + j] = cls[t.mul(reps[i], reps[j])];
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y)
      if (cls[t.mul(x, y)] != mul[cls[x] * q + cls[y]]) {
        throw Error(ErrorKind::InternalInconsistency,
                    "syntactic congruence is not compatible with multiplication",
                    nlohmann::json::array({t.name(x), t.name(y)}));
      }
  std::vector<char> leq(q * q);
  for (Element i = 0; i < q; ++i)
    for (Element j = 0; j < q; ++j) leq[i * q + j] = below(reps[i], reps[j]);

  std::vector<Lattice::Element> colors(q);
  for (Element i = 0; i < q; ++i) colors[i] = a.output(tm.maps[reps[i]][a.initial()]);
  for (Element x = 0; x < n; ++x)
    if (a.output(tm.maps[x][a.initial()]) != colors[cls[x]]) {
      throw Error(ErrorKind::InternalInconsistency, "coloring is not constant on a syntactic class",
                  t.name(x));
    }

  std::vector<std::string> names(q);
  std::vector<Word> witnesses(q);
  for (Element i = 0; i < q; ++i) {
    witnesses[i] = tm.words[reps[i]];
    names[i] = element_name(a.alphabet(), witnesses[i]);
  }
  auto monoid = std::make_shared<const OrderedMonoid>(
      OrderedMonoid::trusted(std::move(names), cls[0], std::move(mul), std::move(leq)));
  if (q <= 128) {
    try {
      monoid->validate();
    } catch (const Error& e) {
      throw Error(ErrorKind::InternalInconsistency,
                  std::string("syntactic ordered monoid failed validation: ") + e.what(),
                  e.witness());
    }
  }
  std::vector<Element> morphism(a.num_letters());
  for (std::size_t c = 0; c < a.num_letters(); ++c) morphism[c] = cls[tm.generator_images[c]];
  OpColoring coloring(monoid, a.lattice_ptr(), std::move(colors));
  return SyntacticResult{monoid, std::move(morphism), std::move(coloring), std::move(witnesses),
                         a.alphabet()};
}

CutReconstruction reconstruct_from_cuts(const LatticeAutomaton& a, std::size_t product_cap) {
  const Lattice& l = a.lattice();
  const std::size_t k = a.num_letters();
  std::vector<SyntacticResult> parts;
  std::vector<MonoidPtr> factors;
  std::size_t full_size = 1;
  bool overflow = false;
  for (Lattice::Element lambda = 0; lambda < l.size(); ++lambda) {
    parts.push_back(syntactic(cut(a, lambda)));
    factors.push_back(parts.back().monoid);
    full_size *= factors.back()->size();
    overflow = overflow || full_size > product_cap;
  }
  auto color_of = [&](std::span<const Element> coords) {
    Lattice::Element acc = l.top();
    for (Lattice::Element lambda = 0; lambda < l.size(); ++lambda)
      acc = l.meet(acc, l.join(parts[lambda].coloring(coords[lambda]), lambda));
    return acc;
  };

  if (!overflow) {
    DirectProduct dp = direct_product(factors, product_cap);
    std::vector<Element> gens(k);
    for (std::size_t c = 0; c < k; ++c) {
      std::vector<Element> coords;
      for (const auto& p : parts) coords.push_back(p.morphism[c]);
      gens[c] = dp.encode(coords);
    }
    std::vector<Lattice::Element> colors(dp.product->size());
    for (Element e = 0; e < colors.size(); ++e) colors[e] = color_of(dp.decode(e));
    OpColoring coloring(dp.product, a.lattice_ptr(), std::move(colors));
    RecognitionTriple triple{a.alphabet(), std::move(gens), dp.product, std::move(coloring)};
    const bool equal = recognizes(triple, a);
    return CutReconstruction{std::move(triple), equal, false};
  }

  // Image of the paired morphism inside the product, explored from 1.
  std::map<std::vector<Element>, Element> index;
  std::vector<std::vector<Element>> tuples;
  std::vector<Element> id;
  for (const auto& f : factors) id.push_back(f->identity());
  index.emplace(id, 0);
  tuples.push_back(id);
  for (std::size_t head = 0; head < tuples.size(); ++head)
    for (std::size_t c = 0; c < k; ++c) {
      std::vector<Element> next(factors.size());
      for (std::size_t i = 0; i < factors.size(); ++i)
        next[i] = factors[i]->mul(tuples[head][i], parts[i].morphism[c]);
      if (index.emplace(next, tuples.size()).second) {
        if (tuples.size() >= product_cap * 16) {
          throw Error(ErrorKind::SizeCapExceeded, "image of the cut product is too large",
                      tuples.size());
        }
        tuples.push_back(std::move(next));
      }
    }
  const std::size_t n = tuples.size();
  std::vector<Element> mul(n * n);
  std::vector<char> leq(n * n);
  std::vector<std::string> names(n);
  std::vector<Element> tmp(factors.size());
  for (Element x = 0; x < n; ++x) {
    std::string name = "(";
    for (std::size_t i = 0; i < factors.size(); ++i)
      name += (i ? "," : "") + factors[i]->name(tuples[x][i]);
    names[x] = name + ")";
    for (Element y = 0; y < n; ++y) {
      bool le = true;
      for (std::size_t i = 0; i < factors.size(); ++i) {
        tmp[i] = factors[i]->mul(tuples[x][i], tuples[y][i]);
        le = le && factors[i]->leq(tuples[x][i], tuples[y][i]);
      }
      mul[x * n + y] = index.at(tmp);
      leq[x * n + y] = le;
    }
  }
  auto monoid = std::make_shared<const OrderedMonoid>(
      OrderedMonoid::trusted(std::move(names), 0, std::move(mul), std::move(leq)));
  std::vector<Element> gens(k);
  for (std::size_t c = 0; c < k; ++c) {
    std::vector<Element> coords;
    for (const auto& p : parts) coords.push_back(p.morphism[c]);
    gens[c] = index.at(coords);
  }
  std::vector<Lattice::Element> colors(n);
  for (Element e = 0; e < n; ++e) colors[e] = color_of(tuples[e]);
  OpColoring coloring(monoid, a.lattice_ptr(), std::move(colors));
  RecognitionTriple triple{a.alphabet(), std::move(gens), monoid, std::move(coloring)};
  const bool equal = recognizes(triple, a);
  return CutReconstruction{std::move(triple), equal, true};
}

bool is_shuffle_ideal(const LatticeAutomaton& a) {
  return identity_is_greatest(*syntactic(a).monoid);
}

std::optional<ShuffleWitness> shuffle_ideal_falsify(const LatticeAutomaton& a,
                                                    std::size_t max_len) {
  const Lattice& l = a.lattice();
  const std::size_t k = a.num_letters();
  if (k == 0) return std::nullopt;
  for (std::size_t len = 0; len <= max_len; ++len) {
    Word v(len, 0);
    // Masks of each popcount, ascending.
    std::vector<std::vector<std::size_t>> masks(len + 1);
    for (std::size_t mask = 0; mask < (std::size_t{1} << len); ++mask)
      masks[static_cast<std::size_t>(std::popcount(mask))].push_back(mask);
    for (;;) {
      const Lattice::Element lv = evaluate(a, v);
      for (std::size_t size = len; size-- > 0;) {
        for (std::size_t mask : masks[size]) {
          Word w;
          for (std::size_t i = 0; i < len; ++i)
            if (mask & (std::size_t{1} << i)) w.push_back(v[i]);
          if (!l.leq(lv, evaluate(a, w))) return ShuffleWitness{std::move(w), v};
        }
      }
      std::size_t pos = len;
      while (pos > 0 && v[pos - 1] + 1 == k) v[--pos] = 0;
      if (pos == 0) break;
      ++v[pos - 1];
    }
  }
  return std::nullopt;
}

IdealLanguage ideal_language_construction(const LatticeAutomaton& a, const SyntacticResult& synt,
                                          Element m) {
  const OrderedMonoid& monoid = *synt.monoid;
  const OpColoring& p = synt.coloring;
  const Lattice& l = a.lattice();
  if (m >= monoid.size()) throw Error(ErrorKind::UnknownElement, "element out of range", m);

  RecognitionTriple direct_triple{synt.alphabet, synt.morphism, synt.monoid,
                                  ideal_coloring(synt.monoid, m, a.lattice_ptr())};
  const LatticeAutomaton direct = triple_to_automaton(direct_triple);

  bool greatest = true;
  for (Element x = 0; x < monoid.size(); ++x) greatest = greatest && monoid.leq(x, m);
  if (greatest) {
    LatticeAutomaton result = recolor(a, LatticeMorphism::constant(a.lattice_ptr(), l.bottom()));
    const bool equal = equivalent(result, direct);
    return IdealLanguage{std::move(result), equal};
  }

  std::optional<LatticeAutomaton> acc;
  for (Element y = 0; y < monoid.size(); ++y) {
    if (monoid.leq(y, m)) continue;
    // Context (u, u') separating y from m: P(u y u') ≰ P(u m u').
    std::optional<std::pair<Element, Element>> context;
    for (Element u = 0; u < monoid.size() && !context; ++u)
      for (Element v = 0; v < monoid.size() && !context; ++v)
        if (!l.leq(p(monoid.mul(monoid.mul(u, y), v)), p(monoid.mul(monoid.mul(u, m), v))))
          context.emplace(u, v);
    if (!context) {
      throw Error(ErrorKind::InternalInconsistency,
                  "no context separates an element from one it is not below",
                  nlohmann::json::array({monoid.name(y), monoid.name(m)}));
    }
    const auto [u, v] = *context;
    const Lattice::Element threshold = p(monoid.mul(monoid.mul(u, m), v));
    const LatticeMorphism alpha = LatticeMorphism::threshold(a.lattice_ptr(), threshold);
    LatticeAutomaton term = recolor(
        quotient(Side::Right, quotient(Side::Left, a, synt.witnesses[u]), synt.witnesses[v]),
        alpha);
    acc = relabel(acc ? minimize(product_combine(CombineKind::Join, *acc, term)) : minimize(term));
  }
  const bool equal = equivalent(*acc, direct);
  return IdealLanguage{std::move(*acc), equal};
}

}  // namespace latmon
