#include "latmon/variety.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "latmon/error.hpp"
#include "latmon/io.hpp"

namespace latmon {

using nlohmann::json;
using Element = OrderedMonoid::Element;
using Verdict = VerificationReport::Verdict;

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::BudgetExhausted: return "budget_exhausted";
  }
  return "unknown";
}

json VerificationReport::to_json() const {
  return {{"check", check},
          {"instance", instance},
          {"input", input},
          {"verdict", std::string(to_string(verdict))},
          {"witness", witness}};
}

namespace {

VerificationReport make_report(std::string check, json input) {
  VerificationReport r;
  r.check = std::move(check);
  r.input = std::move(input);
  return r;
}

void fail(VerificationReport& r, json witness) {
  r.verdict = Verdict::Fail;
  r.witness = std::move(witness);
}

// All words over k letters of length at most n, shortlex order.
std::vector<Word> all_words(std::size_t k, std::size_t n) {
  std::vector<Word> out{Word{}};
  for (std::size_t head = 0; head < out.size(); ++head) {
    if (out[head].size() == n) continue;
    for (std::size_t c = 0; c < k; ++c) {
      Word w = out[head];
      w.push_back(c);
      out.push_back(std::move(w));
    }
  }
  return out;
}

std::vector<std::string> letters(std::size_t k) {
  std::vector<std::string> out;
  for (std::size_t c = 0; c < k; ++c) out.emplace_back(1, static_cast<char>('a' + c));
  return out;
}

// ---------------------------------------------------------------------------
// Enumeration

std::vector<std::vector<char>> partial_orders(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> off;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) off.emplace_back(i, j);
  std::vector<std::vector<char>> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << off.size()); ++mask) {
    std::vector<char> leq(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) leq[i * n + i] = 1;
    for (std::size_t b = 0; b < off.size(); ++b)
      if (mask & (std::size_t{1} << b)) leq[off[b].first * n + off[b].second] = 1;
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i)
      for (std::size_t j = 0; j < n && ok; ++j) {
        if (i != j && leq[i * n + j] && leq[j * n + i]) ok = false;
        for (std::size_t k = 0; k < n && ok; ++k)
          if (leq[i * n + j] && leq[j * n + k] && !leq[i * n + k]) ok = false;
      }
    if (ok) out.push_back(std::move(leq));
  }
  return out;
}

// Smallest relabelled (mul, leq) over bijections fixing the identity 0.
std::vector<std::size_t> canonical_form(const std::vector<std::size_t>& mul,
                                        const std::vector<char>& leq, std::size_t n) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::vector<std::size_t> best;
  do {
    // perm maps old label -> new label.
    std::vector<std::size_t> form(2 * n * n);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) {
        form[perm[x] * n + perm[y]] = perm[mul[x * n + y]];
        form[n * n + perm[x] * n + perm[y]] = static_cast<std::size_t>(leq[x * n + y]);
      }
    if (best.empty() || form < best) best = std::move(form);
  } while (std::next_permutation(perm.begin() + 1, perm.end()));
  return best;
}

}  // namespace

std::vector<OrderedMonoid> enumerate_ordered_monoids(std::size_t n, std::size_t cap) {
  if (n == 0 || n > cap) {
    throw Error(ErrorKind::SizeCapExceeded,
                "enumeration supports 1 <= n <= " + std::to_string(cap), n);
  }
  const auto orders = partial_orders(n);
  std::set<std::vector<std::size_t>> forms;
  // Identity fixed at 0; enumerate the (n-1)^2 free entries.
  const std::size_t free = (n - 1) * (n - 1);
  std::vector<std::size_t> digits(free, 0);
  std::vector<std::size_t> mul(n * n);
  for (;;) {
    for (std::size_t x = 0; x < n; ++x) {
      mul[x] = x;
      mul[x * n] = x;
    }
    for (std::size_t i = 0; i < free; ++i) mul[(1 + i / (n - 1)) * n + 1 + i % (n - 1)] = digits[i];
    bool assoc = true;
    for (std::size_t x = 1; x < n && assoc; ++x)
      for (std::size_t y = 1; y < n && assoc; ++y)
        for (std::size_t z = 1; z < n && assoc; ++z)
          assoc = mul[mul[x * n + y] * n + z] == mul[x * n + mul[y * n + z]];
    if (assoc) {
      for (const auto& leq : orders) {
        bool compatible = true;
        for (std::size_t x = 0; x < n && compatible; ++x)
          for (std::size_t y = 0; y < n && compatible; ++y) {
            if (x == y || !leq[x * n + y]) continue;
            for (std::size_t z = 0; z < n && compatible; ++z)
              compatible = leq[mul[z * n + x] * n + mul[z * n + y]] &&
                           leq[mul[x * n + z] * n + mul[y * n + z]];
          }
        if (compatible) forms.insert(canonical_form(mul, leq, n));
      }
    }
    std::size_t pos = 0;
    while (pos < free && ++digits[pos] == n) digits[pos++] = 0;
    if (pos == free) break;
  }

  std::vector<std::string> names{"1"};
  for (std::size_t i = 1; i < n; ++i) names.emplace_back(1, static_cast<char>('a' + i - 1));
  std::vector<OrderedMonoid> out;
  for (const auto& form : forms) {
    std::vector<Element> m(form.begin(), form.begin() + static_cast<std::ptrdiff_t>(n * n));
    std::vector<std::pair<Element, Element>> leq;
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        if (form[n * n + x * n + y]) leq.emplace_back(x, y);
    out.push_back(OrderedMonoid::build(names, 0, std::move(m), leq));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Checks

VerificationReport verify_recog_by_synt(std::span<const LatticeAutomaton> languages,
                                        const RecognitionTriple& t) {
  json langs = json::array();
  for (const auto& a : languages) langs.push_back(io::automaton_to_json(a));
  VerificationReport r = make_report("recog_by_synt", {{"languages", langs}, {"triple", io::triple_to_json(t)}});

  std::vector<SyntacticResult> synts;
  std::vector<MonoidPtr> factors;
  for (const auto& a : languages) {
    synts.push_back(syntactic(a));
    factors.push_back(synts.back().monoid);
  }
  const DirectProduct dp = direct_product(factors);
  if (!(*dp.product == *t.monoid)) {
    throw Error(ErrorKind::MismatchedCarrier,
                "triple does not live on the product of the syntactic monoids");
  }
  const LatticePtr& lattice = t.coloring.lattice_ptr();
  const Lattice& l = *lattice;
  const LatticeAutomaton target = triple_to_automaton(t);

  std::optional<LatticeAutomaton> combined;
  for (Element m = 0; m < t.monoid->size(); ++m) {
    RecognitionTriple ideal{t.alphabet, t.generator_images, t.monoid,
                            ideal_coloring(t.monoid, m, lattice)};
    const LatticeAutomaton direct = minimize(triple_to_automaton(ideal));
    const auto coords = dp.decode(m);
    std::optional<LatticeAutomaton> joined;
    for (std::size_t i = 0; i < factors.size(); ++i) {
      std::vector<Element> gens;
      for (auto g : t.generator_images) gens.push_back(dp.projections[i](g));
      RecognitionTriple part{t.alphabet, gens, factors[i], ideal_coloring(factors[i], coords[i], lattice)};
      LatticeAutomaton pa = triple_to_automaton(part);
      joined = relabel(joined ? minimize(product_combine(CombineKind::Join, *joined, pa)) : minimize(pa));
    }
    if (!joined) joined = constant_automaton(lattice, t.alphabet, l.bottom());
    if (auto w = find_difference(direct, *joined)) {
      fail(r, {{"part", "ideal_join"}, {"element", t.monoid->name(m)},
               {"word", io::word_to_json(t.alphabet, *w)}});
      return r;
    }
    std::vector<Lattice::Element> lift(l.size());
    for (Lattice::Element x = 0; x < l.size(); ++x) lift[x] = l.join(x, t.coloring(m));
    LatticeAutomaton term = recolor(direct, LatticeMorphism(lattice, std::move(lift)));
    combined = relabel(combined ? minimize(product_combine(CombineKind::Meet, *combined, term)) : minimize(term));
  }
  if (auto w = find_difference(target, *combined)) {
    fail(r, {{"part", "ideal_meet"}, {"word", io::word_to_json(t.alphabet, *w)}});
  }
  return r;
}

VerificationReport verify_syntactic_minimality(const LatticeAutomaton& a, const RecognitionTriple& t,
                                               const DivisionBudget& budget) {
  VerificationReport r = make_report(
      "syntactic_minimality", {{"automaton", io::automaton_to_json(a)}, {"triple", io::triple_to_json(t)}});
  if (auto w = find_difference(triple_to_automaton(t), a)) {
    throw Error(ErrorKind::NotARecognizer, "triple does not recognize the language",
                io::word_to_json(a.alphabet(), *w));
  }
  const SyntacticResult synt = syntactic(a);
  const DivisionVerdict d = divides(*synt.monoid, *t.monoid, budget);
  if (d.kind == DivisionVerdict::Kind::BudgetExhausted) {
    r.verdict = Verdict::BudgetExhausted;
  } else if (d.kind == DivisionVerdict::Kind::No) {
    fail(r, {{"syntactic_monoid", io::monoid_to_json(*synt.monoid)}});
  } else {
    json gens = json::array();
    for (auto g : d.generators) gens.push_back(t.monoid->name(g));
    r.instance["division_generators"] = gens;
  }
  return r;
}

VerificationReport subdirect_embedding(const MonoidPtr& mp) {
  const OrderedMonoid& m = *mp;
  VerificationReport r = make_report("subdirect", {{"monoid", io::monoid_to_json(m)}});
  auto boolean = std::make_shared<const Lattice>(standard_lattice(StandardLattice::Boolean, 2));
  std::vector<Element> eval(m.size());
  std::iota(eval.begin(), eval.end(), Element{0});
  std::vector<SyntacticResult> parts;
  for (Element e = 0; e < m.size(); ++e) {
    RecognitionTriple t{m.names(), eval, mp, ideal_coloring(mp, e, boolean)};
    parts.push_back(syntactic(triple_to_automaton(t)));
  }
  auto phi = [&](Element x) {
    std::vector<Element> v;
    for (const auto& p : parts) v.push_back(p.morphism[x]);
    return v;
  };
  for (std::size_t i = 0; i < parts.size(); ++i)
    if (parts[i].morphism[m.identity()] != parts[i].monoid->identity()) {
      fail(r, {{"reason", "identity"}, {"component", m.name(i)}});
      return r;
    }
  for (Element x = 0; x < m.size(); ++x)
    for (Element y = 0; y < m.size(); ++y) {
      const auto px = phi(x), py = phi(y), pxy = phi(m.mul(x, y));
      bool below = true;
      for (std::size_t i = 0; i < parts.size(); ++i) {
        if (pxy[i] != parts[i].monoid->mul(px[i], py[i])) {
          fail(r, {{"reason", "not multiplicative"}, {"x", m.name(x)}, {"y", m.name(y)}});
          return r;
        }
        below = below && parts[i].monoid->leq(px[i], py[i]);
      }
      if (x != y && px == py) {
        fail(r, {{"reason", "not injective"}, {"x", m.name(x)}, {"y", m.name(y)}});
        return r;
      }
      if (below != m.leq(x, y)) {
        fail(r, {{"reason", "not an order embedding"}, {"x", m.name(x)}, {"y", m.name(y)}});
        return r;
      }
    }
  json sizes = json::array();
  for (const auto& p : parts) sizes.push_back(p.monoid->size());
  r.instance["factor_sizes"] = sizes;
  return r;
}

VerificationReport verify_recognition(const LatticeAutomaton& a, const RecognitionTriple& t) {
  VerificationReport r = make_report(
      "recognition", {{"automaton", io::automaton_to_json(a)}, {"triple", io::triple_to_json(t)}});
  if (auto w = find_difference(triple_to_automaton(t), a)) {
    fail(r, {{"word", io::word_to_json(a.alphabet(), *w)},
             {"expected", io::element_to_json(a.lattice(), evaluate(a, *w))},
             {"recognized", io::element_to_json(a.lattice(), t.coloring(t.image(*w)))}});
  }
  return r;
}

VerificationReport cons_boolean_regression(const LatticePtr& lp) {
  const Lattice& l = *lp;
  VerificationReport r = make_report("cons_boolean", {{"lattice", io::lattice_to_json(l)}});
  const std::vector<std::string> alphabet{"a"};
  const std::vector<LatticeAutomaton> members{constant_automaton(lp, alphabet, l.bottom()),
                                              constant_automaton(lp, alphabet, l.top())};
  for (const auto& member : members)
    for (Lattice::Element v = 0; v < l.size(); ++v) {
      const LatticeAutomaton image = recolor(member, LatticeMorphism::constant(lp, v));
      const bool inside = std::any_of(members.begin(), members.end(),
                                      [&](const LatticeAutomaton& m) { return equivalent(m, image); });
      if (!inside) {
        r.witness = {{"escaping_constant", io::element_to_json(l, v)}};
        return r;
      }
    }
  fail(r, {{"reason", "class is closed under constant morphisms on this lattice"}});
  return r;
}

VerificationReport check_lattice_laws(const Lattice& l) {
  VerificationReport r = make_report("lattice_laws", {{"lattice", io::lattice_to_json(l)}});
  const std::size_t n = l.size();
  auto bad = [&](const char* law, std::initializer_list<Lattice::Element> xs) {
    json w = json::array();
    for (auto x : xs) w.push_back(l.name(x));
    fail(r, {{"law", law}, {"elements", w}});
  };
  for (Lattice::Element a = 0; a < n; ++a) {
    if (l.join(a, a) != a || l.meet(a, a) != a) return bad("idempotence", {a}), r;
    for (Lattice::Element b = 0; b < n; ++b) {
      if (l.join(a, b) != l.join(b, a) || l.meet(a, b) != l.meet(b, a)) return bad("commutativity", {a, b}), r;
      if (l.join(a, l.meet(a, b)) != a || l.meet(a, l.join(a, b)) != a) return bad("absorption", {a, b}), r;
      if (l.leq(a, b) != (l.join(a, b) == b) || l.leq(a, b) != (l.meet(a, b) == a)) {
        return bad("order consistency", {a, b}), r;
      }
      for (Lattice::Element c = 0; c < n; ++c)
        if (l.join(l.join(a, b), c) != l.join(a, l.join(b, c)) ||
            l.meet(l.meet(a, b), c) != l.meet(a, l.meet(b, c)))
          return bad("associativity", {a, b, c}), r;
    }
  }
  if (!(l.dual().dual() == l)) fail(r, {{"law", "dual involution"}});
  return r;
}

VerificationReport check_ideal_representation(const OpColoring& p) {
  VerificationReport r = make_report("ideal_representation", {{"coloring", io::coloring_to_json(p)}});
  const IdealReconstruction rec = reconstruct_from_ideals(p);
  if (!rec.equal) {
    for (Element x = 0; x < p.monoid().size(); ++x)
      if (rec.coloring(x) != p(x)) {
        fail(r, {{"element", p.monoid().name(x)},
                 {"expected", io::element_to_json(p.lattice(), p(x))},
                 {"reconstructed", io::element_to_json(p.lattice(), rec.coloring(x))}});
        break;
      }
  }
  return r;
}

VerificationReport check_coloring_closure(const OpColoring& p1, const OpColoring& p2,
                                          const MonoidPtr& other, Element u,
                                          const LatticeMorphism& alpha) {
  VerificationReport r = make_report(
      "coloring_closure", {{"p1", io::coloring_to_json(p1)}, {"p2", io::coloring_to_json(p2)},
                           {"other", io::monoid_to_json(*other)}, {"u", p1.monoid().name(u)},
                           {"alpha", io::lattice_morphism_to_json(alpha)}});
  const char* step = "";
  try {
    step = "join";
    combine_colorings(CombineKind::Join, p1, p2);
    step = "meet";
    combine_colorings(CombineKind::Meet, p1, p2);
    const std::vector<OpColoring> pair{p1, p2};
    step = "product join";
    product_coloring(CombineKind::Join, pair);
    step = "product meet";
    product_coloring(CombineKind::Meet, pair);
    step = "left quotient";
    quotient_coloring(Side::Left, p1, u);
    step = "right quotient";
    quotient_coloring(Side::Right, p1, u);
    step = "postcompose";
    postcompose(alpha, p1);
    step = "precompose";
    const std::vector<MonoidPtr> factors{p1.monoid_ptr(), other};
    const DirectProduct dp = direct_product(factors);
    const MonoidMorphism& eta = dp.projections[0];
    const OpColoring pulled = precompose(p1, eta);
    step = "quotient of pullback";
    for (Element x = 0; x < dp.product->size(); ++x) {
      const OpColoring lhs = quotient_coloring(Side::Left, pulled, x);
      const OpColoring rhs = precompose(quotient_coloring(Side::Left, p1, eta(x)), eta);
      if (lhs.colors() != rhs.colors()) {
        fail(r, {{"step", step}, {"u", dp.product->name(x)}});
        return r;
      }
    }
  } catch (const Error& e) {
    fail(r, {{"step", step}, {"error", e.to_json()}});
  }
  return r;
}

VerificationReport check_closure_theorem(const LatticeAutomaton& a, const LatticeAutomaton& b,
                                         const Word& u, const FreeMorphism& h,
                                         const LatticeMorphism& alpha, std::size_t max_len) {
  VerificationReport r = make_report(
      "closure_theorem", {{"a", io::automaton_to_json(a)}, {"b", io::automaton_to_json(b)},
                          {"u", io::word_to_json(a.alphabet(), u)}, {"h", io::free_morphism_to_json(h)},
                          {"alpha", io::lattice_morphism_to_json(alpha)}, {"max_len", max_len}});
  const Lattice& l = a.lattice();
  const LatticeAutomaton join = product_combine(CombineKind::Join, a, b);
  const LatticeAutomaton meet = product_combine(CombineKind::Meet, a, b);
  const LatticeAutomaton left = quotient(Side::Left, a, u);
  const LatticeAutomaton right = quotient(Side::Right, a, u);
  const LatticeAutomaton pulled = inverse_hom(a, h);
  const LatticeAutomaton recolored = recolor(a, alpha);
  auto bad = [&](const char* part, const std::vector<std::string>& alphabet, const Word& w) {
    fail(r, {{"part", part}, {"word", io::word_to_json(alphabet, w)}});
  };
  for (const Word& w : all_words(a.num_letters(), max_len)) {
    const auto la = evaluate(a, w), lb = evaluate(b, w);
    if (evaluate(join, w) != l.join(la, lb)) return bad("join", a.alphabet(), w), r;
    if (evaluate(meet, w) != l.meet(la, lb)) return bad("meet", a.alphabet(), w), r;
    Word uw = u, wu = w;
    uw.insert(uw.end(), w.begin(), w.end());
    wu.insert(wu.end(), u.begin(), u.end());
    if (evaluate(left, w) != evaluate(a, uw)) return bad("left quotient", a.alphabet(), w), r;
    if (evaluate(right, w) != evaluate(a, wu)) return bad("right quotient", a.alphabet(), w), r;
    if (evaluate(recolored, w) != alpha(la)) return bad("recolor", a.alphabet(), w), r;
  }
  for (const Word& w : all_words(h.source_alphabet.size(), max_len))
    if (evaluate(pulled, w) != evaluate(a, h.apply(w))) return bad("inverse morphism", h.source_alphabet, w), r;
  return r;
}

VerificationReport check_cut_reconstruction(const LatticeAutomaton& a) {
  VerificationReport r = make_report("cut_reconstruction", {{"automaton", io::automaton_to_json(a)}});
  const CutReconstruction rec = reconstruct_from_cuts(a);
  r.instance["product_size"] = rec.triple.monoid->size();
  r.instance["restricted_to_image"] = rec.restricted_to_image;
  if (!rec.equal) {
    const auto w = find_difference(triple_to_automaton(rec.triple), a);
    fail(r, {{"word", w ? io::word_to_json(a.alphabet(), *w) : json(nullptr)}});
  }
  return r;
}

VerificationReport check_ideal_languages(const LatticeAutomaton& a) {
  VerificationReport r = make_report("ideal_language", {{"automaton", io::automaton_to_json(a)}});
  const SyntacticResult synt = syntactic(a);
  r.instance["syntactic_size"] = synt.monoid->size();
  for (Element m = 0; m < synt.monoid->size(); ++m) {
    const IdealLanguage il = ideal_language_construction(a, synt, m);
    if (!il.equal) {
      fail(r, {{"element", synt.monoid->name(m)}});
      return r;
    }
  }
  return r;
}

VerificationReport check_shuffle_consistency(const LatticeAutomaton& a, std::size_t bound) {
  VerificationReport r = make_report("shuffle_consistency",
                                     {{"automaton", io::automaton_to_json(a)}, {"bound", bound}});
  const bool algebraic = is_shuffle_ideal(a);
  const auto witness = shuffle_ideal_falsify(a, bound);
  r.instance["algebraic"] = algebraic;
  r.instance["falsified"] = witness.has_value();
  if (algebraic && witness) {
    fail(r, {{"subword", io::word_to_json(a.alphabet(), witness->subword)},
             {"word", io::word_to_json(a.alphabet(), witness->word)}});
  }
  return r;
}

VerificationReport replay(const json& report) {
  const std::string check = report.at("check").get<std::string>();
  const json& in = report.at("input");
  VerificationReport r;
  if (check == "lattice_laws") {
    r = check_lattice_laws(io::lattice_from_json(in.at("lattice")));
  } else if (check == "ideal_representation") {
    r = check_ideal_representation(io::coloring_from_json(in.at("coloring")));
  } else if (check == "coloring_closure") {
    const OpColoring p1 = io::coloring_from_json(in.at("p1"));
    const OpColoring p2raw = io::coloring_from_json(in.at("p2"));
    const OpColoring p2(p1.monoid_ptr(), p1.lattice_ptr(), p2raw.colors());
    auto other = std::make_shared<const OrderedMonoid>(io::monoid_from_json(in.at("other")));
    r = check_coloring_closure(p1, p2, other, p1.monoid().index(in.at("u").get<std::string>()),
                               io::lattice_morphism_from_json(p1.lattice_ptr(), in.at("alpha")));
  } else if (check == "closure_theorem") {
    const LatticeAutomaton a = io::automaton_from_json(in.at("a"));
    const LatticeAutomaton braw = io::automaton_from_json(in.at("b"));
    const LatticeAutomaton b(a.lattice_ptr(), braw.alphabet(), braw.states(), braw.initial(),
                             braw.delta(), braw.outputs());
    r = check_closure_theorem(a, b, io::word_from_json(a.alphabet(), in.at("u")),
                              io::free_morphism_from_json(in.at("h"), a.alphabet()),
                              io::lattice_morphism_from_json(a.lattice_ptr(), in.at("alpha")),
                              in.at("max_len").get<std::size_t>());
  } else if (check == "cut_reconstruction") {
    r = check_cut_reconstruction(io::automaton_from_json(in.at("automaton")));
  } else if (check == "ideal_language") {
    r = check_ideal_languages(io::automaton_from_json(in.at("automaton")));
  } else if (check == "shuffle_consistency") {
    r = check_shuffle_consistency(io::automaton_from_json(in.at("automaton")),
                                  in.at("bound").get<std::size_t>());
  } else if (check == "recognition" || check == "syntactic_minimality") {
    const LatticeAutomaton a = io::automaton_from_json(in.at("automaton"));
    const RecognitionTriple t = io::triple_from_json(in.at("triple"));
    r = check == "recognition" ? verify_recognition(a, t) : verify_syntactic_minimality(a, t);
  } else if (check == "recog_by_synt") {
    std::vector<LatticeAutomaton> langs;
    for (const auto& j : in.at("languages")) langs.push_back(io::automaton_from_json(j));
    r = verify_recog_by_synt(langs, io::triple_from_json(in.at("triple")));
  } else if (check == "subdirect") {
    r = subdirect_embedding(std::make_shared<const OrderedMonoid>(io::monoid_from_json(in.at("monoid"))));
  } else if (check == "cons_boolean") {
    r = cons_boolean_regression(std::make_shared<const Lattice>(io::lattice_from_json(in.at("lattice"))));
  } else {
    throw Error(ErrorKind::ParseError, "unknown check '" + check + "'", check);
  }
  if (report.contains("instance")) {
    for (const auto& [k, v] : report.at("instance").items())
      if (!r.instance.contains(k)) r.instance[k] = v;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Random instances

LatticePtr InstanceGenerator::lattice(std::size_t max_size) {
  const std::size_t n = 2 + below(std::max<std::size_t>(max_size, 2) - 1);
  if (n == 2) return std::make_shared<const Lattice>(standard_lattice(StandardLattice::Chain, 2));
  for (;;) {
    const std::size_t middle = n - 2;
    std::vector<std::string> names{"0"};
    for (std::size_t i = 0; i < middle; ++i) names.emplace_back(1, static_cast<char>('a' + i));
    names.push_back("1");
    const std::size_t top = n - 1;
    std::vector<std::size_t> level(middle);
    const std::size_t levels = 1 + below(middle);
    for (auto& lv : level) lv = below(levels);
    std::sort(level.begin(), level.end());
    std::vector<std::pair<std::size_t, std::size_t>> covers;
    std::vector<bool> has_upper(middle, false);
    for (std::size_t i = 0; i < middle; ++i) {
      bool has_lower = false;
      for (std::size_t j = 0; j < i; ++j)
        if (level[j] + 1 == level[i] && below(2) == 0) {
          covers.emplace_back(j + 1, i + 1);
          has_upper[j] = true;
          has_lower = true;
        }
      if (!has_lower) covers.emplace_back(0, i + 1);
    }
    for (std::size_t i = 0; i < middle; ++i)
      if (!has_upper[i]) covers.emplace_back(i + 1, top);
    try {
      return std::make_shared<const Lattice>(Lattice::from_index_pairs(names, covers));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NotALattice) throw;
    }
  }
}

const std::vector<MonoidPtr>& InstanceGenerator::pool() {
  if (pool_.empty()) {
    for (std::size_t n = 1; n <= 3; ++n)
      for (auto& m : enumerate_ordered_monoids(n)) pool_.push_back(std::make_shared<const OrderedMonoid>(std::move(m)));
  }
  return pool_;
}

MonoidPtr InstanceGenerator::monoid(std::size_t max_size) {
  const auto& p = pool();
  for (;;) {
    switch (below(3)) {
      case 0: {
        const MonoidPtr& m = p[below(p.size())];
        if (m->size() <= max_size) return m;
        break;
      }
      case 1: {
        const std::vector<MonoidPtr> factors{p[below(p.size())], p[below(p.size())]};
        if (factors[0]->size() * factors[1]->size() <= max_size) return direct_product(factors).product;
        break;
      }
      default: {
        auto l = std::make_shared<const Lattice>(standard_lattice(StandardLattice::Chain, 3));
        const SyntacticResult s = syntactic(automaton(l, 3, 2));
        if (s.monoid->size() <= max_size) return s.monoid;
        break;
      }
    }
  }
}

OpColoring InstanceGenerator::coloring(const MonoidPtr& mp, const LatticePtr& lp) {
  const OrderedMonoid& m = *mp;
  const Lattice& l = *lp;
  std::vector<Element> order(m.size());
  std::iota(order.begin(), order.end(), Element{0});
  auto down = [&](Element x) {
    std::size_t c = 0;
    for (Element y = 0; y < m.size(); ++y) c += m.leq(y, x);
    return c;
  };
  std::stable_sort(order.begin(), order.end(), [&](Element a, Element b) { return down(a) < down(b); });
  std::vector<Lattice::Element> colors(m.size(), l.bottom());
  for (Element x : order) {
    Lattice::Element lower = l.bottom();
    for (Element y = 0; y < m.size(); ++y)
      if (y != x && m.leq(y, x)) lower = l.join(lower, colors[y]);
    std::vector<Lattice::Element> candidates;
    for (Lattice::Element c = 0; c < l.size(); ++c)
      if (l.leq(lower, c)) candidates.push_back(c);
    colors[x] = candidates[below(candidates.size())];
  }
  return OpColoring(mp, lp, std::move(colors));
}

LatticeMorphism InstanceGenerator::lattice_morphism(const LatticePtr& lp) {
  const Lattice& l = *lp;
  std::vector<Lattice::Element> order(l.size());
  std::iota(order.begin(), order.end(), Lattice::Element{0});
  auto down = [&](Lattice::Element x) {
    std::size_t c = 0;
    for (Lattice::Element y = 0; y < l.size(); ++y) c += l.leq(y, x);
    return c;
  };
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return down(a) < down(b); });
  std::vector<Lattice::Element> map(l.size(), l.bottom());
  for (auto x : order) {
    Lattice::Element lower = l.bottom();
    for (Lattice::Element y = 0; y < l.size(); ++y)
      if (y != x && l.leq(y, x)) lower = l.join(lower, map[y]);
    std::vector<Lattice::Element> candidates;
    for (Lattice::Element c = 0; c < l.size(); ++c)
      if (l.leq(lower, c)) candidates.push_back(c);
    map[x] = candidates[below(candidates.size())];
  }
  return LatticeMorphism(lp, std::move(map));
}

LatticeAutomaton InstanceGenerator::automaton(const LatticePtr& lp, std::size_t max_states,
                                              std::size_t k) {
  const std::size_t n = 1 + below(max_states);
  std::vector<std::string> states;
  for (std::size_t s = 0; s < n; ++s) states.push_back("q" + std::to_string(s));
  std::vector<std::size_t> delta(n * k);
  for (auto& t : delta) t = below(n);
  std::vector<Lattice::Element> out(n);
  for (auto& o : out) o = below(lp->size());
  return LatticeAutomaton(lp, letters(k), std::move(states), 0, std::move(delta), std::move(out));
}

LatticeAutomaton InstanceGenerator::shuffle_ideal_automaton(const LatticePtr& lp, std::size_t k) {
  std::vector<MonoidPtr> candidates;
  for (const auto& m : pool())
    if (identity_is_greatest(*m)) candidates.push_back(m);
  std::vector<MonoidPtr> factors{candidates[below(candidates.size())],
                                 candidates[below(candidates.size())]};
  const MonoidPtr m = direct_product(factors).product;
  std::vector<Element> gens(k);
  for (auto& g : gens) g = below(m->size());
  RecognitionTriple t{letters(k), gens, m, coloring(m, lp)};
  return minimize(triple_to_automaton(t));
}

Word InstanceGenerator::word(std::size_t max_len, std::size_t k) {
  Word w(below(max_len + 1));
  for (auto& c : w) c = below(k);
  return w;
}

// ---------------------------------------------------------------------------

std::vector<VerificationReport> run_suite(std::uint64_t seed, const SuiteSizes& sizes) {
  InstanceGenerator gen(seed);
  std::vector<VerificationReport> reports;
  std::size_t index = 0;
  auto record = [&](VerificationReport r) {
    r.instance["seed"] = seed;
    r.instance["index"] = index++;
    reports.push_back(std::move(r));
  };

  record(check_lattice_laws(standard_lattice(StandardLattice::Powerset, 3)));
  record(check_lattice_laws(standard_lattice(StandardLattice::Chain, 5)));
  for (std::size_t i = 0; i < sizes.lattices; ++i) record(check_lattice_laws(*gen.lattice(8)));

  for (std::size_t i = 0; i < sizes.colorings; ++i) {
    const LatticePtr l = gen.lattice(8);
    const MonoidPtr m = gen.monoid(6);
    const MonoidPtr other = gen.monoid(3);
    record(check_coloring_closure(gen.coloring(m, l), gen.coloring(m, l), other, gen.below(m->size()),
                                  gen.lattice_morphism(l)));
  }

  for (std::size_t i = 0; i < sizes.ideal_representations; ++i) {
    const LatticePtr l = gen.lattice(8);
    record(check_ideal_representation(gen.coloring(gen.monoid(6), l)));
  }

  for (std::size_t i = 0; i < sizes.closure_pairs; ++i) {
    const LatticePtr l = gen.lattice(6);
    const LatticeAutomaton a = gen.automaton(l, 5, 2);
    const LatticeAutomaton b = gen.automaton(l, 5, 2);
    FreeMorphism h{letters(3), a.alphabet(), {}};
    for (std::size_t c = 0; c < 3; ++c) h.images.push_back(gen.word(2, 2));
    record(check_closure_theorem(a, b, gen.word(3, 2), h, gen.lattice_morphism(l)));
  }

  // Recognizers: transition monoids, syntactic triples and product triples.
  for (std::size_t found = 0; found < sizes.recognizers;) {
    const LatticePtr l = gen.lattice(4);
    const LatticeAutomaton a = gen.automaton(l, 4, 2);
    const TransitionMonoid tm = transition_monoid(a);
    if (tm.monoid->size() > 10) continue;
    const LatticeAutomaton trimmed = trim(a);
    std::vector<Lattice::Element> colors(tm.monoid->size());
    for (Element x = 0; x < colors.size(); ++x) colors[x] = trimmed.output(tm.maps[x][trimmed.initial()]);
    RecognitionTriple t{a.alphabet(), tm.generator_images, tm.monoid, OpColoring(tm.monoid, l, colors)};
    record(verify_syntactic_minimality(a, t));
    record(verify_syntactic_minimality(a, syntactic(a).triple()));
    ++found;

    const LatticeAutomaton b = gen.automaton(l, 3, 2);
    const SyntacticResult sa = syntactic(a), sb = syntactic(b);
    if (sa.monoid->size() * sb.monoid->size() > 10) continue;
    const std::vector<OpColoring> pair{sa.coloring, sb.coloring};
    const ProductColoring pc = product_coloring(CombineKind::Join, pair);
    std::vector<Element> gens;
    for (std::size_t c = 0; c < a.num_letters(); ++c) {
      const std::vector<Element> coords{sa.morphism[c], sb.morphism[c]};
      gens.push_back(pc.product.encode(coords));
    }
    RecognitionTriple pt{a.alphabet(), gens, pc.product.product, pc.coloring};
    record(verify_syntactic_minimality(product_combine(CombineKind::Join, a, b), pt));
    ++found;
  }

  for (std::size_t i = 0; i < sizes.cuts; ++i) {
    const LatticePtr l = gen.lattice(5);
    record(check_cut_reconstruction(gen.automaton(l, 4, 2)));
  }

  for (std::size_t i = 0; i < sizes.ideal_languages; ++i) {
    const LatticePtr l = gen.lattice(6);
    record(check_ideal_languages(gen.automaton(l, 4, 2)));
  }

  for (std::size_t i = 0; i < sizes.shuffle; ++i) {
    const LatticePtr l = gen.lattice(5);
    record(check_shuffle_consistency(i % 2 ? gen.automaton(l, 4, 2) : gen.shuffle_ideal_automaton(l, 2)));
  }

  for (std::size_t i = 0; i < sizes.recog_by_synt; ++i) {
    const LatticePtr l = gen.lattice(4);
    std::vector<LatticeAutomaton> langs{gen.automaton(l, 3, 2)};
    if (i % 2) langs.push_back(gen.automaton(l, 2, 2));
    std::vector<MonoidPtr> factors;
    for (const auto& a : langs) factors.push_back(syntactic(a).monoid);
    const DirectProduct dp = direct_product(factors);
    if (dp.product->size() > 64) continue;
    std::vector<Element> gens(3);
    for (auto& g : gens) g = gen.below(dp.product->size());
    RecognitionTriple t{letters(3), gens, dp.product, gen.coloring(dp.product, l)};
    record(verify_recog_by_synt(langs, t));
  }

  for (std::size_t n = 1; n <= 3; ++n)
    for (auto& m : enumerate_ordered_monoids(n))
      record(subdirect_embedding(std::make_shared<const OrderedMonoid>(std::move(m))));

  record(cons_boolean_regression(std::make_shared<const Lattice>(standard_lattice(StandardLattice::Chain, 3))));

  if (sizes.inject_bad_instance) {
    // A syntactic triple whose coloring is replaced by a different valid one.
    const LatticePtr l = std::make_shared<const Lattice>(standard_lattice(StandardLattice::Chain, 3));
    const LatticeAutomaton a = LatticeAutomaton(l, {"a"}, {"p", "q"}, 0, {1, 1}, {2, 0});
    const SyntacticResult s = syntactic(a);
    RecognitionTriple t = s.triple();
    t.coloring = constant_coloring(s.monoid, l, l->top());
    record(verify_recognition(a, t));
  }
  return reports;
}

}  // namespace latmon
