#include <gtest/gtest.h>

#include "latmon/syntactic.hpp"
#include "latmon/variety.hpp"
#include "support.hpp"

using namespace testing_support;
using Element = OrderedMonoid::Element;

namespace {

std::vector<Word> words_up_to(std::size_t k, std::size_t n) {
  std::vector<Word> out{Word{}};
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i].size() == n) continue;
    for (std::size_t c = 0; c < k; ++c) {
      Word w = out[i];
      w.push_back(c);
      out.push_back(w);
    }
  }
  return out;
}

Word cat(const Word& a, const Word& b, const Word& c) {
  Word w = a;
  w.insert(w.end(), b.begin(), b.end());
  w.insert(w.end(), c.begin(), c.end());
  return w;
}

// u ≼ v iff L(xuy) <= L(xvy) for all contexts up to the given lengths.
bool context_below(const LatticeAutomaton& a, const Word& u, const Word& v,
                   const std::vector<Word>& lefts, const std::vector<Word>& rights) {
  const Lattice& l = a.lattice();
  for (const auto& x : lefts)
    for (const auto& y : rights)
      if (!l.leq(evaluate(a, cat(x, u, y)), evaluate(a, cat(x, v, y)))) return false;
  return true;
}

}  // namespace

TEST(Syntactic, ConstantLanguage) {
  const LatticeAutomaton c = constant_automaton(powerset(2), {"a", "b"}, 1);
  EXPECT_EQ(syntactic(c).monoid->size(), 1u);
}

TEST(Syntactic, ContainsA) {
  const LatticeAutomaton a = load_automaton("contains_a.json");
  const SyntacticResult s = syntactic(a);
  ASSERT_EQ(s.monoid->size(), 2u);
  EXPECT_TRUE(find_isomorphism(*s.monoid, *u1("z<1")));
  EXPECT_TRUE(identity_is_greatest(*s.monoid));
  // a ≺ ε strictly, with contexts up to length 2.
  const auto ctx = words_up_to(2, 2);
  EXPECT_TRUE(context_below(a, Word{0}, Word{}, ctx, ctx));
  EXPECT_FALSE(context_below(a, Word{}, Word{0}, ctx, ctx));
  EXPECT_TRUE(recognizes(s.triple(), a));
  EXPECT_EQ(triple_to_automaton(s.triple()).num_states(), 2u);
}

TEST(Syntactic, ExampleLanguage) {
  const LatticeAutomaton a = load_automaton("dfa_a.json");
  const SyntacticResult s = syntactic(a);
  EXPECT_TRUE(is_aperiodic(*s.monoid));
  EXPECT_FALSE(identity_is_greatest(*s.monoid));
  EXPECT_TRUE(recognizes(s.triple(), a));
  EXPECT_EQ(s.morphism[1], s.morphism[2]);  // b and c act alike
  // Aperiodicity by brute-force powers: x^n = x^(n+1) for n = |M|.
  const OrderedMonoid& m = *s.monoid;
  for (Element x = 0; x < m.size(); ++x) {
    Element p = m.identity();
    for (std::size_t i = 0; i < m.size(); ++i) p = m.mul(p, x);
    EXPECT_EQ(p, m.mul(p, x));
  }
}

// Order and equality of M_L against a bounded-context oracle.
TEST(Syntactic, MatchesContextOracle) {
  InstanceGenerator gen(21);
  const auto lefts = words_up_to(2, 2);
  const auto rights = words_up_to(2, 8);
  const auto probes = words_up_to(2, 3);
  for (int i = 0; i < 12; ++i) {
    const LatticePtr l = gen.lattice(5);
    const LatticeAutomaton a = gen.automaton(l, 3, 2);
    const SyntacticResult s = syntactic(a);
    for (const auto& u : probes)
      for (const auto& v : probes) {
        const bool oracle = context_below(a, u, v, lefts, rights);
        ASSERT_EQ(s.monoid->leq(s.image(u), s.image(v)), oracle)
            << io::automaton_to_json(a).dump() << " u=" << format_word(a.alphabet(), u)
            << " v=" << format_word(a.alphabet(), v);
      }
    for (Element x = 0; x < s.monoid->size(); ++x) ASSERT_EQ(s.image(s.witnesses[x]), x);
  }
}

TEST(Syntactic, RecognizesAndTriples) {
  const LatticeAutomaton a = load_automaton("dfa_a.json");
  const SyntacticResult s = syntactic(a);
  RecognitionTriple zero = s.triple();
  zero.coloring = constant_coloring(s.monoid, a.lattice_ptr(), a.lattice().bottom());
  EXPECT_FALSE(recognizes(zero, a));

  const RecognitionTriple trivial{a.alphabet(), {0, 0, 0}, trivial_monoid(),
                                  constant_coloring(trivial_monoid(), a.lattice_ptr(), 0)};
  EXPECT_EQ(triple_to_automaton(trivial).num_states(), 1u);

  const std::vector<MonoidPtr> two{u1(), u1()};
  const DirectProduct dp = direct_product(two);
  const RecognitionTriple square{{"a", "b"}, {1, 2}, dp.product,
                                 constant_coloring(dp.product, boolean(), 0)};
  EXPECT_EQ(triple_to_automaton(square).num_states(), 4u);
}

// Join of two languages is recognized by the product of their syntactic
// monoids with the product-join coloring.
TEST(Syntactic, ProductRecognizesJoin) {
  const LatticeAutomaton a = load_automaton("dfa_a.json");
  const LatticeAutomaton b = quotient(Side::Left, a, word(a, "b"));
  const SyntacticResult sa = syntactic(a), sb = syntactic(b);
  const std::vector<OpColoring> pair{sa.coloring, sb.coloring};
  const ProductColoring pc = product_coloring(CombineKind::Join, pair);
  std::vector<Element> gens;
  for (std::size_t c = 0; c < 3; ++c)
    gens.push_back(pc.product.encode(std::vector<Element>{sa.morphism[c], sb.morphism[c]}));
  const RecognitionTriple t{a.alphabet(), gens, pc.product.product, pc.coloring};
  EXPECT_TRUE(recognizes(t, product_combine(CombineKind::Join, a, b)));
}

TEST(Syntactic, CutReconstruction) {
  const LatticeAutomaton c = constant_automaton(powerset(2), {"a"}, 2);
  const CutReconstruction rc = reconstruct_from_cuts(c);
  EXPECT_TRUE(rc.equal);
  EXPECT_EQ(rc.triple.monoid->size(), 1u);
  EXPECT_TRUE(reconstruct_from_cuts(load_automaton("contains_a.json")).equal);
  const CutReconstruction example = reconstruct_from_cuts(load_automaton("dfa_a.json"));
  EXPECT_TRUE(example.equal);
  EXPECT_FALSE(example.restricted_to_image);
}

TEST(Syntactic, ShuffleIdeals) {
  const LatticeAutomaton contains = load_automaton("contains_a.json");
  EXPECT_TRUE(is_shuffle_ideal(contains));
  EXPECT_FALSE(shuffle_ideal_falsify(contains, 8));
  EXPECT_TRUE(is_shuffle_ideal(constant_automaton(boolean(), {"a", "b"}, 1)));

  const LatticeAutomaton eps = load_automaton("empty_word.json");
  EXPECT_FALSE(is_shuffle_ideal(eps));
  const auto w = shuffle_ideal_falsify(eps, 8);
  ASSERT_TRUE(w);
  EXPECT_TRUE(w->subword.empty());
  EXPECT_EQ(w->word, (Word{0}));

  const LatticeAutomaton example = load_automaton("dfa_a.json");
  const auto ew = shuffle_ideal_falsify(example, 2);
  ASSERT_TRUE(ew);
  EXPECT_EQ(format_word(example.alphabet(), ew->subword), "a");
  EXPECT_EQ(format_word(example.alphabet(), ew->word), "ba");
  EXPECT_FALSE(is_shuffle_ideal(example));
}

TEST(Syntactic, IdealLanguages) {
  const LatticeAutomaton contains = load_automaton("contains_a.json");
  const SyntacticResult s = syntactic(contains);
  const Element z = 1 - s.monoid->identity();
  const IdealLanguage at_z = ideal_language_construction(contains, s, z);
  EXPECT_TRUE(at_z.equal);
  const IdealLanguage at_one = ideal_language_construction(contains, s, s.monoid->identity());
  EXPECT_TRUE(at_one.equal);
  EXPECT_TRUE(equivalent(at_one.automaton, constant_automaton(contains.lattice_ptr(), contains.alphabet(), 0)));

  const LatticeAutomaton example = load_automaton("dfa_a.json");
  const SyntacticResult sp = syntactic(example);
  for (Element m = 0; m < sp.monoid->size(); ++m) EXPECT_TRUE(ideal_language_construction(example, sp, m).equal);
}

TEST(Syntactic, StatePreorder) {
  const LatticeAutomaton a = load_automaton("dfa_a.json");
  const auto pre = state_preorder(a);
  const std::size_t n = a.num_states();
  // s11 and s12 are interchangeable; t2 ⪯ t1 fails since after `a` they sit in
  // different ergodic classes.
  EXPECT_TRUE(pre[2 * n + 3] && pre[3 * n + 2]);
  EXPECT_FALSE(pre[1 * n + 0]);
}
