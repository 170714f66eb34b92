#include <gtest/gtest.h>

#include "latmon/variety.hpp"
#include "support.hpp"

using namespace testing_support;

class ExampleDfa : public ::testing::Test {
 protected:
  LatticeAutomaton a = load_automaton("dfa_a.json");
  const Lattice& l = a.lattice();
  Lattice::Element value(const std::string& w) { return evaluate(a, word(a, w)); }
  Lattice::Element e(const char* n) { return l.index(n); }
};

TEST_F(ExampleDfa, Evaluate) {
  EXPECT_EQ(value("ab"), e("{1}"));
  EXPECT_EQ(value("bbc"), e("{1,2}"));
  EXPECT_EQ(value(""), e("{1,2}"));
  EXPECT_EQ(value("ba"), e("{2}"));
}

TEST_F(ExampleDfa, Quotients) {
  const LatticeAutomaton left = quotient(Side::Left, a, word(a, "a"));
  EXPECT_EQ(evaluate(left, word(a, "b")), e("{1}"));
  const LatticeAutomaton right = quotient(Side::Right, a, word(a, "c"));
  EXPECT_EQ(evaluate(right, word(a, "bb")), e("{1,2}"));
  EXPECT_TRUE(equivalent(quotient(Side::Left, a, {}), a));
  EXPECT_TRUE(equivalent(quotient(Side::Right, a, {}), a));
}

TEST_F(ExampleDfa, InverseMorphism) {
  FreeMorphism id{a.alphabet(), a.alphabet(), {{0}, {1}, {2}}};
  EXPECT_TRUE(equivalent(inverse_hom(a, id), a));
  FreeMorphism x_ab{{"x"}, a.alphabet(), {word(a, "ab")}};
  const LatticeAutomaton pulled = inverse_hom(a, x_ab);
  EXPECT_EQ(evaluate(pulled, Word{0}), e("{1}"));
  FreeMorphism erase{{"x"}, a.alphabet(), {Word{}}};
  EXPECT_TRUE(equivalent(inverse_hom(a, erase), constant_automaton(a.lattice_ptr(), {"x"}, value(""))));
}

TEST_F(ExampleDfa, Recolor) {
  EXPECT_TRUE(equivalent(recolor(a, LatticeMorphism::identity(a.lattice_ptr())), a));
  const LatticeAutomaton zero = recolor(a, LatticeMorphism::constant(a.lattice_ptr(), l.bottom()));
  EXPECT_TRUE(equivalent(zero, constant_automaton(a.lattice_ptr(), a.alphabet(), l.bottom())));
  EXPECT_FALSE(equivalent(zero, a));
  const LatticeAutomaton reaches_c1 = recolor(a, LatticeMorphism::threshold(a.lattice_ptr(), e("{1}")));
  EXPECT_TRUE(equivalent(reaches_c1, cut(a, e("{1}"))));
}

TEST_F(ExampleDfa, Cut) {
  const LatticeAutomaton c = cut(a, e("{1}"));
  EXPECT_EQ(evaluate(c, word(a, "ab")), l.bottom());
  EXPECT_EQ(evaluate(c, word(a, "bbc")), l.top());
  EXPECT_TRUE(equivalent(cut(a, l.top()), constant_automaton(a.lattice_ptr(), a.alphabet(), l.bottom())));
}

TEST_F(ExampleDfa, Minimize) {
  const LatticeAutomaton m = minimize(a);
  EXPECT_EQ(m.num_states(), 4u);
  EXPECT_EQ(m.states(), (std::vector<std::string>{"t1", "{s11,s12}", "t2", "{s21,s22}"}));
  EXPECT_TRUE(equivalent(m, a));
  EXPECT_EQ(minimize(m).num_states(), 4u);
  EXPECT_EQ(minimize(constant_automaton(a.lattice_ptr(), a.alphabet(), e("{2}"))).num_states(), 1u);
}

TEST_F(ExampleDfa, Combine) {
  const LatticeAutomaton top = constant_automaton(a.lattice_ptr(), a.alphabet(), l.top());
  EXPECT_TRUE(equivalent(product_combine(CombineKind::Join, a, a), a));
  EXPECT_TRUE(equivalent(product_combine(CombineKind::Meet, a, top), a));
  EXPECT_TRUE(equivalent(product_combine(CombineKind::Join, a, top), top));
  const LatticeAutomaton b = cut(a, e("{2}"));
  const LatticeAutomaton b_on_a = recolor(b, LatticeMorphism::identity(a.lattice_ptr()));
  EXPECT_TRUE(equivalent(product_combine(CombineKind::Join, a, b_on_a), product_combine(CombineKind::Join, b_on_a, a)));
}

TEST_F(ExampleDfa, TransitionMonoid) {
  const TransitionMonoid tm = transition_monoid(a);
  EXPECT_EQ(tm.generator_images[1], tm.generator_images[2]);
  EXPECT_EQ(tm.monoid->identity(), 0u);
  EXPECT_TRUE(tm.words[0].empty());
  for (std::size_t s = 0; s < tm.states.size(); ++s) EXPECT_EQ(tm.maps[0][s], s);
  const LatticeAutomaton one = constant_automaton(a.lattice_ptr(), a.alphabet(), l.top());
  EXPECT_EQ(transition_monoid(one).monoid->size(), 1u);
}

TEST_F(ExampleDfa, FindDifference) {
  EXPECT_FALSE(find_difference(a, minimize(a)));
  const auto w = find_difference(a, cut(a, e("{1}")));
  ASSERT_TRUE(w);
  const LatticeAutomaton c = cut(a, e("{1}"));
  EXPECT_NE(evaluate(a, *w), evaluate(c, *w));
  EXPECT_EQ(format_word(a.alphabet(), *w), "a");  // ε maps to {1,2} on both sides
}

TEST(Automaton, Validation) {
  const LatticePtr b = boolean();
  EXPECT_LATMON_ERROR(LatticeAutomaton(b, {"a"}, {"p"}, 0, {0}, {2}), UnknownElement);
  EXPECT_LATMON_ERROR(LatticeAutomaton(b, {"a"}, {"p"}, 0, {1}, {0}), IncompleteAutomaton);
  EXPECT_LATMON_ERROR(LatticeAutomaton(b, {"a"}, {"p"}, 0, {}, {0}), IncompleteAutomaton);
  EXPECT_LATMON_ERROR(LatticeAutomaton(b, {"a"}, {"p"}, 2, {0}, {0}), NoInitial);
  nlohmann::json partial = io::read_json_file(data_path("contains_a.json"));
  partial["delta"]["p"].erase("b");
  EXPECT_LATMON_ERROR(io::automaton_from_json(partial), IncompleteAutomaton);
}

TEST(Automaton, WordsAndJson) {
  const LatticeAutomaton a = load_automaton("contains_a.json");
  EXPECT_EQ(parse_word(a.alphabet(), "abba"), (Word{0, 1, 1, 0}));
  EXPECT_LATMON_ERROR(parse_word(a.alphabet(), "abz"), UnknownLetter);
  const LatticeAutomaton back = io::automaton_from_json(io::automaton_to_json(a));
  EXPECT_EQ(io::automaton_to_json(back), io::automaton_to_json(a));
  const std::vector<std::string> multi{"ℓ1", "ℓ2"};
  EXPECT_EQ(parse_word(multi, "ℓ2 ℓ1"), (Word{1, 0}));
  EXPECT_EQ(io::word_to_json(multi, Word{1, 0}), nlohmann::json({"ℓ2", "ℓ1"}));
}

// Closure operations agree with their pointwise definitions on random instances.
TEST(Automaton, ClosureRandom) {
  InstanceGenerator gen(3);
  for (int i = 0; i < 30; ++i) {
    const LatticePtr l = gen.lattice(6);
    const LatticeAutomaton a = gen.automaton(l, 5, 2);
    const LatticeAutomaton b = gen.automaton(l, 5, 2);
    FreeMorphism h{{"x", "y", "z"}, a.alphabet(), {gen.word(2, 2), gen.word(2, 2), gen.word(2, 2)}};
    const auto r = check_closure_theorem(a, b, gen.word(3, 2), h, gen.lattice_morphism(l), 5);
    ASSERT_EQ(r.verdict, VerificationReport::Verdict::Pass) << r.to_json().dump();
    ASSERT_TRUE(equivalent(minimize(a), a));
    ASSERT_TRUE(equivalent(relabel(a), a));
  }
}
