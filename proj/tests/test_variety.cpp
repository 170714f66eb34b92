#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "latmon/variety.hpp"
#include "monoid_oracle.hpp"
#include "support.hpp"

using namespace testing_support;
using Element = OrderedMonoid::Element;
using Verdict = VerificationReport::Verdict;

using namespace monoid_oracle;

TEST(Enumeration, SmallCounts) {
  EXPECT_EQ(enumerate_ordered_monoids(1).size(), 1u);
  const auto two = enumerate_ordered_monoids(2);
  ASSERT_EQ(two.size(), 4u);
  std::size_t groups = 0;
  for (const auto& m : two) {
    EXPECT_NO_THROW(m.validate());
    if (!is_aperiodic(m)) {
      ++groups;
      EXPECT_TRUE(find_isomorphism(m, *z2()));
    }
  }
  EXPECT_EQ(groups, 1u);
  for (const char* order : {"z<1", "1<z", "eq"}) {
    const MonoidPtr u = u1(order);
    EXPECT_EQ(std::count_if(two.begin(), two.end(), [&](const OrderedMonoid& m) { return find_isomorphism(m, *u); }), 1);
  }
  EXPECT_LATMON_ERROR(enumerate_ordered_monoids(5), SizeCapExceeded);
  EXPECT_LATMON_ERROR(enumerate_ordered_monoids(0), SizeCapExceeded);
}

TEST(Enumeration, MatchesOracle) {
  for (std::size_t n = 1; n <= 3; ++n) {
    Oracle oracle(n);
    oracle.enumerate();
    const auto ours = enumerate_ordered_monoids(n);
    ASSERT_EQ(ours.size(), oracle.count()) << "n=" << n;
    for (std::size_t i = 0; i < ours.size(); ++i) {
      EXPECT_NO_THROW(ours[i].validate());
      EXPECT_TRUE(oracle.contains(raw(ours[i])));
      for (std::size_t j = 0; j < i; ++j) EXPECT_FALSE(find_isomorphism(ours[i], ours[j]));
    }
  }
}

// Shuffle every enumerated monoid with seeded relabellings and recount.
TEST(Enumeration, RelabelRecount) {
  for (std::uint64_t seed : {1u, 2u}) {
    std::mt19937_64 rng(seed);
    const auto ours = enumerate_ordered_monoids(3);
    Oracle recount(3);
    for (const auto& m : ours) {
      std::vector<std::size_t> p(3);
      std::iota(p.begin(), p.end(), std::size_t{0});
      std::shuffle(p.begin(), p.end(), rng);
      recount.add(relabel(raw(m), p));
    }
    EXPECT_EQ(recount.count(), ours.size());
  }
}

TEST(Subdirect, Examples) {
  EXPECT_EQ(subdirect_embedding(trivial_monoid()).verdict, Verdict::Pass);
  EXPECT_EQ(subdirect_embedding(u1("z<1")).verdict, Verdict::Pass);
  for (auto& m : enumerate_ordered_monoids(2)) {
    const MonoidPtr mp = share(std::move(m));
    const VerificationReport r = subdirect_embedding(mp);
    ASSERT_EQ(r.verdict, Verdict::Pass) << r.to_json().dump();
  }
}

// A monoid that embeds in the product of its syntactic factors divides it.
TEST(Subdirect, ImpliesDivision) {
  const LatticePtr b = boolean();
  for (auto& m : enumerate_ordered_monoids(3)) {
    const MonoidPtr mp = share(std::move(m));
    ASSERT_EQ(subdirect_embedding(mp).verdict, Verdict::Pass);
    std::vector<Element> eval(mp->size());
    std::iota(eval.begin(), eval.end(), Element{0});
    std::vector<MonoidPtr> factors;
    for (Element e = 0; e < mp->size(); ++e) {
      const RecognitionTriple t{mp->names(), eval, mp, ideal_coloring(mp, e, b)};
      factors.push_back(syntactic(triple_to_automaton(t)).monoid);
    }
    EXPECT_EQ(divides(*mp, *direct_product(factors).product).kind, DivisionVerdict::Kind::Yes);
  }
}

TEST(RecogBySynt, SingleLanguage) {
  const LatticeAutomaton a = load_automaton("dfa_a.json");
  const SyntacticResult s = syntactic(a);
  const std::vector<LatticeAutomaton> langs{a};
  EXPECT_EQ(verify_recog_by_synt(langs, s.triple()).verdict, Verdict::Pass);
}

TEST(RecogBySynt, TwoCutsOfContainsA) {
  const LatticeAutomaton a = load_automaton("contains_a.json");
  const std::vector<LatticeAutomaton> cuts{cut(a, 0), cut(a, 1)};
  std::vector<MonoidPtr> factors;
  std::vector<SyntacticResult> parts;
  for (const auto& c : cuts) {
    parts.push_back(syntactic(c));
    factors.push_back(parts.back().monoid);
  }
  const DirectProduct dp = direct_product(factors);
  std::vector<Element> gens;
  for (std::size_t c = 0; c < 2; ++c)
    gens.push_back(dp.encode(std::vector<Element>{parts[0].morphism[c], parts[1].morphism[c]}));
  const OpColoring p = precompose(parts[0].coloring, dp.projections[0]);
  const RecognitionTriple t{a.alphabet(), gens, dp.product, p};
  EXPECT_EQ(verify_recog_by_synt(cuts, t).verdict, Verdict::Pass);
}

TEST(RecogBySynt, CarrierMismatch) {
  const LatticeAutomaton a = load_automaton("contains_a.json");
  const std::vector<LatticeAutomaton> langs{a};
  const RecognitionTriple wrong{a.alphabet(), {0, 0}, trivial_monoid(),
                                constant_coloring(trivial_monoid(), a.lattice_ptr(), 0)};
  EXPECT_LATMON_ERROR(verify_recog_by_synt(langs, wrong), MismatchedCarrier);
}

// Raising one color above the order is either rejected or caught with a word.
TEST(Recognition, CorruptedColoring) {
  const LatticeAutomaton a = load_automaton("dfa_a.json");
  const SyntacticResult s = syntactic(a);
  const Lattice& l = a.lattice();
  std::size_t rejected = 0, caught = 0;
  for (Element x = 0; x < s.monoid->size(); ++x) {
    if (s.coloring(x) == l.top()) continue;
    std::vector<Lattice::Element> colors = s.coloring.colors();
    colors[x] = l.top();
    try {
      RecognitionTriple t = s.triple();
      t.coloring = OpColoring(s.monoid, a.lattice_ptr(), colors);
      const VerificationReport r = verify_recognition(a, t);
      ASSERT_EQ(r.verdict, Verdict::Fail);
      ASSERT_TRUE(r.witness.contains("word"));
      ++caught;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::NotOrderPreserving);
      ++rejected;
    }
  }
  EXPECT_GT(rejected + caught, 0u);
}

TEST(Minimality, Examples) {
  const LatticeAutomaton a = load_automaton("dfa_a.json");
  EXPECT_EQ(verify_syntactic_minimality(a, syntactic(a).triple()).verdict, Verdict::Pass);
  const TransitionMonoid tm = transition_monoid(a);
  std::vector<Lattice::Element> colors;
  for (std::size_t x = 0; x < tm.monoid->size(); ++x) colors.push_back(evaluate(a, tm.words[x]));
  const RecognitionTriple t{a.alphabet(), tm.generator_images, tm.monoid,
                            OpColoring(tm.monoid, a.lattice_ptr(), colors)};
  EXPECT_EQ(verify_syntactic_minimality(a, t).verdict, Verdict::Pass);

  const LatticeAutomaton other = load_automaton("contains_a.json");
  const RecognitionTriple wrong = syntactic(other).triple();
  EXPECT_LATMON_ERROR(verify_syntactic_minimality(load_automaton("empty_word.json"), wrong), NotARecognizer);
}

TEST(ConsBoolean, NotClosed) {
  const VerificationReport r = cons_boolean_regression(chain(3));
  EXPECT_EQ(r.verdict, Verdict::Pass);
  EXPECT_EQ(r.witness["escaping_constant"], "1");
  // Over 𝔹 itself the two constants are closed.
  EXPECT_EQ(cons_boolean_regression(boolean()).verdict, Verdict::Fail);
}

namespace {

SuiteSizes small_sizes() {
  SuiteSizes s;
  s.lattices = 5;
  s.colorings = 10;
  s.ideal_representations = 10;
  s.closure_pairs = 5;
  s.recognizers = 4;
  s.cuts = 4;
  s.ideal_languages = 3;
  s.shuffle = 4;
  s.recog_by_synt = 3;
  return s;
}

}  // namespace

TEST(Suite, DeterministicAndGreen) {
  const auto a = run_suite(9, small_sizes());
  const auto b = run_suite(9, small_sizes());
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].to_json().dump(), b[i].to_json().dump());
    EXPECT_EQ(a[i].verdict, Verdict::Pass) << a[i].to_json().dump();
  }
}

TEST(Suite, InjectedFailureReplays) {
  SuiteSizes s = small_sizes();
  s.inject_bad_instance = true;
  const auto reports = run_suite(0, s);
  std::vector<VerificationReport> fails;
  for (const auto& r : reports)
    if (r.verdict == Verdict::Fail) fails.push_back(r);
  ASSERT_EQ(fails.size(), 1u);
  EXPECT_TRUE(fails[0].witness.contains("word"));
  const VerificationReport again = replay(nlohmann::json::parse(fails[0].to_json().dump()));
  EXPECT_EQ(again.verdict, Verdict::Fail);
  EXPECT_EQ(again.witness, fails[0].witness);
}

TEST(Suite, EveryReportReplays) {
  for (const auto& r : run_suite(4, small_sizes())) {
    const VerificationReport again = replay(nlohmann::json::parse(r.to_json().dump()));
    ASSERT_EQ(again.to_json().dump(), r.to_json().dump()) << r.check;
  }
}
