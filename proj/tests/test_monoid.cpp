#include <gtest/gtest.h>

#include <map>

#include "latmon/variety.hpp"
#include "support.hpp"

using namespace testing_support;
using Element = OrderedMonoid::Element;

using Pairs = std::vector<std::pair<std::size_t, std::size_t>>;

TEST(OrderedMonoid, Build) {
  const MonoidPtr u = u1();
  EXPECT_EQ(u->size(), 2u);
  EXPECT_TRUE(u->leq(1, 0));
  EXPECT_FALSE(u->leq(0, 1));
  EXPECT_EQ(trivial_monoid()->size(), 1u);
  EXPECT_NO_THROW(z2());
  // 1 <= g in Z/2 forces g = g·1 <= g·g = 1.
  EXPECT_LATMON_ERROR(OrderedMonoid::build({"1", "g"}, 0, {0, 1, 1, 0}, Pairs{{0, 1}}), NotCompatible);
}

TEST(OrderedMonoid, BuildErrors) {
  // x·x = 1 except (a·b)·b != a·(b·b).
  EXPECT_LATMON_ERROR(OrderedMonoid::build({"1", "a", "b"}, 0, {0, 1, 2, 1, 2, 0, 2, 2, 1}, {}),
                      NotAssociative);
  EXPECT_LATMON_ERROR(OrderedMonoid::build({"1", "z"}, 0, {0, 1, 1, 0}, Pairs{{0, 1}, {1, 0}}),
                      NotAntisymmetric);
  EXPECT_LATMON_ERROR(OrderedMonoid::build({"1", "z"}, 0, {1, 1, 1, 1}, {}), NoIdentity);
  EXPECT_LATMON_ERROR(OrderedMonoid::build({"1", "z"}, 0, {0, 1, 1, 5}, {}), UnknownElement);
}

TEST(OrderedMonoid, DirectProduct) {
  const std::vector<MonoidPtr> two{u1(), u1()};
  const DirectProduct dp = direct_product(two);
  const OrderedMonoid& p = *dp.product;
  EXPECT_EQ(p.size(), 4u);
  EXPECT_TRUE(identity_is_greatest(p));
  EXPECT_EQ(dp.decode(dp.encode(std::vector<Element>{1, 0})), (std::vector<Element>{1, 0}));
  EXPECT_EQ(dp.projections[0](dp.encode(std::vector<Element>{1, 0})), 1u);
  EXPECT_NO_THROW(p.validate());

  const std::vector<MonoidPtr> one{z2()};
  EXPECT_TRUE(find_isomorphism(*direct_product(one).product, *z2()));
  const std::vector<MonoidPtr> with_trivial{trivial_monoid(), u1("1<z")};
  EXPECT_TRUE(find_isomorphism(*direct_product(with_trivial).product, *u1("1<z")));
  const std::vector<MonoidPtr> big(13, u1());
  EXPECT_LATMON_ERROR(direct_product(big), SizeCapExceeded);
}

TEST(OrderedMonoid, GeneratedSubmonoid) {
  const MonoidPtr u = u1();
  const std::vector<Element> all{0, 1};
  const Submonoid whole = generated_submonoid(u, all);
  EXPECT_TRUE(find_isomorphism(*whole.monoid, *u));
  const Submonoid none = generated_submonoid(u, {});
  EXPECT_EQ(none.monoid->size(), 1u);

  const std::vector<MonoidPtr> two{u1(), u1()};
  const DirectProduct dp = direct_product(two);
  const std::vector<Element> gen{dp.encode(std::vector<Element>{1, 0})};
  const Submonoid s = generated_submonoid(dp.product, gen);
  EXPECT_EQ(s.carrier, (std::vector<Element>{dp.encode(std::vector<Element>{0, 0}), gen[0]}));
  EXPECT_EQ(s.monoid->size(), 2u);
}

TEST(OrderedMonoid, Predicates) {
  EXPECT_TRUE(is_aperiodic(*u1()));
  EXPECT_FALSE(is_aperiodic(*z2()));
  EXPECT_TRUE(identity_is_greatest(*u1("z<1")));
  EXPECT_FALSE(identity_is_greatest(*u1("1<z")));
  const std::vector<MonoidPtr> two{u1(), u1()};
  EXPECT_TRUE(identity_is_greatest(*direct_product(two).product));
  EXPECT_FALSE(find_isomorphism(*u1("z<1"), *u1("1<z")));
}

TEST(OrderedMonoid, Morphisms) {
  EXPECT_NO_THROW(MonoidMorphism(u1(), trivial_monoid(), {0, 0}));
  EXPECT_LATMON_ERROR(MonoidMorphism(u1(), u1(), {1, 1}), NotAMorphism);
  // The identity map reverses z<1.
  EXPECT_LATMON_ERROR(MonoidMorphism(u1("z<1"), u1("1<z"), {0, 1}), NotOrderPreserving);
}

TEST(Division, Basics) {
  const DivisionVerdict self = divides(*u1(), *u1());
  EXPECT_EQ(self.kind, DivisionVerdict::Kind::Yes);
  EXPECT_EQ(divides(*trivial_monoid(), *u1()).kind, DivisionVerdict::Kind::Yes);
  EXPECT_EQ(divides(*trivial_monoid(), *trivial_monoid()).kind, DivisionVerdict::Kind::Yes);
  EXPECT_EQ(divides(*z2(), *u1()).kind, DivisionVerdict::Kind::No);
  EXPECT_EQ(divides(*u1("1<z"), *u1("z<1")).kind, DivisionVerdict::Kind::No);
  // A quotient of a submonoid of a product.
  const std::vector<MonoidPtr> factors{z2(), u1()};
  EXPECT_EQ(divides(*u1(), *direct_product(factors).product).kind, DivisionVerdict::Kind::Yes);
  EXPECT_EQ(divides(*z2(), *direct_product(factors).product).kind, DivisionVerdict::Kind::Yes);
}

TEST(Division, Budget) {
  const std::vector<MonoidPtr> factors{u1(), u1(), u1()};
  DivisionBudget tiny;
  tiny.max_search_nodes = 1;
  EXPECT_EQ(divides(*z2(), *direct_product(factors).product, tiny).kind,
            DivisionVerdict::Kind::BudgetExhausted);
}

TEST(Division, WitnessIsAMorphism) {
  const std::vector<MonoidPtr> factors{u1(), u1("1<z")};
  const MonoidPtr m = direct_product(factors).product;
  const DivisionVerdict v = divides(*u1("1<z"), *m);
  ASSERT_EQ(v.kind, DivisionVerdict::Kind::Yes);
  std::map<Element, Element> phi(v.mapping.begin(), v.mapping.end());
  for (auto [x, fx] : phi)
    for (auto [y, fy] : phi) {
      ASSERT_TRUE(phi.count(m->mul(x, y)));
      EXPECT_EQ(phi[m->mul(x, y)], u1("1<z")->mul(fx, fy));
      if (m->leq(x, y)) {
        EXPECT_TRUE(u1("1<z")->leq(fx, fy));
      }
    }
}

// ---------------------------------------------------------------------------

class Colorings : public ::testing::Test {
 protected:
  LatticePtr p2 = powerset(2);
  MonoidPtr u = u1();
  Lattice::Element e(const char* n) { return p2->index(n); }
};

TEST_F(Colorings, Validation) {
  EXPECT_NO_THROW(constant_coloring(u, p2, e("{1}")));
  EXPECT_NO_THROW(OpColoring(u, p2, {e("{1,2}"), e("{}")}));
  EXPECT_LATMON_ERROR(OpColoring(u, p2, {e("{}"), e("{1}")}), NotOrderPreserving);
}

TEST_F(Colorings, JoinMeet) {
  const OpColoring p(u, p2, {e("{1,2}"), e("{}")});
  EXPECT_EQ(combine_colorings(CombineKind::Join, p, constant_coloring(u, p2, p2->bottom())), p);
  EXPECT_EQ(combine_colorings(CombineKind::Meet, p, p), p);
  const OpColoring p1(u, p2, {e("{1,2}"), e("{}")});
  const OpColoring q(u, p2, {e("{1}"), e("{1}")});
  EXPECT_EQ(combine_colorings(CombineKind::Join, p1, q)(1), e("{1}"));
}

TEST_F(Colorings, Products) {
  const std::vector<OpColoring> consts{constant_coloring(u, p2, e("{1}")), constant_coloring(u, p2, e("{2}"))};
  const ProductColoring j = product_coloring(CombineKind::Join, consts);
  for (Element x = 0; x < j.product.product->size(); ++x) EXPECT_EQ(j.coloring(x), e("{1,2}"));

  const OpColoring p(u, p2, {e("{1,2}"), e("{}")});
  const std::vector<OpColoring> with_top{p, constant_coloring(u, p2, p2->top())};
  const ProductColoring m = product_coloring(CombineKind::Meet, with_top);
  for (Element x = 0; x < m.product.product->size(); ++x)
    EXPECT_EQ(m.coloring(x), p(m.product.projections[0](x)));

  const std::vector<OpColoring> pair{OpColoring(u, p2, {e("{1,2}"), e("{}")}),
                                     OpColoring(u, p2, {e("{1,2}"), e("{1}")})};
  const ProductColoring pj = product_coloring(CombineKind::Join, pair);
  EXPECT_EQ(pj.coloring(pj.product.encode(std::vector<Element>{1, 0})), e("{1,2}"));
}

TEST_F(Colorings, Quotients) {
  const OpColoring p(u, p2, {e("{1,2}"), e("{}")});
  EXPECT_EQ(quotient_coloring(Side::Left, p, 0), p);
  EXPECT_EQ(quotient_coloring(Side::Right, p, 0), p);
  EXPECT_EQ(quotient_coloring(Side::Left, p, 1), constant_coloring(u, p2, e("{}")));
}

// (z\P)/z = z\(P/z) = x ↦ P(zxz), over every coloring of every small monoid.
TEST_F(Colorings, QuotientsCommute) {
  InstanceGenerator gen(11);
  for (int i = 0; i < 40; ++i) {
    const MonoidPtr m = gen.monoid(6);
    const LatticePtr l = gen.lattice(6);
    const OpColoring p = gen.coloring(m, l);
    for (Element z = 0; z < m->size(); ++z) {
      const OpColoring a = quotient_coloring(Side::Right, quotient_coloring(Side::Left, p, z), z);
      const OpColoring b = quotient_coloring(Side::Left, quotient_coloring(Side::Right, p, z), z);
      ASSERT_EQ(a, b);
      for (Element x = 0; x < m->size(); ++x) ASSERT_EQ(a(x), p(m->mul(m->mul(z, x), z)));
    }
  }
}

TEST_F(Colorings, Precompose) {
  const OpColoring p(u, p2, {e("{1,2}"), e("{}")});
  EXPECT_EQ(precompose(p, MonoidMorphism::identity(u)), p);
  const std::vector<MonoidPtr> two{u, u};
  const DirectProduct dp = direct_product(two);
  const OpColoring pulled = precompose(p, dp.projections[0]);
  for (Element x = 0; x < dp.product->size(); ++x) EXPECT_EQ(pulled(x), p(dp.decode(x)[0]));
  // u\(P∘η) = (η(u)\P)∘η for all u.
  for (Element x = 0; x < dp.product->size(); ++x)
    EXPECT_EQ(quotient_coloring(Side::Left, pulled, x),
              precompose(quotient_coloring(Side::Left, p, dp.projections[0](x)), dp.projections[0]));
}

TEST_F(Colorings, Postcompose) {
  const OpColoring p(u, p2, {e("{1,2}"), e("{1}")});
  EXPECT_EQ(postcompose(LatticeMorphism::constant(p2, p2->bottom()), p), constant_coloring(u, p2, p2->bottom()));
  EXPECT_EQ(postcompose(LatticeMorphism::identity(p2), p), p);
  const OpColoring two_valued = postcompose(LatticeMorphism::threshold(p2, e("{1}")), p);
  EXPECT_EQ(two_valued.colors(), (std::vector<Lattice::Element>{p2->top(), p2->bottom()}));
}

TEST_F(Colorings, Ideals) {
  const OpColoring iz = ideal_coloring(u, 1, p2);
  EXPECT_EQ(iz.colors(), (std::vector<Lattice::Element>{p2->top(), p2->bottom()}));
  EXPECT_EQ(ideal_coloring(u, 0, p2), constant_coloring(u, p2, p2->bottom()));

  EXPECT_TRUE(reconstruct_from_ideals(constant_coloring(u, p2, e("{2}"))).equal);
  const OpColoring p(u, p2, {e("{1}"), e("{}")});
  const IdealReconstruction r = reconstruct_from_ideals(p);
  EXPECT_TRUE(r.equal);
  EXPECT_EQ(r.coloring, p);
}

TEST_F(Colorings, IdealRepresentationRandom) {
  InstanceGenerator gen(5);
  for (int i = 0; i < 100; ++i) {
    const OpColoring p = gen.coloring(gen.monoid(6), gen.lattice(8));
    // Independent evaluation of ⋀_m (ι[m] ∨ cons(P(m))).
    const Lattice& l = p.lattice();
    const OrderedMonoid& m = p.monoid();
    for (Element x = 0; x < m.size(); ++x) {
      Lattice::Element acc = l.top();
      for (Element y = 0; y < m.size(); ++y) acc = l.meet(acc, m.leq(x, y) ? p(y) : l.top());
      ASSERT_EQ(acc, p(x));
    }
    ASSERT_TRUE(reconstruct_from_ideals(p).equal);
  }
}

TEST(MonoidJson, RoundTrip) {
  const std::vector<MonoidPtr> two{u1(), z2()};
  const DirectProduct dp = direct_product(two);
  const OrderedMonoid& p = *dp.product;
  EXPECT_EQ(io::monoid_from_json(io::monoid_to_json(p)), p);
  const OpColoring c(u1(), powerset(2), {3, 0});
  EXPECT_EQ(io::coloring_from_json(io::coloring_to_json(c)), c);
}
