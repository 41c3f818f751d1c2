#include <gtest/gtest.h>

#include "ncdef/errors.hpp"
#include "ncdef/polynomial.hpp"

using namespace ncdef;

namespace {

const std::vector<std::string> kXY{"x", "y"};

Polynomial P(const char* s) { return parse_polynomial(s, kXY); }

// Buchberger's criterion checked directly: every S-polynomial reduces to zero.
bool satisfies_buchberger(const std::vector<Polynomial>& g, const MonomialOrder& o) {
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = i + 1; j < g.size(); ++j)
      if (!reduce(s_polynomial(g[i], g[j], o), g, o).is_zero()) return false;
  return true;
}

}  // namespace

TEST(Polynomial, ParseAndPrint) {
  EXPECT_EQ(P("(x + y)^2").to_string(kXY), "x^2 + 2*x*y + y^2");
  EXPECT_EQ(P("x*y - y*x").to_string(kXY), "0");
  EXPECT_EQ(P("1/2*x - 3/4").to_string(kXY), "1/2*x - 3/4");
  EXPECT_EQ(P("(2*x)/4").to_string(kXY), "1/2*x");
  EXPECT_EQ(P("x^-2").pow(-1), P("x^2"));
}

TEST(Polynomial, ParseErrors) {
  EXPECT_THROW(P("x +"), InvalidInput);
  EXPECT_THROW(P("w"), InvalidInput);
  EXPECT_THROW(P("x/y"), InvalidInput);
  EXPECT_THROW(P("(x"), InvalidInput);
  EXPECT_THROW(P("x/0"), InvalidInput);
}

TEST(Polynomial, DeglexAndWeightedOrders) {
  const auto dl = MonomialOrder::deglex(2);
  EXPECT_TRUE(dl.greater({1, 1}, {0, 2}));
  EXPECT_TRUE(dl.greater({0, 3}, {2, 0}));
  // weights (2,3) with y most significant
  const MonomialOrder w({2, 3}, {1, 0});
  EXPECT_EQ(w.weight({3, 0}), 6);
  EXPECT_EQ(w.weight({0, 2}), 6);
  EXPECT_TRUE(w.greater({0, 2}, {3, 0}));
  const MonomialOrder wx({2, 3}, {0, 1});
  EXPECT_TRUE(wx.greater({3, 0}, {0, 2}));
}

TEST(Groebner, TextbookExampleGrlex) {
  // <x^3 - 2xy, x^2 y - 2y^2 + x> has reduced grlex basis {x^2, xy, y^2 - x/2}.
  const auto o = MonomialOrder::deglex(2);
  auto g = groebner_basis({P("x^3 - 2*x*y"), P("x^2*y - 2*y^2 + x")}, o);
  ASSERT_EQ(g.size(), 3u);
  std::vector<std::string> got;
  for (const auto& p : g) got.push_back(p.to_string(kXY));
  std::sort(got.begin(), got.end());
  EXPECT_EQ(got, (std::vector<std::string>{"x*y", "x^2", "y^2 - 1/2*x"}));
  EXPECT_TRUE(satisfies_buchberger(g, o));
}

TEST(Groebner, MembershipAgreesWithExplicitCombination) {
  const auto o = MonomialOrder::deglex(2);
  const Polynomial f = P("x^2 - y"), h = P("x*y - 1");
  const auto g = groebner_basis({f, h}, o);
  EXPECT_TRUE(satisfies_buchberger(g, o));
  const Polynomial member = P("3*x + y^2") * f + P("x - 7") * h;
  EXPECT_TRUE(reduce(member, g, o).is_zero());
  EXPECT_FALSE(reduce(P("x + 1"), g, o).is_zero());
  // Normal forms are unique: two representatives of one class agree.
  EXPECT_EQ(reduce(P("x^5") + member, g, o), reduce(P("x^5"), g, o));
}

TEST(Groebner, UnitIdealAndCoprimeLeads) {
  const auto o = MonomialOrder::deglex(2);
  const auto unit = groebner_basis({P("x"), P("x - 1")}, o);
  ASSERT_EQ(unit.size(), 1u);
  EXPECT_EQ(unit[0], Polynomial::constant(2, 1));
  const auto cop = groebner_basis({P("x^2 + y"), P("y^3 - 1")}, o);
  EXPECT_EQ(cop.size(), 2u);
  EXPECT_TRUE(satisfies_buchberger(cop, o));
}

TEST(Groebner, EllipticRelationWeightedLeadingTerm) {
  const MonomialOrder w({2, 3}, {0, 1});
  const auto g = groebner_basis({P("y^2 - x^3 - x - 1")}, w);
  ASSERT_EQ(g.size(), 1u);
  const auto [lt, lc] = g[0].leading(w);
  EXPECT_EQ(lt, (Exponents{3, 0}));
  EXPECT_EQ(lc, Scalar(1));
}
