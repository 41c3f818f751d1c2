#include <gtest/gtest.h>

#include "ncdef/affine_algebra.hpp"
#include "ncdef/errors.hpp"

using namespace ncdef;

namespace {

AlgebraPtr elliptic_u3() {
  return PresentedAlgebra::create({"A3", {"x", "y"}, std::string("y"), {"y^2 - x^3 - x - 1"}, {}, {"x", "y", "y^-1"}});
}

AlgebraPtr elliptic_u2() {
  return PresentedAlgebra::create({"A2", {"x", "y"}, std::nullopt, {"y^2 - x^3 - x - 1"}, {2, 3}, {"x", "y"}});
}

}  // namespace

TEST(PresentedAlgebra, InverseGeneratorIsInternal) {
  const auto a = elliptic_u3();
  EXPECT_EQ(a->internal_count(), 3u);
  EXPECT_EQ(a->internal_names()[2], "y^-1");
  EXPECT_EQ(a->parse("y*y^-1"), a->one());
  EXPECT_EQ(a->parse("y^-2*y^3"), a->parse("y"));
}

TEST(PresentedAlgebra, IntersectionBasisUpToDegreeTwo) {
  // normal monomials x^i y^j with i in {0,1,2}, j in Z, i + |j| <= 2:
  // 1, x, y, y^-1, x^2, xy, xy^-1, y^2, y^-2
  const auto a = elliptic_u3();
  const auto basis = a->basis_monomials(2);
  EXPECT_EQ(basis.size(), 9u);
  for (const auto& e : basis) {
    EXPECT_TRUE(a->is_normal(e));
    EXPECT_LE(a->degree(e), 2);
  }
}

TEST(PresentedAlgebra, WeightedChartKeepsYSquared) {
  const auto a = elliptic_u2();
  EXPECT_EQ(a->parse("y^2").to_string(), "y^2");
  EXPECT_EQ(a->parse("x^3").to_string(), "y^2 - x - 1");
}

TEST(PresentedAlgebra, RejectsBadPresentations) {
  EXPECT_THROW(PresentedAlgebra::create({"bad", {"x"}, std::string("q"), {}, {}, {}}), InvalidInput);
  EXPECT_THROW(PresentedAlgebra::create({"bad", {"x"}, std::nullopt, {"x + w"}, {}, {}}), InvalidInput);
  EXPECT_THROW(PresentedAlgebra::create({"bad", {"x", "y"}, std::nullopt, {}, {1}, {}}), InvalidInput);
  const auto a = elliptic_u2();
  EXPECT_THROW(a->parse("x^-1"), InvalidInput);
}

TEST(Derivation, LeibnizAndInverse) {
  const auto a = elliptic_u3();
  const auto d = Derivation::parse(a, {{"x", "-2*y"}, {"y", "-3*x^2 - 1"}});
  d.verify();
  const auto f = a->parse("x^2*y^-1"), g = a->parse("x + y^-2");
  EXPECT_EQ(d.apply(f * g), d.apply(f) * g + f * d.apply(g));
  // D(y^-1) = -y^-2 D(y)
  EXPECT_EQ(d.apply(a->parse("y^-1")), a->parse("(3*x^2 + 1)*y^-2"));
}

TEST(Derivation, IllDefinedIsDomainError) {
  const auto a = PresentedAlgebra::create({"N", {"x", "y"}, std::nullopt, {"x*y"}, {}, {}});
  const auto d = Derivation::parse(a, {{"x", "1"}, {"y", "0"}});
  EXPECT_THROW(d.verify(), DomainError);
}

TEST(AlgebraMorphism, RestrictionToIntersection) {
  const auto a1 = PresentedAlgebra::create({"A1", {"x", "z"}, std::nullopt, {"z - x^3 - x*z^2 - z^3"}, {}, {}});
  const auto a3 = elliptic_u3();
  const auto rho = AlgebraMorphism::parse(a1, a3, {{"x", "x*y^-1"}, {"z", "y^-1"}});
  rho.verify();
  EXPECT_EQ(rho.apply(a1->parse("x*z")), a3->parse("x*y^-2"));
  const auto bad = AlgebraMorphism::parse(a1, a3, {{"x", "x"}, {"z", "y^-1"}});
  EXPECT_THROW(bad.verify(), DomainError);
}

TEST(TruncatedOperator, MatrixAndEscape) {
  const auto k = PresentedAlgebra::create({"k[x]", {"x"}, std::nullopt, {}, {}, {}});
  const auto ddx = Derivation::parse(k, {{"x", "1"}});
  const auto m = truncated_operator_matrix(derivation_operator(ddx), 3, 2);
  EXPECT_EQ(m.rows(), 3u);
  EXPECT_EQ(m.cols(), 4u);
  EXPECT_EQ(rank(m), 3u);
  const auto mult = multiplication_operator(k->parse("x"));
  EXPECT_THROW(truncated_operator_matrix(mult, 2, 2), TruncationEscape);
  EXPECT_NO_THROW(truncated_operator_matrix(mult, 2, 3));
  EXPECT_THROW(coordinates(k->parse("x^5"), k->basis_monomials(3)), TruncationEscape);
}
