#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "ncdef/errors.hpp"
#include "ncdef/tangent.hpp"

using namespace ncdef;
using ncdef::testing::elliptic;

TEST(Tangent, EllipticMatchesFirstHochschildGroup) {
  const auto& fx = elliptic(1, 1);
  const auto t = tangent_dimension_check(fx.ctx->cover());
  EXPECT_EQ(t.dimension, 2u);
  EXPECT_EQ(t.dimension, fx.ctx->tangent_dim());
  EXPECT_GE(t.samples.size(), 3u);
}

TEST(Tangent, ParameterFamilyAZero) {
  EXPECT_EQ(tangent_dimension_check(elliptic(0, 1).ctx->cover()).dimension, 2u);
}

TEST(Tangent, DoubledCoverGivesSameAnswer) {
  const auto& fx = elliptic(1, 1);
  const auto doubled = std::make_shared<const ChartCover>(doubled_cover(fx.cfg.cover, 2));
  EXPECT_EQ(doubled->category().object_count(), 4u);
  EXPECT_EQ(tangent_dimension_check(doubled).dimension, 2u);
}

TEST(Tangent, MatricPointsOffDiagonal) {
  // p = 2 copies of the structure sheaf, direction eps_12
  EXPECT_EQ(tangent_dimension_check(elliptic(0, 1).ctx->cover(), 2, 0, 1).dimension, 2u);
}

TEST(Tangent, AffineLineWithOrdinaryDerivativeIsRigid) {
  const auto k = PresentedAlgebra::create({"k[x]", {"x"}, std::nullopt, {}, {}, {}});
  auto cover = std::make_shared<const ChartCover>(ChartCover::create(
      FiniteCategory::poset({"L"}, {}), {{"L", k, Derivation::parse(k, {{"x", "1"}}), {}}}, {}));
  EXPECT_EQ(tangent_dimension_check(cover).dimension, 0u);
}

TEST(Tangent, NoWindowBelowCeiling) {
  TangentOptions o;
  o.d_start = 2;
  o.d_max = 3;
  o.window = 3;
  EXPECT_THROW(tangent_dimension_check(elliptic(1, 1).ctx->cover(), 1, 0, 0, o), DomainError);
}
