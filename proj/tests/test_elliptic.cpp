#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "ncdef/elliptic.hpp"
#include "ncdef/errors.hpp"

using namespace ncdef;
using ncdef::testing::elliptic;

TEST(Elliptic, SingularCurvesAreRejected) {
  EXPECT_THROW(EllipticConfig::build(0, 0), SingularCurve);
  // 4a^3 + 27b^2 = 0 at a = -3, b = 2
  try {
    EllipticConfig::build(-3, 2);
    FAIL();
  } catch (const SingularCurve& e) {
    EXPECT_STREQ(e.what(), "singular curve: discriminant = 0");
  }
  EXPECT_NO_THROW(EllipticConfig::build(-3, 1));
}

TEST(Elliptic, Discriminant) {
  EXPECT_EQ(EllipticConfig::build(1, 1).discriminant, Scalar(31));
  EXPECT_EQ(EllipticConfig::build(0, 1).discriminant, Scalar(27));
  EXPECT_EQ(EllipticConfig::build(Scalar(2, 3), -5).discriminant, parse_scalar("32/27") + 675);
}

TEST(Elliptic, RestrictionCorrectionsAreCocycles) {
  for (auto [a, b] : {std::pair{1, 1}, std::pair{0, 1}}) {
    const auto& fx = elliptic(a, b);
    const auto& cover = *fx.ctx->cover();
    for (std::size_t l = 0; l < 2; ++l) {
      SmallCochain1 w = small_zero1(cover);
      w.eps = fx.cfg.xi[l];
      for (const auto& [m, v] : fx.cfg.tau[l]) w.delta[m] = v;
      EXPECT_TRUE(small_d1(cover, w).is_zero()) << a << "," << b << " l=" << l;
    }
  }
}

TEST(Elliptic, ObstructionRepresentativeIsNonzero) {
  for (auto [a, b] : {std::pair{1, 1}, std::pair{0, 1}}) {
    const auto& fx = elliptic(a, b);
    bool any = false;
    for (const auto& [m, v] : fx.cfg.omega) any = any || !v.is_zero();
    EXPECT_TRUE(any);
    EXPECT_EQ(fx.ctx->obstruction_dim(), 1u);
  }
}

TEST(Elliptic, ExponentialDatumValidates) {
  const auto& fx = elliptic(1, 1);
  for (std::size_t n : {3u, 5u}) EXPECT_TRUE(validate(fx.cfg.exp_datum(*fx.ctx, n)).is_zero()) << n;
}

TEST(Elliptic, FullPipelineVerdicts) {
  const auto cfg = EllipticConfig::build(Scalar(2, 3), -5);
  PipelineOptions o;
  o.tangent_check = false;
  const auto r = run_full_pipeline(cfg, o);
  ASSERT_TRUE(r.data.contains("verdicts"));
  for (const auto& [k, v] : r.data.at("verdicts").items()) EXPECT_TRUE(v.get<bool>()) << k;
}
