#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "ncdef/errors.hpp"
#include "ncdef/obstruction.hpp"

using namespace ncdef;
using ncdef::testing::elliptic;
using ncdef::testing::free_base;
using ncdef::testing::truncate_further;

TEST(SmallComplex, DifferentialSquaresToZero) {
  const auto& fx = elliptic(1, 1);
  const auto& cover = *fx.ctx->cover();
  std::vector<AlgebraElement> pi;
  pi.push_back(cover.chart(0).algebra->parse("x*z + 3"));
  pi.push_back(cover.chart(1).algebra->parse("y - x^2"));
  pi.push_back(cover.chart(2).algebra->parse("x*y^-2 + y"));
  EXPECT_TRUE(small_d1(cover, small_d0(cover, pi)).is_zero());
  EXPECT_TRUE(small_d1(cover, small_zero1(cover)).is_zero());
}

TEST(SmallComplex, SolverFindsCoboundaryWitness) {
  const auto& fx = elliptic(1, 1);
  const auto& cover = *fx.ctx->cover();
  auto w = small_zero1(cover);
  w.delta[fx.cfg.arrow23] = cover.chart(2).algebra->parse("x^2*y^-1");
  w.eps[1] = cover.chart(1).algebra->parse("x");
  const auto rhs = small_d1(cover, w);
  const auto sol = solve_small(cover, rhs, 16);
  ASSERT_TRUE(sol.has_value());
  const auto back = small_d1(cover, *sol);
  for (const auto& [m, v] : rhs.semilinear) EXPECT_EQ(back.semilinear.at(m), v);
}

TEST(SmallComplex, ObstructionRepresentativeIsNotACoboundary) {
  const auto& fx = elliptic(1, 1);
  const auto& cover = *fx.ctx->cover();
  auto rhs = small_zero2(cover);
  for (const auto& [m, v] : fx.cfg.omega) rhs.semilinear[m] = v;
  EXPECT_FALSE(solve_small(cover, rhs, 12).has_value());
  EXPECT_EQ(fx.ctx->obstruction_coordinates(rhs), Vector{1});
}

TEST(CupProducts, SignConventionGolden) {
  // Golden values fixing the overall sign: <1,2> = +1, <2,1> = -1 in the xi/omega bases.
  for (auto [a, b] : {std::pair{1, 1}, std::pair{0, 1}}) {
    const auto& fx = elliptic(a, b);
    const auto t = cup_table(*fx.ctx);
    ASSERT_EQ(t.size(), 2u);
    EXPECT_EQ(t[0][0], Vector{0});
    EXPECT_EQ(t[0][1], Vector{1});
    EXPECT_EQ(t[1][0], Vector{-1});
    EXPECT_EQ(t[1][1], Vector{0});
    EXPECT_THROW(cup_product(*fx.ctx, 2, 0), InvalidInput);
  }
}

TEST(CupProducts, BilinearUnderRescaledDirections) {
  // Scaling the directions by (2, 3) scales the t1 t2 component by 6.
  const auto& fx = elliptic(1, 1);
  const auto t3 = free_base(2, 3);
  const auto h2 = truncate_further(t3, 2);
  const SmallSurjection u(t3, h2);
  Vector d1 = h2->generator(0), d2 = h2->generator(1);
  for (auto& s : d1) s *= 2;
  for (auto& s : d2) s *= 3;
  const auto lifted = lift(fx.ctx->first_order_datum(h2, {d1, d2}), u);
  const auto comps = decompose_defect(validate(lifted), u.kernel());
  for (std::size_t k = 0; k < comps.size(); ++k) {
    const auto name = t3->format(u.kernel()[k]);
    const auto c = fx.ctx->obstruction_coordinates(comps[k]);
    const Scalar expected = name == "t1*t2" ? Scalar(6) : name == "t2*t1" ? Scalar(-6) : Scalar(0);
    EXPECT_EQ(c, Vector{expected}) << name;
  }
}

TEST(ObstructionClass, ZeroDefectHasZeroWitness) {
  const auto& fx = elliptic(1, 1);
  const auto t3 = free_base(2, 3);
  const SmallSurjection u(t3, truncate_further(t3, 2));
  const auto oc = obstruction_class(*fx.ctx, validate(DeformationDatum::trivial(fx.ctx->cover(), t3)), u.kernel());
  EXPECT_TRUE(oc.vanishes);
  ASSERT_TRUE(oc.witness.has_value());
  for (const auto& w : *oc.witness) {
    for (const auto& e : w.eps) EXPECT_TRUE(e.is_zero());
    for (const auto& [m, v] : w.delta) EXPECT_TRUE(v.is_zero());
  }
}

TEST(ObstructionClass, CoboundaryPerturbationHasZeroClassAndNonzeroWitness) {
  const auto& fx = elliptic(1, 1);
  const auto t3 = free_base(2, 3);
  const SmallSurjection u(t3, truncate_further(t3, 2));
  const auto& cover = *fx.ctx->cover();
  // Perturb the trivial datum by a gauge-type cochain in the t1*t1 direction
  // without the compensating Psi change; its defect is a coboundary.
  auto d = DeformationDatum::trivial(fx.ctx->cover(), t3);
  const auto kappa = t3->parse("t1*t1");
  d.restriction[fx.cfg.arrow23] += TensorElement::pure(cover.chart(2).algebra->parse("x*y^-1"), kappa, t3);
  const auto defect = validate(d);
  ASSERT_FALSE(defect.is_zero());
  const auto oc = obstruction_class(*fx.ctx, defect, u.kernel());
  EXPECT_TRUE(oc.vanishes);
  ASSERT_TRUE(oc.witness.has_value());
  bool nonzero = false;
  for (const auto& w : *oc.witness) {
    for (const auto& e : w.eps) nonzero = nonzero || !e.is_zero();
    for (const auto& [m, v] : w.delta) nonzero = nonzero || !v.is_zero();
  }
  EXPECT_TRUE(nonzero);
  EXPECT_TRUE(validate(apply_correction(d, *oc.witness, u.kernel())).is_zero());
}

TEST(ObstructionClass, SecondOrderFamilyIsObstructed) {
  const auto& fx = elliptic(0, 1);
  const auto t3 = free_base(2, 3);
  const auto h2 = truncate_further(t3, 2);
  const SmallSurjection u(t3, h2);
  const auto lifted = lift(fx.ctx->first_order_datum(h2, {h2->generator(0), h2->generator(1)}), u);
  const auto oc = obstruction_class(*fx.ctx, validate(lifted), u.kernel());
  EXPECT_FALSE(oc.vanishes);
  EXPECT_FALSE(oc.witness.has_value());
}

TEST(NoLift, CertificateForBothParameterFamilies) {
  for (auto [a, b] : {std::pair{1, 1}, std::pair{0, 1}}) {
    const auto cert = no_lift_certificate(*elliptic(a, b).ctx);
    EXPECT_TRUE(cert.free_system_infeasible);
    EXPECT_EQ(cert.relations, std::vector<std::string>{"t1*t2 - t2*t1"});
    EXPECT_EQ(cert.obstructed_monomials, (std::vector<std::string>{"t1*t2", "t2*t1"}));
    EXPECT_TRUE(cert.quotient_lift_validates);
  }
}

TEST(DeformationContext, RejectsInconsistentFirstOrderData) {
  const auto cfg = EllipticConfig::build(1, 1);
  auto opts = cfg.context_options();
  opts.first_order_tau[1][cfg.arrow23] = cfg.cover.chart(2).algebra->parse("x");
  EXPECT_THROW(DeformationContext(cfg.cover, opts), InvalidInput);
}
