#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "ncdef/deformation.hpp"
#include "ncdef/errors.hpp"

using namespace ncdef;
using ncdef::testing::elliptic;
using ncdef::testing::free_base;
using ncdef::testing::truncate_further;

namespace {

std::vector<Vector> generators_of(const MatricArtinPtr& r, std::size_t n) {
  std::vector<Vector> out;
  for (std::size_t l = 0; l < n; ++l) out.push_back(r->generator(l));
  return out;
}

}  // namespace

TEST(TensorElement, ProductsFollowBaseMultiplication) {
  const auto& fx = elliptic(1, 1);
  const auto base = free_base(2, 3);
  const auto a = fx.cfg.cover.chart(2).algebra;
  const auto t1 = TensorElement::pure(a->parse("x"), base->generator(0), base);
  const auto t2 = TensorElement::pure(a->parse("y^-1"), base->generator(1), base);
  const auto prod = t1 * t2;
  const auto expect = TensorElement::pure(a->parse("x*y^-1"), base->parse("t1*t2"), base);
  EXPECT_EQ(prod, expect);
  EXPECT_NE(t1 * t2, t2 * t1);
  const auto one = TensorElement::one(a, base);
  const auto u = one + t1;
  EXPECT_EQ(u * u.unit_inverse(), one);
}

TEST(Validator, TrivialDatumHasZeroDefect) {
  const auto& fx = elliptic(1, 1);
  for (std::size_t n : {2u, 3u, 4u}) {
    const auto d = DeformationDatum::trivial(fx.ctx->cover(), free_base(2, n));
    d.check_well_formed();
    EXPECT_TRUE(validate(d).is_zero()) << n;
  }
}

TEST(Validator, FirstOrderFamilyValidatesOverSecondOrderBase) {
  const auto& fx = elliptic(1, 1);
  const auto h2 = free_base(2, 2);
  const auto d = fx.ctx->first_order_datum(h2, generators_of(h2, 2));
  EXPECT_TRUE(validate(d).is_zero());
}

TEST(Validator, NaiveSecondOrderDefectIsTheCommutator) {
  const auto& fx = elliptic(1, 1);
  const auto t3 = free_base(2, 3);
  const auto h2 = truncate_further(t3, 2);
  const SmallSurjection u(t3, h2);
  const auto lifted = lift(fx.ctx->first_order_datum(h2, generators_of(h2, 2)), u);
  const auto defect = validate(lifted);
  ASSERT_FALSE(defect.is_zero());
  const auto comps = decompose_defect(defect, u.kernel());
  ASSERT_EQ(comps.size(), 4u);
  // classes of the kernel components t1t1, t1t2, t2t1, t2t2 (in that kernel order)
  std::map<std::string, Vector> by_path;
  for (std::size_t k = 0; k < comps.size(); ++k)
    by_path[t3->format(u.kernel()[k])] = fx.ctx->obstruction_coordinates(comps[k]);
  EXPECT_EQ(by_path.at("t1*t1"), Vector{0});
  EXPECT_EQ(by_path.at("t2*t2"), Vector{0});
  EXPECT_EQ(by_path.at("t1*t2"), Vector{1});
  EXPECT_EQ(by_path.at("t2*t1"), Vector{-1});
}

TEST(Validator, MalformedDataAreRejected) {
  const auto& fx = elliptic(1, 1);
  auto d = DeformationDatum::trivial(fx.ctx->cover(), free_base(2, 2));
  d.restriction[0] = d.restriction[0] * Scalar(2);  // identity restriction must stay 1
  EXPECT_THROW(d.check_well_formed(), InvalidInput);
  auto e = DeformationDatum::trivial(fx.ctx->cover(), free_base(2, 2));
  e.psi.pop_back();
  EXPECT_THROW(e.check_well_formed(), InvalidInput);
}

TEST(Transport, GaugeConjugationPreservesValidity) {
  const auto& fx = elliptic(1, 1);
  const auto h2 = free_base(2, 2);
  const auto d = fx.ctx->first_order_datum(h2, generators_of(h2, 2));
  std::vector<TensorElement> g;
  for (std::size_t o = 0; o < 3; ++o) {
    const auto a = fx.cfg.cover.chart(o).algebra;
    g.push_back(TensorElement::one(a, h2) +
                TensorElement::pure(a->parse(o == 2 ? "x*y^-1 + 2" : "x"), h2->generator(o % 2), h2));
  }
  const auto t = transport(d, g);
  EXPECT_TRUE(validate(t).is_zero());
  EXPECT_FALSE(t.psi[0] == d.psi[0]);
}

TEST(PushForward, DefectIsNatural) {
  const auto& fx = elliptic(1, 1);
  const auto t3 = free_base(2, 3);
  const auto h2 = truncate_further(t3, 2);
  const auto lifted = lift(fx.ctx->first_order_datum(h2, generators_of(h2, 2)), SmallSurjection(t3, h2));
  const auto comm = commutativization(*t3);
  const auto proj = ArtinMorphism::projection(t3, comm);
  EXPECT_EQ(validate(push_forward(lifted, proj)), push_forward(validate(lifted), proj));
}
