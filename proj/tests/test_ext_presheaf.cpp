#include <gtest/gtest.h>

#include "ncdef/elliptic.hpp"
#include "ncdef/errors.hpp"
#include "ncdef/ext_presheaf.hpp"

using namespace ncdef;

namespace {

std::vector<std::string> labels_of(const CokernelPresentation& c) { return c.labels(); }

// The cokernel basis is independent of the preferred list up to change of
// basis: the reference representatives must be independent modulo the image.
std::size_t rank_of_reductions(const CokernelPresentation& c, const std::vector<AlgebraElement>& elems) {
  std::vector<Vector> cols;
  for (const auto& e : elems) cols.push_back(c.reduce(e));
  return rank(DenseMatrix::from_columns(c.size(), cols));
}

}  // namespace

TEST(Cokernel, EllipticSizesGenericParameters) {
  const auto cfg = EllipticConfig::build(1, 1);
  const auto ext = build_ext_diagram(cfg.cover);
  ASSERT_EQ(ext.cokernels.size(), 3u);
  EXPECT_EQ(ext.cokernels[0]->size(), 4u);
  EXPECT_EQ(ext.cokernels[1]->size(), 2u);
  EXPECT_EQ(ext.cokernels[2]->size(), 5u);
  EXPECT_EQ(labels_of(*ext.cokernels[0]), (std::vector<std::string>{"1", "z", "z^2", "z^3"}));
  EXPECT_EQ(labels_of(*ext.cokernels[1]), (std::vector<std::string>{"1", "y^2"}));
  EXPECT_EQ(ext.functor.dim(cfg.arrow13), 5u);
  EXPECT_EQ(ext.functor.dim(cfg.arrow23), 5u);
  EXPECT_EQ(ext.functor.labels(cfg.arrow13), ext.functor.labels(cfg.cover.category().identity(2)));
}

TEST(Cokernel, BasisDoesNotDependOnPreferredChoice) {
  const auto cfg = EllipticConfig::build(1, 1);
  for (std::size_t o = 0; o < 3; ++o) {
    const auto& ch = cfg.cover.chart(o);
    const auto plain = CokernelPresentation::compute(ch.derivation);
    EXPECT_EQ(plain->size(), ch.preferred.size());
    EXPECT_EQ(rank_of_reductions(*plain, ch.preferred), ch.preferred.size()) << ch.label;
  }
}

TEST(Cokernel, ReductionIdentities) {
  {
    const auto cfg = EllipticConfig::build(1, 1);
    EXPECT_EQ(cfg.discriminant, Scalar(31));
    const auto ext = build_ext_diagram(cfg.cover);
    const auto& ck = *ext.cokernels[2];
    const auto a3 = cfg.cover.chart(2).algebra;
    EXPECT_EQ(ck.reduce(a3->parse("15*y^2")), (Vector{0, 0, 0, 31, 0}));
    // the witness satisfies e - sum c_k rep_k = D(preimage)
    const auto e = a3->parse("15*y^2");
    const auto r = ck.reduce_with_witness(e);
    EXPECT_EQ(e - ck.lift(r.coordinates), ck.derivation().apply(r.preimage));
  }
  {
    const auto cfg = EllipticConfig::build(0, 1);
    const auto ext = build_ext_diagram(cfg.cover);
    const auto& ck = *ext.cokernels[2];
    const auto a3 = cfg.cover.chart(2).algebra;
    EXPECT_EQ(ck.reduce(a3->parse("-3*x*y^-2")), ck.reduce(a3->parse("x")));
    for (std::size_t o = 0; o < 3; ++o) {
      const auto& c = *ext.cokernels[o];
      for (std::size_t k = 0; k < c.size(); ++k) {
        Vector unit(c.size());
        unit[k] = 1;
        EXPECT_EQ(c.reduce(c.representatives()[k]), unit);
      }
    }
  }
}

TEST(Cokernel, TooLowCeilingDoesNotStabilize) {
  const auto cfg = EllipticConfig::build(1, 1);
  CokernelOptions o;
  o.d_start = 1;
  o.d_max = 3;
  o.window = 3;
  EXPECT_THROW(CokernelPresentation::compute(cfg.cover.chart(2).derivation, o), NoStabilization);
  o.d_max = 2;
  EXPECT_THROW(CokernelPresentation::compute(cfg.cover.chart(2).derivation, o), InvalidInput);
}

TEST(ChartCover, IntertwiningFailureNamesGenerator) {
  const auto k1 = PresentedAlgebra::create({"L", {"s"}, std::nullopt, {}, {}, {}});
  const auto k2 = PresentedAlgebra::create({"M", {"s"}, std::nullopt, {}, {}, {}});
  auto cat = FiniteCategory::poset({"L", "M"}, {{0, 1}});
  const auto m = *cat.morphism_index("L->M");
  std::vector<ChartData> charts{{"L", k1, Derivation::parse(k1, {{"s", "1"}}), {}},
                                {"M", k2, Derivation::parse(k2, {{"s", "2"}}), {}}};
  std::map<std::size_t, AlgebraMorphism> rho;
  rho.emplace(m, AlgebraMorphism::parse(k1, k2, {{"s", "s"}}));
  try {
    ChartCover::create(cat, charts, rho);
    FAIL() << "expected DomainError";
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("'s'"), std::string::npos) << e.what();
  }
  EXPECT_THROW(ChartCover::create(cat, {charts[0]}, rho), InvalidInput);
}

TEST(Hochschild, EllipticDimensions) {
  for (auto [a, b] : {std::pair{1, 1}, std::pair{0, 1}}) {
    const auto cfg = EllipticConfig::build(a, b);
    const auto ext = build_ext_diagram(cfg.cover);
    const Cohomology h(ResolvingComplex::build(ext.functor, true, 1));
    const auto full = ResolvingComplex::build(ext.functor, false, 1);
    const auto s = global_hochschild_dims(h, full, MorFunctor::constant(cfg.cover.category(), 1));
    EXPECT_EQ(s.hh0, 1u);
    EXPECT_EQ(s.hh1, 2u);
    EXPECT_EQ(s.hh2, 1u);
    EXPECT_EQ(limit_dimension(ext.functor), 2u);
  }
}
