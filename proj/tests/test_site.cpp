#include <gtest/gtest.h>

#include "ncdef/errors.hpp"
#include "ncdef/site.hpp"

using namespace ncdef;

namespace {

// Two minima below two maxima: the nerve is a circle.
FiniteCategory circle() {
  return FiniteCategory::poset({"a", "b", "c", "d"}, {{0, 2}, {0, 3}, {1, 2}, {1, 3}});
}

}  // namespace

TEST(FiniteCategory, PosetClosureAndCycles) {
  const auto c = FiniteCategory::poset({"p", "q", "r"}, {{0, 1}, {1, 2}});
  EXPECT_EQ(c.morphism_count(), 3u + 3u);  // identities, two arrows and one composite
  EXPECT_NO_THROW(c.validate());
  const auto pq = *c.morphism_index("p->q"), qr = *c.morphism_index("q->r");
  EXPECT_EQ(c.compose(qr, pq), c.morphism_index("p->r"));
  EXPECT_FALSE(c.compose(pq, qr).has_value());
  EXPECT_THROW(FiniteCategory::poset({"p", "q"}, {{0, 1}, {1, 0}}), InvalidInput);
  EXPECT_THROW(FiniteCategory::poset({"p"}, {{0, 0}}), InvalidInput);
  EXPECT_THROW(FiniteCategory::poset({"p"}, {{0, 3}}), InvalidInput);
}

TEST(ResolvingComplex, CircleWithConstantCoefficients) {
  const auto g = MorFunctor::constant(circle(), 1);
  for (bool normalized : {true, false}) {
    const auto rc = ResolvingComplex::build(g, normalized, 2);
    rc.check_square_zero();
    const Cohomology h(rc);
    EXPECT_EQ(h.dim(0), 1u);
    EXPECT_EQ(h.dim(1), 1u);
    EXPECT_EQ(h.dim(2), 0u);
  }
  EXPECT_EQ(limit_dimension(g), 1u);
}

TEST(ResolvingComplex, PointHasNoHigherCohomology) {
  const auto c = FiniteCategory::poset({"o"}, {});
  const Cohomology h(ResolvingComplex::build(MorFunctor::constant(c, 3), false, 3));
  EXPECT_EQ(h.dim(0), 3u);
  for (int p = 1; p <= 3; ++p) EXPECT_EQ(h.dim(p), 0u);
}

TEST(ResolvingComplex, NormalizedEmbedsIntoFull) {
  const auto g = MorFunctor::constant(circle(), 2);
  const auto n = ResolvingComplex::build(g, true, 2);
  const auto f = ResolvingComplex::build(g, false, 2);
  const Cohomology hn(n), hf(f);
  for (const auto& rep : hn.representatives(1)) {
    const auto v = n.embed_normalized(1, rep, f);
    EXPECT_TRUE(hf.is_cocycle(1, v));
    EXPECT_FALSE(hf.is_coboundary(1, v));
  }
}

TEST(Cohomology, ClassCoordinatesAndErrors) {
  const auto g = MorFunctor::constant(circle(), 1);
  const auto rc = ResolvingComplex::build(g, true, 2);
  Cohomology h(rc);
  // a chain p < q < r has composable pairs, so a lone value on p->q is not closed
  const auto chain = FiniteCategory::poset({"p", "q", "r"}, {{0, 1}, {1, 2}});
  const auto rc3 = ResolvingComplex::build(MorFunctor::constant(chain, 1), true, 2);
  const Cohomology h3(rc3);
  Vector bad(rc3.dim(1));
  bad[*rc3.tuple_index(1, {*chain.morphism_index("p->q")})] = 1;
  EXPECT_THROW(h3.class_coordinates(1, bad), NotCocycle);
  EXPECT_EQ(h3.dim(1), 0u);
  const auto rep = h.representatives(1)[0];
  Vector twice = rep;
  for (auto& s : twice) s *= 2;
  // adding a coboundary leaves the class unchanged
  const Vector d0 = rc.differential(0).apply(Vector{1, 0, 0, 0});
  for (std::size_t i = 0; i < twice.size(); ++i) twice[i] += d0[i];
  EXPECT_EQ(h.class_coordinates(1, twice), Vector{2});
  EXPECT_TRUE(h.coboundary_witness(1, d0).has_value());
  EXPECT_FALSE(h.coboundary_witness(1, rep).has_value());
  EXPECT_THROW(h.set_representatives(1, {Vector(rc.dim(1))}), InvalidInput);
}

TEST(MorFunctor, RejectsNonFunctorialData) {
  const auto c = FiniteCategory::poset({"p", "q"}, {{0, 1}});
  const auto pq = *c.morphism_index("p->q");
  const auto idq = c.identity(1), idp = c.identity(0);
  // G(id_p) = k, G(id_q) = k, G(p->q) = k; the post map along p->q from id_p
  // and the pre map into id_q must compose consistently with the identities.
  std::map<MorFunctor::Key, DenseMatrix> pre, post;
  DenseMatrix two(1, 1);
  two(0, 0) = 2;
  pre[{idq, pq}] = two;
  post[{idp, pq}] = DenseMatrix::identity(1);
  EXPECT_NO_THROW(MorFunctor::from_generators(c, {1, 1, 1}, pre, post));
  DenseMatrix wrong(2, 1);
  pre[{idq, pq}] = wrong;
  EXPECT_THROW(MorFunctor::from_generators(c, {1, 1, 1}, pre, post), InvalidInput);
  EXPECT_THROW(MorFunctor::from_generators(c, {1, 1}, {}, {}), InvalidInput);
}
