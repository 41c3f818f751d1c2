#include <gtest/gtest.h>

#include "ncdef/errors.hpp"
#include "ncdef/matric.hpp"

using namespace ncdef;

namespace {

MatricGeneratorSet two_loops() { return MatricGeneratorSet(1, {{"t1", 0, 0}, {"t2", 0, 0}}); }

}  // namespace

TEST(MatricFree, DimensionsOfTruncatedFreeAlgebra) {
  // words of length < N on r letters: (r^N - 1) / (r - 1)
  for (std::size_t n = 1; n <= 5; ++n) {
    const auto f = MatricTruncatedFree::create(two_loops(), n);
    EXPECT_EQ(f->dim(), (std::size_t{1} << n) - 1) << n;
  }
  // two points with arrows e1 -> e2 (u) and e2 -> e1 (v): paths alternate
  const auto q = MatricTruncatedFree::create(MatricGeneratorSet(2, {{"u", 0, 1}, {"v", 1, 0}}), 4);
  EXPECT_EQ(q->dim(), 2u + 2u + 2u + 2u);
  const auto uv = q->parse("u*v");
  EXPECT_EQ(q->format(uv), "u*v");
  EXPECT_TRUE(is_zero(q->parse("u*u")));
}

TEST(MatricFree, ParseFormatRoundTrip) {
  const auto f = MatricTruncatedFree::create(two_loops(), 4);
  for (const char* s : {"t1*t2 - t2*t1", "2*t1 + 1/2*e1", "t1*t1*t2", "-t2"}) {
    EXPECT_EQ(f->format(f->parse(s)), s);
  }
  EXPECT_TRUE(is_zero(f->parse("t1*t1*t1*t1")));
  EXPECT_THROW(f->parse("t3"), InvalidInput);
  EXPECT_THROW(f->parse("e2"), InvalidInput);
  EXPECT_THROW(f->parse("t1 +"), InvalidInput);
  EXPECT_THROW(MatricGeneratorSet(1, {{"t", 0, 0}, {"t", 0, 0}}), InvalidInput);
  EXPECT_THROW(MatricGeneratorSet(1, {{"t", 0, 1}}), InvalidInput);
}

TEST(MatricArtin, TestAlgebraAndRadicalPowers) {
  const auto r = make_test_algebra(3, 0, 2);
  EXPECT_EQ(r->dim(), 4u);
  EXPECT_EQ(r->graded_dims(), (std::vector<std::size_t>{3, 1}));
  EXPECT_EQ(r->component(0, 2).size(), 1u);
  EXPECT_EQ(r->component(2, 0).size(), 0u);
  r->check_associativity();
  const auto eps = r->generator(0);
  EXPECT_TRUE(is_zero(r->multiply(eps, eps)));
  EXPECT_EQ(r->multiply(r->idempotent(0), eps), eps);
  EXPECT_TRUE(is_zero(r->multiply(eps, r->idempotent(0))));
}

TEST(MatricArtin, CommutativizationOfFreeAlgebra) {
  const auto f = make_truncated_free(two_loops(), 5);
  EXPECT_FALSE(f->is_commutative());
  const auto c = commutativization(*f);
  EXPECT_TRUE(c->is_commutative());
  // k[t1, t2] / m^5
  EXPECT_EQ(c->graded_dims(), (std::vector<std::size_t>{1, 2, 3, 4, 5}));
  const auto q = f->quotient({f->free()->parse("t1*t2 - t2*t1")});
  EXPECT_EQ(q->graded_dims(), c->graded_dims());
}

TEST(MatricArtin, IdealClosureIsTwoSided) {
  const auto free = MatricTruncatedFree::create(two_loops(), 4);
  const auto cl = ideal_closure(*free, {free->parse("t1*t2 - t2*t1")});
  // degree 2: 1, degree 3: commutators times letters on either side span 4
  EXPECT_EQ(cl.size(), 1u + 4u);
  EXPECT_THROW(MatricArtin::create(free, {free->parse("e1")}), InvalidInput);
}

TEST(SmallSurjection, KernelAndErrors) {
  const auto free = MatricTruncatedFree::create(two_loops(), 3);
  const auto t3 = MatricArtin::create(free);
  const auto h2 = MatricArtin::create(free, {free->parse("t1*t1"), free->parse("t1*t2"), free->parse("t2*t1"),
                                             free->parse("t2*t2")});
  const SmallSurjection u(t3, h2);
  EXPECT_EQ(u.kernel().size(), 4u);
  const auto x = h2->parse("t1 + 3*t2");
  EXPECT_EQ(u.apply(u.section(x)), x);
  // k<t>/m^3 -> k: kernel contains t1, which is not annihilated by the radical
  const auto k = MatricArtin::create(free, {free->parse("t1"), free->parse("t2")});
  EXPECT_THROW(SmallSurjection(t3, k), InvalidInput);
  EXPECT_THROW(SmallSurjection(h2, t3), InvalidInput);
}

TEST(ArtinMorphism, WellDefinednessIsChecked) {
  const auto free = MatricTruncatedFree::create(two_loops(), 3);
  const auto t3 = MatricArtin::create(free);
  const auto comm = commutativization(*t3);
  const ArtinMorphism proj = ArtinMorphism::projection(t3, comm);
  EXPECT_EQ(proj.apply(t3->parse("t1*t2")), proj.apply(t3->parse("t2*t1")));
  // comm -> t3 sending t_i to t_i does not kill t1 t2 - t2 t1
  EXPECT_THROW(ArtinMorphism(comm, t3, {t3->generator(0), t3->generator(1)}), InvalidInput);
  // swapping the generators is an automorphism of the commutative quotient
  const ArtinMorphism swap(comm, comm, {comm->generator(1), comm->generator(0)});
  EXPECT_EQ(swap.apply(comm->parse("t1*t1")), comm->parse("t2*t2"));
}
