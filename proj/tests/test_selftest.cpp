#include <gtest/gtest.h>

#include "ncdef/selftest.hpp"

using namespace ncdef;

TEST(Selftest, RandomFunctorsAreFunctorial) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 20; ++i) {
    const auto c = random_poset(rng, 4);
    EXPECT_LE(c.object_count(), 4u);
    EXPECT_NO_THROW(random_mor_functor(rng, c).check_functoriality());
  }
}

TEST(Selftest, QuickPropertyRun) {
  SelftestOptions o;
  o.functors = 8;
  o.matrices = 20;
  o.algebras = 5;
  o.perturbations = 2;
  for (const auto& r : run_selftest(o)) EXPECT_TRUE(r.passed()) << r.name << ": " << r.first_failure;
}

TEST(Selftest, SeedChangesCorpusButNotVerdicts) {
  SelftestOptions o;
  o.seed = 1;
  o.functors = 10;
  EXPECT_TRUE(check_square_zero_property(o).passed());
  EXPECT_TRUE(check_normalized_full_property(o).passed());
  o.seed = 2;
  EXPECT_TRUE(check_square_zero_property(o).passed());
  EXPECT_TRUE(check_normalized_full_property(o).passed());
}
