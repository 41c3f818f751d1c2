#include <gtest/gtest.h>

#include <fstream>

#include "fixtures.hpp"
#include "ncdef/hull.hpp"
#include "ncdef/io.hpp"

using namespace ncdef;
using ncdef::testing::elliptic;

namespace {

CoverConfig load_cover(const std::string& file) {
  std::ifstream in(std::string(NCDEF_DOCS_DIR) + "/" + file);
  return read_cover(Json::parse(in));
}

}  // namespace

TEST(Hull, OrderTwoHasNoRelations) {
  const auto h = hull_compute(*elliptic(1, 1).ctx, 2);
  EXPECT_TRUE(h.relations.empty());
  EXPECT_EQ(h.hull()->graded_dims(), (std::vector<std::size_t>{1, 2}));
}

TEST(Hull, CommutatorIsTheOnlyRelation) {
  for (auto [a, b] : {std::pair{1, 1}, std::pair{0, 1}}) {
    const auto h = hull_compute(*elliptic(a, b).ctx, 4);
    EXPECT_EQ(h.relation_strings, std::vector<std::string>{"t1*t2 - t2*t1"});
    EXPECT_EQ(h.hull()->graded_dims(), (std::vector<std::size_t>{1, 2, 3, 4}));
    EXPECT_TRUE(h.hull()->is_commutative());
    EXPECT_TRUE(tower_coherent(h));
    for (const auto& step : h.log) {
      EXPECT_TRUE(step.validated) << step.order;
      if (step.order >= 3) {
        EXPECT_TRUE(step.new_relations.empty()) << step.order;
      }
    }
    EXPECT_TRUE(validate(h.versal).is_zero());
  }
}

TEST(Hull, OrderFiveStaysCommutative) {
  const auto h = hull_compute(*elliptic(1, 1).ctx, 5);
  EXPECT_EQ(h.relation_strings.size(), 1u);
  EXPECT_EQ(h.hull()->graded_dims(), commutativization(*make_truncated_free(tangent_generators(2), 5))->graded_dims());
}

TEST(Hull, UnobstructedCoverGivesFreeHull) {
  const auto cfg = load_cover("line_x2_ddx.cover.json");
  const DeformationContext ctx(cfg.cover, cfg.options);
  EXPECT_EQ(ctx.tangent_dim(), 2u);
  EXPECT_EQ(ctx.obstruction_dim(), 0u);
  const auto h = hull_compute(ctx, 4);
  EXPECT_TRUE(h.relations.empty());
  EXPECT_EQ(h.hull()->graded_dims(), (std::vector<std::size_t>{1, 2, 4, 8}));
  EXPECT_FALSE(h.hull()->is_commutative());
  EXPECT_TRUE(tower_coherent(h));
  EXPECT_TRUE(validate(h.versal).is_zero());
}

TEST(Hull, ExportedCoverReproducesEllipticHull) {
  const auto cfg = load_cover("elliptic_a1_b1.cover.json");
  const DeformationContext ctx(cfg.cover, cfg.options);
  const auto h = hull_compute(ctx, 3);
  EXPECT_EQ(h.relation_strings, std::vector<std::string>{"t1*t2 - t2*t1"});
}
