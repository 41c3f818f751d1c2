#include <gtest/gtest.h>

#include <fstream>

#include "fixtures.hpp"
#include "ncdef/errors.hpp"
#include "ncdef/io.hpp"
#include "ncdef/report.hpp"
#include "ncdef/selftest.hpp"

using namespace ncdef;
using ncdef::testing::elliptic;

namespace {

Json load_doc(const std::string& file) {
  std::ifstream in(std::string(NCDEF_DOCS_DIR) + "/" + file);
  return Json::parse(in);
}

}  // namespace

TEST(Json, RationalsAreStrings) {
  EXPECT_EQ(scalar_json(Scalar(3, 4)), Json("3/4"));
  EXPECT_EQ(scalar_json(Scalar(-5)), Json("-5"));
  EXPECT_EQ(scalar_from_json(Json("6/8"), "x"), Scalar(3, 4));
  EXPECT_EQ(scalar_from_json(Json(7), "x"), Scalar(7));
  EXPECT_THROW(scalar_from_json(Json(0.5), "x"), InvalidInput);
  EXPECT_THROW(scalar_from_json(Json("1/0"), "x"), InvalidInput);
}

TEST(DiagramIo, RoundTripPreservesFunctor) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    const auto c = random_poset(rng, 4);
    const auto g = random_mor_functor(rng, c);
    const auto back = read_diagram(write_diagram(g));
    EXPECT_EQ(back.dims(), g.dims());
    EXPECT_EQ(back.pre_maps(), g.pre_maps());
    EXPECT_EQ(back.post_maps(), g.post_maps());
  }
}

TEST(DiagramIo, ExportedEllipticDiagram) {
  const auto g = read_diagram(load_doc("elliptic_a1_b1.diagram.json"));
  const Cohomology h(ResolvingComplex::build(g, true, 2));
  EXPECT_EQ(h.dim(0), 2u);
  EXPECT_EQ(h.dim(1), 1u);
  EXPECT_EQ(h.dim(2), 0u);
}

TEST(DiagramIo, SchemaErrorsAreReported) {
  Json doc = load_doc("elliptic_a1_b1.diagram.json");
  Json wrong = doc;
  wrong["schema"] = "ncdef-diagram/9";
  EXPECT_THROW(read_diagram(wrong), InvalidInput);
  Json missing = doc;
  missing.erase("values");
  EXPECT_THROW(read_diagram(missing), InvalidInput);
  Json cyc = doc;
  cyc["arrows"].push_back({{"source", "U3"}, {"target", "U1"}});
  EXPECT_THROW(read_diagram(cyc), InvalidInput);
  Json badmat = doc;
  badmat["values"][0]["dim"] = 7;
  EXPECT_THROW(read_diagram(badmat), InvalidInput);
  EXPECT_THROW(read_diagram(Json::array()), InvalidInput);
}

TEST(CoverIo, RoundTripKeepsCohomology) {
  const auto& fx = elliptic(1, 1);
  const Json doc = write_cover(fx.cfg.cover, fx.cfg.context_options());
  const auto cfg = read_cover(doc);
  EXPECT_EQ(write_cover(cfg.cover, cfg.options), doc);
  const DeformationContext ctx(cfg.cover, cfg.options);
  EXPECT_EQ(ctx.tangent_dim(), 2u);
  EXPECT_EQ(ctx.obstruction_dim(), 1u);
}

TEST(CoverIo, SchemaErrors) {
  Json doc = load_doc("line_x2_ddx.cover.json");
  Json bad = doc;
  bad["objects"][0]["chart"]["derivation"]["x"] = "x^^2";
  EXPECT_THROW(read_cover(bad), InvalidInput);
  Json unknown = doc;
  unknown["arrows"] = Json::array({{{"source", "U"}, {"target", "V"}, {"images", Json::object()}}});
  EXPECT_THROW(read_cover(unknown), InvalidInput);
}

TEST(Report, CohomologyReportIsDeterministic) {
  const auto g = read_diagram(load_doc("elliptic_a1_b1.diagram.json"));
  const auto r1 = cohomology_report(g, 2, true), r2 = cohomology_report(g, 2, true);
  EXPECT_EQ(r1.json_text(), r2.json_text());
  EXPECT_EQ(r1.data.at("schema"), kReportSchema);
  for (const auto& [k, v] : r1.data.at("checks").items()) {
    if (v.is_boolean()) {
      EXPECT_TRUE(v.get<bool>()) << k;
    }
  }
  EXPECT_NE(r1.markdown().find("|"), std::string::npos);
}

TEST(Report, EllipticJsonUsesRationalStrings) {
  PipelineOptions o;
  o.tangent_check = false;
  o.hull_order = 3;
  const auto r = run_full_pipeline(EllipticConfig::build(Scalar(1, 2), 1), o);
  EXPECT_EQ(r.data.at("input").at("a"), Json("1/2"));
  const std::string text = r.json_text();
  EXPECT_EQ(text, run_full_pipeline(EllipticConfig::build(Scalar(1, 2), 1), o).json_text());
  EXPECT_EQ(text.find("\"timing\""), std::string::npos);
  const std::string md = r.markdown();
  EXPECT_NE(md.find("t1*t2 - t2*t1"), std::string::npos);
}

TEST(Report, DerivationKernelIsConstants) {
  const auto& fx = elliptic(1, 1);
  for (const auto& ch : fx.cfg.cover.charts()) EXPECT_EQ(derivation_kernel_dim(ch.derivation, 8), 1u) << ch.label;
}
