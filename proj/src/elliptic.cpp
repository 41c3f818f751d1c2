#include "ncdef/elliptic.hpp"

#include "ncdef/errors.hpp"
#include "ncdef/tangent.hpp"

namespace ncdef {

namespace {

// Parenthesized rational literal for substitution into expression strings.
std::string lit(const Scalar& s) { return "(" + s.get_str() + ")"; }

std::string subst(std::string text, const Scalar& a, const Scalar& b) {
  std::string out;
  for (char ch : text) {
    if (ch == 'a') out += lit(a);
    else if (ch == 'b') out += lit(b);
    else out += ch;
  }
  return out;
}

// Chart relation with the parameters substituted, in canonical form.
std::string relation(const std::string& text, const Scalar& a, const Scalar& b, const std::vector<std::string>& vars) {
  return parse_polynomial(subst(text, a, b), vars).to_string(vars);
}

}  // namespace

EllipticConfig EllipticConfig::build(const Scalar& a, const Scalar& b) {
  const Scalar disc = 4 * a * a * a + 27 * b * b;
  if (sgn(disc) == 0) throw SingularCurve("singular curve: discriminant = 0");
  const bool a0 = sgn(a) == 0;

  auto a1 = PresentedAlgebra::create({"A1", {"x", "z"}, std::nullopt,
                                      {relation("z - x^3 - a*x*z^2 - b*z^3", a, b, {"x", "z"})}, {}, {"x", "z"}});
  auto a2 = PresentedAlgebra::create({"A2", {"x", "y"}, std::nullopt,
                                      {relation("y^2 - x^3 - a*x - b", a, b, {"x", "y"})}, {2, 3}, {"x", "y"}});
  auto a3 = PresentedAlgebra::create({"A3", {"x", "y"}, std::string("y"),
                                      {relation("y^2 - x^3 - a*x - b", a, b, {"x", "y"})}, {}, {"x", "y", "y^-1"}});

  Derivation d1 = Derivation::parse(a1, {{"x", subst("1 - 2*a*x*z - 3*b*z^2", a, b)},
                                         {"z", subst("3*x^2 + a*z^2", a, b)}});
  Derivation d2 = Derivation::parse(a2, {{"x", "-2*y"}, {"y", subst("-3*x^2 - a", a, b)}});
  Derivation d3 = Derivation::parse(a3, {{"x", "-2*y"}, {"y", subst("-3*x^2 - a", a, b)}});

  auto elems = [](const AlgebraPtr& alg, std::initializer_list<const char*> items) {
    std::vector<AlgebraElement> out;
    for (const char* s : items) out.push_back(alg->parse(s));
    return out;
  };
  std::vector<ChartData> charts;
  if (!a0) {
    charts.push_back({"U1", a1, d1, elems(a1, {"1", "z", "z^2", "z^3"})});
    charts.push_back({"U2", a2, d2, elems(a2, {"1", "y^2"})});
    charts.push_back({"U3", a3, d3, elems(a3, {"x^2*y^-1", "1", "y^-1", "y^-2", "y^-3"})});
  } else {
    charts.push_back({"U1", a1, d1, elems(a1, {"1", "z", "x", "x*z"})});
    charts.push_back({"U2", a2, d2, elems(a2, {"1", "x"})});
    charts.push_back({"U3", a3, d3, elems(a3, {"x^2*y^-1", "1", "y^-1", "x", "x*y^-1"})});
  }

  FiniteCategory cat = FiniteCategory::poset({"U1", "U2", "U3"}, {{0, 2}, {1, 2}});
  const std::size_t m13 = *cat.morphism_index("U1->U3");
  const std::size_t m23 = *cat.morphism_index("U2->U3");
  std::map<std::size_t, AlgebraMorphism> rho;
  rho.emplace(m13, AlgebraMorphism::parse(a1, a3, {{"x", "x*y^-1"}, {"z", "y^-1"}}));
  rho.emplace(m23, AlgebraMorphism::parse(a2, a3, {{"x", "x"}, {"y", "y"}}));

  EllipticConfig cfg{a, b, disc, ChartCover::create(std::move(cat), std::move(charts), std::move(rho)), m13, m23,
                     {}, {}, {}};

  cfg.xi.push_back({a1->one(), a2->one(), a3->one()});
  if (!a0) {
    cfg.xi.push_back({a1->parse("z^2") * disc, a2->parse("15*y^2"), a3->parse("y^-2") * disc});
    cfg.omega = {{m13, a3->zero()}, {m23, a3->parse("x^2*y^-1") * (6 * a)}};
    cfg.tau.push_back({{m13, a3->zero()}, {m23, a3->zero()}});
    cfg.tau.push_back({{m13, a3->zero()},
                       {m23, a3->parse(subst("-4*a^2*y^-1 - 3*x*y + 9*b*x*y^-1 - 6*a*x^2*y^-1", a, b))}});
  } else {
    cfg.xi.push_back({a1->parse("x*z") * (-3 * b), a2->parse("x"), a3->parse("x")});
    cfg.omega = {{m13, a3->zero()}, {m23, a3->parse("x^2*y^-1")}};
    cfg.tau.push_back({{m13, a3->zero()}, {m23, a3->zero()}});
    cfg.tau.push_back({{m13, a3->parse("x^2*y^-1")}, {m23, a3->zero()}});
  }
  return cfg;
}

DeformationContext::Options EllipticConfig::context_options(const CokernelOptions& cokernel) const {
  DeformationContext::Options o;
  o.cokernel = cokernel;
  o.hh1_basis = xi;
  o.hh2_basis = {omega};
  o.first_order_tau = tau;
  return o;
}

DeformationDatum EllipticConfig::exp_datum(const DeformationContext& ctx, std::size_t order) const {
  if (order < 2) throw InvalidInput("exp_datum: order must be at least 2");
  auto free = make_truncated_free(tangent_generators(2), order);
  const auto& f = *free->free();
  const MatricArtinPtr base = free->quotient({f.parse("t1*t2 - t2*t1")});
  const Vector t1 = base->generator(0);
  const Vector t2 = base->generator(1);

  DeformationDatum d = ctx.first_order_datum(base, {t1, t2});
  const auto& c = cover.category();
  for (std::size_t m = 0; m < c.morphism_count(); ++m) {
    if (c.is_identity(m)) continue;
    const AlgebraElement& tau2 = ctx.first_order()[1].tau.at(m);
    TensorElement t = TensorElement::one(tau2.algebra_ptr(), base);
    AlgebraElement power = tau2.algebra().one();
    Vector tn = base->one();
    Scalar factorial = 1;
    for (std::size_t n = 1; n < order; ++n) {
      power = power * tau2;
      tn = base->multiply(tn, t2);
      factorial *= static_cast<long>(n);
      t += TensorElement::pure(power * (1 / factorial), tn, base);
    }
    // the first-order part of tau_1 is zero by construction
    d.restriction[m] = t;
  }
  return d;
}

}  // namespace ncdef

namespace ncdef {

Report run_full_pipeline(const EllipticConfig& cfg, const PipelineOptions& options) {
  const DeformationContext ctx(cfg.cover, cfg.context_options(options.cokernel));
  Json data = context_sections(ctx, options);
  data["schema"] = kReportSchema;
  data["kind"] = "elliptic";
  data["input"] = {{"a", cfg.a.get_str()},
                   {"b", cfg.b.get_str()},
                   {"discriminant", cfg.discriminant.get_str()},
                   {"hull_order", options.hull_order},
                   {"d_start", options.cokernel.d_start},
                   {"d_max", options.cokernel.d_max},
                   {"margin", options.cokernel.margin},
                   {"window", options.cokernel.window},
                   {"full_complex", options.full_complex}};

  const auto& c = cfg.cover.category();
  const auto& a3 = cfg.cover.chart(2).algebra;
  const auto& ck3 = *ctx.ext().cokernels[2];
  auto reduction = [&](const std::string& slot, const AlgebraElement& e) {
    const Vector v = ck3.reduce(e);
    return Json{{"slot", slot}, {"element", e.to_string()}, {"coordinates", vector_json(v)}, {"reduced", ck3.lift(v).to_string()}};
  };
  Json reductions = Json::array();
  bool reductions_ok = true;
  if (!cfg.a_is_zero()) {
    const AlgebraElement e = a3->parse("15*y^2");
    reductions.push_back(reduction("U2->U3", e));
    reductions_ok = ck3.reduce(e) == ck3.reduce(a3->parse("y^-2") * cfg.discriminant);
  } else {
    const AlgebraElement e = a3->parse("x*y^-2") * (-3 * cfg.b);
    reductions.push_back(reduction("U1->U3", e));
    reductions_ok = ck3.reduce(e) == ck3.reduce(a3->parse("x"));
  }
  data["reductions"] = reductions;

  Json verdicts;
  bool bases_ok = true;
  for (std::size_t o = 0; o < c.object_count(); ++o) {
    const auto& ch = cfg.cover.chart(o);
    const auto& reps = ctx.ext().cokernels[o]->representatives();
    bases_ok = bases_ok && reps == ch.preferred;
  }
  verdicts["ext_bases_match_reference"] = bases_ok;
  verdicts["reduction_identity"] = reductions_ok;
  const auto& hh = data["hochschild"];
  verdicts["hochschild_dims_1_2_1"] = hh["HH0"] == 1 && hh["HH1"] == 2 && hh["HH2"] == 1;

  const Json& table = data["cup_products"]["table"];
  auto is = [&](std::size_t l, std::size_t m, const char* v) {
    return table.size() == 2 && table[l][m].size() == 1 && table[l][m][0] == v;
  };
  verdicts["cup_products"] = is(0, 0, "0") && is(0, 1, "1") && is(1, 0, "-1") && is(1, 1, "0");
  const Json& nl = data["no_lift"];
  verdicts["no_lift_certificate"] = !nl.is_null() && nl["free_system_infeasible"] == true &&
                                    nl["quotient_lift_validates"] == true &&
                                    nl["relations"] == Json::array({"t1*t2 - t2*t1"});
  const Json expected_relations =
      options.hull_order >= 3 ? Json::array({"t1*t2 - t2*t1"}) : Json::array();
  verdicts["hull_relations"] = data["hull"]["relations"] == expected_relations;
  verdicts["hull_tower_coherent"] = data["hull"]["tower_coherent"];
  verdicts["versal_datum_validates"] = data["versal"]["validates"];
  verdicts["first_order_validates"] = data["first_order"]["validates"];

  if (options.hull_order >= 3) {
    const std::size_t order = options.hull_order + 1;
    const bool ok = validate(cfg.exp_datum(ctx, order)).is_zero();
    data["exp_datum"] = {{"order", order}, {"validates", ok}};
    verdicts["exp_datum_validates"] = ok;
  } else {
    data["exp_datum"] = nullptr;
  }
  if (options.tangent_check) {
    verdicts["tangent_dimension"] = data["tangent"]["dimension"] == 2;
    const auto doubled = std::make_shared<const ChartCover>(doubled_cover(cfg.cover, 2));
    const std::size_t dd = tangent_dimension_check(doubled).dimension;
    data["tangent"]["doubled_cover_dimension"] = dd;
    verdicts["tangent_dimension_doubled_cover"] = dd == 2;
  }
  data["verdicts"] = verdicts;
  return {data};
}

}  // namespace ncdef
