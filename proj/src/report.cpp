#include "ncdef/report.hpp"

#include <chrono>
#include <sstream>

#include "ncdef/errors.hpp"
#include "ncdef/tangent.hpp"

namespace ncdef {

std::size_t derivation_kernel_dim(const Derivation& d, int degree) {
  const DenseMatrix m = truncated_operator_matrix(derivation_operator(d), degree, degree + 8);
  return m.cols() - rank(m);
}

namespace {

class Stopwatch {
 public:
  double lap() {
    const auto now = std::chrono::steady_clock::now();
    const double s = std::chrono::duration<double>(now - last_).count();
    last_ = now;
    return s;
  }

 private:
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

std::string tuple_name(const ResolvingComplex& rc, int p, std::size_t t) {
  const auto& c = rc.functor().category();
  const auto& tuple = rc.tuples(p)[t];
  if (p == 0) return c.objects()[tuple[0]];
  std::string s;
  for (std::size_t k = 0; k < tuple.size(); ++k) s += (k ? "," : "") + c.morphism(tuple[k]).name;
  return s;
}

// Chart element of every slot of a cochain, through the cokernel bases.
std::vector<std::string> cochain_components(const DeformationContext& ctx, const ResolvingComplex& rc, int p,
                                            std::span<const Scalar> v) {
  std::vector<std::string> out;
  const auto& c = rc.functor().category();
  for (std::size_t t = 0; t < rc.tuples(p).size(); ++t) {
    const std::size_t slot = rc.slot_morphism(p, t);
    const auto& ck = *ctx.ext().cokernels[c.morphism(slot).target];
    out.push_back(ck.lift(v.subspan(rc.offset(p, t), ck.size())).to_string());
  }
  return out;
}

Json slots_json(const ResolvingComplex& rc, int p) {
  Json arr = Json::array();
  const auto& c = rc.functor().category();
  for (std::size_t t = 0; t < rc.tuples(p).size(); ++t)
    arr.push_back({{"tuple", tuple_name(rc, p, t)}, {"value_space", c.morphism(rc.slot_morphism(p, t)).name}});
  return arr;
}

std::string class_name(int p, std::size_t k, std::size_t count) {
  if (p == 0) return "xi_" + std::to_string(k + 1);
  return count == 1 ? "omega" : "omega_" + std::to_string(k + 1);
}

Json first_order_json(const DeformationContext& ctx) {
  const auto& c = ctx.cover()->category();
  Json dirs = Json::array();
  for (std::size_t l = 0; l < ctx.first_order().size(); ++l) {
    const auto& fo = ctx.first_order()[l];
    Json psi = Json::object();
    for (std::size_t o = 0; o < c.object_count(); ++o) psi[c.objects()[o]] = fo.psi[o].to_string();
    Json tau = Json::object();
    for (const auto& [m, v] : fo.tau) tau[c.morphism(m).name] = v.to_string();
    dirs.push_back({{"name", "t" + std::to_string(l + 1)}, {"psi", psi}, {"tau", tau}});
  }
  return dirs;
}

Json datum_json(const DeformationDatum& d) {
  const auto& c = d.cover->category();
  Json psi = Json::object();
  for (std::size_t o = 0; o < c.object_count(); ++o) psi[c.objects()[o]] = d.psi[o].to_string();
  Json res = Json::object();
  for (std::size_t m = 0; m < c.morphism_count(); ++m)
    if (!c.is_identity(m)) res[c.morphism(m).name] = d.restriction[m].to_string();
  return {{"psi", psi}, {"restrictions", res}};
}

}  // namespace

Json context_sections(const DeformationContext& ctx, const PipelineOptions& options, HullResult* hull_out) {
  Stopwatch watch;
  Json timing = Json::object();
  Json out = Json::object();
  const auto& cover = *ctx.cover();
  const auto& c = cover.category();
  const auto& ext = ctx.ext();

  Json slots = Json::array();
  for (std::size_t f = 0; f < c.morphism_count(); ++f) {
    const auto& ck = *ext.cokernels[c.morphism(f).target];
    slots.push_back({{"slot", c.morphism(f).name},
                     {"source", c.objects()[c.morphism(f).source]},
                     {"target", c.objects()[c.morphism(f).target]},
                     {"dim", ck.size()},
                     {"basis", ck.labels()},
                     {"stable_degree", ck.stable_degree()}});
  }
  out["ext_slots"] = slots;

  const Cohomology& coh = ctx.cohomology();
  const ResolvingComplex& layout = options.full_complex ? ctx.full_complex() : coh.complex();
  Json degrees = Json::array();
  for (int p = 0; p <= 1; ++p) {
    Json basis = Json::array();
    const auto& reps = coh.representatives(p);
    for (std::size_t k = 0; k < reps.size(); ++k) {
      const Vector v = options.full_complex && p > 0 ? coh.complex().embed_normalized(p, reps[k], ctx.full_complex()) : reps[k];
      basis.push_back({{"name", class_name(p, k, reps.size())},
                       {"vector", vector_json(v)},
                       {"components", cochain_components(ctx, layout, p, v)}});
    }
    degrees.push_back({{"p", p}, {"dim", reps.size()}, {"slots", slots_json(layout, p)}, {"basis", basis}});
  }
  out["cohomology"] = {{"layout", options.full_complex ? "full" : "normalized"}, {"degrees", degrees}};

  for (std::size_t o = 0; o < c.object_count(); ++o) {
    const std::size_t k = derivation_kernel_dim(cover.chart(o).derivation, 8);
    if (k != 1)
      throw DomainError("chart " + c.objects()[o] + ": derivation kernel has dimension " + std::to_string(k) +
                        "; only constant kernels are supported");
  }
  const HochschildSummary hh = global_hochschild_dims(coh, ctx.full_complex(), MorFunctor::constant(c, 1));
  out["hochschild"] = {{"HH0", hh.hh0}, {"HH1", hh.hh1}, {"HH2", hh.hh2}};
  timing["cohomology"] = watch.lap();

  const std::size_t r = ctx.tangent_dim();
  Json first = {{"directions", first_order_json(ctx)}};
  {
    auto free2 = make_truncated_free(tangent_generators(r), 2);
    std::vector<Vector> dirs;
    for (std::size_t l = 0; l < r; ++l) dirs.push_back(free2->generator(l));
    first["validates"] = r == 0 || validate(ctx.first_order_datum(free2, dirs)).is_zero();
  }
  out["first_order"] = first;

  if (r > 0 && ctx.obstruction_dim() > 0) {
    const auto table = cup_table(ctx);
    Json t = Json::array();
    for (const auto& row : table) {
      Json jr = Json::array();
      for (const auto& v : row) jr.push_back(vector_json(v));
      t.push_back(jr);
    }
    out["cup_products"] = {{"basis", class_name(1, 0, ctx.obstruction_dim())}, {"table", t}};
    const NoLiftCertificate cert = no_lift_certificate(ctx);
    out["no_lift"] = {{"free_system_infeasible", cert.free_system_infeasible},
                      {"obstructed_monomials", cert.obstructed_monomials},
                      {"relations", cert.relations},
                      {"quotient_lift_validates", cert.quotient_lift_validates}};
  } else {
    out["cup_products"] = {{"basis", nullptr}, {"table", Json::array()}};
    out["no_lift"] = nullptr;
  }
  timing["cup_products"] = watch.lap();

  HullResult hull = hull_compute(ctx, options.hull_order);
  Json steps = Json::array();
  for (const auto& s : hull.log)
    steps.push_back({{"order", s.order},
                     {"kernel_dim", s.kernel_dim},
                     {"obstructed", s.obstructed},
                     {"new_relations", s.new_relations},
                     {"validated", s.validated}});
  const auto dims = hull.hull()->graded_dims();
  out["hull"] = {{"order", hull.order},
                 {"relations", hull.relation_strings},
                 {"steps", steps},
                 {"dim", hull.hull()->dim()},
                 {"graded_dims", dims},
                 {"tower_coherent", tower_coherent(hull)},
                 {"commutative", hull.hull()->is_commutative()}};
  Json versal = datum_json(hull.versal);
  versal["validates"] = validate(hull.versal).is_zero();
  out["versal"] = versal;
  timing["hull"] = watch.lap();

  if (options.tangent_check) {
    const TangentCheck tc = tangent_dimension_check(ctx.cover());
    Json samples = Json::array();
    for (const auto& s : tc.samples)
      samples.push_back({{"degree", s.degree}, {"cocycles", s.cocycles}, {"coboundaries", s.coboundaries}});
    out["tangent"] = {{"dimension", tc.dimension}, {"stable_degree", tc.stable_degree}, {"samples", samples}};
    timing["tangent"] = watch.lap();
  }
  if (options.timing) out["timing"] = timing;
  if (hull_out) *hull_out = std::move(hull);
  return out;
}

Report cohomology_report(const MorFunctor& g, int p_max, bool full_complex) {
  if (p_max < 0) throw InvalidInput("max degree must be nonnegative");
  const Cohomology norm(ResolvingComplex::build(g, true, p_max));
  const Cohomology full(ResolvingComplex::build(g, false, p_max));
  norm.complex().check_square_zero();
  full.complex().check_square_zero();
  const auto& c = g.category();

  Json data;
  data["schema"] = kReportSchema;
  data["kind"] = "cohomology";
  Json objs = Json::array();
  for (const auto& o : c.objects()) objs.push_back(o);
  Json mors = Json::array();
  for (std::size_t f = 0; f < c.morphism_count(); ++f) mors.push_back({{"name", c.morphism(f).name}, {"dim", g.dim(f)}});
  data["input"] = {{"objects", objs}, {"morphisms", mors}, {"max_degree", p_max}};

  const Cohomology& shown = full_complex ? full : norm;
  Json degrees = Json::array();
  bool agree = true;
  for (int p = 0; p <= p_max; ++p) {
    agree = agree && norm.dim(p) == full.dim(p);
    Json basis = Json::array();
    for (const auto& v : shown.representatives(p)) basis.push_back(vector_json(v));
    degrees.push_back({{"p", p},
                       {"dim", shown.dim(p)},
                       {"normalized_dim", norm.dim(p)},
                       {"full_dim", full.dim(p)},
                       {"cochain_dim", shown.complex().dim(p)},
                       {"slots", slots_json(shown.complex(), p)},
                       {"basis", basis}});
  }
  data["cohomology"] = {{"layout", full_complex ? "full" : "normalized"}, {"degrees", degrees}};
  data["checks"] = {{"square_zero", true},
                    {"normalized_matches_full", agree},
                    {"limit_dimension", limit_dimension(g)},
                    {"limit_matches_h0", limit_dimension(g) == norm.dim(0)}};
  return {data};
}

Report hull_report(const CoverConfig& cfg, const PipelineOptions& options) {
  DeformationContext::Options o = cfg.options;
  o.cokernel = options.cokernel;
  const DeformationContext ctx(cfg.cover, o);
  Json data = context_sections(ctx, options);
  data["schema"] = kReportSchema;
  data["kind"] = "hull";
  Json objs = Json::array();
  for (const auto& name : cfg.cover.category().objects()) objs.push_back(name);
  data["input"] = {{"objects", objs},
                   {"hull_order", options.hull_order},
                   {"d_start", o.cokernel.d_start},
                   {"d_max", o.cokernel.d_max},
                   {"margin", o.cokernel.margin},
                   {"window", o.cokernel.window},
                   {"full_complex", options.full_complex}};
  return {data};
}

// ---------------------------------------------------------------------------
// Rendering

std::string Report::json_text() const { return data.dump(2) + "\n"; }

namespace {

std::string join(const Json& arr, const char* sep = ", ") {
  std::string s;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (i) s += sep;
    s += arr[i].is_string() ? arr[i].get<std::string>() : arr[i].dump();
  }
  return s;
}

std::string code(const std::string& s) { return "`" + s + "`"; }

std::string slot_title(const Json& slot) {
  return slot.at("source").get<std::string>() + " ⊇ " + slot.at("target").get<std::string>();
}

std::string yes_no(const Json& b) { return b.is_boolean() && b.get<bool>() ? "yes" : "no"; }

void render_common(std::ostringstream& os, const Json& d) {
  os << "## Ext¹ bases\n\n| slot | dim | basis |\n|---|---|---|\n";
  for (const auto& s : d.at("ext_slots"))
    os << "| " << slot_title(s) << " | " << s.at("dim").get<std::size_t>() << " | " << join(s.at("basis")) << " |\n";

  const auto& coh = d.at("cohomology");
  os << "\n## Cohomology of the Ext¹ diagram (" << coh.at("layout").get<std::string>() << " layout)\n\n";
  os << "| n | p | classes |\n|---|---|---|\n";
  for (const auto& deg : coh.at("degrees")) {
    const int p = deg.at("p").get<int>();
    std::string cls;
    for (const auto& b : deg.at("basis")) {
      if (!cls.empty()) cls += "; ";
      cls += b.at("name").get<std::string>() + " = (" + join(b.at("components")) + ")";
    }
    os << "| " << p + 1 << " | " << p << " | " << (cls.empty() ? "none" : cls) << " |\n";
  }
  for (const auto& deg : coh.at("degrees")) {
    std::vector<std::string> names;
    for (const auto& s : deg.at("slots")) names.push_back(s.at("tuple").get<std::string>());
    os << "\nDegree " << deg.at("p").get<int>() << " slots: ";
    for (std::size_t i = 0; i < names.size(); ++i) os << (i ? ", " : "") << code(names[i]);
    os << (names.empty() ? "none\n" : "\n");
  }

  const auto& hh = d.at("hochschild");
  os << "\n## Global Hochschild cohomology\n\n| HH⁰ | HH¹ | HH² |\n|---|---|---|\n| " << hh.at("HH0") << " | "
     << hh.at("HH1") << " | " << hh.at("HH2") << " |\n";

  os << "\n## First-order family\n\n| direction | object | ψ |\n|---|---|---|\n";
  for (const auto& dir : d.at("first_order").at("directions"))
    for (const auto& [k, v] : dir.at("psi").items())
      os << "| " << dir.at("name").get<std::string>() << " | " << k << " | " << code(v.get<std::string>()) << " |\n";
  os << "\n| direction | arrow | τ |\n|---|---|---|\n";
  for (const auto& dir : d.at("first_order").at("directions"))
    for (const auto& [k, v] : dir.at("tau").items())
      os << "| " << dir.at("name").get<std::string>() << " | " << k << " | " << code(v.get<std::string>()) << " |\n";
  os << "\nFirst-order datum validates: " << yes_no(d.at("first_order").at("validates")) << "\n";

  const auto& cup = d.at("cup_products");
  if (!cup.at("table").empty()) {
    os << "\n## Cup products (coordinates in " << cup.at("basis").get<std::string>() << ")\n\n|   |";
    const std::size_t r = cup.at("table").size();
    for (std::size_t m = 0; m < r; ++m) os << " t" << m + 1 << "* |";
    os << "\n|---|";
    for (std::size_t m = 0; m < r; ++m) os << "---|";
    os << "\n";
    for (std::size_t l = 0; l < r; ++l) {
      os << "| t" << l + 1 << "* |";
      for (std::size_t m = 0; m < r; ++m) os << " " << join(cup.at("table")[l][m]) << " |";
      os << "\n";
    }
  }
  if (!d.at("no_lift").is_null()) {
    const auto& nl = d.at("no_lift");
    os << "\n## Lifting to order 3\n\n"
       << "- free system infeasible: " << yes_no(nl.at("free_system_infeasible")) << "\n"
       << "- obstructed monomials: " << join(nl.at("obstructed_monomials")) << "\n"
       << "- relations: " << join(nl.at("relations")) << "\n"
       << "- lift after quotient validates: " << yes_no(nl.at("quotient_lift_validates")) << "\n";
  }

  const auto& hull = d.at("hull");
  os << "\n## Hull up to order " << hull.at("order") << "\n\n";
  os << "Relations: " << (hull.at("relations").empty() ? std::string("none") : join(hull.at("relations"))) << "\n\n";
  os << "| step | kernel dim | obstructed | new relations | validated |\n|---|---|---|---|---|\n";
  for (const auto& s : hull.at("steps"))
    os << "| " << s.at("order") << " → " << s.at("order").get<std::size_t>() + 1 << " | " << s.at("kernel_dim") << " | "
       << yes_no(s.at("obstructed")) << " | " << (s.at("new_relations").empty() ? "none" : join(s.at("new_relations")))
       << " | " << yes_no(s.at("validated")) << " |\n";
  os << "\n- dimension " << hull.at("dim") << ", graded dims " << join(hull.at("graded_dims")) << "\n"
     << "- tower coherent: " << yes_no(hull.at("tower_coherent")) << "\n"
     << "- commutative: " << yes_no(hull.at("commutative")) << "\n"
     << "- versal datum validates: " << yes_no(d.at("versal").at("validates")) << "\n";

  if (d.contains("tangent")) {
    os << "\n## Tangent check\n\nFirst-order solutions modulo gauge: " << d.at("tangent").at("dimension")
       << " (stable from degree " << d.at("tangent").at("stable_degree") << ")\n";
  }
}

}  // namespace

std::string Report::markdown() const {
  std::ostringstream os;
  const std::string kind = data.at("kind").get<std::string>();
  if (kind == "cohomology") {
    os << "# ncdef cohomology report\n\n| p | dim | normalized | full | cochains |\n|---|---|---|---|---|\n";
    for (const auto& deg : data.at("cohomology").at("degrees"))
      os << "| " << deg.at("p") << " | " << deg.at("dim") << " | " << deg.at("normalized_dim") << " | "
         << deg.at("full_dim") << " | " << deg.at("cochain_dim") << " |\n";
    const auto& ch = data.at("checks");
    os << "\n- d∘d = 0: " << yes_no(ch.at("square_zero")) << "\n- normalized and full agree: "
       << yes_no(ch.at("normalized_matches_full")) << "\n- limit dimension: " << ch.at("limit_dimension") << "\n";
    return os.str();
  }
  if (kind == "elliptic") {
    const auto& in = data.at("input");
    os << "# ncdef report: y² = x³ + a·x + b\n\n| a | b | Δ = 4a³ + 27b² | hull order | d_max |\n|---|---|---|---|---|\n| "
       << in.at("a").get<std::string>() << " | " << in.at("b").get<std::string>() << " | "
       << in.at("discriminant").get<std::string>() << " | " << in.at("hull_order") << " | " << in.at("d_max") << " |\n\n";
  } else {
    os << "# ncdef hull report\n\n";
  }
  render_common(os, data);
  if (kind == "elliptic") {
    os << "\n## Reduction identities\n\n| slot | element | reduces to |\n|---|---|---|\n";
    for (const auto& r : data.at("reductions"))
      os << "| " << r.at("slot").get<std::string>() << " | " << code(r.at("element").get<std::string>()) << " | "
         << code(r.at("reduced").get<std::string>()) << " |\n";
    if (!data.at("exp_datum").is_null())
      os << "\nTruncated exponential datum over k⟨t1,t2⟩/(t1*t2 - t2*t1, m^" << data.at("exp_datum").at("order")
         << ") validates: " << yes_no(data.at("exp_datum").at("validates")) << "\n";
    os << "\n## Verdicts\n\n| check | result |\n|---|---|\n";
    for (const auto& [k, v] : data.at("verdicts").items()) os << "| " << k << " | " << (v.get<bool>() ? "PASS" : "FAIL") << " |\n";
  }
  return os.str();
}

}  // namespace ncdef
