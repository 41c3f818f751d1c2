#include "ncdef/io.hpp"

#include "ncdef/errors.hpp"

namespace ncdef {

Json scalar_json(const Scalar& s) { return s.get_str(); }

Json vector_json(std::span<const Scalar> v) {
  Json out = Json::array();
  for (const auto& s : v) out.push_back(scalar_json(s));
  return out;
}

Scalar scalar_from_json(const Json& j, const std::string& where) {
  try {
    if (j.is_number_integer()) return Scalar(j.get<long>());
    if (j.is_string()) return parse_scalar(j.get<std::string>());
  } catch (const std::exception& e) {
    throw InvalidInput(where + ": " + e.what());
  }
  throw InvalidInput(where + ": expected a rational string or an integer");
}

namespace {

const Json& field(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) throw InvalidInput(where + ": missing field '" + key + "'");
  return obj.at(key);
}

std::string text(const Json& j, const std::string& where) {
  if (!j.is_string()) throw InvalidInput(where + ": expected a string");
  return j.get<std::string>();
}

void check_schema(const Json& doc, const char* expected) {
  if (!doc.is_object()) throw InvalidInput("document root must be an object");
  const std::string s = text(field(doc, "schema", "root"), "schema");
  if (s != expected) throw InvalidInput("unsupported schema '" + s + "' (expected '" + expected + "')");
}

std::size_t object_ref(const FiniteCategory& c, const Json& j, const std::string& where) {
  const std::string name = text(j, where);
  auto idx = c.object_index(name);
  if (!idx) throw InvalidInput(where + ": unknown object '" + name + "'");
  return *idx;
}

std::size_t morphism_ref(const FiniteCategory& c, const Json& j, const std::string& where) {
  const std::string name = text(j, where);
  auto idx = c.morphism_index(name);
  if (!idx) throw InvalidInput(where + ": unknown morphism '" + name + "'");
  return *idx;
}

FiniteCategory read_poset(const Json& doc) {
  std::vector<std::string> objects;
  const Json& objs = field(doc, "objects", "root");
  if (!objs.is_array()) throw InvalidInput("objects: expected an array");
  for (std::size_t i = 0; i < objs.size(); ++i) {
    const Json& o = objs[i];
    objects.push_back(text(o.is_object() ? field(o, "name", "objects[" + std::to_string(i) + "]") : o,
                           "objects[" + std::to_string(i) + "]"));
  }
  std::vector<std::pair<std::size_t, std::size_t>> arrows;
  const Json& arr = doc.contains("arrows") ? doc.at("arrows") : Json::array();
  if (!arr.is_array()) throw InvalidInput("arrows: expected an array");
  auto find = [&](const std::string& n, const std::string& where) {
    for (std::size_t i = 0; i < objects.size(); ++i)
      if (objects[i] == n) return i;
    throw InvalidInput(where + ": unknown object '" + n + "'");
  };
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string where = "arrows[" + std::to_string(i) + "]";
    arrows.emplace_back(find(text(field(arr[i], "source", where), where + ".source"), where),
                        find(text(field(arr[i], "target", where), where + ".target"), where));
  }
  return FiniteCategory::poset(std::move(objects), arrows);
}

DenseMatrix read_matrix(const Json& j, std::size_t rows, std::size_t cols, const std::string& where) {
  if (!j.is_array() || j.size() != rows)
    throw InvalidInput(where + ": expected " + std::to_string(rows) + " rows");
  DenseMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols)
      throw InvalidInput(where + "[" + std::to_string(r) + "]: expected " + std::to_string(cols) + " entries");
    for (std::size_t c = 0; c < cols; ++c)
      m(r, c) = scalar_from_json(j[r][c], where + "[" + std::to_string(r) + "][" + std::to_string(c) + "]");
  }
  return m;
}

Json matrix_json(const DenseMatrix& m) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(vector_json(m.row(r)));
  return out;
}

Json poset_json(const FiniteCategory& c) {
  Json objs = Json::array();
  for (const auto& o : c.objects()) objs.push_back(o);
  Json arrows = Json::array();
  for (const auto& m : c.morphisms())
    if (m.source != m.target) arrows.push_back({{"source", c.objects()[m.source]}, {"target", c.objects()[m.target]}});
  return {{"objects", objs}, {"arrows", arrows}};
}

}  // namespace

MorFunctor read_diagram(const Json& doc) {
  check_schema(doc, kDiagramSchema);
  const FiniteCategory c = read_poset(doc);
  std::vector<std::size_t> dims(c.morphism_count(), 0);
  std::vector<bool> seen(c.morphism_count(), false);
  std::vector<std::vector<std::string>> labels(c.morphism_count());
  const Json& values = field(doc, "values", "root");
  if (!values.is_array()) throw InvalidInput("values: expected an array");
  for (std::size_t i = 0; i < values.size(); ++i) {
    const std::string where = "values[" + std::to_string(i) + "]";
    const std::size_t f = morphism_ref(c, field(values[i], "morphism", where), where + ".morphism");
    const Json& d = field(values[i], "dim", where);
    if (!d.is_number_unsigned()) throw InvalidInput(where + ".dim: expected a nonnegative integer");
    dims[f] = d.get<std::size_t>();
    seen[f] = true;
    if (values[i].contains("labels"))
      for (const auto& l : values[i].at("labels")) labels[f].push_back(text(l, where + ".labels"));
  }
  for (std::size_t f = 0; f < seen.size(); ++f)
    if (!seen[f]) throw InvalidInput("values: no entry for morphism '" + c.morphism(f).name + "'");
  bool any_label = false;
  for (auto& l : labels) any_label |= !l.empty();
  if (!any_label) labels.clear();

  auto read_maps = [&](const char* key, bool is_pre) {
    std::map<MorFunctor::Key, DenseMatrix> out;
    if (!doc.contains(key)) return out;
    const Json& arr = doc.at(key);
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string where = std::string(key) + "[" + std::to_string(i) + "]";
      const std::size_t f = morphism_ref(c, field(arr[i], "morphism", where), where + ".morphism");
      const std::size_t along = morphism_ref(c, field(arr[i], "along", where), where + ".along");
      const auto& mf = c.morphism(f);
      const auto& ma = c.morphism(along);
      std::optional<std::size_t> g;
      if (is_pre) {
        if (ma.target != mf.source) throw InvalidInput(where + ": 'along' must end at the source of 'morphism'");
        g = c.compose(f, along);
      } else {
        if (ma.source != mf.target) throw InvalidInput(where + ": 'along' must start at the target of 'morphism'");
        g = c.compose(along, f);
      }
      out.emplace(MorFunctor::Key{f, along}, read_matrix(field(arr[i], "matrix", where), dims[*g], dims[f], where + ".matrix"));
    }
    return out;
  };
  auto pre = read_maps("pre", true);
  auto post = read_maps("post", false);
  return MorFunctor::from_generators(c, std::move(dims), std::move(pre), std::move(post), std::move(labels));
}

Json write_diagram(const MorFunctor& g) {
  const auto& c = g.category();
  Json doc = poset_json(c);
  doc["schema"] = kDiagramSchema;
  Json values = Json::array();
  for (std::size_t f = 0; f < c.morphism_count(); ++f) {
    Json v = {{"morphism", c.morphism(f).name}, {"dim", g.dim(f)}};
    if (!g.labels(f).empty()) v["labels"] = g.labels(f);
    values.push_back(v);
  }
  doc["values"] = values;
  auto maps = [&](const std::map<MorFunctor::Key, DenseMatrix>& m) {
    Json arr = Json::array();
    for (const auto& [key, mat] : m) {
      if (c.is_identity(key.second)) continue;
      arr.push_back({{"morphism", c.morphism(key.first).name},
                     {"along", c.morphism(key.second).name},
                     {"matrix", matrix_json(mat)}});
    }
    return arr;
  };
  doc["pre"] = maps(g.pre_maps());
  doc["post"] = maps(g.post_maps());
  return doc;
}

CoverConfig read_cover(const Json& doc) {
  check_schema(doc, kCoverSchema);
  FiniteCategory c = read_poset(doc);
  const Json& objs = doc.at("objects");
  std::vector<ChartData> charts;
  for (std::size_t i = 0; i < objs.size(); ++i) {
    const std::string where = "objects[" + std::to_string(i) + "]";
    const Json& ch = field(objs[i], "chart", where);
    PresentedAlgebra::Presentation pres;
    pres.name = c.objects()[i];
    for (const auto& v : field(ch, "variables", where + ".chart")) pres.variables.push_back(text(v, where + ".variables"));
    if (ch.contains("inverted") && !ch.at("inverted").is_null()) pres.inverted = text(ch.at("inverted"), where + ".inverted");
    if (ch.contains("relations"))
      for (const auto& r : ch.at("relations")) pres.relations.push_back(text(r, where + ".relations"));
    if (ch.contains("weights"))
      for (const auto& w : ch.at("weights")) pres.weights.push_back(w.get<int>());
    if (ch.contains("priority"))
      for (const auto& p : ch.at("priority")) pres.priority.push_back(text(p, where + ".priority"));
    AlgebraPtr alg;
    try {
      alg = PresentedAlgebra::create(pres);
    } catch (const std::invalid_argument& e) {
      throw InvalidInput(where + ".chart: " + e.what());
    }
    std::map<std::string, std::string> images;
    for (const auto& [k, v] : field(ch, "derivation", where + ".chart").items()) images[k] = text(v, where + ".derivation");
    Derivation d = Derivation::parse(alg, images);
    std::vector<AlgebraElement> preferred;
    if (ch.contains("preferred"))
      for (const auto& p : ch.at("preferred")) preferred.push_back(alg->parse(text(p, where + ".preferred")));
    charts.push_back({pres.name, alg, std::move(d), std::move(preferred)});
  }

  std::map<std::size_t, AlgebraMorphism> rho;
  const Json& arr = doc.contains("arrows") ? doc.at("arrows") : Json::array();
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string where = "arrows[" + std::to_string(i) + "]";
    const std::size_t s = object_ref(c, arr[i].at("source"), where);
    const std::size_t t = object_ref(c, arr[i].at("target"), where);
    std::map<std::string, std::string> images;
    for (const auto& [k, v] : field(arr[i], "images", where).items()) images[k] = text(v, where + ".images");
    const std::size_t m = *c.morphism_index(c.objects()[s] + "->" + c.objects()[t]);
    rho.emplace(m, AlgebraMorphism::parse(charts[s].algebra, charts[t].algebra, images));
  }
  CoverConfig cfg{ChartCover::create(std::move(c), std::move(charts), std::move(rho)), {}};
  const auto& cat = cfg.cover.category();

  if (doc.contains("cokernel")) {
    const Json& k = doc.at("cokernel");
    auto get = [&](const char* key, int& out) {
      if (k.contains(key)) out = k.at(key).get<int>();
    };
    get("d_start", cfg.options.cokernel.d_start);
    get("d_max", cfg.options.cokernel.d_max);
    get("margin", cfg.options.cokernel.margin);
    get("window", cfg.options.cokernel.window);
  }
  if (doc.contains("hh1_basis"))
    for (const auto& fam : doc.at("hh1_basis")) {
      std::vector<AlgebraElement> v;
      for (std::size_t o = 0; o < cat.object_count(); ++o)
        v.push_back(cfg.cover.chart(o).algebra->parse(text(field(fam, cat.objects()[o].c_str(), "hh1_basis"), "hh1_basis")));
      cfg.options.hh1_basis.push_back(std::move(v));
    }
  auto arrow_maps = [&](const char* key) {
    std::vector<std::map<std::size_t, AlgebraElement>> out;
    if (!doc.contains(key)) return out;
    for (const auto& w : doc.at(key)) {
      std::map<std::size_t, AlgebraElement> m;
      for (const auto& [name, v] : w.items()) {
        const std::size_t idx = morphism_ref(cat, Json(name), key);
        m.emplace(idx, cfg.cover.chart(cat.morphism(idx).target).algebra->parse(text(v, key)));
      }
      out.push_back(std::move(m));
    }
    return out;
  };
  cfg.options.hh2_basis = arrow_maps("hh2_basis");
  cfg.options.first_order_tau = arrow_maps("first_order_tau");
  if (doc.contains("solve_d_max")) cfg.options.solve_d_max = doc.at("solve_d_max").get<int>();
  return cfg;
}

Json write_cover(const ChartCover& cover, const DeformationContext::Options& options) {
  const auto& c = cover.category();
  Json doc;
  doc["schema"] = kCoverSchema;
  Json objs = Json::array();
  for (std::size_t o = 0; o < c.object_count(); ++o) {
    const auto& ch = cover.chart(o);
    const auto& alg = *ch.algebra;
    Json chart;
    chart["variables"] = alg.variables();
    chart["inverted"] = alg.inverted_index() ? Json(alg.variables()[*alg.inverted_index()]) : Json(nullptr);
    chart["relations"] = alg.presentation().relations;
    chart["weights"] = alg.presentation().weights;
    chart["priority"] = alg.presentation().priority;
    Json der;
    for (std::size_t v = 0; v < alg.variables().size(); ++v) der[alg.variables()[v]] = ch.derivation.image(v).to_string();
    chart["derivation"] = der;
    Json pref = Json::array();
    for (const auto& p : ch.preferred) pref.push_back(p.to_string());
    chart["preferred"] = pref;
    objs.push_back({{"name", c.objects()[o]}, {"chart", chart}});
  }
  doc["objects"] = objs;
  Json arrows = Json::array();
  for (std::size_t m = 0; m < c.morphism_count(); ++m) {
    const auto& mor = c.morphism(m);
    if (mor.source == mor.target) continue;
    const auto& rho = cover.restriction(m);
    Json images;
    const auto& src = *rho.source();
    for (std::size_t v = 0; v < src.variables().size(); ++v) images[src.variables()[v]] = rho.image(v).to_string();
    arrows.push_back({{"source", c.objects()[mor.source]}, {"target", c.objects()[mor.target]}, {"images", images}});
  }
  doc["arrows"] = arrows;
  doc["cokernel"] = {{"d_start", options.cokernel.d_start},
                     {"d_max", options.cokernel.d_max},
                     {"margin", options.cokernel.margin},
                     {"window", options.cokernel.window}};
  if (!options.hh1_basis.empty()) {
    Json arr = Json::array();
    for (const auto& fam : options.hh1_basis) {
      Json j;
      for (std::size_t o = 0; o < fam.size(); ++o) j[c.objects()[o]] = fam[o].to_string();
      arr.push_back(j);
    }
    doc["hh1_basis"] = arr;
  }
  auto arrow_maps = [&](const std::vector<std::map<std::size_t, AlgebraElement>>& v) {
    Json arr = Json::array();
    for (const auto& m : v) {
      Json j = Json::object();
      for (const auto& [idx, e] : m) j[c.morphism(idx).name] = e.to_string();
      arr.push_back(j);
    }
    return arr;
  };
  if (!options.hh2_basis.empty()) doc["hh2_basis"] = arrow_maps(options.hh2_basis);
  if (!options.first_order_tau.empty()) doc["first_order_tau"] = arrow_maps(options.first_order_tau);
  doc["solve_d_max"] = options.solve_d_max;
  return doc;
}

}  // namespace ncdef
