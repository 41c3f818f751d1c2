#include "ncdef/ext_presheaf.hpp"

#include <algorithm>

#include "ncdef/errors.hpp"

namespace ncdef {

ChartCover ChartCover::create(FiniteCategory category, std::vector<ChartData> charts,
                              std::map<std::size_t, AlgebraMorphism> restrictions) {
  ChartCover cover;
  category.validate();
  if (charts.size() != category.object_count()) throw InvalidInput("cover needs one chart per object");
  for (const auto& ch : charts) {
    if (ch.derivation.algebra_ptr() != ch.algebra)
      throw InvalidInput("derivation of chart '" + ch.label + "' acts on another algebra");
    ch.derivation.verify();
  }
  const std::size_t m = category.morphism_count();
  std::vector<std::optional<AlgebraMorphism>> rho(m);
  for (auto& [k, r] : restrictions) {
    if (k >= m || category.is_identity(k)) throw InvalidInput("restriction given for an unknown or identity arrow");
    const auto& mor = category.morphism(k);
    if (r.source() != charts[mor.source].algebra || r.target() != charts[mor.target].algebra)
      throw InvalidInput("restriction along " + mor.name + " has the wrong source or target algebra");
    rho[k] = r;
  }
  for (std::size_t o = 0; o < category.object_count(); ++o)
    rho[category.identity(o)] = AlgebraMorphism::identity(charts[o].algebra);
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t g = 0; g < m; ++g)
      for (std::size_t f = 0; f < m; ++f) {
        auto gf = category.compose(g, f);
        if (!gf || rho[*gf] || !rho[f] || !rho[g]) continue;
        rho[*gf] = rho[f]->then(*rho[g]);
        changed = true;
      }
  }
  for (std::size_t k = 0; k < m; ++k) {
    if (!rho[k]) throw InvalidInput("no restriction along " + category.morphism(k).name);
    rho[k]->verify();
    const auto& mor = category.morphism(k);
    const auto& src = charts[mor.source];
    const auto& tgt = charts[mor.target];
    for (std::size_t v = 0; v < src.algebra->variables().size(); ++v) {
      const AlgebraElement gen = src.algebra->generator(v);
      if (!(rho[k]->apply(src.derivation.apply(gen)) == tgt.derivation.apply(rho[k]->apply(gen))))
        throw DomainError("restriction along " + mor.name + " does not intertwine the derivations on generator '" +
                          src.algebra->variables()[v] + "'");
    }
  }
  cover.category_ = std::move(category);
  cover.charts_ = std::move(charts);
  for (auto& r : rho) cover.restrictions_.push_back(std::move(*r));
  return cover;
}

// ---------------------------------------------------------------------------

namespace {

/// The image of D intersected with the degree <= d truncation, computed from
/// preimages of degree <= d + margin.
struct ImageSlice {
  std::vector<Exponents> low;     // basis of V_d
  std::vector<Exponents> target;  // basis containing every image column
  std::vector<Exponents> source;  // basis of V_{d+margin}
  DenseMatrix dmat;               // D on source, in target coordinates
  std::vector<Vector> image_low;  // spanning set of im D cap V_d (V_d coordinates)
};

ImageSlice image_slice(const Derivation& der, int d, int margin) {
  const auto& alg = der.algebra_ptr();
  ImageSlice s;
  s.low = alg->basis_monomials(d);
  s.source = alg->basis_monomials(d + margin);
  std::vector<AlgebraElement> images;
  int top = d + margin;
  for (const auto& m : s.source) {
    images.push_back(der.apply(alg->normal_form(Polynomial::monomial(m))));
    top = std::max(top, images.back().degree());
  }
  s.target = alg->basis_monomials(top);
  std::vector<Vector> cols;
  for (const auto& im : images) cols.push_back(coordinates(im, s.target));
  s.dmat = DenseMatrix::from_columns(s.target.size(), cols);

  // target is ordered by degree, so V_d is a prefix
  const std::size_t nl = s.low.size();
  std::vector<Vector> high_rows;
  for (std::size_t r = nl; r < s.target.size(); ++r) high_rows.push_back(s.dmat.row(r));
  std::vector<Vector> ker;
  if (high_rows.empty()) {
    for (std::size_t j = 0; j < s.source.size(); ++j) {
      Vector e(s.source.size());
      e[j] = 1;
      ker.push_back(std::move(e));
    }
  } else {
    ker = kernel_basis(DenseMatrix::from_rows(s.source.size(), high_rows));
  }
  for (const auto& k : ker) {
    Vector full = s.dmat.apply(k);
    full.resize(nl);
    if (!is_zero(full)) s.image_low.push_back(std::move(full));
  }
  return s;
}

std::vector<AlgebraElement> choose_reps(const AlgebraPtr& alg, const ImageSlice& s,
                                        const std::vector<AlgebraElement>& preferred) {
  EchelonBasis eb(s.low.size());
  for (const auto& v : s.image_low) eb.insert(v);
  std::vector<AlgebraElement> reps;
  auto try_add = [&](const AlgebraElement& e) {
    if (eb.size() == s.low.size()) return;
    Vector v;
    try {
      v = coordinates(e, s.low);
    } catch (const TruncationEscape&) {
      return;
    }
    if (eb.insert(std::move(v))) reps.push_back(e);
  };
  for (const auto& p : preferred) try_add(p);
  for (const auto& m : s.low) try_add(alg->normal_form(Polynomial::monomial(m)));
  return reps;
}

}  // namespace

struct CokernelPresentation::Slice {
  std::vector<Exponents> target;
  std::vector<Exponents> source;
  std::size_t nreps = 0;
  std::unique_ptr<LinearSolver> solver;  // columns: reps, then D(source)
};

std::shared_ptr<const CokernelPresentation> CokernelPresentation::compute(const Derivation& d,
                                                                          const CokernelOptions& options,
                                                                          const std::vector<AlgebraElement>& preferred) {
  if (options.d_start < 1 || options.margin < 0 || options.window < 1)
    throw InvalidInput("cokernel options: d_start >= 1, margin >= 0, window >= 1 required");
  if (options.d_max < options.d_start + options.window - 1)
    throw InvalidInput("cokernel options: d_max must exceed d_start + window - 2");
  for (const auto& p : preferred)
    if (p.algebra_ptr() != d.algebra_ptr()) throw InvalidInput("preferred representative lives in another algebra");

  std::shared_ptr<CokernelPresentation> ck(new CokernelPresentation(d, options));
  std::vector<std::vector<AlgebraElement>> history;
  for (int deg = options.d_start; deg <= options.d_max; ++deg) {
    history.push_back(choose_reps(d.algebra_ptr(), image_slice(d, deg, options.margin), preferred));
    const auto w = static_cast<std::size_t>(options.window);
    if (history.size() < w) continue;
    const auto& last = history.back();
    bool stable = true;
    for (std::size_t k = history.size() - w; k < history.size(); ++k)
      if (history[k] != last) stable = false;
    if (stable) {
      ck->stable_degree_ = deg - options.window + 1;
      ck->reps_ = last;
      return ck;
    }
  }
  throw NoStabilization("cokernel of the derivation on '" + d.algebra_ptr()->name() + "'", options.d_max);
}

std::vector<std::string> CokernelPresentation::labels() const {
  std::vector<std::string> out;
  for (const auto& r : reps_) out.push_back(r.to_string());
  return out;
}

const CokernelPresentation::Slice& CokernelPresentation::slice(int d) const {
  std::lock_guard lock(mutex_);
  auto it = slices_.find(d);
  if (it != slices_.end()) return *it->second;
  const ImageSlice s = image_slice(derivation_, d, options_.margin);
  auto out = std::make_shared<Slice>();
  out->target = s.target;
  out->source = s.source;
  out->nreps = reps_.size();
  std::vector<Vector> cols;
  for (const auto& r : reps_) cols.push_back(coordinates(r, s.target));
  for (std::size_t j = 0; j < s.dmat.cols(); ++j) cols.push_back(s.dmat.column(j));
  out->solver = std::make_unique<LinearSolver>(DenseMatrix::from_columns(s.target.size(), cols));
  return *slices_.emplace(d, std::move(out)).first->second;
}

CokernelPresentation::Reduction CokernelPresentation::reduce_with_witness(const AlgebraElement& e) const {
  if (e.algebra_ptr() && e.algebra_ptr() != algebra())
    throw InvalidInput("reduce: element of '" + e.algebra().name() + "' in a cokernel over '" + algebra()->name() + "'");
  if (e.is_zero()) return {Vector(reps_.size()), algebra()->zero()};
  const int ceiling = options_.d_max + options_.margin;
  for (int d = std::max(stable_degree_, e.degree()); d <= std::max(ceiling, e.degree()); ++d) {
    const Slice& s = slice(d);
    auto x = s.solver->solve(coordinates(e, s.target));
    if (!x) continue;
    Reduction r;
    r.coordinates.assign(x->begin(), x->begin() + static_cast<std::ptrdiff_t>(s.nreps));
    r.preimage = from_coordinates(algebra(), s.source,
                                  std::span<const Scalar>(x->data() + s.nreps, x->size() - s.nreps));
    return r;
  }
  throw NoStabilization("reduction of " + e.to_string() + " in the cokernel over '" + algebra()->name() + "'",
                        options_.d_max);
}

Vector CokernelPresentation::reduce(const AlgebraElement& e) const { return reduce_with_witness(e).coordinates; }

AlgebraElement CokernelPresentation::lift(std::span<const Scalar> c) const {
  if (c.size() != reps_.size()) throw InvalidInput("lift: wrong number of coordinates");
  AlgebraElement out = algebra()->zero();
  for (std::size_t k = 0; k < c.size(); ++k) out += reps_[k] * c[k];
  return out;
}

// ---------------------------------------------------------------------------

Vector ExtDiagram::coordinates(std::size_t f, const AlgebraElement& e) const {
  return cokernels.at(cover.category().morphism(f).target)->reduce(e);
}

ExtDiagram build_ext_diagram(const ChartCover& cover, const CokernelOptions& options) {
  const auto& c = cover.category();
  std::vector<CokernelPtr> cks;
  for (const auto& ch : cover.charts()) cks.push_back(CokernelPresentation::compute(ch.derivation, options, ch.preferred));

  std::vector<std::size_t> dims;
  std::vector<std::vector<std::string>> labels;
  for (std::size_t f = 0; f < c.morphism_count(); ++f) {
    const auto& ck = cks[c.morphism(f).target];
    dims.push_back(ck->size());
    labels.push_back(ck->labels());
  }
  std::map<MorFunctor::Key, DenseMatrix> pre, post;
  for (std::size_t f = 0; f < c.morphism_count(); ++f) {
    const auto& mf = c.morphism(f);
    for (std::size_t a : c.incoming(mf.source)) pre.emplace(MorFunctor::Key{f, a}, DenseMatrix::identity(dims[f]));
    for (std::size_t b : c.outgoing(mf.target)) {
      if (c.is_identity(b)) continue;
      const auto& src = *cks[mf.target];
      const auto& tgt = *cks[c.morphism(b).target];
      std::vector<Vector> cols;
      for (const auto& r : src.representatives()) cols.push_back(tgt.reduce(cover.restriction(b).apply(r)));
      post.emplace(MorFunctor::Key{f, b}, DenseMatrix::from_columns(tgt.size(), cols));
    }
  }
  return ExtDiagram{cover, cks, MorFunctor::from_generators(c, dims, std::move(pre), std::move(post), labels)};
}

HochschildSummary global_hochschild_dims(const Cohomology& ext, const ResolvingComplex& ext_full,
                                         const MorFunctor& endo_h0) {
  if (ext.max_degree() < 1) throw InvalidInput("Ext cohomology must be computed through degree 1");
  HochschildSummary s;
  const Cohomology h0(ResolvingComplex::build(endo_h0, true, 0));
  s.hh0 = h0.dim(0);
  s.hh1 = ext.dim(0);
  s.hh2 = ext.dim(1);
  s.hh1_reps = ext.representatives(0);
  for (const auto& r : ext.representatives(1))
    s.hh2_reps_full.push_back(ext.complex().normalized() ? ext.complex().embed_normalized(1, r, ext_full) : r);
  return s;
}

}  // namespace ncdef
