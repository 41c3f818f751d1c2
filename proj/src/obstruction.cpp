#include "ncdef/obstruction.hpp"

#include <algorithm>

#include "ncdef/errors.hpp"

namespace ncdef {

bool SmallCochain2::is_zero() const {
  for (const auto& [k, v] : semilinear)
    if (!v.is_zero()) return false;
  for (const auto& [k, v] : composition)
    if (!v.is_zero()) return false;
  return true;
}

int SmallCochain2::degree() const {
  int d = -1;
  for (const auto& [k, v] : semilinear) d = std::max(d, v.degree());
  for (const auto& [k, v] : composition) d = std::max(d, v.degree());
  return d;
}

namespace {

std::vector<std::pair<std::size_t, std::size_t>> composable_pairs(const FiniteCategory& c) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t f = 0; f < c.morphism_count(); ++f) {
    if (c.is_identity(f)) continue;
    for (std::size_t g : c.outgoing(c.morphism(f).target))
      if (!c.is_identity(g)) out.emplace_back(f, g);
  }
  return out;
}

}  // namespace

SmallCochain1 small_zero1(const ChartCover& cover) {
  const auto& c = cover.category();
  SmallCochain1 w;
  for (std::size_t o = 0; o < c.object_count(); ++o) w.eps.push_back(cover.chart(o).algebra->zero());
  for (std::size_t m = 0; m < c.morphism_count(); ++m)
    if (!c.is_identity(m)) w.delta.emplace(m, cover.chart(c.morphism(m).target).algebra->zero());
  return w;
}

SmallCochain2 small_zero2(const ChartCover& cover) {
  const auto& c = cover.category();
  SmallCochain2 w;
  for (std::size_t m = 0; m < c.morphism_count(); ++m)
    if (!c.is_identity(m)) w.semilinear.emplace(m, cover.chart(c.morphism(m).target).algebra->zero());
  for (auto [f, g] : composable_pairs(c))
    w.composition.emplace(std::make_pair(f, g), cover.chart(c.morphism(g).target).algebra->zero());
  return w;
}

SmallCochain1 small_d0(const ChartCover& cover, const std::vector<AlgebraElement>& pi) {
  const auto& c = cover.category();
  if (pi.size() != c.object_count()) throw InvalidInput("small_d0: one element per chart");
  SmallCochain1 w = small_zero1(cover);
  for (std::size_t o = 0; o < pi.size(); ++o) w.eps[o] = -cover.chart(o).derivation.apply(pi[o]);
  for (auto& [m, v] : w.delta) {
    const auto& mor = c.morphism(m);
    v = pi[mor.target] - cover.restriction(m).apply(pi[mor.source]);
  }
  return w;
}

SmallCochain2 small_d1(const ChartCover& cover, const SmallCochain1& w) {
  const auto& c = cover.category();
  SmallCochain2 out = small_zero2(cover);
  auto delta = [&](std::size_t m) {
    auto it = w.delta.find(m);
    return it == w.delta.end() ? cover.chart(c.morphism(m).target).algebra->zero() : it->second;
  };
  for (auto& [m, v] : out.semilinear) {
    const auto& mor = c.morphism(m);
    v = cover.restriction(m).apply(w.eps.at(mor.source)) - w.eps.at(mor.target) -
        cover.chart(mor.target).derivation.apply(delta(m));
  }
  for (auto& [fg, v] : out.composition) {
    const auto [f, g] = fg;
    v = delta(g) + cover.restriction(g).apply(delta(f)) - delta(*c.compose(g, f));
  }
  return out;
}

std::optional<SmallCochain1> solve_small(const ChartCover& cover, const SmallCochain2& rhs, int d_max,
                                         bool vary_eps) {
  const auto& c = cover.category();
  const auto pairs = composable_pairs(c);
  // row keys: (slot, monomial); slot < morphism_count is a semilinear slot,
  // otherwise a composition pair
  using RowKey = std::pair<std::size_t, Exponents>;
  auto pair_slot = [&](std::pair<std::size_t, std::size_t> fg) {
    return c.morphism_count() + static_cast<std::size_t>(std::find(pairs.begin(), pairs.end(), fg) - pairs.begin());
  };
  if (rhs.is_zero()) return small_zero1(cover);
  const int d0 = std::max(1, rhs.degree());
  for (int d = d0; d <= std::max(d0, d_max); d += 2) {
    struct Column {
      bool is_eps;
      std::size_t slot;
      Exponents mono;
    };
    std::vector<Column> cols;
    if (vary_eps)
      for (std::size_t o = 0; o < c.object_count(); ++o)
        for (auto& e : cover.chart(o).algebra->basis_monomials(d)) cols.push_back({true, o, e});
    for (std::size_t m = 0; m < c.morphism_count(); ++m)
      if (!c.is_identity(m))
        for (auto& e : cover.chart(c.morphism(m).target).algebra->basis_monomials(d)) cols.push_back({false, m, e});

    std::map<RowKey, std::size_t> rows;
    std::vector<std::vector<std::pair<std::size_t, Scalar>>> sparse(cols.size());
    auto add = [&](std::size_t col, std::size_t slot, const AlgebraElement& v, const Scalar& s) {
      for (const auto& [e, coef] : v.terms()) {
        auto [it, ins] = rows.try_emplace({slot, e}, rows.size());
        sparse[col].emplace_back(it->second, coef * s);
      }
    };
    for (std::size_t k = 0; k < cols.size(); ++k) {
      const auto& col = cols[k];
      if (col.is_eps) {
        const auto& alg = cover.chart(col.slot).algebra;
        const AlgebraElement e = alg->normal_form(Polynomial::monomial(col.mono));
        for (std::size_t m = 0; m < c.morphism_count(); ++m) {
          if (c.is_identity(m)) continue;
          const auto& mor = c.morphism(m);
          if (mor.source == col.slot) add(k, m, cover.restriction(m).apply(e), 1);
          if (mor.target == col.slot) add(k, m, e, -1);
        }
      } else {
        const std::size_t m = col.slot;
        const auto& alg = cover.chart(c.morphism(m).target).algebra;
        const AlgebraElement e = alg->normal_form(Polynomial::monomial(col.mono));
        add(k, m, cover.chart(c.morphism(m).target).derivation.apply(e), -1);
        for (auto fg : pairs) {
          const auto [f, g] = fg;
          if (g == m) add(k, pair_slot(fg), e, 1);
          if (f == m) add(k, pair_slot(fg), cover.restriction(g).apply(e), 1);
          if (*c.compose(g, f) == m) add(k, pair_slot(fg), e, -1);
        }
      }
    }
    std::vector<std::pair<std::size_t, Scalar>> b;
    bool rhs_fits = true;
    auto add_rhs = [&](std::size_t slot, const AlgebraElement& v) {
      for (const auto& [e, coef] : v.terms()) {
        auto it = rows.find({slot, e});
        if (it == rows.end()) {
          rhs_fits = false;
          return;
        }
        b.emplace_back(it->second, coef);
      }
    };
    for (const auto& [m, v] : rhs.semilinear) add_rhs(m, v);
    for (const auto& [fg, v] : rhs.composition) add_rhs(pair_slot(fg), v);
    if (!rhs_fits) continue;

    DenseMatrix mat(rows.size(), cols.size());
    for (std::size_t k = 0; k < cols.size(); ++k)
      for (const auto& [r, v] : sparse[k]) mat(r, k) += v;
    Vector bv(rows.size());
    for (const auto& [r, v] : b) bv[r] += v;
    auto x = solve(mat, bv);
    if (!x) continue;
    SmallCochain1 w = small_zero1(cover);
    for (std::size_t k = 0; k < cols.size(); ++k) {
      if (sgn((*x)[k]) == 0) continue;
      const auto& col = cols[k];
      if (col.is_eps) {
        const auto& alg = cover.chart(col.slot).algebra;
        w.eps[col.slot] += alg->normal_form(Polynomial::monomial(col.mono, (*x)[k]));
      } else {
        const auto& alg = cover.chart(c.morphism(col.slot).target).algebra;
        w.delta.at(col.slot) += alg->normal_form(Polynomial::monomial(col.mono, (*x)[k]));
      }
    }
    return w;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

DeformationContext::DeformationContext(ChartCover cover, Options options)
    : cover_(std::make_shared<const ChartCover>(std::move(cover))), options_(std::move(options)) {
  ext_ = std::make_unique<ExtDiagram>(build_ext_diagram(*cover_, options_.cokernel));
  cohomology_ = std::make_unique<Cohomology>(ResolvingComplex::build(ext_->functor, true, 1));
  full_ = std::make_unique<ResolvingComplex>(ResolvingComplex::build(ext_->functor, false, 1));
  const auto& c = cover_->category();

  if (!options_.hh1_basis.empty()) {
    std::vector<Vector> reps;
    for (const auto& fam : options_.hh1_basis) reps.push_back(ext_cochain0(fam));
    cohomology_->set_representatives(0, std::move(reps));
  }
  if (!options_.hh2_basis.empty()) {
    std::vector<Vector> reps;
    for (const auto& w : options_.hh2_basis) {
      SmallCochain2 s = small_zero2(*cover_);
      for (const auto& [m, v] : w) s.semilinear.at(m) = v;
      reps.push_back(ext_cochain(s));
    }
    cohomology_->set_representatives(1, std::move(reps));
  }

  const auto& reps0 = cohomology_->representatives(0);
  const auto& complex = cohomology_->complex();
  if (!options_.first_order_tau.empty() && options_.first_order_tau.size() != reps0.size())
    throw InvalidInput("first-order restriction data: one entry per tangent direction");
  for (std::size_t l = 0; l < reps0.size(); ++l) {
    FirstOrderData fo;
    for (std::size_t o = 0; o < c.object_count(); ++o) {
      const std::size_t off = complex.offset(0, o);
      const auto& ck = *ext_->cokernels[o];
      fo.psi.push_back(ck.lift(std::span<const Scalar>(reps0[l].data() + off, ck.size())));
    }
    SmallCochain1 w = small_zero1(*cover_);
    w.eps = fo.psi;
    if (!options_.first_order_tau.empty()) {
      for (const auto& [m, v] : options_.first_order_tau[l]) w.delta.at(m) = v;
      if (!small_d1(*cover_, w).is_zero())
        throw InvalidInput("supplied first-order restriction data for direction " + std::to_string(l + 1) +
                           " does not satisfy the first-order equations");
      fo.tau = w.delta;
    } else {
      SmallCochain2 rhs = small_d1(*cover_, w);
      for (auto& [k, v] : rhs.semilinear) v *= Scalar(-1);
      for (auto& [k, v] : rhs.composition) v *= Scalar(-1);
      auto sol = solve_small(*cover_, rhs, options_.solve_d_max, false);
      if (!sol) throw NoLiftPossible("no first-order restriction data for tangent direction " + std::to_string(l + 1));
      fo.tau = sol->delta;
    }
    first_order_.push_back(std::move(fo));
  }
}

Vector DeformationContext::ext_cochain0(const std::vector<AlgebraElement>& family) const {
  const auto& c = cover_->category();
  if (family.size() != c.object_count()) throw InvalidInput("H^0 representative: one element per chart");
  Vector out;
  for (std::size_t o = 0; o < c.object_count(); ++o) {
    const Vector v = ext_->cokernels[o]->reduce(family[o]);
    out.insert(out.end(), v.begin(), v.end());
  }
  return out;
}

Vector DeformationContext::ext_cochain(const SmallCochain2& w) const {
  const auto& complex = cohomology_->complex();
  const auto& c = cover_->category();
  Vector out(complex.dim(1));
  const auto& tuples = complex.tuples(1);
  for (std::size_t t = 0; t < tuples.size(); ++t) {
    const std::size_t m = tuples[t][0];
    auto it = w.semilinear.find(m);
    if (it == w.semilinear.end()) continue;
    const Vector v = ext_->cokernels[c.morphism(m).target]->reduce(it->second);
    std::copy(v.begin(), v.end(), out.begin() + static_cast<std::ptrdiff_t>(complex.offset(1, t)));
  }
  return out;
}

Vector DeformationContext::obstruction_coordinates(const SmallCochain2& w) const {
  return cohomology_->class_coordinates(1, ext_cochain(w));
}

DeformationDatum DeformationContext::first_order_datum(const MatricArtinPtr& base,
                                                       const std::vector<Vector>& directions) const {
  if (directions.size() != first_order_.size()) throw InvalidInput("first_order_datum: one direction per tangent vector");
  DeformationDatum d = DeformationDatum::trivial(cover_, base);
  const auto& c = cover_->category();
  for (std::size_t l = 0; l < directions.size(); ++l) {
    for (std::size_t o = 0; o < c.object_count(); ++o)
      d.psi[o] += TensorElement::pure(first_order_[l].psi[o], directions[l], base);
    for (const auto& [m, v] : first_order_[l].tau) d.restriction[m] += TensorElement::pure(v, directions[l], base);
  }
  return d;
}

// ---------------------------------------------------------------------------

namespace {

/// Splits a tensor into per-kappa chart elements.
std::vector<AlgebraElement> split(const TensorElement& x, const LinearSolver& solver, std::size_t nk,
                                  const std::string& where) {
  std::vector<AlgebraElement> out(nk, x.algebra()->zero());
  std::map<Exponents, Vector> by_mono;
  const std::size_t n = x.base()->dim();
  for (std::size_t k = 0; k < n; ++k)
    for (const auto& [e, coef] : x.part(k).terms()) {
      auto [it, ins] = by_mono.try_emplace(e, Vector(n));
      it->second[k] = coef;
    }
  for (const auto& [e, v] : by_mono) {
    auto sol = solver.solve(v);
    if (!sol) throw DomainError("defect " + where + " leaves A (x) K");
    for (std::size_t k = 0; k < nk; ++k)
      if (sgn((*sol)[k]) != 0) out[k] += x.algebra()->normal_form(Polynomial::monomial(e, (*sol)[k]));
  }
  return out;
}

}  // namespace

std::vector<SmallCochain2> decompose_defect(const DefectCochain& defect, const std::vector<Vector>& kernel) {
  for (const auto& chart : defect.ore)
    for (const auto& e : chart)
      if (!e.value.is_zero()) throw DomainError("operator relation defect " + e.label + " is nonzero");
  std::size_t n = 0;
  if (!defect.semilinear.empty()) n = defect.semilinear.begin()->second.base()->dim();
  else if (!defect.composition.empty()) n = defect.composition.begin()->second.base()->dim();
  std::vector<SmallCochain2> out(kernel.size());
  if (kernel.empty()) {
    if (!defect.is_zero()) throw DomainError("nonzero defect over a trivial kernel");
    return out;
  }
  const LinearSolver solver(DenseMatrix::from_columns(n ? n : kernel[0].size(), kernel));
  if (solver.rank() != kernel.size()) throw InvalidInput("kernel basis is not linearly independent");
  for (const auto& [m, v] : defect.semilinear) {
    auto parts = split(v, solver, kernel.size(), "on arrow " + std::to_string(m));
    for (std::size_t k = 0; k < kernel.size(); ++k) out[k].semilinear.emplace(m, std::move(parts[k]));
  }
  for (const auto& [fg, v] : defect.composition) {
    auto parts = split(v, solver, kernel.size(), "on a composable pair");
    for (std::size_t k = 0; k < kernel.size(); ++k) out[k].composition.emplace(fg, std::move(parts[k]));
  }
  return out;
}

ObstructionClass obstruction_class(const DeformationContext& ctx, const DefectCochain& defect,
                                   const std::vector<Vector>& kernel) {
  ObstructionClass oc;
  const auto comps = decompose_defect(defect, kernel);
  oc.vanishes = true;
  for (const auto& w : comps) {
    oc.coordinates.push_back(w.semilinear.empty() && w.composition.empty() ? Vector(ctx.obstruction_dim())
                                                                             : ctx.obstruction_coordinates(w));
    if (!is_zero(oc.coordinates.back())) oc.vanishes = false;
  }
  if (!oc.vanishes) return oc;
  std::vector<SmallCochain1> witness;
  for (std::size_t k = 0; k < comps.size(); ++k) {
    SmallCochain2 rhs = comps[k];
    for (auto& [m, v] : rhs.semilinear) v *= Scalar(-1);
    for (auto& [m, v] : rhs.composition) v *= Scalar(-1);
    auto w = solve_small(*ctx.cover(), rhs, ctx.options().solve_d_max);
    if (!w)
      throw NoLiftPossible("obstruction class vanishes but no correction was found below degree " +
                           std::to_string(ctx.options().solve_d_max));
    witness.push_back(std::move(*w));
  }
  oc.witness = std::move(witness);
  return oc;
}

DeformationDatum apply_correction(const DeformationDatum& d, const std::vector<SmallCochain1>& w,
                                  const std::vector<Vector>& kernel) {
  if (w.size() != kernel.size()) throw InvalidInput("apply_correction: one cochain per kernel vector");
  DeformationDatum out = d;
  for (std::size_t k = 0; k < w.size(); ++k) {
    for (std::size_t o = 0; o < out.psi.size(); ++o)
      out.psi[o] += TensorElement::pure(w[k].eps.at(o), kernel[k], d.base);
    for (const auto& [m, v] : w[k].delta) out.restriction[m] += TensorElement::pure(v, kernel[k], d.base);
  }
  return out;
}

MatricGeneratorSet tangent_generators(std::size_t r) {
  std::vector<MatricGenerator> gens;
  for (std::size_t l = 0; l < r; ++l) gens.push_back({"t" + std::to_string(l + 1), 0, 0});
  return MatricGeneratorSet(1, std::move(gens));
}

namespace {

struct SecondOrderSetup {
  MatricArtinPtr free3;  // k<t>/m^3
  MatricArtinPtr h2;     // k<t>/m^2
  std::vector<Vector> kernel;
  std::vector<std::size_t> kernel_paths;  // free indices
  DeformationDatum lifted;
  DefectCochain defect;
};

SecondOrderSetup second_order(const DeformationContext& ctx) {
  SecondOrderSetup s;
  const std::size_t r = ctx.tangent_dim();
  s.free3 = make_truncated_free(tangent_generators(r), 3);
  const auto& f = *s.free3->free();
  std::vector<Vector> quad;
  for (std::size_t k : f.paths_of_length_at_least(2)) quad.push_back(f.basis_vector(k));
  s.h2 = s.free3->quotient(quad);
  std::vector<Vector> dirs;
  for (std::size_t l = 0; l < r; ++l) dirs.push_back(s.h2->generator(l));
  const DeformationDatum first = ctx.first_order_datum(s.h2, dirs);
  const SmallSurjection u(s.free3, s.h2);
  s.lifted = lift(first, u);
  s.defect = validate(s.lifted);
  for (std::size_t k : f.paths_of_length_at_least(2)) {
    s.kernel_paths.push_back(k);
    s.kernel.push_back(s.free3->reduce(f.basis_vector(k)));
  }
  return s;
}

}  // namespace

std::vector<std::vector<Vector>> cup_table(const DeformationContext& ctx) {
  const std::size_t r = ctx.tangent_dim();
  std::vector<std::vector<Vector>> table(r, std::vector<Vector>(r, Vector(ctx.obstruction_dim())));
  if (r == 0) return table;
  const SecondOrderSetup s = second_order(ctx);
  const auto comps = decompose_defect(s.defect, s.kernel);
  const auto& f = *s.free3->free();
  for (std::size_t k = 0; k < s.kernel.size(); ++k) {
    const auto& p = f.path(s.kernel_paths[k]);
    table[p.letters[0]][p.letters[1]] = ctx.obstruction_coordinates(comps[k]);
  }
  return table;
}

Vector cup_product(const DeformationContext& ctx, std::size_t l, std::size_t m) {
  if (l >= ctx.tangent_dim() || m >= ctx.tangent_dim()) throw InvalidInput("cup_product: index out of range");
  return cup_table(ctx)[l][m];
}

NoLiftCertificate no_lift_certificate(const DeformationContext& ctx) {
  NoLiftCertificate cert;
  if (ctx.tangent_dim() == 0) {
    cert.quotient_lift_validates = true;
    return cert;
  }
  const SecondOrderSetup s = second_order(ctx);
  const auto comps = decompose_defect(s.defect, s.kernel);
  const auto& f = *s.free3->free();
  for (const auto& w : comps) {
    SmallCochain2 rhs = w;
    for (auto& [m, v] : rhs.semilinear) v *= Scalar(-1);
    for (auto& [m, v] : rhs.composition) v *= Scalar(-1);
    if (!solve_small(*ctx.cover(), rhs, ctx.options().solve_d_max)) cert.free_system_infeasible = true;
  }
  // relations: images of the obstruction map, one per H^1 basis vector
  std::vector<Vector> coords;
  for (const auto& w : comps) coords.push_back(ctx.obstruction_coordinates(w));
  EchelonBasis rel(f.dim());
  for (std::size_t sidx = 0; sidx < ctx.obstruction_dim(); ++sidx) {
    Vector o(f.dim());
    for (std::size_t k = 0; k < comps.size(); ++k)
      if (sgn(coords[k][sidx]) != 0) o[s.kernel_paths[k]] += coords[k][sidx];
    if (!is_zero(o)) rel.insert(o);
  }
  for (std::size_t k = 0; k < comps.size(); ++k)
    if (!is_zero(coords[k])) cert.obstructed_monomials.push_back(f.format_path(s.kernel_paths[k]));
  for (const auto& v : rel.vectors()) cert.relations.push_back(f.format(v));

  const MatricArtinPtr rq = s.free3->quotient(rel.vectors());
  const SmallSurjection uq(rq, s.h2);
  std::vector<Vector> dirs;
  for (std::size_t l = 0; l < ctx.tangent_dim(); ++l) dirs.push_back(s.h2->generator(l));
  const DeformationDatum lifted = lift(ctx.first_order_datum(s.h2, dirs), uq);
  const ObstructionClass oc = obstruction_class(ctx, validate(lifted), uq.kernel());
  if (oc.vanishes && oc.witness)
    cert.quotient_lift_validates = validate(apply_correction(lifted, *oc.witness, uq.kernel())).is_zero();
  return cert;
}

}  // namespace ncdef
