#include "ncdef/selftest.hpp"

#include <algorithm>
#include <functional>

#include "ncdef/elliptic.hpp"
#include "ncdef/errors.hpp"

namespace ncdef {

namespace {

Scalar small_rational(std::mt19937_64& rng, int span = 3) {
  std::uniform_int_distribution<int> num(-span, span);
  std::uniform_int_distribution<int> den(1, 3);
  Scalar s(num(rng), den(rng));
  s.canonicalize();
  return s;
}

DenseMatrix random_invertible(std::mt19937_64& rng, std::size_t n) {
  DenseMatrix l = DenseMatrix::identity(n);
  DenseMatrix u = DenseMatrix::identity(n);
  std::uniform_int_distribution<int> pick(1, 2);
  for (std::size_t i = 0; i < n; ++i) {
    u(i, i) = pick(rng) == 1 ? Scalar(1) : Scalar(-2);
    for (std::size_t j = 0; j < i; ++j) l(i, j) = small_rational(rng, 2);
    for (std::size_t j = i + 1; j < n; ++j) u(i, j) = small_rational(rng, 2);
  }
  return l * u;
}

DenseMatrix inverse(const DenseMatrix& m) {
  const LinearSolver s(m);
  std::vector<Vector> cols;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Vector e(m.rows());
    e[i] = 1;
    cols.push_back(*s.solve(e));
  }
  return DenseMatrix::from_columns(m.rows(), cols);
}

bool leq(const FiniteCategory& c, std::size_t a, std::size_t b) {
  for (std::size_t m : c.outgoing(a))
    if (c.morphism(m).target == b) return true;
  return false;
}

struct Failure {
  PropertyResult& r;
  void operator()(const std::string& why) {
    if (r.failures++ == 0) r.first_failure = why;
  }
};

// Runs `body` and records exceptions as failures.
void guarded(PropertyResult& r, const std::string& label, const std::function<void()>& body) {
  ++r.cases;
  try {
    body();
  } catch (const std::exception& e) {
    Failure{r}(label + ": " + e.what());
  }
}

}  // namespace

FiniteCategory random_poset(std::mt19937_64& rng, std::size_t max_objects) {
  std::uniform_int_distribution<std::size_t> count(1, max_objects);
  std::bernoulli_distribution coin(0.5);
  const std::size_t n = count(rng);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("U" + std::to_string(i + 1));
  std::vector<std::pair<std::size_t, std::size_t>> arrows;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (coin(rng)) arrows.emplace_back(i, j);
  return FiniteCategory::poset(names, arrows);
}

MorFunctor random_mor_functor(std::mt19937_64& rng, const FiniteCategory& c) {
  const std::size_t n = c.object_count();
  std::vector<std::vector<std::size_t>> down(n), up(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (leq(c, b, a)) {
        down[a].push_back(b);
        up[b].push_back(a);
      }
  std::vector<DenseMatrix> tp, tq, tpi, tqi;
  for (std::size_t a = 0; a < n; ++a) {
    tp.push_back(random_invertible(rng, down[a].size()));
    tq.push_back(random_invertible(rng, up[a].size()));
    tpi.push_back(inverse(tp.back()));
    tqi.push_back(inverse(tq.back()));
  }
  // P(i -> j): inclusion of down-sets, Q(i -> j): projection of up-sets
  auto p_map = [&](std::size_t i, std::size_t j) {
    DenseMatrix incl(down[j].size(), down[i].size());
    for (std::size_t s = 0; s < down[i].size(); ++s) {
      const auto pos = std::find(down[j].begin(), down[j].end(), down[i][s]) - down[j].begin();
      incl(static_cast<std::size_t>(pos), s) = 1;
    }
    return tp[j] * incl * tpi[i];
  };
  auto q_map = [&](std::size_t i, std::size_t j) {
    DenseMatrix proj(up[j].size(), up[i].size());
    for (std::size_t s = 0; s < up[j].size(); ++s) {
      const auto pos = std::find(up[i].begin(), up[i].end(), up[j][s]) - up[i].begin();
      proj(s, static_cast<std::size_t>(pos)) = 1;
    }
    return tq[j] * proj * tqi[i];
  };

  std::vector<std::size_t> dims;
  for (const auto& m : c.morphisms()) dims.push_back(up[m.target].size() * down[m.source].size());
  std::map<MorFunctor::Key, DenseMatrix> pre, post;
  for (std::size_t f = 0; f < c.morphism_count(); ++f) {
    const auto& mf = c.morphism(f);
    const std::size_t rows = up[mf.target].size();
    for (std::size_t a : c.incoming(mf.source)) {
      if (c.is_identity(a)) continue;
      const std::size_t c0 = c.morphism(a).source;
      const DenseMatrix pa = p_map(c0, mf.source);  // |S(s)| x |S(c0)|
      const std::size_t cin = down[mf.source].size(), cout = down[c0].size();
      DenseMatrix m(rows * cout, rows * cin);
      for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cout; ++j)
          for (std::size_t k = 0; k < cin; ++k) m(i * cout + j, i * cin + k) = pa(k, j);
      pre.emplace(MorFunctor::Key{f, a}, std::move(m));
    }
    for (std::size_t b : c.outgoing(mf.target)) {
      if (c.is_identity(b)) continue;
      const std::size_t t2 = c.morphism(b).target;
      const DenseMatrix qb = q_map(mf.target, t2);  // |R(t2)| x |R(t)|
      const std::size_t cols = down[mf.source].size();
      DenseMatrix m(up[t2].size() * cols, rows * cols);
      for (std::size_t i = 0; i < up[t2].size(); ++i)
        for (std::size_t j = 0; j < cols; ++j)
          for (std::size_t k = 0; k < rows; ++k) m(i * cols + j, k * cols + j) = qb(i, k);
      post.emplace(MorFunctor::Key{f, b}, std::move(m));
    }
  }
  return MorFunctor::from_generators(c, dims, std::move(pre), std::move(post));
}

PropertyResult check_square_zero_property(const SelftestOptions& o) {
  PropertyResult r{"resolving complex d∘d = 0", 0, 0, {}};
  std::mt19937_64 rng(o.seed);
  for (std::size_t k = 0; k < o.functors; ++k) {
    const FiniteCategory c = random_poset(rng, 4);
    const MorFunctor g = random_mor_functor(rng, c);
    guarded(r, "functor " + std::to_string(k), [&] {
      ResolvingComplex::build(g, true, 2).check_square_zero();
      ResolvingComplex::build(g, false, 2).check_square_zero();
    });
  }
  return r;
}

PropertyResult check_normalized_full_property(const SelftestOptions& o) {
  PropertyResult r{"normalized and full cohomology agree", 0, 0, {}};
  std::mt19937_64 rng(o.seed);
  for (std::size_t k = 0; k < o.functors; ++k) {
    const FiniteCategory c = random_poset(rng, 4);
    const MorFunctor g = random_mor_functor(rng, c);
    guarded(r, "functor " + std::to_string(k), [&] {
      const Cohomology n(ResolvingComplex::build(g, true, 2));
      const Cohomology f(ResolvingComplex::build(g, false, 2));
      for (int p = 0; p <= 2; ++p)
        if (n.dim(p) != f.dim(p))
          throw DomainError("H^" + std::to_string(p) + ": " + std::to_string(n.dim(p)) + " vs " + std::to_string(f.dim(p)));
      if (limit_dimension(g) != n.dim(0)) throw DomainError("H^0 differs from the limit");
    });
  }
  return r;
}

PropertyResult check_linear_algebra_property(const SelftestOptions& o) {
  PropertyResult r{"rank-nullity and solve round trips", 0, 0, {}};
  std::mt19937_64 rng(o.seed);
  std::uniform_int_distribution<std::size_t> size(1, 7);
  std::bernoulli_distribution sparse(0.4);
  for (std::size_t k = 0; k < o.matrices; ++k) {
    const std::size_t rows = size(rng), cols = size(rng);
    DenseMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j)
        if (!sparse(rng)) m(i, j) = small_rational(rng);
    Vector x(cols), b(rows);
    for (auto& v : x) v = small_rational(rng);
    for (auto& v : b) v = small_rational(rng);
    guarded(r, "matrix " + std::to_string(k), [&] {
      const std::size_t rk = rank(m);
      const auto ker = kernel_basis(m);
      if (rk + ker.size() != cols) throw DomainError("rank + nullity != cols");
      for (const auto& v : ker)
        if (!is_zero(m.apply(v))) throw DomainError("kernel vector not annihilated");
      if (!ker.empty() && rank(DenseMatrix::from_columns(cols, ker)) != ker.size())
        throw DomainError("kernel basis dependent");
      if (image_basis(m).size() != rk) throw DomainError("image basis size");
      if (cokernel_reps(m).size() != rows - rk) throw DomainError("cokernel size");
      const Vector mx = m.apply(x);
      const auto y = solve(m, mx);
      if (!y || m.apply(*y) != mx) throw DomainError("solve round trip");
      DenseMatrix aug(rows, cols + 1);
      for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) aug(i, j) = m(i, j);
        aug(i, cols) = b[i];
      }
      const bool solvable = rank(aug) == rk;
      const auto z = solve(m, b);
      if (z.has_value() != solvable) throw DomainError("solvability disagrees with rank test");
      if (z && m.apply(*z) != b) throw DomainError("solution does not solve");
      const auto w = LinearSolver(m).solve(b);
      if (w.has_value() != solvable || (w && m.apply(*w) != b)) throw DomainError("LinearSolver disagrees");
    });
  }
  return r;
}

PropertyResult check_commutativization_property(const SelftestOptions& o) {
  PropertyResult r{"commutativization kills off-diagonal components", 0, 0, {}};
  std::mt19937_64 rng(o.seed);
  std::uniform_int_distribution<std::size_t> pts(1, 3), ngen(1, 4), trunc(2, 4);
  for (std::size_t k = 0; k < o.algebras; ++k) {
    const std::size_t p = pts(rng);
    std::uniform_int_distribution<std::size_t> point(0, p - 1);
    std::vector<MatricGenerator> gens;
    const std::size_t g = ngen(rng);
    for (std::size_t i = 0; i < g; ++i) gens.push_back({"t" + std::to_string(i + 1), point(rng), point(rng)});
    const std::size_t n = trunc(rng);
    guarded(r, "algebra " + std::to_string(k), [&] {
      auto free = make_truncated_free(MatricGeneratorSet(p, gens), n);
      const auto& f = *free->free();
      std::vector<Vector> ideal;
      std::bernoulli_distribution coin(0.5);
      if (coin(rng)) {
        Vector v(f.dim());
        for (std::size_t i = 0; i < f.dim(); ++i)
          if (f.path(i).length() >= 2 && coin(rng)) v[i] = small_rational(rng);
        if (!is_zero(v)) ideal.push_back(v);
      }
      const auto rr = free->quotient(ideal);
      rr->check_associativity();
      const auto cc = commutativization(*rr);
      cc->check_associativity();
      if (!cc->is_commutative()) throw DomainError("quotient is not commutative");
      for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < p; ++j)
          if (i != j && !cc->component(i, j).empty())
            throw DomainError("component (" + std::to_string(i) + "," + std::to_string(j) + ") survives");
    });
  }
  return r;
}

PropertyResult check_cokernel_stability_property(const SelftestOptions& o) {
  PropertyResult r{"cokernel bases unchanged at d_max + 3", 0, 0, {}};
  if (!o.elliptic) return r;
  for (const auto& [a, b] : {std::pair<int, int>{1, 1}, {0, 1}}) {
    const EllipticConfig cfg = EllipticConfig::build(a, b);
    for (std::size_t c = 0; c < cfg.cover.charts().size(); ++c) {
      const auto& ch = cfg.cover.chart(c);
      guarded(r, ch.label, [&] {
        CokernelOptions lo;
        CokernelOptions hi;
        hi.d_max = lo.d_max + 3;
        const auto x = CokernelPresentation::compute(ch.derivation, lo, ch.preferred);
        const auto y = CokernelPresentation::compute(ch.derivation, hi, ch.preferred);
        if (x->representatives() != y->representatives()) throw DomainError("representatives changed");
        for (const auto& m : ch.algebra->basis_monomials(8)) {
          const AlgebraElement e = ch.algebra->normal_form(Polynomial::monomial(m));
          if (x->reduce(e) != y->reduce(e)) throw DomainError("reduction changed for " + e.to_string());
        }
      });
    }
  }
  return r;
}

namespace {

AlgebraElement random_element(std::mt19937_64& rng, const PresentedAlgebra& alg, int degree = 3) {
  const auto monos = alg.basis_monomials(degree);
  std::uniform_int_distribution<std::size_t> pick(0, monos.size() - 1);
  AlgebraElement e = alg.zero();
  for (int k = 0; k < 3; ++k) e += alg.normal_form(Polynomial::monomial(monos[pick(rng)], small_rational(rng)));
  return e;
}

Vector random_radical(std::mt19937_64& rng, const MatricArtin& r, std::size_t min_degree) {
  Vector v(r.dim());
  std::bernoulli_distribution coin(0.5);
  for (std::size_t k = 0; k < r.dim(); ++k)
    if (r.degree(k) >= min_degree && coin(rng)) v[k] = small_rational(rng);
  if (is_zero(v))
    for (std::size_t k = 0; k < r.dim(); ++k)
      if (r.degree(k) >= min_degree) {
        v[k] = 1;
        break;
      }
  return v;
}

// First-order elliptic family lifted to the free algebra of order 3.
struct LiftedFamily {
  MatricArtinPtr free3;
  MatricArtinPtr h2;
  DeformationDatum datum;
};

LiftedFamily lifted_family(const DeformationContext& ctx) {
  LiftedFamily lf;
  lf.free3 = make_truncated_free(tangent_generators(ctx.tangent_dim()), 3);
  const auto& f = *lf.free3->free();
  std::vector<Vector> quad;
  for (std::size_t k : f.paths_of_length_at_least(2)) quad.push_back(f.basis_vector(k));
  lf.h2 = lf.free3->quotient(quad);
  std::vector<Vector> dirs;
  for (std::size_t l = 0; l < ctx.tangent_dim(); ++l) dirs.push_back(lf.h2->generator(l));
  lf.datum = lift(ctx.first_order_datum(lf.h2, dirs), SmallSurjection(lf.free3, lf.h2));
  return lf;
}

}  // namespace

PropertyResult check_defect_naturality_property(const SelftestOptions& o) {
  PropertyResult r{"defect naturality under base change", 0, 0, {}};
  if (!o.elliptic) return r;
  std::mt19937_64 rng(o.seed);
  const EllipticConfig cfg = EllipticConfig::build(1, 1);
  const DeformationContext ctx(cfg.cover, cfg.context_options());
  const LiftedFamily lf = lifted_family(ctx);
  const auto& f = *lf.free3->free();
  const MatricArtinPtr commutative = lf.free3->quotient({f.parse("t1*t2 - t2*t1")});
  const auto& c = cfg.cover.category();
  for (std::size_t k = 0; k < o.perturbations; ++k) {
    DeformationDatum d = lf.datum;
    for (std::size_t obj = 0; obj < c.object_count(); ++obj)
      d.psi[obj] += TensorElement::pure(random_element(rng, *cfg.cover.chart(obj).algebra),
                                        random_radical(rng, *lf.free3, 1), lf.free3);
    for (std::size_t m = 0; m < c.morphism_count(); ++m)
      if (!c.is_identity(m))
        d.restriction[m] += TensorElement::pure(random_element(rng, *cfg.cover.chart(2).algebra),
                                                random_radical(rng, *lf.free3, 1), lf.free3);
    const MatricArtinPtr targets[] = {lf.free3, commutative, lf.h2};
    const MatricArtinPtr target = targets[k % 3];
    std::vector<Vector> images;
    for (std::size_t g = 0; g < 2; ++g) images.push_back(random_radical(rng, *target, 1));
    guarded(r, "perturbation " + std::to_string(k), [&] {
      const ArtinMorphism alpha(lf.free3, target, images);
      if (!(validate(push_forward(d, alpha)) == push_forward(validate(d), alpha)))
        throw DomainError("pushing the datum and pushing the defect disagree");
    });
  }
  return r;
}

PropertyResult check_gauge_invariance_property(const SelftestOptions& o) {
  PropertyResult r{"obstruction class invariant under gauge transport", 0, 0, {}};
  if (!o.elliptic) return r;
  std::mt19937_64 rng(o.seed + 1);
  const EllipticConfig cfg = EllipticConfig::build(1, 1);
  const DeformationContext ctx(cfg.cover, cfg.context_options());
  const LiftedFamily lf = lifted_family(ctx);
  const SmallSurjection u(lf.free3, lf.h2);
  const ObstructionClass base = obstruction_class(ctx, validate(lf.datum), u.kernel());
  const auto& c = cfg.cover.category();
  for (std::size_t k = 0; k < o.perturbations; ++k) {
    std::vector<TensorElement> g;
    for (std::size_t obj = 0; obj < c.object_count(); ++obj) {
      const auto& alg = cfg.cover.chart(obj).algebra;
      g.push_back(TensorElement::one(alg, lf.free3) +
                  TensorElement::pure(random_element(rng, *alg), random_radical(rng, *lf.free3, 1), lf.free3));
    }
    guarded(r, "gauge " + std::to_string(k), [&] {
      const ObstructionClass moved = obstruction_class(ctx, validate(transport(lf.datum, g)), u.kernel());
      if (moved.coordinates != base.coordinates) throw DomainError("class changed under transport");
    });
  }
  return r;
}

std::vector<PropertyResult> run_selftest(const SelftestOptions& o) {
  std::vector<PropertyResult> out;
  out.push_back(check_square_zero_property(o));
  out.push_back(check_normalized_full_property(o));
  out.push_back(check_linear_algebra_property(o));
  out.push_back(check_commutativization_property(o));
  if (o.elliptic) {
    out.push_back(check_cokernel_stability_property(o));
    out.push_back(check_defect_naturality_property(o));
    out.push_back(check_gauge_invariance_property(o));
  }
  return out;
}

}  // namespace ncdef
