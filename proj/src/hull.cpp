#include "ncdef/hull.hpp"

#include "ncdef/errors.hpp"

namespace ncdef {

namespace {

// Leading coefficient 1 in the free basis order (longer paths first).
Vector normalize_leading(Vector v) {
  for (const auto& c : v)
    if (sgn(c) != 0) {
      const Scalar inv = 1 / c;
      for (auto& e : v) e *= inv;
      break;
    }
  return v;
}

std::vector<Vector> ideal_vectors(const MatricArtin& r) { return r.ideal().vectors(); }

// I a + a I for an ideal a given by an echelon basis.
std::vector<Vector> radical_times(const MatricTruncatedFree& f, const std::vector<Vector>& a) {
  std::vector<Vector> out;
  const auto& gens = f.generator_set();
  for (std::size_t g = 0; g < gens.size(); ++g) {
    const Vector t = f.generator(g);
    for (const auto& v : a) {
      out.push_back(f.multiply(t, v));
      out.push_back(f.multiply(v, t));
    }
  }
  return out;
}

}  // namespace

HullResult hull_compute(const DeformationContext& ctx, std::size_t order) {
  if (order < 2) throw InvalidInput("hull order must be at least 2");
  const std::size_t r = ctx.tangent_dim();
  HullResult res;
  res.order = order;
  const MatricArtinPtr top = make_truncated_free(tangent_generators(r), order);
  res.free = top->free();
  const auto& f = *res.free;

  std::vector<Vector> quad;
  for (std::size_t k : f.paths_of_length_at_least(2)) quad.push_back(f.basis_vector(k));
  MatricArtinPtr h = top->quotient(quad);
  std::vector<Vector> dirs;
  for (std::size_t l = 0; l < r; ++l) dirs.push_back(h->generator(l));
  DeformationDatum datum = ctx.first_order_datum(h, dirs);
  if (!validate(datum).is_zero()) throw DomainError("first-order datum does not validate");
  res.tower.push_back(h);

  for (std::size_t n = 2; n < order; ++n) {
    HullStep step;
    step.order = n;
    const std::vector<Vector> a = ideal_vectors(*h);
    const MatricArtinPtr rb = top->quotient(radical_times(f, a));
    const SmallSurjection u(rb, h);
    step.kernel_dim = u.kernel().size();

    // kernel basis preferring known relations, then degree-n paths
    std::vector<Vector> candidates = res.relations;
    for (std::size_t k = 0; k < f.dim(); ++k)
      if (f.path(k).length() == n) candidates.push_back(f.basis_vector(k));
    std::vector<Vector> kernel_free;
    std::vector<Vector> kernel;
    EchelonBasis chosen(rb->dim());
    for (const auto& c : candidates) {
      if (kernel.size() == step.kernel_dim) break;
      Vector q = rb->reduce(c);
      if (chosen.insert(q)) {
        kernel_free.push_back(c);
        kernel.push_back(std::move(q));
      }
    }
    if (kernel.size() != step.kernel_dim) throw DomainError("kernel basis selection failed at order " + std::to_string(n));

    const DeformationDatum lifted = lift(datum, u);
    const ObstructionClass oc = obstruction_class(ctx, validate(lifted), kernel);

    std::vector<Vector> new_gens;
    for (std::size_t s = 0; s < ctx.obstruction_dim(); ++s) {
      Vector o(f.dim());
      for (std::size_t k = 0; k < kernel.size(); ++k)
        if (sgn(oc.coordinates[k][s]) != 0)
          for (std::size_t i = 0; i < f.dim(); ++i) o[i] += oc.coordinates[k][s] * kernel_free[k][i];
      if (!is_zero(o)) new_gens.push_back(normalize_leading(std::move(o)));
    }
    step.obstructed = !new_gens.empty();

    // report a relation only if it is not implied by earlier ones modulo I^{n+1}
    std::vector<Vector> known = res.relations;
    for (std::size_t k : f.paths_of_length_at_least(n + 1)) known.push_back(f.basis_vector(k));
    EchelonBasis implied = ideal_closure(f, known);
    for (const auto& g : new_gens) {
      if (implied.contains(g)) continue;
      res.relations.push_back(g);
      res.relation_strings.push_back(f.format(g));
      step.new_relations.push_back(f.format(g));
      implied = ideal_closure(f, [&] {
        auto v = implied.vectors();
        v.push_back(g);
        return v;
      }());
    }

    const MatricArtinPtr next = rb->quotient(new_gens);
    const SmallSurjection un(next, h);
    const DeformationDatum relifted = lift(datum, un);
    const ObstructionClass oc2 = obstruction_class(ctx, validate(relifted), un.kernel());
    if (!oc2.vanishes || !oc2.witness)
      throw NoLiftPossible("lifting to order " + std::to_string(n + 1) + " failed after adding relations");
    datum = apply_correction(relifted, *oc2.witness, un.kernel());
    step.validated = validate(datum).is_zero();
    if (!step.validated)
      throw NoLiftPossible("corrected datum at order " + std::to_string(n + 1) + " does not validate");
    h = next;
    res.tower.push_back(h);
    res.log.push_back(std::move(step));
  }
  res.versal = std::move(datum);
  return res;
}

bool tower_coherent(const HullResult& hull) {
  const auto& f = *hull.free;
  for (std::size_t k = 1; k < hull.tower.size(); ++k) {
    const std::size_t n = k + 1;  // tower[k - 1] = H_n
    std::vector<Vector> gens = hull.tower[k]->ideal().vectors();
    for (std::size_t p : f.paths_of_length_at_least(n)) gens.push_back(f.basis_vector(p));
    const EchelonBasis truncated = ideal_closure(f, gens);
    const EchelonBasis& lower = hull.tower[k - 1]->ideal();
    if (truncated.vectors().size() != lower.vectors().size()) return false;
    for (const auto& v : lower.vectors())
      if (!truncated.contains(v)) return false;
  }
  return true;
}

}  // namespace ncdef
