#include "ncdef/tangent.hpp"

#include "ncdef/errors.hpp"
#include "ncdef/linalg.hpp"
#include "ncdef/obstruction.hpp"

namespace ncdef {

namespace {

// Coordinates of first-order data: (kind, slot, monomial) with kind 0 = Psi
// per object and kind 1 = T - 1 per non-identity arrow.
using DataKey = std::tuple<int, std::size_t, Exponents>;

struct FirstOrderSpace {
  std::vector<DataKey> keys;
  std::map<DataKey, std::size_t> index;

  void add(const DataKey& k) {
    if (index.try_emplace(k, keys.size()).second) keys.push_back(k);
  }
};

AlgebraElement monomial(const PresentedAlgebra& alg, const Exponents& e) {
  return alg.normal_form(Polynomial::monomial(e));
}

}  // namespace

TangentCheck tangent_dimension_check(const std::shared_ptr<const ChartCover>& cover, std::size_t points,
                                     std::size_t row, std::size_t col, const TangentOptions& options) {
  const MatricArtinPtr base = make_test_algebra(points, row, col);
  const Vector eps = base->generator(0);
  const std::vector<Vector> kernel{eps};
  const auto& c = cover->category();

  TangentCheck out;
  out.points = points;
  out.row = row;
  out.col = col;

  for (int d = options.d_start; d <= options.d_max; ++d) {
    FirstOrderSpace space;
    for (std::size_t o = 0; o < c.object_count(); ++o)
      for (auto& e : cover->chart(o).algebra->basis_monomials(d)) space.add({0, o, e});
    for (std::size_t m = 0; m < c.morphism_count(); ++m)
      if (!c.is_identity(m))
        for (auto& e : cover->chart(c.morphism(m).target).algebra->basis_monomials(d)) space.add({1, m, e});

    // defect matrix, one validation per basis datum
    std::map<std::pair<std::size_t, Exponents>, std::size_t> rows;
    std::vector<std::vector<std::pair<std::size_t, Scalar>>> columns(space.keys.size());
    std::size_t pair_base = c.morphism_count();
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> pair_slot;
    for (std::size_t k = 0; k < space.keys.size(); ++k) {
      const auto& [kind, slot, e] = space.keys[k];
      DeformationDatum datum = DeformationDatum::trivial(cover, base);
      if (kind == 0) {
        datum.psi[slot] += TensorElement::pure(monomial(*cover->chart(slot).algebra, e), eps, base);
      } else {
        const auto& alg = *cover->chart(c.morphism(slot).target).algebra;
        datum.restriction[slot] += TensorElement::pure(monomial(alg, e), eps, base);
      }
      const auto parts = decompose_defect(validate(datum), kernel);
      auto record = [&](std::size_t rslot, const AlgebraElement& v) {
        for (const auto& [mono, coef] : v.terms()) {
          auto [it, ins] = rows.try_emplace({rslot, mono}, rows.size());
          columns[k].emplace_back(it->second, coef);
        }
      };
      for (const auto& [m, v] : parts[0].semilinear) record(m, v);
      for (const auto& [fg, v] : parts[0].composition) {
        auto [it, ins] = pair_slot.try_emplace(fg, pair_base + pair_slot.size());
        record(it->second, v);
      }
    }
    DenseMatrix defect(rows.size(), space.keys.size());
    for (std::size_t k = 0; k < columns.size(); ++k)
      for (const auto& [r, v] : columns[k]) defect(r, k) += v;
    const std::size_t cocycles = space.keys.size() - rank(defect);

    // gauge transports by 1 + pi (x) eps
    FirstOrderSpace outside;
    std::vector<std::map<DataKey, Scalar>> gauges;
    for (std::size_t o = 0; o < c.object_count(); ++o) {
      const auto& alg = cover->chart(o).algebra;
      for (auto& e : alg->basis_monomials(d + options.gauge_margin)) {
        std::vector<TensorElement> g;
        for (std::size_t q = 0; q < c.object_count(); ++q) {
          const auto& aq = cover->chart(q).algebra;
          TensorElement u = TensorElement::one(aq, base);
          if (q == o) u += TensorElement::pure(monomial(*aq, e), eps, base);
          g.push_back(std::move(u));
        }
        const DeformationDatum t = transport(DeformationDatum::trivial(cover, base), g);
        if (!validate(t).is_zero()) throw DomainError("gauge transport of the trivial datum does not validate");
        std::map<DataKey, Scalar> coords;
        auto take = [&](int kind, std::size_t slot, const TensorElement& x) {
          const auto sol = LinearSolver(DenseMatrix::from_columns(base->dim(), kernel));
          std::map<Exponents, Vector> by_mono;
          for (std::size_t b = 0; b < base->dim(); ++b)
            for (const auto& [mono, coef] : x.part(b).terms()) {
              auto [it, ins] = by_mono.try_emplace(mono, Vector(base->dim()));
              it->second[b] = coef;
            }
          for (const auto& [mono, v] : by_mono) {
            auto s = sol.solve(v);
            if (!s) throw DomainError("gauge transport leaves A (x) eps");
            if (sgn((*s)[0]) != 0) coords[{kind, slot, mono}] += (*s)[0];
          }
        };
        for (std::size_t q = 0; q < c.object_count(); ++q) take(0, q, t.psi[q]);
        for (std::size_t m = 0; m < c.morphism_count(); ++m)
          if (!c.is_identity(m))
            take(1, m, t.restriction[m] - TensorElement::one(t.restriction[m].algebra(), base));
        for (const auto& [key, v] : coords)
          if (!space.index.count(key)) outside.add(key);
        gauges.push_back(std::move(coords));
      }
    }
    DenseMatrix in(space.keys.size(), gauges.size());
    DenseMatrix out_part(outside.keys.size(), gauges.size());
    for (std::size_t k = 0; k < gauges.size(); ++k)
      for (const auto& [key, v] : gauges[k]) {
        auto it = space.index.find(key);
        if (it != space.index.end()) in(it->second, k) = v;
        else out_part(outside.index.at(key), k) = v;
      }
    std::vector<Vector> combos = outside.keys.empty() ? std::vector<Vector>{} : kernel_basis(out_part);
    std::size_t coboundaries = 0;
    if (outside.keys.empty()) {
      coboundaries = rank(in);
    } else if (!combos.empty()) {
      std::vector<Vector> imgs;
      for (const auto& lam : combos) imgs.push_back(in.apply(lam));
      coboundaries = rank(DenseMatrix::from_columns(space.keys.size(), imgs));
    }
    out.samples.push_back({d, cocycles, coboundaries});

    const std::size_t n = out.samples.size();
    const auto w = static_cast<std::size_t>(options.window);
    if (n >= w) {
      bool stable = true;
      for (std::size_t k = n - w; k + 1 < n; ++k)
        if (out.samples[k].cocycles - out.samples[k].coboundaries !=
            out.samples[n - 1].cocycles - out.samples[n - 1].coboundaries)
          stable = false;
      if (stable) {
        out.dimension = cocycles - coboundaries;
        out.stable_degree = out.samples[n - w].degree;
        return out;
      }
    }
  }
  throw NoStabilization("tangent dimension did not stabilize", options.d_max);
}

ChartCover doubled_cover(const ChartCover& cover, std::size_t object) {
  const auto& c = cover.category();
  if (object >= c.object_count()) throw InvalidInput("doubled_cover: object out of range");
  std::vector<std::string> names = c.objects();
  names.push_back(names[object] + "'");
  const std::size_t copy = names.size() - 1;
  std::vector<std::pair<std::size_t, std::size_t>> arrows;
  for (const auto& m : c.morphisms())
    if (m.source != m.target) arrows.emplace_back(m.source, m.target);
  arrows.emplace_back(object, copy);
  FiniteCategory doubled = FiniteCategory::poset(names, arrows);

  std::vector<ChartData> charts = cover.charts();
  ChartData dup = charts[object];
  dup.label += "'";
  charts.push_back(dup);

  std::map<std::size_t, AlgebraMorphism> rho;
  for (std::size_t m = 0; m < c.morphism_count(); ++m)
    if (!c.is_identity(m)) rho.emplace(*doubled.morphism_index(c.morphism(m).name), cover.restriction(m));
  const auto& alg = cover.chart(object).algebra;
  rho.emplace(*doubled.morphism_index(names[object] + "->" + names[copy]), AlgebraMorphism::identity(alg));
  return ChartCover::create(std::move(doubled), std::move(charts), std::move(rho));
}

}  // namespace ncdef
