#include "ncdef/deformation.hpp"

#include "ncdef/errors.hpp"

namespace ncdef {

TensorElement::TensorElement(AlgebraPtr algebra, MatricArtinPtr base)
    : algebra_(std::move(algebra)), base_(std::move(base)), parts_(base_->dim(), algebra_->zero()) {}

TensorElement TensorElement::pure(const AlgebraElement& a, std::span<const Scalar> r, const MatricArtinPtr& base) {
  if (r.size() != base->dim()) throw InvalidInput("tensor: base vector has the wrong length");
  TensorElement t(a.algebra_ptr(), base);
  for (std::size_t k = 0; k < r.size(); ++k)
    if (sgn(r[k]) != 0) t.parts_[k] = a * r[k];
  return t;
}

TensorElement TensorElement::one(const AlgebraPtr& algebra, const MatricArtinPtr& base) {
  return pure(algebra->one(), base->one(), base);
}

bool TensorElement::is_zero() const {
  for (const auto& p : parts_)
    if (!p.is_zero()) return false;
  return true;
}

int TensorElement::degree() const {
  int d = -1;
  for (const auto& p : parts_) d = std::max(d, p.degree());
  return d;
}

static void check_compatible(const TensorElement& a, const TensorElement& b) {
  if (a.algebra() != b.algebra() || a.base() != b.base())
    throw InvalidInput("tensor arithmetic across different algebras or bases");
}

TensorElement& TensorElement::operator+=(const TensorElement& rhs) {
  check_compatible(*this, rhs);
  for (std::size_t k = 0; k < parts_.size(); ++k) parts_[k] += rhs.parts_[k];
  return *this;
}

TensorElement& TensorElement::operator-=(const TensorElement& rhs) {
  check_compatible(*this, rhs);
  for (std::size_t k = 0; k < parts_.size(); ++k) parts_[k] -= rhs.parts_[k];
  return *this;
}

TensorElement& TensorElement::operator*=(const Scalar& s) {
  for (auto& p : parts_) p *= s;
  return *this;
}

TensorElement operator*(const TensorElement& a, const TensorElement& b) {
  check_compatible(a, b);
  TensorElement out(a.algebra_, a.base_);
  const std::size_t n = a.parts_.size();
  for (std::size_t k = 0; k < n; ++k) {
    if (a.parts_[k].is_zero()) continue;
    for (std::size_t l = 0; l < n; ++l) {
      if (b.parts_[l].is_zero()) continue;
      const Vector& prod = a.base_->basis_product(k, l);
      if (is_zero(prod)) continue;
      const AlgebraElement ab = a.parts_[k] * b.parts_[l];
      for (std::size_t m = 0; m < n; ++m)
        if (sgn(prod[m]) != 0) out.parts_[m] += ab * prod[m];
    }
  }
  return out;
}

bool operator==(const TensorElement& a, const TensorElement& b) {
  return a.algebra_ == b.algebra_ && a.base_ == b.base_ && a.parts_ == b.parts_;
}

TensorElement TensorElement::derive(const Derivation& d) const {
  if (d.algebra_ptr() != algebra_) throw InvalidInput("tensor: derivation acts on another algebra");
  TensorElement out(algebra_, base_);
  for (std::size_t k = 0; k < parts_.size(); ++k)
    if (!parts_[k].is_zero()) out.parts_[k] = d.apply(parts_[k]);
  return out;
}

TensorElement TensorElement::restrict(const AlgebraMorphism& rho) const {
  if (rho.source() != algebra_) throw InvalidInput("tensor: restriction starts at another algebra");
  TensorElement out(rho.target(), base_);
  for (std::size_t k = 0; k < parts_.size(); ++k)
    if (!parts_[k].is_zero()) out.parts_[k] = rho.apply(parts_[k]);
  return out;
}

TensorElement TensorElement::push(const ArtinMorphism& alpha) const {
  if (alpha.source() != base_) throw InvalidInput("tensor: base morphism starts at another base");
  TensorElement out(algebra_, alpha.target());
  for (std::size_t k = 0; k < parts_.size(); ++k) {
    if (parts_[k].is_zero()) continue;
    const Vector img = alpha.apply(base_->basis_vector(k));
    for (std::size_t m = 0; m < img.size(); ++m)
      if (sgn(img[m]) != 0) out.parts_[m] += parts_[k] * img[m];
  }
  return out;
}

TensorElement TensorElement::lift(const SmallSurjection& u) const {
  if (u.target() != base_) throw InvalidInput("tensor: lift along a surjection onto another base");
  TensorElement out(algebra_, u.source());
  for (std::size_t k = 0; k < parts_.size(); ++k) {
    if (parts_[k].is_zero()) continue;
    const Vector img = u.section(base_->basis_vector(k));
    for (std::size_t m = 0; m < img.size(); ++m)
      if (sgn(img[m]) != 0) out.parts_[m] += parts_[k] * img[m];
  }
  return out;
}

TensorElement TensorElement::unit_inverse() const {
  const TensorElement unit = one(algebra_, base_);
  const TensorElement n = *this - unit;
  for (std::size_t k = 0; k < parts_.size(); ++k)
    if (base_->degree(k) == 0 && !n.parts_[k].is_zero())
      throw InvalidInput("unit_inverse: element is not 1 plus a radical element");
  // (1 + n)^{-1} = sum (-n)^j; n is nilpotent
  TensorElement result = unit;
  TensorElement power = unit;
  for (std::size_t j = 1; j <= base_->free()->truncation() + 1; ++j) {
    power = power * n * Scalar(-1);
    if (power.is_zero()) break;
    result += power;
  }
  return result;
}

std::string TensorElement::to_string() const {
  std::string out;
  for (std::size_t k = 0; k < parts_.size(); ++k) {
    if (parts_[k].is_zero()) continue;
    if (!out.empty()) out += " + ";
    out += "(" + parts_[k].to_string() + ")*" + base_->free()->format_path(base_->standard_path(k));
  }
  return out.empty() ? "0" : out;
}

// ---------------------------------------------------------------------------

DeformationDatum DeformationDatum::trivial(std::shared_ptr<const ChartCover> cover, MatricArtinPtr base) {
  DeformationDatum d;
  d.cover = std::move(cover);
  d.base = std::move(base);
  const auto& c = d.cover->category();
  for (std::size_t o = 0; o < c.object_count(); ++o) d.psi.emplace_back(d.cover->chart(o).algebra, d.base);
  for (std::size_t m = 0; m < c.morphism_count(); ++m)
    d.restriction.push_back(TensorElement::one(d.cover->chart(c.morphism(m).target).algebra, d.base));
  return d;
}

void DeformationDatum::check_well_formed() const {
  if (!cover || !base) throw InvalidInput("deformation datum without cover or base");
  const auto& c = cover->category();
  if (psi.size() != c.object_count() || restriction.size() != c.morphism_count())
    throw InvalidInput("deformation datum: one operator correction per chart and one restriction per arrow");
  for (std::size_t o = 0; o < c.object_count(); ++o) {
    if (psi[o].algebra() != cover->chart(o).algebra || psi[o].base() != base)
      throw InvalidInput("operator correction on " + c.objects()[o] + " lives in the wrong algebra");
    for (std::size_t k = 0; k < base->dim(); ++k)
      if (base->degree(k) == 0 && !psi[o].part(k).is_zero())
        throw InvalidInput("operator correction on " + c.objects()[o] + " is not radical");
  }
  for (std::size_t m = 0; m < c.morphism_count(); ++m) {
    if (restriction[m].algebra() != cover->chart(c.morphism(m).target).algebra || restriction[m].base() != base)
      throw InvalidInput("restriction along " + c.morphism(m).name + " lives in the wrong algebra");
    const TensorElement unit = TensorElement::one(restriction[m].algebra(), base);
    const TensorElement n = restriction[m] - unit;
    for (std::size_t k = 0; k < base->dim(); ++k)
      if (base->degree(k) == 0 && !n.part(k).is_zero())
        throw InvalidInput("restriction along " + c.morphism(m).name + " does not reduce to the identity");
    if (c.is_identity(m) && !n.is_zero()) throw InvalidInput("identity restriction must be 1");
  }
}

bool DefectCochain::is_zero() const {
  for (const auto& chart : ore)
    for (const auto& e : chart)
      if (!e.value.is_zero()) return false;
  for (const auto& [k, v] : semilinear)
    if (!v.is_zero()) return false;
  for (const auto& [k, v] : composition)
    if (!v.is_zero()) return false;
  return true;
}

std::string DefectCochain::summary() const {
  std::size_t o = 0, s = 0, c = 0;
  for (const auto& chart : ore)
    for (const auto& e : chart) o += e.value.is_zero() ? 0 : 1;
  for (const auto& [k, v] : semilinear) s += v.is_zero() ? 0 : 1;
  for (const auto& [k, v] : composition) c += v.is_zero() ? 0 : 1;
  return "ore " + std::to_string(o) + ", semilinear " + std::to_string(s) + ", composition " + std::to_string(c);
}

DefectCochain validate(const DeformationDatum& d) {
  d.check_well_formed();
  const auto& cover = *d.cover;
  const auto& c = cover.category();
  DefectCochain out;
  for (std::size_t o = 0; o < c.object_count(); ++o) {
    const auto& chart = cover.chart(o);
    const auto& alg = chart.algebra;
    const TensorElement& psi = d.psi[o];
    auto op = [&](const TensorElement& x) { return x.derive(chart.derivation) + psi * x; };
    std::vector<AlgebraElement> tests{alg->one()};
    for (std::size_t v = 0; v < alg->variables().size(); ++v) tests.push_back(alg->generator(v));
    std::vector<DefectCochain::Entry> entries;
    for (std::size_t v = 0; v < alg->variables().size(); ++v) {
      const AlgebraElement a = alg->generator(v);
      const TensorElement ta = TensorElement::pure(a, d.base->one(), d.base);
      const TensorElement da = TensorElement::pure(chart.derivation.apply(a), d.base->one(), d.base);
      for (const auto& m : tests) {
        const TensorElement tm = TensorElement::pure(m, d.base->one(), d.base);
        entries.push_back({"[D," + alg->variables()[v] + "](" + m.to_string() + ")", op(ta * tm) - ta * op(tm) - da * tm});
      }
    }
    for (const auto& r : alg->relations())
      for (const auto& m : tests)
        entries.push_back({"relation " + r.to_string(alg->internal_names()) + " on " + m.to_string(),
                           TensorElement::pure(alg->normal_form(r) * m, d.base->one(), d.base)});
    out.ore.push_back(std::move(entries));
  }
  for (std::size_t m = 0; m < c.morphism_count(); ++m) {
    if (c.is_identity(m)) continue;
    const auto& mor = c.morphism(m);
    const TensorElement& t = d.restriction[m];
    out.semilinear.emplace(m, t * d.psi[mor.source].restrict(cover.restriction(m)) - d.psi[mor.target] * t -
                                  t.derive(cover.chart(mor.target).derivation));
  }
  for (std::size_t f = 0; f < c.morphism_count(); ++f) {
    if (c.is_identity(f)) continue;
    for (std::size_t g : c.outgoing(c.morphism(f).target)) {
      if (c.is_identity(g)) continue;
      const std::size_t gf = *c.compose(g, f);
      out.composition.emplace(std::make_pair(f, g), d.restriction[g] * d.restriction[f].restrict(cover.restriction(g)) -
                                                        d.restriction[gf]);
    }
  }
  return out;
}

DeformationDatum transport(const DeformationDatum& d, const std::vector<TensorElement>& g) {
  d.check_well_formed();
  const auto& cover = *d.cover;
  const auto& c = cover.category();
  if (g.size() != c.object_count()) throw InvalidInput("transport: one gauge element per chart");
  std::vector<TensorElement> ginv;
  for (std::size_t o = 0; o < g.size(); ++o) {
    if (g[o].algebra() != cover.chart(o).algebra || g[o].base() != d.base)
      throw InvalidInput("transport: gauge element on " + c.objects()[o] + " lives in the wrong algebra");
    ginv.push_back(g[o].unit_inverse());
  }
  DeformationDatum out = d;
  for (std::size_t o = 0; o < g.size(); ++o)
    out.psi[o] = g[o] * ginv[o].derive(cover.chart(o).derivation) + g[o] * d.psi[o] * ginv[o];
  for (std::size_t m = 0; m < c.morphism_count(); ++m) {
    const auto& mor = c.morphism(m);
    out.restriction[m] = g[mor.target] * d.restriction[m] * ginv[mor.source].restrict(cover.restriction(m));
  }
  return out;
}

DeformationDatum push_forward(const DeformationDatum& d, const ArtinMorphism& alpha) {
  if (alpha.source() != d.base) throw InvalidInput("push_forward: morphism starts at another base");
  DeformationDatum out;
  out.cover = d.cover;
  out.base = alpha.target();
  for (const auto& p : d.psi) out.psi.push_back(p.push(alpha));
  for (const auto& t : d.restriction) out.restriction.push_back(t.push(alpha));
  return out;
}

DefectCochain push_forward(const DefectCochain& c, const ArtinMorphism& alpha) {
  DefectCochain out;
  for (const auto& chart : c.ore) {
    std::vector<DefectCochain::Entry> entries;
    for (const auto& e : chart) entries.push_back({e.label, e.value.push(alpha)});
    out.ore.push_back(std::move(entries));
  }
  for (const auto& [k, v] : c.semilinear) out.semilinear.emplace(k, v.push(alpha));
  for (const auto& [k, v] : c.composition) out.composition.emplace(k, v.push(alpha));
  return out;
}

DeformationDatum lift(const DeformationDatum& d, const SmallSurjection& u) {
  if (u.target() != d.base) throw InvalidInput("lift: surjection onto another base");
  DeformationDatum out;
  out.cover = d.cover;
  out.base = u.source();
  for (const auto& p : d.psi) out.psi.push_back(p.lift(u));
  for (const auto& t : d.restriction) out.restriction.push_back(t.lift(u));
  return out;
}

bool operator==(const DefectCochain& a, const DefectCochain& b) {
  if (a.ore.size() != b.ore.size() || a.semilinear != b.semilinear || a.composition != b.composition) return false;
  for (std::size_t o = 0; o < a.ore.size(); ++o) {
    if (a.ore[o].size() != b.ore[o].size()) return false;
    for (std::size_t k = 0; k < a.ore[o].size(); ++k)
      if (a.ore[o][k].label != b.ore[o][k].label || !(a.ore[o][k].value == b.ore[o][k].value)) return false;
  }
  return true;
}

}  // namespace ncdef
