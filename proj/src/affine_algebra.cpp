#include "ncdef/affine_algebra.hpp"

#include <algorithm>
#include <numeric>

#include "ncdef/errors.hpp"

namespace ncdef {

std::size_t ExponentsHash::operator()(const Exponents& e) const noexcept {
  std::size_t h = 0x9e3779b97f4a7c15ULL;
  for (int v : e) h ^= std::hash<int>{}(v) + 0x9e3779b9 + (h << 6) + (h >> 2);
  return h;
}

namespace {

std::size_t index_of(const std::vector<std::string>& names, const std::string& n, const char* what) {
  auto it = std::find(names.begin(), names.end(), n);
  if (it == names.end()) throw InvalidInput(std::string(what) + ": unknown variable '" + n + "'");
  return static_cast<std::size_t>(it - names.begin());
}

void add_scaled(Polynomial::Terms& into, const Polynomial::Terms& from, const Scalar& s) {
  if (sgn(s) == 0) return;
  for (const auto& [e, c] : from) {
    auto [it, inserted] = into.try_emplace(e, c * s);
    if (!inserted) {
      it->second += c * s;
      if (sgn(it->second) == 0) into.erase(it);
    }
  }
}

}  // namespace

std::shared_ptr<const PresentedAlgebra> PresentedAlgebra::create(const Presentation& pres) {
  std::shared_ptr<PresentedAlgebra> a(new PresentedAlgebra());
  a->presentation_ = pres;
  a->name_ = pres.name;
  a->variables_ = pres.variables;
  if (a->variables_.empty()) throw InvalidInput("algebra '" + pres.name + "' has no variables");
  {
    auto sorted = a->variables_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw InvalidInput("algebra '" + pres.name + "' declares a variable twice");
  }
  a->internal_names_ = a->variables_;
  if (pres.inverted) {
    a->inverted_ = index_of(a->variables_, *pres.inverted, "inverted");
    a->internal_names_.push_back(*pres.inverted + "^-1");
  }
  const std::size_t n = a->internal_names_.size();

  std::vector<int> weights = pres.weights;
  if (weights.empty()) weights.assign(a->variables_.size(), 1);
  if (weights.size() != a->variables_.size())
    throw InvalidInput("algebra '" + pres.name + "': one order weight per variable expected");
  if (a->inverted_) weights.push_back(1);

  std::vector<std::size_t> priority;
  if (pres.priority.empty()) {
    priority.resize(n);
    std::iota(priority.begin(), priority.end(), 0);
  } else {
    for (const auto& p : pres.priority) priority.push_back(index_of(a->internal_names_, p, "priority"));
    if (a->inverted_ && priority.size() + 1 == n) priority.push_back(n - 1);
  }
  a->order_ = MonomialOrder(std::move(weights), std::move(priority));

  std::vector<Polynomial> gens;
  for (const auto& r : pres.relations) {
    Polynomial p = parse_polynomial(r, a->variables_);
    // lift to internal coordinates, then clear the inverse by multiplying
    // with a power of the inverted variable
    Polynomial internal(n);
    int shift = 0;
    for (const auto& [e, c] : p.terms()) {
      if (a->inverted_) shift = std::max(shift, -e[*a->inverted_]);
      for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i] < 0 && (!a->inverted_ || i != *a->inverted_))
          throw InvalidInput("relation '" + r + "' inverts a non-inverted variable");
    }
    for (const auto& [e, c] : p.terms()) {
      Exponents ie(e.begin(), e.end());
      if (a->inverted_) {
        ie[*a->inverted_] += shift;
        ie.push_back(0);
      }
      internal.add_term(ie, c);
    }
    if (internal.is_zero()) continue;
    a->relations_.push_back(internal);
    gens.push_back(internal);
  }
  if (a->inverted_) {
    Exponents yu(n, 0);
    yu[*a->inverted_] = 1;
    yu[n - 1] = 1;
    Polynomial unit = Polynomial::monomial(yu) - Polynomial::constant(n, 1);
    gens.push_back(unit);
  }
  a->groebner_ = ncdef::groebner_basis(std::move(gens), a->order_);
  for (const auto& g : a->groebner_) {
    if (g.leading(a->order_).first == Exponents(n, 0))
      throw DomainError("algebra '" + pres.name + "' is the zero ring");
    a->leading_.push_back(g.leading(a->order_).first);
  }
  return a;
}

std::optional<std::size_t> PresentedAlgebra::inverse_index() const noexcept {
  if (!inverted_) return std::nullopt;
  return internal_names_.size() - 1;
}

Exponents PresentedAlgebra::canonical(Exponents e) const {
  if (inverted_) {
    const std::size_t v = *inverted_, u = internal_names_.size() - 1;
    const int m = std::min(e[v], e[u]);
    e[v] -= m;
    e[u] -= m;
  }
  return e;
}

bool PresentedAlgebra::is_normal(const Exponents& e) const {
  for (const auto& l : leading_)
    if (divides(l, e)) return false;
  return std::all_of(e.begin(), e.end(), [](int v) { return v >= 0; });
}

const Polynomial::Terms& PresentedAlgebra::monomial_normal_form(const Exponents& raw) const {
  {
    std::lock_guard lock(cache_mutex_);
    auto it = nf_cache_.find(raw);
    if (it != nf_cache_.end()) return it->second;
  }
  Polynomial::Terms result;
  const Exponents e = canonical(raw);
  std::size_t k = 0;
  while (k < leading_.size() && !divides(leading_[k], e)) ++k;
  if (k == leading_.size()) {
    result.emplace(e, Scalar(1));
  } else {
    // e = q * LT(g_k) and g_k is monic: e -> -q * tail(g_k)
    Exponents q = e;
    for (std::size_t i = 0; i < q.size(); ++i) q[i] -= leading_[k][i];
    for (const auto& [ge, gc] : groebner_[k].terms()) {
      if (ge == leading_[k]) continue;
      Exponents t = ge;
      for (std::size_t i = 0; i < t.size(); ++i) t[i] += q[i];
      add_scaled(result, monomial_normal_form(t), -gc);
    }
  }
  std::lock_guard lock(cache_mutex_);
  return nf_cache_.try_emplace(raw, std::move(result)).first->second;
}

AlgebraElement PresentedAlgebra::normal_form(const Polynomial& internal) const {
  if (!internal.is_zero() && internal.nvars() != internal_count())
    throw InvalidInput("normal_form: wrong number of variables for '" + name_ + "'");
  Polynomial::Terms out;
  for (const auto& [e, c] : internal.terms()) {
    if (std::any_of(e.begin(), e.end(), [](int v) { return v < 0; }))
      throw InvalidInput("normal_form: negative exponent in internal coordinates");
    add_scaled(out, monomial_normal_form(e), c);
  }
  return AlgebraElement(shared_from_this(), std::move(out));
}

AlgebraElement PresentedAlgebra::from_laurent(const Polynomial& p) const {
  Polynomial internal(internal_count());
  for (const auto& [e, c] : p.terms()) {
    if (e.size() != variables_.size()) throw InvalidInput("from_laurent: wrong number of variables");
    Exponents ie(e.begin(), e.end());
    if (inverted_) {
      ie.push_back(0);
      if (ie[*inverted_] < 0) {
        ie.back() = -ie[*inverted_];
        ie[*inverted_] = 0;
      }
    }
    for (std::size_t i = 0; i < variables_.size(); ++i)
      if (ie[i] < 0) throw InvalidInput("variable '" + variables_[i] + "' is not invertible in '" + name_ + "'");
    internal.add_term(ie, c);
  }
  return normal_form(internal);
}

AlgebraElement PresentedAlgebra::parse(std::string_view text) const {
  return from_laurent(parse_polynomial(text, variables_));
}

AlgebraElement PresentedAlgebra::zero() const { return AlgebraElement(shared_from_this(), {}); }

AlgebraElement PresentedAlgebra::one() const { return constant(1); }

AlgebraElement PresentedAlgebra::constant(const Scalar& c) const {
  return normal_form(Polynomial::constant(internal_count(), c));
}

AlgebraElement PresentedAlgebra::generator(std::size_t i) const {
  return normal_form(Polynomial::variable(internal_count(), i));
}

int PresentedAlgebra::degree(const Exponents& e) const {
  return std::accumulate(e.begin(), e.end(), 0, [](int s, int v) { return s + (v < 0 ? -v : v); });
}

std::vector<Exponents> PresentedAlgebra::basis_monomials(int max_degree) const {
  std::vector<Exponents> out;
  const std::size_t n = internal_count();
  Exponents e(n, 0);
  // enumerate all exponent vectors of total degree <= max_degree
  auto rec = [&](auto&& self, std::size_t i, int remaining) -> void {
    if (i == n) {
      if (is_normal(e)) out.push_back(e);
      return;
    }
    for (int k = 0; k <= remaining; ++k) {
      e[i] = k;
      self(self, i + 1, remaining - k);
    }
    e[i] = 0;
  };
  if (max_degree >= 0) rec(rec, 0, max_degree);
  std::sort(out.begin(), out.end(), [this](const Exponents& a, const Exponents& b) {
    const int da = degree(a), db = degree(b);
    if (da != db) return da < db;
    return order_.compare(a, b) < 0;
  });
  return out;
}

std::string PresentedAlgebra::format_monomial(const Exponents& e) const {
  Exponents shown(e.begin(), e.begin() + static_cast<std::ptrdiff_t>(variables_.size()));
  if (inverted_) shown[*inverted_] -= e.back();
  return ncdef::format_monomial(shown, variables_);
}

// ---------------------------------------------------------------------------

AlgebraElement::AlgebraElement(AlgebraPtr algebra, Polynomial::Terms normal_terms)
    : algebra_(std::move(algebra)), terms_(std::move(normal_terms)) {
  std::erase_if(terms_, [](const auto& t) { return sgn(t.second) == 0; });
}

void AlgebraElement::check_same(const AlgebraElement& rhs) const {
  if (algebra_ && rhs.algebra_ && algebra_ != rhs.algebra_)
    throw InvalidInput("arithmetic between elements of different algebras ('" + algebra_->name() + "' and '" +
                       rhs.algebra_->name() + "')");
}

Scalar AlgebraElement::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Scalar(0) : it->second;
}

int AlgebraElement::degree() const {
  int d = -1;
  for (const auto& t : terms_) d = std::max(d, algebra_->degree(t.first));
  return d;
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& rhs) {
  check_same(rhs);
  if (!algebra_) algebra_ = rhs.algebra_;
  add_scaled(terms_, rhs.terms_, 1);
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& rhs) {
  check_same(rhs);
  if (!algebra_) algebra_ = rhs.algebra_;
  add_scaled(terms_, rhs.terms_, -1);
  return *this;
}

AlgebraElement& AlgebraElement::operator*=(const Scalar& s) {
  if (sgn(s) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.second *= s;
  return *this;
}

AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) {
  a.check_same(b);
  const AlgebraPtr& alg = a.algebra_ ? a.algebra_ : b.algebra_;
  Polynomial::Terms out;
  Exponents e;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      e = ea;
      for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
      add_scaled(out, alg->monomial_normal_form(e), ca * cb);
    }
  return AlgebraElement(alg, std::move(out));
}

AlgebraElement AlgebraElement::pow(unsigned n) const {
  AlgebraElement result = algebra_->one();
  AlgebraElement base = *this;
  while (n > 0) {
    if (n & 1u) result = result * base;
    n >>= 1u;
    if (n) base = base * base;
  }
  return result;
}

bool operator==(const AlgebraElement& a, const AlgebraElement& b) {
  if (a.algebra_ && b.algebra_ && a.algebra_ != b.algebra_) return false;
  return a.terms_ == b.terms_;
}

std::string AlgebraElement::to_string() const {
  if (terms_.empty()) return "0";
  const auto& alg = *algebra_;
  std::vector<std::pair<Exponents, Scalar>> ts(terms_.begin(), terms_.end());
  std::sort(ts.begin(), ts.end(), [&](const auto& x, const auto& y) {
    const int dx = alg.degree(x.first), dy = alg.degree(y.first);
    if (dx != dy) return dx > dy;
    return alg.order().greater(x.first, y.first);
  });
  std::string out;
  for (std::size_t k = 0; k < ts.size(); ++k) {
    const auto& [e, c] = ts[k];
    const bool neg = sgn(c) < 0;
    const Scalar mag = neg ? Scalar(-c) : c;
    if (k == 0) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    const std::string mono = alg.format_monomial(e);
    if (mono == "1") {
      out += ncdef::to_string(mag);
    } else if (mag == 1) {
      out += mono;
    } else {
      out += ncdef::to_string(mag) + "*" + mono;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

Derivation::Derivation(AlgebraPtr algebra, std::vector<AlgebraElement> images) : algebra_(std::move(algebra)) {
  if (images.size() != algebra_->variables().size())
    throw InvalidInput("derivation on '" + algebra_->name() + "' needs one image per variable");
  for (auto& im : images)
    if (im.algebra_ptr() && im.algebra_ptr() != algebra_)
      throw InvalidInput("derivation image lives in the wrong algebra");
  images_ = std::move(images);
  for (auto& im : images_)
    if (!im.algebra_ptr()) im = algebra_->zero() + im;
  if (auto inv = algebra_->inverse_index()) {
    const AlgebraElement u = algebra_->generator(*inv);
    images_.push_back(-(u * u * images_[*algebra_->inverted_index()]));
  }
}

Derivation Derivation::parse(AlgebraPtr algebra, const std::map<std::string, std::string>& images) {
  std::vector<AlgebraElement> ims;
  for (const auto& v : algebra->variables()) {
    auto it = images.find(v);
    ims.push_back(it == images.end() ? algebra->zero() : algebra->parse(it->second));
  }
  for (const auto& [k, _] : images) index_of(algebra->variables(), k, "derivation");
  return Derivation(algebra, std::move(ims));
}

AlgebraElement Derivation::apply_raw(const Polynomial& p) const {
  AlgebraElement out = algebra_->zero();
  for (const auto& [e, c] : p.terms()) {
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      Exponents rest = e;
      rest[i] -= 1;
      Polynomial::Terms t;
      add_scaled(t, algebra_->monomial_normal_form(rest), c * e[i]);
      out += AlgebraElement(algebra_, std::move(t)) * images_[i];
    }
  }
  return out;
}

AlgebraElement Derivation::apply(const AlgebraElement& e) const {
  if (e.algebra_ptr() && e.algebra_ptr() != algebra_)
    throw InvalidInput("derivation applied to an element of another algebra");
  return apply_raw(Polynomial(algebra_->internal_count(), e.terms()));
}

void Derivation::verify() const {
  for (const auto& r : algebra_->groebner_basis())
    if (!apply_raw(r).is_zero())
      throw DomainError("derivation on '" + algebra_->name() + "' does not preserve the relation " +
                        r.to_string(algebra_->internal_names()));
}

// ---------------------------------------------------------------------------

namespace {

AlgebraElement evaluate(const AlgebraPtr& target, const std::vector<AlgebraElement>& images,
                        const Polynomial::Terms& terms) {
  std::vector<std::vector<AlgebraElement>> powers(images.size());
  auto power = [&](std::size_t i, int k) -> const AlgebraElement& {
    auto& pw = powers[i];
    if (pw.empty()) pw.push_back(target->one());
    while (static_cast<int>(pw.size()) <= k) pw.push_back(pw.back() * images[i]);
    return pw[static_cast<std::size_t>(k)];
  };
  AlgebraElement out = target->zero();
  for (const auto& [e, c] : terms) {
    AlgebraElement m = target->constant(c);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] > 0) m = m * power(i, e[i]);
    out += m;
  }
  return out;
}

}  // namespace

AlgebraMorphism::AlgebraMorphism(AlgebraPtr source, AlgebraPtr target, std::vector<AlgebraElement> images,
                                 std::optional<AlgebraElement> inverse_image)
    : source_(std::move(source)), target_(std::move(target)) {
  if (images.size() != source_->variables().size())
    throw InvalidInput("morphism from '" + source_->name() + "' needs one image per variable");
  for (auto& im : images) {
    if (im.algebra_ptr() && im.algebra_ptr() != target_)
      throw InvalidInput("morphism image lives in the wrong algebra");
    if (!im.algebra_ptr()) im = target_->zero() + im;
  }
  images_ = std::move(images);
  if (auto v = source_->inverted_index()) {
    const AlgebraElement& y = images_[*v];
    if (!inverse_image) {
      // a scalar multiple of a power of the target's inverted variable is a unit
      if (y.terms().size() == 1) {
        const auto& [e, c] = *y.terms().begin();
        auto tv = target_->inverted_index();
        bool unit_monomial = true;
        for (std::size_t i = 0; i < e.size(); ++i) {
          const bool allowed = tv && (i == *tv || i == *target_->inverse_index());
          if (e[i] != 0 && !allowed) unit_monomial = false;
        }
        if (unit_monomial) {
          Exponents inv(e.size(), 0);
          if (tv) {
            inv[*tv] = e[*target_->inverse_index()];
            inv[*target_->inverse_index()] = e[*tv];
          }
          inverse_image = target_->normal_form(Polynomial::monomial(inv, 1 / c));
        }
      }
    }
    if (!inverse_image)
      throw InvalidInput("image of the inverted variable of '" + source_->name() + "' must come with its inverse");
    if (!(y * *inverse_image == target_->one()))
      throw DomainError("supplied inverse image is not an inverse");
    images_.push_back(*inverse_image);
  }
}

AlgebraMorphism AlgebraMorphism::parse(AlgebraPtr source, AlgebraPtr target,
                                       const std::map<std::string, std::string>& images) {
  std::vector<AlgebraElement> ims;
  for (const auto& v : source->variables()) {
    auto it = images.find(v);
    if (it == images.end()) throw InvalidInput("morphism: missing image for '" + v + "'");
    ims.push_back(target->parse(it->second));
  }
  for (const auto& [k, _] : images) index_of(source->variables(), k, "morphism");
  return AlgebraMorphism(source, target, std::move(ims));
}

AlgebraMorphism AlgebraMorphism::identity(AlgebraPtr algebra) {
  std::vector<AlgebraElement> ims;
  for (std::size_t i = 0; i < algebra->variables().size(); ++i) ims.push_back(algebra->generator(i));
  std::optional<AlgebraElement> inv;
  if (auto u = algebra->inverse_index()) inv = algebra->generator(*u);
  return AlgebraMorphism(algebra, algebra, std::move(ims), std::move(inv));
}

AlgebraElement AlgebraMorphism::apply(const AlgebraElement& e) const {
  if (e.algebra_ptr() && e.algebra_ptr() != source_)
    throw InvalidInput("morphism applied to an element of another algebra");
  return evaluate(target_, images_, e.terms());
}

AlgebraMorphism AlgebraMorphism::then(const AlgebraMorphism& next) const {
  if (next.source_ != target_) throw InvalidInput("morphisms are not composable");
  std::vector<AlgebraElement> ims;
  for (std::size_t i = 0; i < source_->variables().size(); ++i) ims.push_back(next.apply(images_[i]));
  std::optional<AlgebraElement> inv;
  if (auto u = source_->inverse_index()) inv = next.apply(images_[*u]);
  return AlgebraMorphism(source_, next.target_, std::move(ims), std::move(inv));
}

void AlgebraMorphism::verify() const {
  for (const auto& r : source_->groebner_basis())
    if (!evaluate(target_, images_, r.terms()).is_zero())
      throw DomainError("morphism '" + source_->name() + "' -> '" + target_->name() +
                        "' does not respect the relation " + r.to_string(source_->internal_names()));
}

// ---------------------------------------------------------------------------

LinearOperator multiplication_operator(const AlgebraElement& by) {
  return {by.algebra_ptr(), by.algebra_ptr(), [by](const AlgebraElement& e) { return by * e; }};
}

LinearOperator derivation_operator(const Derivation& d) {
  return {d.algebra_ptr(), d.algebra_ptr(), [d](const AlgebraElement& e) { return d.apply(e); }};
}

LinearOperator morphism_operator(const AlgebraMorphism& m) {
  return {m.source(), m.target(), [m](const AlgebraElement& e) { return m.apply(e); }};
}

LinearOperator compose(const LinearOperator& outer, const LinearOperator& inner) {
  if (inner.target != outer.source) throw InvalidInput("compose: operators are not composable");
  return {inner.source, outer.target, [outer, inner](const AlgebraElement& e) { return outer(inner(e)); }};
}

Vector coordinates(const AlgebraElement& e, const std::vector<Exponents>& monomials) {
  Vector v(monomials.size());
  std::size_t found = 0;
  for (std::size_t i = 0; i < monomials.size(); ++i) {
    auto it = e.terms().find(monomials[i]);
    if (it != e.terms().end()) {
      v[i] = it->second;
      ++found;
    }
  }
  if (found != e.terms().size())
    throw TruncationEscape("element " + e.to_string() + " has terms outside the truncation");
  return v;
}

AlgebraElement from_coordinates(const AlgebraPtr& algebra, const std::vector<Exponents>& monomials,
                                std::span<const Scalar> coords) {
  if (coords.size() != monomials.size()) throw InvalidInput("from_coordinates: length mismatch");
  Polynomial::Terms t;
  for (std::size_t i = 0; i < coords.size(); ++i)
    if (sgn(coords[i]) != 0) t.emplace(monomials[i], coords[i]);
  return AlgebraElement(algebra, std::move(t));
}

DenseMatrix truncated_operator_matrix(const LinearOperator& op, int d_in, int d_out) {
  const auto in = op.source->basis_monomials(d_in);
  const auto out = op.target->basis_monomials(d_out);
  std::vector<Vector> cols;
  cols.reserve(in.size());
  for (const auto& m : in) {
    const AlgebraElement image = op(op.source->normal_form(Polynomial::monomial(m)));
    try {
      cols.push_back(coordinates(image, out));
    } catch (const TruncationEscape&) {
      throw TruncationEscape("image of " + op.source->format_monomial(m) + " has degree " +
                             std::to_string(image.degree()) + " > " + std::to_string(d_out));
    }
  }
  return DenseMatrix::from_columns(out.size(), cols);
}

}  // namespace ncdef
