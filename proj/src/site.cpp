#include "ncdef/site.hpp"

#include <algorithm>
#include <functional>

#include "ncdef/errors.hpp"

namespace ncdef {

FiniteCategory FiniteCategory::poset(std::vector<std::string> objects,
                                     const std::vector<std::pair<std::size_t, std::size_t>>& arrows) {
  FiniteCategory c;
  const std::size_t n = objects.size();
  c.objects_ = std::move(objects);
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (auto [i, j] : arrows) {
    if (i >= n || j >= n) throw InvalidInput("poset arrow refers to an unknown object");
    if (i == j) throw InvalidInput("poset arrows must join distinct objects");
    reach[i][j] = true;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (reach[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (reach[k][j]) reach[i][j] = true;
  for (std::size_t i = 0; i < n; ++i)
    if (reach[i][i]) throw InvalidInput("poset arrows contain a cycle through '" + c.objects_[i] + "'");

  for (std::size_t i = 0; i < n; ++i) {
    c.identities_.push_back(c.morphisms_.size());
    c.morphisms_.push_back({i, i, "id:" + c.objects_[i]});
  }
  std::vector<std::vector<bool>> placed(n, std::vector<bool>(n, false));
  auto place = [&](std::size_t i, std::size_t j) {
    if (placed[i][j]) return;
    placed[i][j] = true;
    c.morphisms_.push_back({i, j, c.objects_[i] + "->" + c.objects_[j]});
  };
  for (auto [i, j] : arrows) place(i, j);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (reach[i][j]) place(i, j);

  const std::size_t m = c.morphisms_.size();
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> by_ends;
  for (std::size_t k = 0; k < m; ++k) by_ends[{c.morphisms_[k].source, c.morphisms_[k].target}] = k;
  c.table_.assign(m, std::vector<std::optional<std::size_t>>(m));
  for (std::size_t g = 0; g < m; ++g)
    for (std::size_t f = 0; f < m; ++f)
      if (c.morphisms_[f].target == c.morphisms_[g].source)
        c.table_[g][f] = by_ends.at({c.morphisms_[f].source, c.morphisms_[g].target});
  return c;
}

bool FiniteCategory::is_identity(std::size_t m) const {
  const auto& mor = morphisms_.at(m);
  return mor.source == mor.target && identities_[mor.source] == m;
}

std::optional<std::size_t> FiniteCategory::object_index(const std::string& name) const {
  auto it = std::find(objects_.begin(), objects_.end(), name);
  if (it == objects_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - objects_.begin());
}

std::optional<std::size_t> FiniteCategory::morphism_index(const std::string& name) const {
  for (std::size_t k = 0; k < morphisms_.size(); ++k)
    if (morphisms_[k].name == name) return k;
  return std::nullopt;
}

std::optional<std::size_t> FiniteCategory::compose(std::size_t g, std::size_t f) const {
  return table_.at(g).at(f);
}

std::vector<std::size_t> FiniteCategory::outgoing(std::size_t object) const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < morphisms_.size(); ++k)
    if (morphisms_[k].source == object) out.push_back(k);
  return out;
}

std::vector<std::size_t> FiniteCategory::incoming(std::size_t object) const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < morphisms_.size(); ++k)
    if (morphisms_[k].target == object) out.push_back(k);
  return out;
}

void FiniteCategory::validate() const {
  const std::size_t m = morphisms_.size();
  for (std::size_t o = 0; o < objects_.size(); ++o) {
    const auto id = identities_.at(o);
    if (morphisms_[id].source != o || morphisms_[id].target != o)
      throw InvalidInput("identity of '" + objects_[o] + "' has the wrong ends");
  }
  for (std::size_t g = 0; g < m; ++g)
    for (std::size_t f = 0; f < m; ++f) {
      const bool composable = morphisms_[f].target == morphisms_[g].source;
      const auto& gf = table_[g][f];
      if (composable != gf.has_value())
        throw InvalidInput("composition table is not total on composable pairs");
      if (!gf) continue;
      if (morphisms_[*gf].source != morphisms_[f].source || morphisms_[*gf].target != morphisms_[g].target)
        throw InvalidInput("composite " + morphisms_[g].name + " o " + morphisms_[f].name + " has the wrong ends");
    }
  for (std::size_t f = 0; f < m; ++f) {
    if (*table_[f][identities_[morphisms_[f].source]] != f || *table_[identities_[morphisms_[f].target]][f] != f)
      throw InvalidInput("identities are not units for " + morphisms_[f].name);
  }
  for (std::size_t f = 0; f < m; ++f)
    for (std::size_t g = 0; g < m; ++g) {
      if (!table_[g][f]) continue;
      for (std::size_t h = 0; h < m; ++h) {
        if (!table_[h][g]) continue;
        if (table_[h][*table_[g][f]] != table_[*table_[h][g]][f])
          throw InvalidInput("composition is not associative");
      }
    }
}

// ---------------------------------------------------------------------------

MorCategory::MorCategory(const FiniteCategory& base) : base_(base) {
  for (std::size_t f = 0; f < base_.morphism_count(); ++f) {
    const auto& mf = base_.morphism(f);
    for (std::size_t alpha : base_.incoming(mf.source))
      for (std::size_t beta : base_.outgoing(mf.target)) {
        const std::size_t g = *base_.compose(beta, *base_.compose(f, alpha));
        arrows_.push_back({f, g, alpha, beta});
      }
  }
}

MorCategory::Arrow MorCategory::compose(const Arrow& second, const Arrow& first) const {
  if (first.to != second.from) throw InvalidInput("Mor arrows are not composable");
  return {first.from, second.to, *base_.compose(first.alpha, second.alpha), *base_.compose(second.beta, first.beta)};
}

// ---------------------------------------------------------------------------

MorFunctor MorFunctor::from_generators(const FiniteCategory& c, std::vector<std::size_t> dims,
                                       std::map<Key, DenseMatrix> pre, std::map<Key, DenseMatrix> post,
                                       std::vector<std::vector<std::string>> labels) {
  MorFunctor g;
  g.category_ = std::make_shared<const FiniteCategory>(c);
  if (dims.size() != c.morphism_count())
    throw InvalidInput("functor needs one value dimension per base morphism");
  g.dims_ = std::move(dims);
  if (labels.empty()) {
    for (std::size_t f = 0; f < c.morphism_count(); ++f) {
      std::vector<std::string> l;
      for (std::size_t i = 0; i < g.dims_[f]; ++i) l.push_back("b" + std::to_string(i));
      labels.push_back(std::move(l));
    }
  }
  if (labels.size() != c.morphism_count()) throw InvalidInput("functor labels: one list per base morphism");
  for (std::size_t f = 0; f < labels.size(); ++f)
    if (labels[f].size() != g.dims_[f]) throw InvalidInput("functor labels do not match the value dimension");
  g.labels_ = std::move(labels);

  // every key that must exist, with its expected shape
  std::vector<std::pair<Key, std::pair<std::size_t, std::size_t>>> pre_keys, post_keys;
  for (std::size_t f = 0; f < c.morphism_count(); ++f) {
    const auto& mf = c.morphism(f);
    for (std::size_t a : c.incoming(mf.source)) pre_keys.push_back({{f, a}, {g.dims_[*c.compose(f, a)], g.dims_[f]}});
    for (std::size_t b : c.outgoing(mf.target)) post_keys.push_back({{f, b}, {g.dims_[*c.compose(b, f)], g.dims_[f]}});
  }
  auto check_shapes = [&](std::map<Key, DenseMatrix>& given, const auto& keys, const char* kind) {
    for (const auto& [k, m] : given) {
      auto it = std::find_if(keys.begin(), keys.end(), [&](const auto& e) { return e.first == k; });
      if (it == keys.end())
        throw InvalidInput(std::string(kind) + " map given for a non-composable pair (" + c.morphism(k.first).name +
                           ", " + c.morphism(k.second).name + ")");
      if (m.rows() != it->second.first || m.cols() != it->second.second)
        throw InvalidInput(std::string(kind) + " map for (" + c.morphism(k.first).name + ", " +
                           c.morphism(k.second).name + ") has the wrong shape");
    }
    for (const auto& [k, shape] : keys)
      if (c.is_identity(k.second)) {
        auto [it, inserted] = given.try_emplace(k, DenseMatrix::identity(shape.second));
        if (!inserted && !(it->second == DenseMatrix::identity(shape.second)))
          throw InvalidInput(std::string(kind) + " map of an identity arrow must be the identity");
      }
  };
  check_shapes(pre, pre_keys, "pre");
  check_shapes(post, post_keys, "post");

  // fill in composites: pre(f, a o a') = pre(f o a, a') pre(f, a);
  // post(f, b' o b) = post(b o f, b') post(f, b)
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& [k, shape] : pre_keys) {
      if (pre.count(k)) continue;
      const auto [f, gamma] = k;
      for (std::size_t a : c.incoming(c.morphism(f).source)) {
        for (std::size_t a2 : c.incoming(c.morphism(a).source)) {
          if (c.compose(a, a2) != gamma || c.is_identity(a) || c.is_identity(a2)) continue;
          auto p1 = pre.find({f, a});
          auto p2 = pre.find({*c.compose(f, a), a2});
          if (p1 == pre.end() || p2 == pre.end()) continue;
          pre.emplace(k, p2->second * p1->second);
          changed = true;
          break;
        }
        if (pre.count(k)) break;
      }
    }
    for (const auto& [k, shape] : post_keys) {
      if (post.count(k)) continue;
      const auto [f, gamma] = k;
      for (std::size_t b : c.outgoing(c.morphism(f).target)) {
        for (std::size_t b2 : c.outgoing(c.morphism(b).target)) {
          if (c.compose(b2, b) != gamma || c.is_identity(b) || c.is_identity(b2)) continue;
          auto p1 = post.find({f, b});
          auto p2 = post.find({*c.compose(b, f), b2});
          if (p1 == post.end() || p2 == post.end()) continue;
          post.emplace(k, p2->second * p1->second);
          changed = true;
          break;
        }
        if (post.count(k)) break;
      }
    }
  }
  for (const auto& [k, shape] : pre_keys)
    if (!pre.count(k))
      throw InvalidInput("missing pre map for (" + c.morphism(k.first).name + ", " + c.morphism(k.second).name + ")");
  for (const auto& [k, shape] : post_keys)
    if (!post.count(k))
      throw InvalidInput("missing post map for (" + c.morphism(k.first).name + ", " + c.morphism(k.second).name + ")");
  g.pre_ = std::move(pre);
  g.post_ = std::move(post);
  g.check_functoriality();
  return g;
}

MorFunctor MorFunctor::constant(const FiniteCategory& c, std::size_t n) {
  return from_generators(c, std::vector<std::size_t>(c.morphism_count(), n), [&] {
    std::map<Key, DenseMatrix> pre;
    for (std::size_t f = 0; f < c.morphism_count(); ++f)
      for (std::size_t a : c.incoming(c.morphism(f).source)) pre.emplace(Key{f, a}, DenseMatrix::identity(n));
    return pre;
  }(), [&] {
    std::map<Key, DenseMatrix> post;
    for (std::size_t f = 0; f < c.morphism_count(); ++f)
      for (std::size_t b : c.outgoing(c.morphism(f).target)) post.emplace(Key{f, b}, DenseMatrix::identity(n));
    return post;
  }());
}

const DenseMatrix& MorFunctor::pre(std::size_t f, std::size_t alpha) const {
  auto it = pre_.find({f, alpha});
  if (it == pre_.end()) throw InvalidInput("pre map requested for a non-composable pair");
  return it->second;
}

const DenseMatrix& MorFunctor::post(std::size_t f, std::size_t beta) const {
  auto it = post_.find({f, beta});
  if (it == post_.end()) throw InvalidInput("post map requested for a non-composable pair");
  return it->second;
}

DenseMatrix MorFunctor::map(const MorCategory::Arrow& arrow) const {
  const auto& c = *category_;
  return pre(*c.compose(arrow.beta, arrow.from), arrow.alpha) * post(arrow.from, arrow.beta);
}

void MorFunctor::check_functoriality() const {
  const auto& c = *category_;
  auto name = [&](std::size_t m) { return c.morphism(m).name; };
  for (const auto& [k, m] : pre_) {
    const auto [f, a] = k;
    const std::size_t fa = *c.compose(f, a);
    for (std::size_t a2 : c.incoming(c.morphism(a).source))
      if (!(pre(fa, a2) * m == pre(f, *c.compose(a, a2))))
        throw InvalidInput("functoriality fails for pre maps at (" + name(f) + "; " + name(a) + ", " + name(a2) + ")");
    for (std::size_t b : c.outgoing(c.morphism(f).target))
      if (!(pre(*c.compose(b, f), a) * post(f, b) == post(fa, b) * m))
        throw InvalidInput("pre and post maps do not commute at (" + name(f) + "; " + name(a) + ", " + name(b) + ")");
  }
  for (const auto& [k, m] : post_) {
    const auto [f, b] = k;
    const std::size_t bf = *c.compose(b, f);
    for (std::size_t b2 : c.outgoing(c.morphism(b).target))
      if (!(post(bf, b2) * m == post(f, *c.compose(b2, b))))
        throw InvalidInput("functoriality fails for post maps at (" + name(f) + "; " + name(b) + ", " + name(b2) + ")");
  }
}

// ---------------------------------------------------------------------------

namespace {

std::size_t composite(const FiniteCategory& c, const std::vector<std::size_t>& t) {
  std::size_t acc = t.front();
  for (std::size_t i = 1; i < t.size(); ++i) acc = *c.compose(t[i], acc);
  return acc;
}

void add_block(DenseMatrix& d, std::size_t row0, std::size_t col0, const DenseMatrix& block, const Scalar& sign) {
  for (std::size_t r = 0; r < block.rows(); ++r)
    for (std::size_t cc = 0; cc < block.cols(); ++cc)
      if (sgn(block(r, cc)) != 0) d(row0 + r, col0 + cc) += sign * block(r, cc);
}

}  // namespace

ResolvingComplex ResolvingComplex::build(const MorFunctor& g, bool normalized, int p_max) {
  if (p_max < 0) throw InvalidInput("p_max must be nonnegative");
  ResolvingComplex rc;
  rc.functor_ = std::make_shared<const MorFunctor>(g);
  rc.normalized_ = normalized;
  rc.p_max_ = p_max;
  const auto& c = g.category();
  const std::size_t top = static_cast<std::size_t>(p_max) + 1;

  rc.tuples_.resize(top + 1);
  for (std::size_t o = 0; o < c.object_count(); ++o) rc.tuples_[0].push_back({o});
  for (std::size_t p = 1; p <= top; ++p) {
    if (p == 1) {
      for (std::size_t m = 0; m < c.morphism_count(); ++m)
        if (!normalized || !c.is_identity(m)) rc.tuples_[1].push_back({m});
      continue;
    }
    for (const auto& t : rc.tuples_[p - 1])
      for (std::size_t m : c.outgoing(c.morphism(t.back()).target)) {
        if (normalized && c.is_identity(m)) continue;
        Tuple nt = t;
        nt.push_back(m);
        rc.tuples_[p].push_back(std::move(nt));
      }
  }
  rc.offsets_.resize(top + 1);
  rc.index_.resize(top + 1);
  rc.dims_.assign(top + 1, 0);
  for (std::size_t p = 0; p <= top; ++p)
    for (std::size_t t = 0; t < rc.tuples_[p].size(); ++t) {
      rc.offsets_[p].push_back(rc.dims_[p]);
      rc.index_[p].emplace(rc.tuples_[p][t], t);
      rc.dims_[p] += g.dim(rc.slot_morphism(static_cast<int>(p), t));
    }

  for (std::size_t p = 0; p < top; ++p) {
    DenseMatrix d(rc.dims_[p + 1], rc.dims_[p]);
    for (std::size_t ti = 0; ti < rc.tuples_[p + 1].size(); ++ti) {
      const Tuple& t = rc.tuples_[p + 1][ti];
      const std::size_t row0 = rc.offsets_[p + 1][ti];
      if (p == 0) {
        const auto& mor = c.morphism(t[0]);
        const std::size_t src = rc.index_[0].at({mor.source}), tgt = rc.index_[0].at({mor.target});
        add_block(d, row0, rc.offsets_[0][tgt], g.pre(c.identity(mor.target), t[0]), 1);
        add_block(d, row0, rc.offsets_[0][src], g.post(c.identity(mor.source), t[0]), -1);
        continue;
      }
      // first face: drop phi_1 and precompose
      {
        const Tuple rest(t.begin() + 1, t.end());
        const std::size_t k = rc.index_[p].at(rest);
        add_block(d, row0, rc.offsets_[p][k], g.pre(composite(c, rest), t[0]), 1);
      }
      // inner faces: compose neighbours
      for (std::size_t i = 1; i <= p; ++i) {
        Tuple merged;
        for (std::size_t j = 0; j < t.size(); ++j) {
          if (j == i) continue;
          merged.push_back(j == i - 1 ? *c.compose(t[i], t[i - 1]) : t[j]);
        }
        auto it = rc.index_[p].find(merged);
        if (it == rc.index_[p].end()) continue;  // degenerate tuple in the normalized complex
        const std::size_t dim = g.dim(composite(c, merged));
        add_block(d, row0, rc.offsets_[p][it->second], DenseMatrix::identity(dim), (i % 2 == 0) ? 1 : -1);
      }
      // last face: drop phi_{p+1} and postcompose
      {
        const Tuple front(t.begin(), t.end() - 1);
        const std::size_t k = rc.index_[p].at(front);
        add_block(d, row0, rc.offsets_[p][k], g.post(composite(c, front), t.back()), ((p + 1) % 2 == 0) ? 1 : -1);
      }
    }
    rc.differentials_.push_back(std::move(d));
  }
  return rc;
}

std::size_t ResolvingComplex::slot_morphism(int p, std::size_t t) const {
  const auto& tuple = tuples_.at(static_cast<std::size_t>(p)).at(t);
  const auto& c = functor_->category();
  if (p == 0) return c.identity(tuple[0]);
  return composite(c, tuple);
}

std::size_t ResolvingComplex::dim(int p) const {
  if (p < 0 || static_cast<std::size_t>(p) >= dims_.size()) return 0;
  return dims_[static_cast<std::size_t>(p)];
}

std::optional<std::size_t> ResolvingComplex::tuple_index(int p, const Tuple& t) const {
  const auto& idx = index_.at(static_cast<std::size_t>(p));
  auto it = idx.find(t);
  if (it == idx.end()) return std::nullopt;
  return it->second;
}

void ResolvingComplex::check_square_zero() const {
  for (std::size_t p = 0; p + 1 < differentials_.size(); ++p)
    if (!(differentials_[p + 1] * differentials_[p]).is_zero())
      throw DomainError("resolving complex: d^" + std::to_string(p + 1) + " d^" + std::to_string(p) + " != 0");
}

Vector ResolvingComplex::embed_normalized(int p, std::span<const Scalar> v, const ResolvingComplex& full) const {
  if (!normalized_ || full.normalized_) throw InvalidInput("embed_normalized: expects normalized -> full");
  if (v.size() != dim(p)) throw InvalidInput("embed_normalized: cochain has the wrong length");
  Vector out(full.dim(p));
  const auto& ts = tuples(p);
  for (std::size_t t = 0; t < ts.size(); ++t) {
    const std::size_t k = full.tuple_index(p, ts[t]).value();
    const std::size_t n = functor_->dim(slot_morphism(p, t));
    for (std::size_t i = 0; i < n; ++i) out[full.offset(p, k) + i] = v[offset(p, t) + i];
  }
  return out;
}

// ---------------------------------------------------------------------------

Cohomology::Cohomology(ResolvingComplex rc) : rc_(std::move(rc)) {
  const std::size_t top = static_cast<std::size_t>(rc_.p_max());
  reps_.resize(top + 1);
  boundaries_.resize(top + 1);
  solvers_.resize(top + 1);
  for (std::size_t p = 0; p <= top; ++p) {
    const int ip = static_cast<int>(p);
    if (p > 0) boundaries_[p] = image_basis(rc_.differential(ip - 1));
    EchelonBasis eb(rc_.dim(ip));
    for (const auto& b : boundaries_[p]) eb.insert(b);
    for (auto& z : kernel_basis(rc_.differential(ip)))
      if (eb.insert(z)) reps_[p].push_back(std::move(z));
    rebuild_solver(p);
  }
}

void Cohomology::rebuild_solver(std::size_t p) {
  std::vector<Vector> cols = reps_[p];
  cols.insert(cols.end(), boundaries_[p].begin(), boundaries_[p].end());
  solvers_[p].emplace(DenseMatrix::from_columns(rc_.dim(static_cast<int>(p)), cols));
}

void Cohomology::set_representatives(int p, std::vector<Vector> reps) {
  const auto up = static_cast<std::size_t>(p);
  if (reps.size() != reps_.at(up).size())
    throw InvalidInput("H^" + std::to_string(p) + " has dimension " + std::to_string(reps_[up].size()) + ", got " +
                       std::to_string(reps.size()) + " representatives");
  EchelonBasis eb(rc_.dim(p));
  for (const auto& b : boundaries_[up]) eb.insert(b);
  for (const auto& r : reps) {
    if (r.size() != rc_.dim(p)) throw InvalidInput("representative has the wrong length");
    if (!is_cocycle(p, r)) throw InvalidInput("representative is not a cocycle");
    if (!eb.insert(r)) throw InvalidInput("representatives are dependent modulo coboundaries");
  }
  reps_[up] = std::move(reps);
  rebuild_solver(up);
}

bool Cohomology::is_cocycle(int p, std::span<const Scalar> v) const {
  return ncdef::is_zero(rc_.differential(p).apply(v));
}

bool Cohomology::is_coboundary(int p, std::span<const Scalar> v) const {
  if (p == 0) return ncdef::is_zero(v);
  return ncdef::solve(rc_.differential(p - 1), v).has_value();
}

Vector Cohomology::class_coordinates(int p, std::span<const Scalar> v) const {
  const Vector residual = rc_.differential(p).apply(v);
  if (!ncdef::is_zero(residual)) throw NotCocycle("cochain is not a cocycle; residual d v = " + to_string(residual));
  auto x = solvers_.at(static_cast<std::size_t>(p))->solve(v);
  if (!x) throw DomainError("internal: cocycle outside the span of representatives and coboundaries");
  x->resize(reps_[static_cast<std::size_t>(p)].size());
  return *x;
}

std::optional<Vector> Cohomology::coboundary_witness(int p, std::span<const Scalar> v) const {
  if (p == 0) return ncdef::is_zero(v) ? std::optional<Vector>(Vector{}) : std::nullopt;
  return ncdef::solve(rc_.differential(p - 1), v);
}

std::size_t limit_dimension(const MorFunctor& g) {
  const auto& c = g.category();
  std::vector<std::size_t> offsets;
  std::size_t total = 0;
  for (std::size_t f = 0; f < c.morphism_count(); ++f) {
    offsets.push_back(total);
    total += g.dim(f);
  }
  MorCategory mor(c);
  std::vector<Vector> rows;
  for (const auto& arrow : mor.arrows()) {
    const DenseMatrix m = g.map(arrow);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      Vector row(total);
      for (std::size_t k = 0; k < m.cols(); ++k) row[offsets[arrow.from] + k] += m(r, k);
      row[offsets[arrow.to] + r] -= 1;
      if (!ncdef::is_zero(row)) rows.push_back(std::move(row));
    }
  }
  if (rows.empty()) return total;
  return total - rank(DenseMatrix::from_rows(total, rows));
}

}  // namespace ncdef
