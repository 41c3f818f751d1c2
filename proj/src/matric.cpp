#include "ncdef/matric.hpp"

#include <algorithm>
#include <cctype>
#include <deque>

#include "ncdef/errors.hpp"

namespace ncdef {

MatricGeneratorSet::MatricGeneratorSet(std::size_t points, std::vector<MatricGenerator> generators)
    : points_(points), generators_(std::move(generators)) {
  if (points_ == 0) throw InvalidInput("a matric algebra needs at least one point");
  for (std::size_t k = 0; k < generators_.size(); ++k) {
    const auto& g = generators_[k];
    if (g.row >= points_ || g.col >= points_)
      throw InvalidInput("generator '" + g.name + "' refers to a point outside 1.." + std::to_string(points_));
    if (g.name.empty() || !std::isalpha(static_cast<unsigned char>(g.name[0])))
      throw InvalidInput("generator names must start with a letter");
    if (g.name.size() >= 2 && g.name[0] == 'e' &&
        std::all_of(g.name.begin() + 1, g.name.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }))
      throw InvalidInput("generator name '" + g.name + "' clashes with an idempotent");
    for (std::size_t l = 0; l < k; ++l)
      if (generators_[l].name == g.name) throw InvalidInput("duplicate generator name '" + g.name + "'");
  }
}

std::optional<std::size_t> MatricGeneratorSet::find(std::string_view name) const {
  for (std::size_t k = 0; k < generators_.size(); ++k)
    if (generators_[k].name == name) return k;
  return std::nullopt;
}

// ---------------------------------------------------------------------------

MatricTruncatedFree::MatricTruncatedFree(MatricGeneratorSet gens, std::size_t truncation)
    : gens_(std::move(gens)), truncation_(truncation) {}

std::shared_ptr<const MatricTruncatedFree> MatricTruncatedFree::create(MatricGeneratorSet gens,
                                                                       std::size_t truncation) {
  if (truncation < 1) throw InvalidInput("truncation order must be at least 1");
  std::shared_ptr<MatricTruncatedFree> f(new MatricTruncatedFree(std::move(gens), truncation));
  const auto& g = f->gens_.generators();
  // words by length, each length in lexicographic order
  std::vector<std::vector<MatricPath>> by_length(truncation);
  for (std::size_t k = 0; k < g.size() && truncation > 1; ++k) by_length[1].push_back({g[k].row, g[k].col, {k}});
  for (std::size_t len = 2; len < truncation; ++len)
    for (const auto& w : by_length[len - 1])
      for (std::size_t k = 0; k < g.size(); ++k) {
        if (g[k].row != w.end) continue;
        MatricPath nw = w;
        nw.letters.push_back(k);
        nw.end = g[k].col;
        by_length[len].push_back(std::move(nw));
      }
  for (std::size_t len = truncation; len-- > 1;) {
    auto& ws = by_length[len];
    std::sort(ws.begin(), ws.end(), [](const MatricPath& a, const MatricPath& b) { return a.letters < b.letters; });
    for (auto& w : ws) {
      f->word_index_.emplace(w.letters, f->paths_.size());
      f->paths_.push_back(std::move(w));
    }
  }
  for (std::size_t i = 0; i < f->gens_.points(); ++i) {
    f->idempotent_index_.push_back(f->paths_.size());
    f->paths_.push_back({i, i, {}});
  }
  const std::size_t n = f->paths_.size();
  f->table_.assign(n, std::vector<std::optional<std::size_t>>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const auto& pa = f->paths_[a];
      const auto& pb = f->paths_[b];
      if (pa.end != pb.start) continue;
      if (pa.letters.empty()) {
        f->table_[a][b] = b;
      } else if (pb.letters.empty()) {
        f->table_[a][b] = a;
      } else if (pa.length() + pb.length() < truncation) {
        std::vector<std::size_t> w = pa.letters;
        w.insert(w.end(), pb.letters.begin(), pb.letters.end());
        f->table_[a][b] = f->word_index_.at(w);
      }
    }
  return f;
}

std::optional<std::size_t> MatricTruncatedFree::index_of(const MatricPath& p) const {
  if (p.letters.empty()) {
    if (p.start != p.end || p.start >= points()) return std::nullopt;
    return idempotent_index_[p.start];
  }
  auto it = word_index_.find(p.letters);
  if (it == word_index_.end() || paths_[it->second] != p) return std::nullopt;
  return it->second;
}

Vector MatricTruncatedFree::one() const {
  Vector v(dim());
  for (auto i : idempotent_index_) v[i] = 1;
  return v;
}

Vector MatricTruncatedFree::basis_vector(std::size_t index) const {
  Vector v(dim());
  v.at(index) = 1;
  return v;
}

Vector MatricTruncatedFree::idempotent(std::size_t point) const { return basis_vector(idempotent_index_.at(point)); }

Vector MatricTruncatedFree::generator(std::size_t g) const {
  if (g >= gens_.size()) throw InvalidInput("generator index out of range");
  if (truncation_ < 2) return zero();
  return basis_vector(word_index_.at({g}));
}

std::optional<std::size_t> MatricTruncatedFree::multiply_paths(std::size_t a, std::size_t b) const {
  return table_.at(a).at(b);
}

Vector MatricTruncatedFree::multiply(std::span<const Scalar> a, std::span<const Scalar> b) const {
  if (a.size() != dim() || b.size() != dim()) throw InvalidInput("matric multiply: wrong vector length");
  Vector out(dim());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (sgn(b[j]) == 0) continue;
      if (auto k = table_[i][j]) out[*k] += a[i] * b[j];
    }
  }
  return out;
}

std::vector<std::size_t> MatricTruncatedFree::paths_of_length_at_least(std::size_t n) const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < paths_.size(); ++k)
    if (paths_[k].length() >= n) out.push_back(k);
  return out;
}

std::string MatricTruncatedFree::format_path(std::size_t index) const {
  const auto& p = paths_.at(index);
  if (p.letters.empty()) return "e" + std::to_string(p.start + 1);
  std::string out;
  for (std::size_t k = 0; k < p.letters.size(); ++k) {
    if (k) out += "*";
    out += gens_.generators()[p.letters[k]].name;
  }
  return out;
}

std::string MatricTruncatedFree::format(std::span<const Scalar> v) const {
  std::string out;
  bool first = true;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (sgn(v[k]) == 0) continue;
    const bool neg = sgn(v[k]) < 0;
    const Scalar mag = neg ? Scalar(-v[k]) : v[k];
    out += first ? (neg ? "-" : "") : (neg ? " - " : " + ");
    if (mag != 1) out += ncdef::to_string(mag) + "*";
    out += format_path(k);
    first = false;
  }
  return first ? "0" : out;
}

Vector MatricTruncatedFree::parse(std::string_view text) const {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw InvalidInput("empty matric expression");
  Vector total(dim());
  std::size_t pos = 0;
  while (pos < s.size()) {
    Scalar sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      if (s[pos] == '-') sign = -1;
      ++pos;
    } else if (pos != 0) {
      throw InvalidInput("expected '+' or '-' in '" + std::string(text) + "'");
    }
    Vector term = one();
    Scalar coeff = sign;
    bool any = false;
    while (true) {
      if (pos >= s.size()) throw InvalidInput("dangling operator in '" + std::string(text) + "'");
      if (std::isdigit(static_cast<unsigned char>(s[pos]))) {
        std::size_t end = pos;
        while (end < s.size() && (std::isdigit(static_cast<unsigned char>(s[end])) || s[end] == '/')) ++end;
        coeff *= parse_scalar(s.substr(pos, end - pos));
        pos = end;
      } else if (std::isalpha(static_cast<unsigned char>(s[pos]))) {
        std::size_t end = pos;
        while (end < s.size() && (std::isalnum(static_cast<unsigned char>(s[end])) || s[end] == '_')) ++end;
        const std::string name = s.substr(pos, end - pos);
        pos = end;
        Vector factor;
        if (auto g = gens_.find(name)) {
          factor = generator(*g);
        } else if (name.size() >= 2 && name[0] == 'e' &&
                   std::all_of(name.begin() + 1, name.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
          const std::size_t i = std::stoul(name.substr(1));
          if (i < 1 || i > points()) throw InvalidInput("idempotent '" + name + "' out of range");
          factor = idempotent(i - 1);
        } else {
          throw InvalidInput("unknown generator '" + name + "'");
        }
        int power = 1;
        if (pos < s.size() && s[pos] == '^') {
          std::size_t end2 = pos + 1;
          while (end2 < s.size() && std::isdigit(static_cast<unsigned char>(s[end2]))) ++end2;
          if (end2 == pos + 1) throw InvalidInput("missing exponent in '" + std::string(text) + "'");
          power = std::stoi(s.substr(pos + 1, end2 - pos - 1));
          pos = end2;
        }
        for (int k = 0; k < power; ++k) term = multiply(term, factor);
      } else {
        throw InvalidInput("unexpected character '" + std::string(1, s[pos]) + "' in '" + std::string(text) + "'");
      }
      any = true;
      if (pos < s.size() && s[pos] == '*') {
        ++pos;
        continue;
      }
      break;
    }
    if (!any) throw InvalidInput("empty term in '" + std::string(text) + "'");
    for (std::size_t k = 0; k < dim(); ++k) total[k] += coeff * term[k];
  }
  return total;
}

// ---------------------------------------------------------------------------

EchelonBasis ideal_closure(const MatricTruncatedFree& free, const std::vector<Vector>& generators) {
  EchelonBasis eb(free.dim());
  std::vector<Vector> letters;
  for (std::size_t i = 0; i < free.points(); ++i) letters.push_back(free.idempotent(i));
  for (std::size_t g = 0; g < free.generator_set().size(); ++g) letters.push_back(free.generator(g));
  std::deque<Vector> queue(generators.begin(), generators.end());
  while (!queue.empty()) {
    Vector v = std::move(queue.front());
    queue.pop_front();
    if (v.size() != free.dim()) throw InvalidInput("ideal generator has the wrong length");
    if (!eb.insert(v)) continue;
    for (const auto& l : letters) {
      Vector a = free.multiply(l, v);
      if (!is_zero(a)) queue.push_back(std::move(a));
      Vector b = free.multiply(v, l);
      if (!is_zero(b)) queue.push_back(std::move(b));
    }
  }
  return eb;
}

MatricArtin::MatricArtin(MatricFreePtr free, EchelonBasis ideal) : free_(std::move(free)), ideal_(std::move(ideal)) {}

std::shared_ptr<const MatricArtin> MatricArtin::create(MatricFreePtr free, const std::vector<Vector>& generators) {
  for (const auto& g : generators) {
    if (g.size() != free->dim()) throw InvalidInput("ideal generator has the wrong length");
    for (std::size_t i = 0; i < free->points(); ++i)
      if (sgn(g[free->dim() - free->points() + i]) != 0)
        throw InvalidInput("ideal generator " + free->format(g) + " is not in the radical");
  }
  EchelonBasis eb = ideal_closure(*free, generators);
  std::shared_ptr<MatricArtin> r(new MatricArtin(std::move(free), std::move(eb)));
  r->finish();
  return r;
}

void MatricArtin::finish() {
  standard_of_free_.assign(free_->dim(), std::nullopt);
  for (std::size_t k = 0; k < free_->dim(); ++k)
    if (!ideal_.is_pivot(k)) {
      standard_of_free_[k] = standard_.size();
      standard_.push_back(k);
    }
  const std::size_t n = standard_.size();
  products_.assign(n, std::vector<Vector>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      Vector v(free_->dim());
      if (auto k = free_->multiply_paths(standard_[a], standard_[b])) v[*k] = 1;
      products_[a][b] = reduce(v);
    }
}

std::optional<std::size_t> MatricArtin::standard_index(std::size_t free_index) const {
  return standard_of_free_.at(free_index);
}

Vector MatricArtin::reduce(std::span<const Scalar> v) const {
  if (v.size() != free_->dim()) throw InvalidInput("reduce: wrong vector length");
  const Vector r = ideal_.reduce(Vector(v.begin(), v.end()));
  Vector q(dim());
  for (std::size_t k = 0; k < dim(); ++k) q[k] = r[standard_[k]];
  return q;
}

Vector MatricArtin::lift(std::span<const Scalar> q) const {
  if (q.size() != dim()) throw InvalidInput("lift: wrong vector length");
  Vector v(free_->dim());
  for (std::size_t k = 0; k < dim(); ++k) v[standard_[k]] = q[k];
  return v;
}

Vector MatricArtin::one() const { return reduce(free_->one()); }

Vector MatricArtin::basis_vector(std::size_t k) const {
  Vector v(dim());
  v.at(k) = 1;
  return v;
}

Vector MatricArtin::idempotent(std::size_t point) const { return reduce(free_->idempotent(point)); }

Vector MatricArtin::generator(std::size_t g) const { return reduce(free_->generator(g)); }

Vector MatricArtin::multiply(std::span<const Scalar> a, std::span<const Scalar> b) const {
  if (a.size() != dim() || b.size() != dim()) throw InvalidInput("multiply: wrong vector length");
  Vector out(dim());
  for (std::size_t i = 0; i < dim(); ++i) {
    if (sgn(a[i]) == 0) continue;
    for (std::size_t j = 0; j < dim(); ++j) {
      if (sgn(b[j]) == 0) continue;
      const Vector& p = products_[i][j];
      const Scalar c = a[i] * b[j];
      for (std::size_t k = 0; k < dim(); ++k)
        if (sgn(p[k]) != 0) out[k] += c * p[k];
    }
  }
  return out;
}

bool MatricArtin::in_radical(std::span<const Scalar> q) const {
  for (std::size_t k = 0; k < dim(); ++k)
    if (free_->path(standard_[k]).length() == 0 && sgn(q[k]) != 0) return false;
  return true;
}

std::size_t MatricArtin::degree(std::size_t k) const { return free_->path(standard_.at(k)).length(); }

std::vector<Vector> MatricArtin::radical_power(std::size_t n) const {
  EchelonBasis eb(dim());
  for (std::size_t k : free_->paths_of_length_at_least(n)) eb.insert(reduce(free_->basis_vector(k)));
  return eb.vectors();
}

std::vector<std::size_t> MatricArtin::graded_dims() const {
  std::vector<std::size_t> out;
  for (std::size_t n = 0;; ++n) {
    const std::size_t a = radical_power(n).size(), b = radical_power(n + 1).size();
    if (a == 0) break;
    out.push_back(a - b);
  }
  return out;
}

std::vector<Vector> MatricArtin::component(std::size_t i, std::size_t j) const {
  std::vector<Vector> out;
  for (std::size_t k = 0; k < dim(); ++k) {
    const auto& p = free_->path(standard_[k]);
    if (p.start == i && p.end == j) out.push_back(basis_vector(k));
  }
  return out;
}

std::shared_ptr<const MatricArtin> MatricArtin::quotient(const std::vector<Vector>& more) const {
  std::vector<Vector> gens = ideal_.vectors();
  gens.insert(gens.end(), more.begin(), more.end());
  return create(free_, gens);
}

bool MatricArtin::is_commutative() const {
  for (std::size_t a = 0; a < dim(); ++a)
    for (std::size_t b = a + 1; b < dim(); ++b)
      if (products_[a][b] != products_[b][a]) return false;
  return true;
}

void MatricArtin::check_associativity() const {
  for (std::size_t a = 0; a < dim(); ++a)
    for (std::size_t b = 0; b < dim(); ++b)
      for (std::size_t c = 0; c < dim(); ++c)
        if (multiply(products_[a][b], basis_vector(c)) != multiply(basis_vector(a), products_[b][c]))
          throw DomainError("multiplication table is not associative");
}

MatricArtinPtr make_truncated_free(MatricGeneratorSet generators, std::size_t truncation) {
  return MatricArtin::create(MatricTruncatedFree::create(std::move(generators), truncation));
}

MatricArtinPtr make_test_algebra(std::size_t points, std::size_t i, std::size_t j) {
  if (i >= points || j >= points) throw InvalidInput("test algebra indices out of range");
  return make_truncated_free(MatricGeneratorSet(points, {{"eps", i, j}}), 2);
}

MatricArtinPtr commutativization(const MatricArtin& r) {
  std::vector<Vector> comms;
  for (std::size_t a = 0; a < r.dim(); ++a)
    for (std::size_t b = a + 1; b < r.dim(); ++b) {
      Vector c = r.lift(r.basis_product(a, b));
      const Vector d = r.lift(r.basis_product(b, a));
      for (std::size_t k = 0; k < c.size(); ++k) c[k] -= d[k];
      if (!is_zero(c)) comms.push_back(std::move(c));
    }
  return r.quotient(comms);
}

// ---------------------------------------------------------------------------

ArtinMorphism::ArtinMorphism(MatricArtinPtr source, MatricArtinPtr target, std::vector<Vector> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
  const auto& f = *source_->free();
  if (source_->points() != target_->points()) throw InvalidInput("Artin morphism: point counts differ");
  if (images_.size() != f.generator_set().size()) throw InvalidInput("Artin morphism: one image per generator");
  for (std::size_t g = 0; g < images_.size(); ++g) {
    const auto& gen = f.generator_set().generators()[g];
    if (images_[g].size() != target_->dim()) throw InvalidInput("Artin morphism: image has the wrong length");
    const Vector sandwiched =
        target_->multiply(target_->multiply(target_->idempotent(gen.row), images_[g]), target_->idempotent(gen.col));
    if (sandwiched != images_[g] || !target_->in_radical(images_[g]))
      throw InvalidInput("Artin morphism: image of '" + gen.name + "' is not a radical element of the right component");
  }
  path_images_.resize(f.dim());
  for (std::size_t k = 0; k < f.dim(); ++k) {
    const auto& p = f.path(k);
    if (p.letters.empty()) {
      path_images_[k] = target_->idempotent(p.start);
      continue;
    }
    Vector v = images_[p.letters[0]];
    for (std::size_t l = 1; l < p.letters.size(); ++l) v = target_->multiply(v, images_[p.letters[l]]);
    path_images_[k] = std::move(v);
  }
  // words at the truncation length vanish in the source and must vanish in the target
  std::vector<Vector> frontier;
  for (std::size_t k = 0; k < f.dim(); ++k)
    if (f.path(k).length() + 1 == f.truncation()) frontier.push_back(path_images_[k]);
  for (const auto& v : frontier)
    for (std::size_t g = 0; g < images_.size(); ++g)
      if (!is_zero(target_->multiply(v, images_[g])))
        throw InvalidInput("Artin morphism: a vanishing source word has a nonzero image");
  for (const auto& row : source_->ideal().vectors())
    if (!is_zero(apply_free(row))) throw InvalidInput("Artin morphism: the source relations do not map to zero");
}

ArtinMorphism ArtinMorphism::projection(MatricArtinPtr source, MatricArtinPtr target) {
  if (source->free() != target->free()) throw InvalidInput("projection needs quotients of one free algebra");
  std::vector<Vector> images;
  for (std::size_t g = 0; g < source->free()->generator_set().size(); ++g) images.push_back(target->generator(g));
  return ArtinMorphism(source, target, std::move(images));
}

Vector ArtinMorphism::apply_free(std::span<const Scalar> v) const {
  Vector out(target_->dim());
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (sgn(v[k]) == 0) continue;
    for (std::size_t j = 0; j < out.size(); ++j) out[j] += v[k] * path_images_[k][j];
  }
  return out;
}

Vector ArtinMorphism::apply(std::span<const Scalar> q) const { return apply_free(source_->lift(q)); }

// ---------------------------------------------------------------------------

SmallSurjection::SmallSurjection(MatricArtinPtr source, MatricArtinPtr target)
    : source_(std::move(source)), target_(std::move(target)) {
  if (source_->free() != target_->free()) throw InvalidInput("small surjection needs quotients of one free algebra");
  for (const auto& v : source_->ideal().vectors())
    if (!target_->ideal().contains(v)) throw InvalidInput("small surjection: source relations must hold in the target");
  EchelonBasis k(source_->dim());
  for (const auto& v : target_->ideal().vectors()) k.insert(source_->reduce(v));
  kernel_ = k.vectors();
  std::vector<Vector> radical;
  for (std::size_t b = 0; b < source_->dim(); ++b)
    if (source_->degree(b) > 0) radical.push_back(source_->basis_vector(b));
  for (const auto& kv : kernel_)
    for (const auto& r : radical)
      if (!is_zero(source_->multiply(kv, r)) || !is_zero(source_->multiply(r, kv)))
        throw InvalidInput("kernel " + source_->format(kv) + " is not annihilated by the radical");
}

Vector SmallSurjection::apply(std::span<const Scalar> q) const { return target_->reduce(source_->lift(q)); }

Vector SmallSurjection::section(std::span<const Scalar> q) const { return source_->reduce(target_->lift(q)); }

}  // namespace ncdef
