#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ncdef/linalg.hpp"

namespace ncdef {

/// Generator x = e_row x e_col of a matric free algebra (0-based points).
struct MatricGenerator {
  std::string name;
  std::size_t row = 0;
  std::size_t col = 0;
};

class MatricGeneratorSet {
 public:
  /// Throws InvalidInput on duplicate names or out-of-range points.
  MatricGeneratorSet(std::size_t points, std::vector<MatricGenerator> generators);

  std::size_t points() const noexcept { return points_; }
  const std::vector<MatricGenerator>& generators() const noexcept { return generators_; }
  std::size_t size() const noexcept { return generators_.size(); }
  std::optional<std::size_t> find(std::string_view name) const;

 private:
  std::size_t points_;
  std::vector<MatricGenerator> generators_;
};

/// A basis path: the idempotent e_start when `letters` is empty, otherwise a
/// composable word g_1 ... g_m with start = row(g_1), end = col(g_m).
struct MatricPath {
  std::size_t start = 0;
  std::size_t end = 0;
  std::vector<std::size_t> letters;

  std::size_t length() const noexcept { return letters.size(); }
  friend bool operator==(const MatricPath&, const MatricPath&) = default;
};

/// Free matric algebra on a generator set modulo paths of length >= N.
/// Basis vectors are indexed in decreasing path order: longer paths first,
/// then lexicographically with earlier generators larger; idempotents last.
class MatricTruncatedFree : public std::enable_shared_from_this<MatricTruncatedFree> {
 public:
  static std::shared_ptr<const MatricTruncatedFree> create(MatricGeneratorSet generators, std::size_t truncation);

  const MatricGeneratorSet& generator_set() const noexcept { return gens_; }
  std::size_t points() const noexcept { return gens_.points(); }
  std::size_t truncation() const noexcept { return truncation_; }
  std::size_t dim() const noexcept { return paths_.size(); }
  const MatricPath& path(std::size_t index) const { return paths_.at(index); }
  std::optional<std::size_t> index_of(const MatricPath& p) const;

  Vector zero() const { return Vector(dim()); }
  Vector one() const;
  Vector basis_vector(std::size_t index) const;
  Vector idempotent(std::size_t point) const;
  Vector generator(std::size_t g) const;
  /// Product of basis paths; nullopt when it vanishes.
  std::optional<std::size_t> multiply_paths(std::size_t a, std::size_t b) const;
  Vector multiply(std::span<const Scalar> a, std::span<const Scalar> b) const;
  /// Paths of length >= n.
  std::vector<std::size_t> paths_of_length_at_least(std::size_t n) const;

  std::string format_path(std::size_t index) const;
  /// Terms in decreasing path order, e.g. "t1*t2 - t2*t1".
  std::string format(std::span<const Scalar> v) const;
  /// Parses a noncommutative polynomial in generator names and idempotents
  /// e1..ep (1-based), e.g. "t1*t2 - t2*t1" or "2*t1 + 1/2*e1".
  Vector parse(std::string_view text) const;

 private:
  MatricTruncatedFree(MatricGeneratorSet gens, std::size_t truncation);

  MatricGeneratorSet gens_;
  std::size_t truncation_;
  std::vector<MatricPath> paths_;
  std::map<std::vector<std::size_t>, std::size_t> word_index_;  // non-empty words
  std::vector<std::size_t> idempotent_index_;
  std::vector<std::vector<std::optional<std::size_t>>> table_;
};

using MatricFreePtr = std::shared_ptr<const MatricTruncatedFree>;

/// Quotient of a truncated free matric algebra by a two-sided ideal inside
/// the radical. Elements are coordinate vectors over the standard paths
/// (paths that are not leading terms of the ideal).
class MatricArtin : public std::enable_shared_from_this<MatricArtin> {
 public:
  /// Throws InvalidInput if a generator leaves the radical.
  static std::shared_ptr<const MatricArtin> create(MatricFreePtr free, const std::vector<Vector>& ideal_generators = {});

  const MatricFreePtr& free() const noexcept { return free_; }
  std::size_t points() const noexcept { return free_->points(); }
  std::size_t dim() const noexcept { return standard_.size(); }
  /// Free-algebra index of quotient basis element k.
  std::size_t standard_path(std::size_t k) const { return standard_.at(k); }
  const std::vector<std::size_t>& standard_paths() const noexcept { return standard_; }
  std::optional<std::size_t> standard_index(std::size_t free_index) const;
  /// Echelon basis of the ideal in free coordinates.
  const EchelonBasis& ideal() const noexcept { return ideal_; }

  Vector reduce(std::span<const Scalar> free_vector) const;
  /// Section: the combination of standard paths with the given coordinates.
  Vector lift(std::span<const Scalar> q) const;

  Vector zero() const { return Vector(dim()); }
  Vector one() const;
  Vector basis_vector(std::size_t k) const;
  Vector idempotent(std::size_t point) const;
  Vector generator(std::size_t g) const;
  Vector multiply(std::span<const Scalar> a, std::span<const Scalar> b) const;
  /// Product of quotient basis elements k and l (cached table).
  const Vector& basis_product(std::size_t k, std::size_t l) const { return products_.at(k).at(l); }
  bool in_radical(std::span<const Scalar> q) const;
  std::size_t degree(std::size_t k) const;

  /// Basis (quotient coordinates) of I^n.
  std::vector<Vector> radical_power(std::size_t n) const;
  /// dim I^n / I^{n+1} for n = 0, 1, ...
  std::vector<std::size_t> graded_dims() const;
  /// Basis (quotient coordinates) of e_i R e_j.
  std::vector<Vector> component(std::size_t i, std::size_t j) const;

  /// Further quotient by additional free-coordinate generators.
  std::shared_ptr<const MatricArtin> quotient(const std::vector<Vector>& more_generators) const;
  bool is_commutative() const;
  /// Throws DomainError if the multiplication table is not associative.
  void check_associativity() const;

  std::string format(std::span<const Scalar> q) const { return free_->format(lift(q)); }
  Vector parse(std::string_view text) const { return reduce(free_->parse(text)); }

 private:
  MatricArtin(MatricFreePtr free, EchelonBasis ideal);
  void finish();

  MatricFreePtr free_;
  EchelonBasis ideal_;
  std::vector<std::size_t> standard_;
  std::vector<std::optional<std::size_t>> standard_of_free_;
  std::vector<std::vector<Vector>> products_;
};

using MatricArtinPtr = std::shared_ptr<const MatricArtin>;

/// Two-sided ideal generated by the given vectors (closed under left and
/// right multiplication by basis paths), as an echelon basis.
EchelonBasis ideal_closure(const MatricTruncatedFree& free, const std::vector<Vector>& generators);

/// k^p[eps_ij]: one generator eps = e_i eps e_j with eps^2 = 0 (0-based i, j).
MatricArtinPtr make_test_algebra(std::size_t points, std::size_t i, std::size_t j);

/// Free matric algebra on `generators` truncated at radical length N.
MatricArtinPtr make_truncated_free(MatricGeneratorSet generators, std::size_t truncation);

/// Quotient by all commutators of basis elements.
MatricArtinPtr commutativization(const MatricArtin& r);

/// Algebra map R -> S determined by the images of the generators of R's free
/// algebra (images in S coordinates, each in e_row S e_col). Idempotents map
/// to idempotents.
class ArtinMorphism {
 public:
  /// Throws InvalidInput unless the map is well defined (the ideal of R maps
  /// to zero) and respects the matric components.
  ArtinMorphism(MatricArtinPtr source, MatricArtinPtr target, std::vector<Vector> generator_images);
  /// Projection between quotients of the same free algebra.
  static ArtinMorphism projection(MatricArtinPtr source, MatricArtinPtr target);

  const MatricArtinPtr& source() const noexcept { return source_; }
  const MatricArtinPtr& target() const noexcept { return target_; }
  Vector apply(std::span<const Scalar> q) const;

 private:
  Vector apply_free(std::span<const Scalar> free_vector) const;

  MatricArtinPtr source_;
  MatricArtinPtr target_;
  std::vector<Vector> images_;
  std::vector<Vector> path_images_;  // image of each free basis path
};

/// A surjection R -> S between quotients of one free algebra whose kernel K
/// satisfies K I = I K = 0.
class SmallSurjection {
 public:
  /// Throws InvalidInput if ideal(R) is not contained in ideal(S) or the
  /// kernel is not annihilated by the radical on both sides.
  SmallSurjection(MatricArtinPtr source, MatricArtinPtr target);

  const MatricArtinPtr& source() const noexcept { return source_; }
  const MatricArtinPtr& target() const noexcept { return target_; }
  /// Kernel basis in source coordinates.
  const std::vector<Vector>& kernel() const noexcept { return kernel_; }
  Vector apply(std::span<const Scalar> q) const;
  /// Canonical section target -> source through the standard paths.
  Vector section(std::span<const Scalar> q) const;

 private:
  MatricArtinPtr source_;
  MatricArtinPtr target_;
  std::vector<Vector> kernel_;
};

}  // namespace ncdef
