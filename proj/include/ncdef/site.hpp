#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ncdef/linalg.hpp"

namespace ncdef {

/// A finite category given by an explicit composition table. Morphism
/// indices are stable; identities come first, one per object in object order.
class FiniteCategory {
 public:
  struct Morphism {
    std::size_t source;
    std::size_t target;
    std::string name;
  };

  /// Poset category with one arrow i -> j for every listed pair, closed under
  /// composition. Non-identity arrows keep the listed order; composites that
  /// were not listed are appended. Throws InvalidInput on a cycle.
  static FiniteCategory poset(std::vector<std::string> objects,
                              const std::vector<std::pair<std::size_t, std::size_t>>& arrows);

  std::size_t object_count() const noexcept { return objects_.size(); }
  std::size_t morphism_count() const noexcept { return morphisms_.size(); }
  const std::vector<std::string>& objects() const noexcept { return objects_; }
  const Morphism& morphism(std::size_t m) const { return morphisms_.at(m); }
  const std::vector<Morphism>& morphisms() const noexcept { return morphisms_; }
  std::size_t identity(std::size_t object) const { return identities_.at(object); }
  bool is_identity(std::size_t m) const;
  std::optional<std::size_t> object_index(const std::string& name) const;
  std::optional<std::size_t> morphism_index(const std::string& name) const;

  /// g o f for f: a -> b, g: b -> c; nullopt when not composable.
  std::optional<std::size_t> compose(std::size_t g, std::size_t f) const;
  /// All morphisms with the given source (resp. target).
  std::vector<std::size_t> outgoing(std::size_t object) const;
  std::vector<std::size_t> incoming(std::size_t object) const;

  /// Throws InvalidInput unless the table is total on composable pairs,
  /// associative and unital.
  void validate() const;

 private:
  std::vector<std::string> objects_;
  std::vector<Morphism> morphisms_;
  std::vector<std::size_t> identities_;
  std::vector<std::vector<std::optional<std::size_t>>> table_;  // table_[g][f] = g o f
};

/// The category of morphisms of a finite category: objects are the base
/// morphisms, and (alpha, beta): f -> g requires beta o f o alpha = g.
class MorCategory {
 public:
  struct Arrow {
    std::size_t from;   // f
    std::size_t to;     // g
    std::size_t alpha;  // into source(f)
    std::size_t beta;   // out of target(f)
  };

  explicit MorCategory(const FiniteCategory& base);

  const FiniteCategory& base() const noexcept { return base_; }
  const std::vector<Arrow>& arrows() const noexcept { return arrows_; }
  /// (a', b') o (a, b) = (a o a', b' o b)
  Arrow compose(const Arrow& second, const Arrow& first) const;

 private:
  FiniteCategory base_;
  std::vector<Arrow> arrows_;
};

/// A functor G: Mor c -> finite-dimensional vector spaces. It is stored
/// through the two kinds of generating arrows: pre(f, a) = G(a, id) from
/// G(f) to G(f o a), and post(f, b) = G(id, b) from G(f) to G(b o f).
class MorFunctor {
 public:
  using Key = std::pair<std::size_t, std::size_t>;  // (f, a) or (f, b)

  /// Builds a functor from value dimensions (one per base morphism) and the
  /// matrices for non-identity a, b. Missing matrices on composite arrows are
  /// filled in by composition; identity arrows map to identities. Throws
  /// InvalidInput if shapes mismatch, a matrix cannot be derived, or
  /// functoriality fails.
  static MorFunctor from_generators(const FiniteCategory& c, std::vector<std::size_t> dims,
                                    std::map<Key, DenseMatrix> pre, std::map<Key, DenseMatrix> post,
                                    std::vector<std::vector<std::string>> labels = {});
  /// Constant functor k^n with identity maps.
  static MorFunctor constant(const FiniteCategory& c, std::size_t n);

  const FiniteCategory& category() const noexcept { return *category_; }
  std::size_t dim(std::size_t f) const { return dims_.at(f); }
  const std::vector<std::size_t>& dims() const noexcept { return dims_; }
  const std::vector<std::string>& labels(std::size_t f) const { return labels_.at(f); }
  const DenseMatrix& pre(std::size_t f, std::size_t alpha) const;
  const DenseMatrix& post(std::size_t f, std::size_t beta) const;
  const std::map<Key, DenseMatrix>& pre_maps() const noexcept { return pre_; }
  const std::map<Key, DenseMatrix>& post_maps() const noexcept { return post_; }
  /// G(alpha, beta) = G(alpha, id) G(id, beta).
  DenseMatrix map(const MorCategory::Arrow& arrow) const;

  /// Throws InvalidInput describing the first failing functoriality law.
  void check_functoriality() const;

 private:
  std::shared_ptr<const FiniteCategory> category_;
  std::vector<std::size_t> dims_;
  std::vector<std::vector<std::string>> labels_;
  std::map<Key, DenseMatrix> pre_;
  std::map<Key, DenseMatrix> post_;
};

/// Cochain complex D*(c, G) of composable tuples. Degree p cochains assign to
/// each admitted p-tuple (phi_1, ..., phi_p), phi_1 first, a vector in
/// G(phi_p o ... o phi_1); degree 0 uses G(id_c) for every object c.
class ResolvingComplex {
 public:
  using Tuple = std::vector<std::size_t>;

  /// Degrees 0..p_max+1 are materialized, differentials d^0..d^p_max.
  static ResolvingComplex build(const MorFunctor& g, bool normalized, int p_max);

  bool normalized() const noexcept { return normalized_; }
  int p_max() const noexcept { return p_max_; }
  const MorFunctor& functor() const noexcept { return *functor_; }
  const std::vector<Tuple>& tuples(int p) const { return tuples_.at(static_cast<std::size_t>(p)); }
  /// Base morphism whose value space hosts the slot of tuple t in degree p.
  std::size_t slot_morphism(int p, std::size_t t) const;
  std::size_t offset(int p, std::size_t t) const { return offsets_.at(static_cast<std::size_t>(p)).at(t); }
  std::size_t dim(int p) const;
  const DenseMatrix& differential(int p) const { return differentials_.at(static_cast<std::size_t>(p)); }
  std::optional<std::size_t> tuple_index(int p, const Tuple& t) const;

  /// Throws if some d^{p+1} d^p is nonzero.
  void check_square_zero() const;

  /// Embeds a normalized cochain into the full complex (zero on tuples with
  /// an identity); `full` must be built from the same functor.
  Vector embed_normalized(int p, std::span<const Scalar> v, const ResolvingComplex& full) const;

 private:
  std::shared_ptr<const MorFunctor> functor_;
  bool normalized_ = true;
  int p_max_ = 0;
  std::vector<std::vector<Tuple>> tuples_;
  std::vector<std::vector<std::size_t>> offsets_;
  std::vector<std::size_t> dims_;
  std::vector<DenseMatrix> differentials_;
  std::vector<std::map<Tuple, std::size_t>> index_;
};

/// Cohomology of a resolving complex in degrees 0..p_max.
class Cohomology {
 public:
  explicit Cohomology(ResolvingComplex rc);

  const ResolvingComplex& complex() const noexcept { return rc_; }

  int max_degree() const noexcept { return static_cast<int>(reps_.size()) - 1; }
  std::size_t dim(int p) const { return reps_.at(static_cast<std::size_t>(p)).size(); }
  const std::vector<Vector>& representatives(int p) const { return reps_.at(static_cast<std::size_t>(p)); }
  /// Replaces the representative basis of H^p. Throws InvalidInput unless the
  /// vectors are cocycles forming a basis modulo coboundaries.
  void set_representatives(int p, std::vector<Vector> reps);
  bool is_cocycle(int p, std::span<const Scalar> v) const;
  bool is_coboundary(int p, std::span<const Scalar> v) const;
  /// Coordinates of the class of v in the representative basis; throws
  /// NotCocycle (with the residual) when d^p v != 0.
  Vector class_coordinates(int p, std::span<const Scalar> v) const;
  /// A preimage w with d^{p-1} w = v when v is a coboundary.
  std::optional<Vector> coboundary_witness(int p, std::span<const Scalar> v) const;

 private:
  void rebuild_solver(std::size_t p);

  ResolvingComplex rc_;
  std::vector<std::vector<Vector>> reps_;
  std::vector<std::vector<Vector>> boundaries_;
  std::vector<std::optional<LinearSolver>> solvers_;
};

/// dim lim G computed from all arrows of Mor c (an oracle for H^0).
std::size_t limit_dimension(const MorFunctor& g);

}  // namespace ncdef
