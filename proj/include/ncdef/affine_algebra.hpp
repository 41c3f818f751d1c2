#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ncdef/linalg.hpp"
#include "ncdef/polynomial.hpp"

namespace ncdef {

class AlgebraElement;

struct ExponentsHash {
  std::size_t operator()(const Exponents& e) const noexcept;
};

/// Commutative k-algebra k[x_1..x_n]/(relations), optionally with one
/// variable inverted. The inverse is carried as an extra internal generator
/// `v^-1` together with the relation v * v^-1 - 1, so internal exponent
/// vectors are always nonnegative. Immutable after construction.
class PresentedAlgebra : public std::enable_shared_from_this<PresentedAlgebra> {
 public:
  struct Presentation {
    std::string name;
    std::vector<std::string> variables;
    std::optional<std::string> inverted;  // must be one of `variables`
    std::vector<std::string> relations;   // expressions over `variables`
    /// Grading weights for the monomial order, one per variable (the inverse
    /// generator gets weight 1). Empty means all ones.
    std::vector<int> weights;
    /// Tie-break priority (most significant first); names from `variables`,
    /// optionally followed by the inverse generator "<v>^-1". Empty means
    /// declaration order followed by the inverse.
    std::vector<std::string> priority;
  };

  static std::shared_ptr<const PresentedAlgebra> create(const Presentation& pres);

  const std::string& name() const noexcept { return name_; }
  /// The presentation this algebra was created from.
  const Presentation& presentation() const noexcept { return presentation_; }
  const std::vector<std::string>& variables() const noexcept { return variables_; }
  /// Variables plus the inverse generator name when present.
  const std::vector<std::string>& internal_names() const noexcept { return internal_names_; }
  std::size_t internal_count() const noexcept { return internal_names_.size(); }
  std::optional<std::size_t> inverted_index() const noexcept { return inverted_; }
  std::optional<std::size_t> inverse_index() const noexcept;
  const MonomialOrder& order() const noexcept { return order_; }
  const std::vector<Polynomial>& groebner_basis() const noexcept { return groebner_; }
  /// Relations as supplied, in internal coordinates (without the unit relation).
  const std::vector<Polynomial>& relations() const noexcept { return relations_; }

  /// Reduces a raw polynomial in internal coordinates.
  AlgebraElement normal_form(const Polynomial& internal) const;
  /// Reduces a Laurent expression over the declared variables. Negative
  /// exponents are accepted only on the inverted variable.
  AlgebraElement from_laurent(const Polynomial& over_variables) const;
  /// Parses and reduces an expression over the declared variables.
  AlgebraElement parse(std::string_view text) const;

  AlgebraElement zero() const;
  AlgebraElement one() const;
  AlgebraElement constant(const Scalar& c) const;
  /// Internal generator i (declared variables first, then the inverse).
  AlgebraElement generator(std::size_t i) const;

  /// Total degree of an internal exponent vector; for the inverted variable
  /// this is i + |j| on normal-form monomials x^i y^j.
  int degree(const Exponents& e) const;
  bool is_normal(const Exponents& e) const;
  /// Normal-form monomials of degree <= d ordered by degree, then ascending
  /// in the monomial order.
  std::vector<Exponents> basis_monomials(int max_degree) const;
  std::string format_monomial(const Exponents& e) const;

  /// Normal form of a single monomial (memoized).
  const Polynomial::Terms& monomial_normal_form(const Exponents& e) const;

 private:
  PresentedAlgebra() = default;
  Exponents canonical(Exponents e) const;

  Presentation presentation_;
  std::string name_;
  std::vector<std::string> variables_;
  std::vector<std::string> internal_names_;
  std::optional<std::size_t> inverted_;
  MonomialOrder order_;
  std::vector<Polynomial> relations_;
  std::vector<Polynomial> groebner_;
  std::vector<Exponents> leading_;

  mutable std::mutex cache_mutex_;
  mutable std::unordered_map<Exponents, Polynomial::Terms, ExponentsHash> nf_cache_;
};

using AlgebraPtr = std::shared_ptr<const PresentedAlgebra>;

/// Element of a PresentedAlgebra, stored in normal form (no zero
/// coefficients, every key a normal-form monomial).
class AlgebraElement {
 public:
  AlgebraElement() = default;
  AlgebraElement(AlgebraPtr algebra, Polynomial::Terms normal_terms);

  const AlgebraPtr& algebra_ptr() const noexcept { return algebra_; }
  const PresentedAlgebra& algebra() const { return *algebra_; }
  const Polynomial::Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  Scalar coefficient(const Exponents& e) const;
  /// Maximal degree of a term; -1 for zero.
  int degree() const;

  AlgebraElement& operator+=(const AlgebraElement& rhs);
  AlgebraElement& operator-=(const AlgebraElement& rhs);
  AlgebraElement& operator*=(const Scalar& s);
  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
  friend AlgebraElement operator*(AlgebraElement a, const Scalar& s) { return a *= s; }
  friend AlgebraElement operator*(const Scalar& s, AlgebraElement a) { return a *= s; }
  friend AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b);
  AlgebraElement operator-() const { return *this * Scalar(-1); }
  AlgebraElement pow(unsigned n) const;

  friend bool operator==(const AlgebraElement& a, const AlgebraElement& b);

  std::string to_string() const;

 private:
  void check_same(const AlgebraElement& rhs) const;

  AlgebraPtr algebra_;
  Polynomial::Terms terms_;
};

/// k-linear derivation determined by the images of the declared generators.
/// The inverse generator is sent to -v^-2 * D(v).
class Derivation {
 public:
  Derivation(AlgebraPtr algebra, std::vector<AlgebraElement> images);
  /// Images given as expressions keyed by variable name.
  static Derivation parse(AlgebraPtr algebra, const std::map<std::string, std::string>& images);

  const AlgebraPtr& algebra_ptr() const noexcept { return algebra_; }
  const AlgebraElement& image(std::size_t internal_generator) const { return images_.at(internal_generator); }
  AlgebraElement apply(const AlgebraElement& e) const;
  /// Derivative of a raw internal polynomial (before reduction), reduced.
  AlgebraElement apply_raw(const Polynomial& internal) const;
  /// Throws DomainError unless every relation is sent into the ideal.
  void verify() const;

 private:
  AlgebraPtr algebra_;
  std::vector<AlgebraElement> images_;  // internal generators
};

/// k-algebra morphism source -> target given on declared generators. If the
/// source inverts v, the image of v must be a unit; its inverse is stored.
class AlgebraMorphism {
 public:
  AlgebraMorphism(AlgebraPtr source, AlgebraPtr target, std::vector<AlgebraElement> images,
                  std::optional<AlgebraElement> inverse_image = std::nullopt);
  static AlgebraMorphism parse(AlgebraPtr source, AlgebraPtr target,
                               const std::map<std::string, std::string>& images);
  static AlgebraMorphism identity(AlgebraPtr algebra);

  const AlgebraPtr& source() const noexcept { return source_; }
  const AlgebraPtr& target() const noexcept { return target_; }
  const AlgebraElement& image(std::size_t internal_generator) const { return images_.at(internal_generator); }
  AlgebraElement apply(const AlgebraElement& e) const;
  AlgebraMorphism then(const AlgebraMorphism& next) const;
  /// Throws DomainError unless every source relation maps to zero.
  void verify() const;

 private:
  AlgebraPtr source_;
  AlgebraPtr target_;
  std::vector<AlgebraElement> images_;  // internal generators of the source
};

/// A k-linear map between presented algebras.
struct LinearOperator {
  AlgebraPtr source;
  AlgebraPtr target;
  std::function<AlgebraElement(const AlgebraElement&)> map;

  AlgebraElement operator()(const AlgebraElement& e) const { return map(e); }
};

LinearOperator multiplication_operator(const AlgebraElement& by);
LinearOperator derivation_operator(const Derivation& d);
LinearOperator morphism_operator(const AlgebraMorphism& m);
/// outer after inner
LinearOperator compose(const LinearOperator& outer, const LinearOperator& inner);

/// Columns are images of the source normal-form monomials of degree <= d_in
/// in the target monomial basis of degree <= d_out. Throws TruncationEscape
/// when an image has a term above d_out.
DenseMatrix truncated_operator_matrix(const LinearOperator& op, int d_in, int d_out);

/// Element as a coordinate vector over a fixed monomial list; throws
/// TruncationEscape if a term is outside the list.
Vector coordinates(const AlgebraElement& e, const std::vector<Exponents>& monomials);
AlgebraElement from_coordinates(const AlgebraPtr& algebra, const std::vector<Exponents>& monomials,
                                std::span<const Scalar> coords);

}  // namespace ncdef
