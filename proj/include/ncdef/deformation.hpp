#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ncdef/affine_algebra.hpp"
#include "ncdef/ext_presheaf.hpp"
#include "ncdef/matric.hpp"

namespace ncdef {

/// Element of A (x) R stored as one A-coefficient per basis vector of R.
/// Products follow (a (x) r)(b (x) s) = ab (x) rs.
class TensorElement {
 public:
  TensorElement() = default;
  TensorElement(AlgebraPtr algebra, MatricArtinPtr base);

  static TensorElement pure(const AlgebraElement& a, std::span<const Scalar> r, const MatricArtinPtr& base);
  static TensorElement one(const AlgebraPtr& algebra, const MatricArtinPtr& base);

  const AlgebraPtr& algebra() const noexcept { return algebra_; }
  const MatricArtinPtr& base() const noexcept { return base_; }
  const std::vector<AlgebraElement>& parts() const noexcept { return parts_; }
  const AlgebraElement& part(std::size_t k) const { return parts_.at(k); }
  bool is_zero() const;
  int degree() const;

  TensorElement& operator+=(const TensorElement& rhs);
  TensorElement& operator-=(const TensorElement& rhs);
  TensorElement& operator*=(const Scalar& s);
  friend TensorElement operator+(TensorElement a, const TensorElement& b) { return a += b; }
  friend TensorElement operator-(TensorElement a, const TensorElement& b) { return a -= b; }
  friend TensorElement operator*(TensorElement a, const Scalar& s) { return a *= s; }
  friend TensorElement operator*(const TensorElement& a, const TensorElement& b);
  friend bool operator==(const TensorElement& a, const TensorElement& b);

  /// (D (x) 1)
  TensorElement derive(const Derivation& d) const;
  /// (rho (x) 1)
  TensorElement restrict(const AlgebraMorphism& rho) const;
  /// (1 (x) alpha)
  TensorElement push(const ArtinMorphism& alpha) const;
  /// Re-expresses this element over `source` through the section of a small surjection.
  TensorElement lift(const SmallSurjection& u) const;
  /// Multiplicative inverse of 1 + (radical part); precondition: the R-unit part is 1 (x) 1.
  TensorElement unit_inverse() const;

  std::string to_string() const;

 private:
  AlgebraPtr algebra_;
  MatricArtinPtr base_;
  std::vector<AlgebraElement> parts_;
};

/// Deformation of the structure sheaf (as a module over the chart operator
/// rings) over an Artin base R: on chart c the operator generator acts as
/// D (x) 1 + Psi_c by left multiplication, algebra generators act undeformed,
/// and restriction along phi is m (x) s -> T_phi (rho m (x) s).
struct DeformationDatum {
  std::shared_ptr<const ChartCover> cover;
  MatricArtinPtr base;
  std::vector<TensorElement> psi;          // per object, in A_c (x) I(R)
  std::vector<TensorElement> restriction;  // per morphism, T_phi in A_target (x) R; identities are 1

  static DeformationDatum trivial(std::shared_ptr<const ChartCover> cover, MatricArtinPtr base);
  /// Throws InvalidInput if shapes or algebras are inconsistent, a correction
  /// leaves the radical, or an identity restriction is not 1.
  void check_well_formed() const;
};

struct DefectCochain {
  struct Entry {
    std::string label;
    TensorElement value;
  };
  /// Operator relations per chart: the Ore relation [D, a] = D(a) and the
  /// chart relations, evaluated on 1 and on every generator.
  std::vector<std::vector<Entry>> ore;
  /// Semilinearity failure T rho(Psi_i) - Psi_j T - D_j(T) per non-identity morphism.
  std::map<std::size_t, TensorElement> semilinear;
  /// Composition failure T_{g} rho_g(T_f) - T_{g o f} per composable non-identity pair (f, g).
  std::map<std::pair<std::size_t, std::size_t>, TensorElement> composition;

  bool is_zero() const;
  /// Summary such as "ore 0, semilinear 1, composition 0" counting nonzero entries.
  std::string summary() const;
};

DefectCochain validate(const DeformationDatum& d);

/// Conjugates by the invertible 0-cochain g (one 1 + radical element per chart).
DeformationDatum transport(const DeformationDatum& d, const std::vector<TensorElement>& g);

DeformationDatum push_forward(const DeformationDatum& d, const ArtinMorphism& alpha);
DefectCochain push_forward(const DefectCochain& c, const ArtinMorphism& alpha);
/// Canonical-section lift of a datum over u.target() to u.source().
DeformationDatum lift(const DeformationDatum& d, const SmallSurjection& u);

bool operator==(const DefectCochain& a, const DefectCochain& b);

}  // namespace ncdef
