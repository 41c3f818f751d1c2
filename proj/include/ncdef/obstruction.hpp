#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ncdef/deformation.hpp"

namespace ncdef {

// Cochains of the complex controlling liftings along one basis vector of a
// kernel K with K I = I K = 0. Degree 1: eps per chart, Delta per arrow.
// Degree 2: one chart element per arrow (semilinearity) and per composable
// pair (composition).
struct SmallCochain1 {
  std::vector<AlgebraElement> eps;
  std::map<std::size_t, AlgebraElement> delta;
};

struct SmallCochain2 {
  std::map<std::size_t, AlgebraElement> semilinear;
  std::map<std::pair<std::size_t, std::size_t>, AlgebraElement> composition;

  bool is_zero() const;
  int degree() const;
};

SmallCochain1 small_zero1(const ChartCover& cover);
SmallCochain2 small_zero2(const ChartCover& cover);
/// (eps, Delta) for the gauge pi: eps_c = -D(pi_c), Delta_phi = pi_j - rho(pi_i).
SmallCochain1 small_d0(const ChartCover& cover, const std::vector<AlgebraElement>& pi);
/// semilinear: rho(eps_i) - eps_j - D_j(Delta_phi); composition: Delta_g + rho_g(Delta_f) - Delta_{g o f}.
SmallCochain2 small_d1(const ChartCover& cover, const SmallCochain1& w);

/// Searches for w with small_d1(w) = rhs in growing degree truncations up to
/// d_max. With `vary_eps` false only the Delta part is solved for.
std::optional<SmallCochain1> solve_small(const ChartCover& cover, const SmallCochain2& rhs, int d_max,
                                         bool vary_eps = true);

/// First-order representative of one tangent direction.
struct FirstOrderData {
  std::vector<AlgebraElement> psi;           // per object
  std::map<std::size_t, AlgebraElement> tau;  // per non-identity arrow
};

/// Everything the obstruction calculus needs for a fixed cover: the Ext
/// diagram, its cohomology with chosen bases, and first-order data for the
/// chosen tangent basis.
class DeformationContext {
 public:
  struct Options {
    CokernelOptions cokernel;
    /// Optional H^0 basis of the Ext diagram, as chart elements per object.
    std::vector<std::vector<AlgebraElement>> hh1_basis;
    /// Optional H^1 basis, as chart elements per non-identity arrow.
    std::vector<std::map<std::size_t, AlgebraElement>> hh2_basis;
    /// Optional first-order restriction corrections (one map per tangent
    /// direction); checked against the operator corrections.
    std::vector<std::map<std::size_t, AlgebraElement>> first_order_tau;
    /// Ceiling for truncated correction solves.
    int solve_d_max = 16;
  };

  DeformationContext(ChartCover cover, Options options);

  const std::shared_ptr<const ChartCover>& cover() const noexcept { return cover_; }
  const ExtDiagram& ext() const noexcept { return *ext_; }
  const Cohomology& cohomology() const noexcept { return *cohomology_; }
  const ResolvingComplex& full_complex() const noexcept { return *full_; }
  const Options& options() const noexcept { return options_; }
  std::size_t tangent_dim() const noexcept { return first_order_.size(); }
  std::size_t obstruction_dim() const { return cohomology_->dim(1); }
  const std::vector<FirstOrderData>& first_order() const noexcept { return first_order_; }

  /// Normalized degree-1 Ext cochain of the semilinearity part of w.
  Vector ext_cochain(const SmallCochain2& w) const;
  /// Class of w in the chosen H^1 basis; throws NotCocycle.
  Vector obstruction_coordinates(const SmallCochain2& w) const;
  /// Normalized degree-0 Ext cochain of a chart family (one element per object).
  Vector ext_cochain0(const std::vector<AlgebraElement>& family) const;

  /// Datum over `base` with Psi = sum psi_l (x) r_l and T = 1 + sum tau_l (x) r_l.
  DeformationDatum first_order_datum(const MatricArtinPtr& base, const std::vector<Vector>& directions) const;

 private:
  std::shared_ptr<const ChartCover> cover_;
  Options options_;
  std::unique_ptr<ExtDiagram> ext_;
  std::unique_ptr<Cohomology> cohomology_;
  std::unique_ptr<ResolvingComplex> full_;
  std::vector<FirstOrderData> first_order_;
};

/// Splits a defect with values in A (x) K along the given basis of K (R
/// coordinates). Throws DomainError if a value leaves A (x) K.
std::vector<SmallCochain2> decompose_defect(const DefectCochain& defect, const std::vector<Vector>& kernel_basis);

struct ObstructionClass {
  /// coordinates[kappa][s]: H^1 coordinate s of the kappa-component.
  std::vector<Vector> coordinates;
  bool vanishes = false;
  /// Correction per kernel basis vector when the class vanishes.
  std::optional<std::vector<SmallCochain1>> witness;
};

/// Class of a defect along a small surjection with kernel basis `kernel`.
/// When every coordinate vanishes a correcting cochain is searched for and
/// returned; NoLiftPossible is raised if none is found below the ceiling.
ObstructionClass obstruction_class(const DeformationContext& ctx, const DefectCochain& defect,
                                   const std::vector<Vector>& kernel);

/// Adds sum_kappa w_kappa (x) kappa to the datum (kappa in R coordinates).
DeformationDatum apply_correction(const DeformationDatum& d, const std::vector<SmallCochain1>& w,
                                  const std::vector<Vector>& kernel);

/// <t_l*, t_m*> in the chosen H^1 basis: the t_l t_m coefficient of the defect
/// of the canonical lift of the first-order family to k<t>/m^3.
Vector cup_product(const DeformationContext& ctx, std::size_t l, std::size_t m);
std::vector<std::vector<Vector>> cup_table(const DeformationContext& ctx);

/// Tangent generators t1..tr (one per tangent direction) on one point.
MatricGeneratorSet tangent_generators(std::size_t r);

struct NoLiftCertificate {
  /// The lifting system over k<t>/m^3 has no solution below the ceiling.
  bool free_system_infeasible = false;
  /// Kernel monomials whose defect component has a nonzero class.
  std::vector<std::string> obstructed_monomials;
  std::vector<std::string> relations;
  /// A lift exists after dividing by the relations, and it validates.
  bool quotient_lift_validates = false;
};

NoLiftCertificate no_lift_certificate(const DeformationContext& ctx);

}  // namespace ncdef
