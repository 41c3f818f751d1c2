#pragma once

#include <map>
#include <string>
#include <vector>

#include "ncdef/obstruction.hpp"
#include "ncdef/report.hpp"

namespace ncdef {

/// The affine cover of y^2 z = x^3 + a x z^2 + b z^3 by D+(y), D+(z) and their
/// intersection, with the derivations induced by the global vector field.
///
/// Objects are U1 = 0, U2 = 1, U3 = 2; the two non-identity arrows are
/// U1->U3 and U2->U3.
struct EllipticConfig {
  Scalar a;
  Scalar b;
  Scalar discriminant;
  ChartCover cover;
  std::size_t arrow13 = 0;
  std::size_t arrow23 = 0;

  /// Tangent representatives xi_1, xi_2 (one chart element per object).
  std::vector<std::vector<AlgebraElement>> xi;
  /// Obstruction representative omega on the two non-identity arrows.
  std::map<std::size_t, AlgebraElement> omega;
  /// Restriction corrections for xi_1 (zero) and xi_2.
  std::vector<std::map<std::size_t, AlgebraElement>> tau;

  /// Throws SingularCurve when 4a^3 + 27b^2 = 0.
  static EllipticConfig build(const Scalar& a, const Scalar& b);

  bool a_is_zero() const { return sgn(a) == 0; }
  DeformationContext::Options context_options(const CokernelOptions& cokernel = {}) const;

  /// Truncated exponential datum over k<t1,t2>/(m^order, t1 t2 - t2 t1):
  /// Psi = psi_1 t1 + psi_2 t2, T = sum_n tau_2^n / n! t2^n.
  DeformationDatum exp_datum(const DeformationContext& ctx, std::size_t order) const;
};

/// Runs cokernels, cohomology, cup products, the hull to the requested order,
/// the truncated exponential datum and the tangent checks, and collects the
/// results together with PASS/FAIL verdicts against the reference tables.
Report run_full_pipeline(const EllipticConfig& cfg, const PipelineOptions& options = {});

}  // namespace ncdef
