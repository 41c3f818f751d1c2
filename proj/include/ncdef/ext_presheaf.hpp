#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "ncdef/affine_algebra.hpp"
#include "ncdef/site.hpp"

namespace ncdef {

struct ChartData {
  std::string label;
  AlgebraPtr algebra;
  Derivation derivation;
  /// Representatives tried first when choosing a cokernel basis (may be empty).
  std::vector<AlgebraElement> preferred;
};

/// Charts on the objects of a cover poset with restriction morphisms along
/// every arrow. Restrictions of identity arrows are identities; missing
/// composite restrictions are obtained by composition.
class ChartCover {
 public:
  /// Throws InvalidInput on shape errors and DomainError if a derivation is
  /// not well defined or a restriction fails to intertwine derivations (the
  /// message names the offending generator).
  static ChartCover create(FiniteCategory category, std::vector<ChartData> charts,
                           std::map<std::size_t, AlgebraMorphism> restrictions);

  const FiniteCategory& category() const noexcept { return category_; }
  const std::vector<ChartData>& charts() const noexcept { return charts_; }
  const ChartData& chart(std::size_t object) const { return charts_.at(object); }
  /// Restriction along morphism m (from the chart of its source to the chart of its target).
  const AlgebraMorphism& restriction(std::size_t m) const { return restrictions_.at(m); }

 private:
  FiniteCategory category_;
  std::vector<ChartData> charts_;
  std::vector<AlgebraMorphism> restrictions_;
};

struct CokernelOptions {
  int d_start = 6;
  int d_max = 24;
  /// Extra degrees of preimages used when intersecting the image with a truncation.
  int margin = 3;
  /// Number of consecutive truncation degrees that must agree.
  int window = 3;
};

/// Finite basis of coker(D: A -> A) for a derivation D, with a reduction map.
class CokernelPresentation {
 public:
  struct Reduction {
    Vector coordinates;
    AlgebraElement preimage;  // e - sum coords * reps = D(preimage)
  };

  /// Throws NoStabilization when no window of `window` consecutive degrees
  /// below d_max yields the same representative list.
  static std::shared_ptr<const CokernelPresentation> compute(const Derivation& d, const CokernelOptions& options = {},
                                                             const std::vector<AlgebraElement>& preferred = {});

  const AlgebraPtr& algebra() const noexcept { return derivation_.algebra_ptr(); }
  const Derivation& derivation() const noexcept { return derivation_; }
  int stable_degree() const noexcept { return stable_degree_; }
  const CokernelOptions& options() const noexcept { return options_; }
  std::size_t size() const noexcept { return reps_.size(); }
  const std::vector<AlgebraElement>& representatives() const noexcept { return reps_; }
  std::vector<std::string> labels() const;

  Vector reduce(const AlgebraElement& e) const;
  Reduction reduce_with_witness(const AlgebraElement& e) const;
  AlgebraElement lift(std::span<const Scalar> coordinates) const;

 private:
  struct Slice;
  CokernelPresentation(Derivation d, CokernelOptions o) : derivation_(std::move(d)), options_(o) {}
  const Slice& slice(int d) const;

  Derivation derivation_;
  CokernelOptions options_;
  int stable_degree_ = 0;
  std::vector<AlgebraElement> reps_;

  mutable std::mutex mutex_;
  mutable std::map<int, std::shared_ptr<const Slice>> slices_;
};

using CokernelPtr = std::shared_ptr<const CokernelPresentation>;

/// Ext^1 presheaf on Mor c: the value at f: c -> c' is coker(D on A_{c'}).
struct ExtDiagram {
  ChartCover cover;
  std::vector<CokernelPtr> cokernels;  // one per object
  MorFunctor functor;

  /// Coordinates of a chart element in the value space of morphism f.
  Vector coordinates(std::size_t f, const AlgebraElement& e) const;
};

ExtDiagram build_ext_diagram(const ChartCover& cover, const CokernelOptions& options = {});

struct HochschildSummary {
  std::size_t hh0 = 0;
  std::size_t hh1 = 0;
  std::size_t hh2 = 0;
  /// HH^1 representatives: degree-0 cochains of the Ext diagram.
  std::vector<Vector> hh1_reps;
  /// HH^2 representatives: degree-1 cochains in full-complex coordinates.
  std::vector<Vector> hh2_reps_full;
};

/// Degenerate two-row answer for one-dimensional charts:
/// HH^0 = H^0(c, k), HH^n = H^{n-1}(c, Ext^1) for n = 1, 2.
HochschildSummary global_hochschild_dims(const Cohomology& ext_cohomology, const ResolvingComplex& ext_full,
                                         const MorFunctor& endo_h0);

}  // namespace ncdef
