#pragma once

#include <string>

#include "ncdef/hull.hpp"
#include "ncdef/io.hpp"
#include "ncdef/obstruction.hpp"

namespace ncdef {

inline constexpr const char* kReportSchema = "ncdef/1";

struct PipelineOptions {
  std::size_t hull_order = 4;
  CokernelOptions cokernel;
  /// Report cochains over all tuples, identities included.
  bool full_complex = false;
  bool tangent_check = true;
  /// Adds wall-clock seconds per stage; the output is then no longer reproducible.
  bool timing = false;
};

/// A structured report. Keys are kept sorted, rationals are written as "p/q"
/// strings, so equal inputs give byte-identical JSON.
struct Report {
  Json data;

  std::string json_text() const;
  std::string markdown() const;
};

/// Sections shared by the elliptic and cover pipelines: Ext slots, cohomology
/// bases, Hochschild dimensions, first-order family, cup products, the
/// no-lift certificate, the hull and the tangent check.
Json context_sections(const DeformationContext& ctx, const PipelineOptions& options, HullResult* hull_out = nullptr);

/// dim ker(D) on chart elements of degree <= degree.
std::size_t derivation_kernel_dim(const Derivation& d, int degree);

Report cohomology_report(const MorFunctor& g, int p_max, bool full_complex);
Report hull_report(const CoverConfig& cfg, const PipelineOptions& options);

}  // namespace ncdef
