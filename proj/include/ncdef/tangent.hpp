#pragma once

#include <memory>
#include <vector>

#include "ncdef/deformation.hpp"

namespace ncdef {

struct TangentCheck {
  std::size_t points = 1;
  std::size_t row = 0;
  std::size_t col = 0;
  std::size_t dimension = 0;
  int stable_degree = 0;
  struct Sample {
    int degree;
    std::size_t cocycles;     // first-order solutions with data of degree <= degree
    std::size_t coboundaries; // trivial ones inside the same truncation
  };
  std::vector<Sample> samples;
};

struct TangentOptions {
  int d_start = 4;
  int d_max = 16;
  int window = 3;
  /// Extra degrees allowed for gauge elements before intersecting with the truncation.
  int gauge_margin = 3;
};

/// Dimension of first-order deformations over k^p[eps_ij] modulo gauge
/// equivalence, computed from the validator alone. The value is reported
/// once `window` consecutive truncation degrees agree; NoStabilization
/// otherwise.
TangentCheck tangent_dimension_check(const std::shared_ptr<const ChartCover>& cover, std::size_t points = 1,
                                     std::size_t row = 0, std::size_t col = 0, const TangentOptions& options = {});

/// The cover with `object` duplicated: a new object below it carrying the same
/// chart, joined by an identity restriction.
ChartCover doubled_cover(const ChartCover& cover, std::size_t object);

}  // namespace ncdef
