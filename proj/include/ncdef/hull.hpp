#pragma once

#include <string>
#include <vector>

#include "ncdef/obstruction.hpp"

namespace ncdef {

struct HullStep {
  /// The step lifts from H_order to H_{order+1}.
  std::size_t order = 0;
  std::size_t kernel_dim = 0;
  /// Nonzero obstruction coordinates found along the small surjection.
  bool obstructed = false;
  std::vector<std::string> new_relations;
  bool validated = false;
};

struct HullResult {
  std::size_t order = 0;
  MatricFreePtr free;
  /// Relation generators in free coordinates, leading coefficient 1.
  std::vector<Vector> relations;
  std::vector<std::string> relation_strings;
  /// tower[n - 2] = H_n for n = 2..order.
  std::vector<MatricArtinPtr> tower;
  DeformationDatum versal;
  std::vector<HullStep> log;

  const MatricArtinPtr& hull() const { return tower.back(); }
};

/// Hull of the deformation functor up to radical order N (N >= 2) on the
/// tangent generators t1..tr. Raises NoLiftPossible if a correction cannot be
/// found after the relation ideal has been enlarged.
HullResult hull_compute(const DeformationContext& ctx, std::size_t order);

/// H_{n+1} / I^n equals H_n for every consecutive pair in the tower.
bool tower_coherent(const HullResult& hull);

}  // namespace ncdef
