#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ncdef/site.hpp"

namespace ncdef {

struct PropertyResult {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string first_failure;

  bool passed() const noexcept { return failures == 0 && cases > 0; }
};

struct SelftestOptions {
  std::uint64_t seed = 20261016;
  std::size_t functors = 50;
  std::size_t matrices = 200;
  std::size_t algebras = 30;
  std::size_t perturbations = 20;
  /// Include the checks that run on the elliptic covers (cokernel
  /// stabilization, defect naturality, gauge invariance).
  bool elliptic = true;
};

/// Random poset on 1..max_objects objects (arrows only from lower to higher index).
FiniteCategory random_poset(std::mt19937_64& rng, std::size_t max_objects);

/// Random functor on Mor c of the form f -> Hom(P(source f), Q(target f)),
/// with P covariant on down-sets and Q on up-sets, both conjugated by random
/// invertible matrices.
MorFunctor random_mor_functor(std::mt19937_64& rng, const FiniteCategory& c);

PropertyResult check_square_zero_property(const SelftestOptions& o);
PropertyResult check_normalized_full_property(const SelftestOptions& o);
PropertyResult check_linear_algebra_property(const SelftestOptions& o);
PropertyResult check_commutativization_property(const SelftestOptions& o);
PropertyResult check_cokernel_stability_property(const SelftestOptions& o);
PropertyResult check_defect_naturality_property(const SelftestOptions& o);
PropertyResult check_gauge_invariance_property(const SelftestOptions& o);

std::vector<PropertyResult> run_selftest(const SelftestOptions& o = {});

}  // namespace ncdef
