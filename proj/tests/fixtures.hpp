#pragma once

#include <memory>

#include "ncdef/elliptic.hpp"
#include "ncdef/matric.hpp"
#include "ncdef/obstruction.hpp"

namespace ncdef::testing {

struct EllipticFixture {
  EllipticConfig cfg;
  std::unique_ptr<DeformationContext> ctx;
};

/// Built once per process; contexts are immutable after construction.
inline const EllipticFixture& elliptic(int a, int b) {
  static std::map<std::pair<int, int>, std::unique_ptr<EllipticFixture>> cache;
  auto& slot = cache[{a, b}];
  if (!slot) {
    auto cfg = EllipticConfig::build(a, b);
    auto ctx = std::make_unique<DeformationContext>(cfg.cover, cfg.context_options());
    slot = std::make_unique<EllipticFixture>(EllipticFixture{std::move(cfg), std::move(ctx)});
  }
  return *slot;
}

inline MatricGeneratorSet loops(std::size_t r) { return tangent_generators(r); }

/// k<t1..tr>/m^n
inline MatricArtinPtr free_base(std::size_t r, std::size_t n) { return make_truncated_free(loops(r), n); }

/// Quotient of k<t1..tr>/m^n by all paths of length >= k.
inline MatricArtinPtr truncate_further(const MatricArtinPtr& r, std::size_t k) {
  std::vector<Vector> gens;
  for (auto idx : r->free()->paths_of_length_at_least(k)) gens.push_back(r->free()->basis_vector(idx));
  return r->quotient(gens);
}

}  // namespace ncdef::testing
