#pragma once

#include <cstdint>

#include "ecsim/ecp.hpp"

namespace ecsim {

struct EnsembleStats {
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
  double estimate = 0.0;
  double standard_error = 0.0;  // sqrt(p(1-p)/trials)
  std::uint64_t seed = 0;
};

// Seeded trajectory sampling of the iterated protocol on full statevectors.
// Trial t draws from substream (seed, t), so the aggregate is independent of
// execution order and reproducible across runs.
EnsembleStats estimate_success(SchmidtCoefficients c, int n_rounds,
                               std::uint64_t trials, std::uint64_t seed,
                               const ProbeModel& model = {});

// Exact probability mass of success within n_rounds, obtained by walking
// every (parity, projection) branch of the statevector rounds with its
// weight. No sampling; this is the primary oracle for the analytic
// recursion, and the mass is independent of n_photons by the GHZ reduction.
double enumerate_success(SchmidtCoefficients c, int n_rounds,
                         int n_photons = 2);

// Pool simulation of pairwise concentration with failure recycling: each
// attempt consumes two systems, a failed attempt yields one recycled system
// at the next-level coefficients, and levels advance by the failure
// recursion. Yield is counted per initial pool member. Validates the
// recycled-pair recursion used by comparison_curves.
EnsembleStats pool_schmidt_oracle(SchmidtCoefficients c, int n_levels,
                                  std::uint64_t pool_size, std::uint64_t seed);

}  // namespace ecsim
