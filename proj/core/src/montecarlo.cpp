#include "ecsim/montecarlo.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ecsim/rng.hpp"

namespace ecsim {
namespace {

double binomial_standard_error(double p, std::uint64_t n) {
  return std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

}  // namespace

EnsembleStats estimate_success(SchmidtCoefficients c, int n_rounds,
                               std::uint64_t trials, std::uint64_t seed,
                               const ProbeModel& model) {
  if (n_rounds < 1) {
    throw std::invalid_argument("round count must be at least 1");
  }
  if (trials < 1) {
    throw std::invalid_argument("trial count must be at least 1");
  }
  model.validate();

  std::uint64_t successes = 0;
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    CounterRng rng(seed, trial);
    PureState state = ghz_state(2, c);
    SchmidtCoefficients level = c;
    for (int round = 1; round <= n_rounds; ++round) {
      RoundResult result = round_statevector(state, 0, level, model, rng);
      if (result.outcome.verdict == Verdict::Success) {
        ++successes;
        break;
      }
      level = *result.outcome.failure_coefficients;
      state = std::move(result.post_state);
    }
  }

  const double estimate =
      static_cast<double>(successes) / static_cast<double>(trials);
  return {trials, successes, estimate, binomial_standard_error(estimate, trials),
          seed};
}

double enumerate_success(SchmidtCoefficients c, int n_rounds, int n_photons) {
  if (n_rounds < 1) {
    throw std::invalid_argument("round count must be at least 1");
  }
  if (n_photons < 2) {
    throw std::invalid_argument("enumeration needs at least two photons");
  }
  const double theta = ProbeModel{}.theta;

  struct Node {
    PureState state;
    SchmidtCoefficients coefficients;
    int round;
    double weight;
  };
  std::vector<Node> pending;
  pending.push_back({ghz_state(n_photons, c), c, 1, 1.0});

  double mass = 0.0;
  while (!pending.empty()) {
    Node node = std::move(pending.back());
    pending.pop_back();

    const PureState extended = tensor(node.state, prepare_ancilla());
    const int ancilla = node.state.photon_count();
    const auto [p_even, p_odd] = pcd_probabilities(extended, 0, ancilla);
    const ProjectionBasis basis = projection_basis(node.coefficients);

    for (const Parity parity : {Parity::Even, Parity::Odd}) {
      const double p_parity = parity == Parity::Even ? p_even : p_odd;
      if (!(p_parity > 0.0)) continue;
      PcdResult branch = pcd_project(extended, 0, ancilla, parity, theta);
      PureState post = parity == Parity::Odd
                           ? apply_unitary(branch.post_state, ancilla,
                                           SingleQubitUnitary::bit_flip())
                           : std::move(branch.post_state);
      const auto [p_v, p_perp] =
          branch_probabilities(post, ancilla, basis.basis);
      mass += node.weight * p_parity * p_perp;
      if (node.round < n_rounds && p_v > 0.0) {
        pending.push_back(
            {project_qubit(post, ancilla, basis.basis, BasisBranch::V)
                 .post_state,
             failure_coefficients(node.coefficients), node.round + 1,
             node.weight * p_parity * p_v});
      }
    }
  }
  return mass;
}

EnsembleStats pool_schmidt_oracle(SchmidtCoefficients c, int n_levels,
                                  std::uint64_t pool_size,
                                  std::uint64_t seed) {
  if (n_levels < 1) {
    throw std::invalid_argument("level count must be at least 1");
  }
  if (pool_size < 2 || pool_size % 2 != 0) {
    throw std::invalid_argument("pool size must be even and at least 2");
  }

  CounterRng rng(seed, 0);
  std::uint64_t distilled = 0;
  std::uint64_t members = pool_size;
  SchmidtCoefficients level = c;
  for (int k = 1; k <= n_levels && members >= 2; ++k) {
    const std::uint64_t attempts = members / 2;  // odd leftovers are discarded
    const double p = round_exact(level).p_success;
    std::uint64_t wins = 0;
    for (std::uint64_t i = 0; i < attempts; ++i) {
      if (rng.next_double() < p) ++wins;
    }
    distilled += wins;
    members = attempts - wins;
    level = failure_coefficients(level);
  }

  const double estimate =
      static_cast<double>(distilled) / static_cast<double>(pool_size);
  return {pool_size, distilled, estimate,
          binomial_standard_error(estimate, pool_size), seed};
}

}  // namespace ecsim
