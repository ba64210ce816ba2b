#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ecsim/pcd.hpp"
#include "ecsim/rng.hpp"
#include "ecsim/state.hpp"

namespace ecsim {

// Signed Schmidt pair (a, b) of a GHZ-class state a|H..H> + b|V..V>, kept
// normalized with a >= 0 (global phase absorbed). The failure recursion
// makes b negative from the second level on; the sign is carried rather than
// squared away because the rotated ancilla basis must match the signed state
// to herald the |H..H> + |V..V> branch.
struct SchmidtCoefficients {
  double a;
  double b;

  SchmidtCoefficients(double a, double b);

  static SchmidtCoefficients from_alpha_sq(double alpha_sq);
  // a = sqrt(E/2), b = sqrt(1 - E/2), so |a| <= |b|.
  static SchmidtCoefficients from_entanglement(double entanglement);

  double alpha_sq() const { return a * a; }
  double beta_sq() const { return b * b; }
};

// Rotated ancilla basis {v = a|H> - b|V>, v_perp = b|H> + a|V>}; projecting
// the ancilla onto v_perp heralds the maximally entangled branch.
struct ProjectionBasis {
  MeasurementBasis basis;
  double angle;  // cos(angle) = a, sin(angle) = -b
};

enum class Verdict { Success, Failure };

// Exact one-round branch distribution for coefficients (a, b).
struct RoundDistribution {
  double p_success;             // 2 a^2 b^2
  double p_failure;             // a^4 + b^4
  SchmidtCoefficients failure;  // next-level coefficients
};

struct RoundOutcome {
  Verdict verdict;
  double success_probability;  // 2 a^2 b^2 of the entering coefficients
  std::optional<SchmidtCoefficients> failure_coefficients;  // iff Failure
};

// Trajectory record of one sampled round.
struct RoundRecord {
  ParityOutcome parity;
  double parity_probability;
  bool bit_flip_applied;
  BasisBranch projection;
  double projection_probability;
};

struct RoundResult {
  RoundOutcome outcome;
  PureState post_state;
  RoundRecord record;
};

// Ancilla photon (|H> + |V>)/sqrt(2).
PureState prepare_ancilla();

ProjectionBasis projection_basis(SchmidtCoefficients c);

// a' = a^2/sqrt(a^4 + b^4), b' = -b^2/sqrt(a^4 + b^4). Degenerate inputs
// (a in {0, 1}) are fixed points.
SchmidtCoefficients failure_coefficients(SchmidtCoefficients c);

RoundDistribution round_exact(SchmidtCoefficients c);

// a|H..H> + b|V..V> over n photons.
PureState ghz_state(int n_photons, SchmidtCoefficients c);
// (|H..H> + |V..V>)/sqrt(2).
PureState ghz_target(int n_photons);
// Fidelity check against ghz_state(n, c), up to global phase.
bool ghz_consistent(const PureState& state, SchmidtCoefficients c,
                    double tolerance = 1e-9);

// One concentration round on the shared state: append the ancilla, run the
// parity check on (alice_qubit, ancilla), bit-flip the ancilla on a reported
// odd parity, then measure the ancilla in the rotated basis. Success heralds
// the maximally entangled state over the surviving photons. With zero
// misclassification the caller must supply a GHZ-class state matching c
// (checked by a fidelity assert in debug builds).
RoundResult round_statevector(const PureState& state, int alice_qubit,
                              SchmidtCoefficients c, const ProbeModel& model,
                              RandomSource& rng);

// P_n by the failure recursion: P_n = 2a^2b^2 + (a^4 + b^4) P_{n-1}(c'),
// with P_0 = 0. Numerically stable at any depth.
double total_success_probability(SchmidtCoefficients c, int rounds);

// The same quantity as the explicit series
//   2 * sum_{k=1..n} a^{2^k} b^{2^k} / prod_{j=1..k} (a^{2^j} + b^{2^j}),
// with each printed factor evaluated in log space so the deep-level powers
// do not underflow. Kept as an independent cross-check of the recursion.
double success_probability_series(SchmidtCoefficients c, int rounds);

// E = min(2a^2, 2b^2): the single-copy concentration ceiling.
double entanglement(SchmidtCoefficients c);

// Two-level reduction of an N-photon GHZ-class state: the remote photons
// collapse onto {|H..H>, |V..V>}, so every two-photon formula applies with
// the same coefficients.
struct GhzReduction {
  int photon_count;
  SchmidtCoefficients coefficients;
  std::size_t h_prime_index;  // all-H ket of the remote register
  std::size_t v_prime_index;  // all-V ket of the remote register
};
GhzReduction ghz_reduce(int n_photons, SchmidtCoefficients c);

struct ConcentrationRound {
  int round;
  SchmidtCoefficients coefficients;  // entering the round
  double success_probability;        // conditional on reaching the round
  double weight;                     // probability of reaching the round
  double increment;                  // weight * success_probability
  double cumulative;
};

struct ConcentrationReport {
  std::vector<ConcentrationRound> rounds;
  double total;
};

ConcentrationReport concentration_report(SchmidtCoefficients c, int rounds);

// Success probabilities of this protocol and the standard baselines at the
// same coefficients.
struct ComparisonPoint {
  double p_iterated;       // this protocol after `rounds` rounds
  double p_single_pair;    // one-shot pairwise projection: a^2 b^2 per system
  double p_recycled_pair;  // pairwise projection with failure recycling
  double p_collective;     // collective-evolution ceiling: min(a^2, b^2)
};

ComparisonPoint comparison_curves(SchmidtCoefficients c, int rounds);

}  // namespace ecsim
