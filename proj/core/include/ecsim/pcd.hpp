#pragma once

#include <utility>

#include "ecsim/rng.hpp"
#include "ecsim/state.hpp"

namespace ecsim {

// Probe-beam model of the cross-Kerr parity check. theta is the conditional
// phase the coherent probe picks up per photon routed through a nonlinear
// medium (chi * t); the X-quadrature readout folds +theta and -theta into a
// single class, so only the magnitude is observable. The probe itself is
// reduced to this classical phase register: the interaction enters the
// protocol only as a parity classifier.
struct ProbeModel {
  double theta = 0.1;
  // Probability that the reported parity label flips while the projection
  // still follows the true parity. Stands in for homodyne phase noise.
  double misclassification_probability = 0.0;

  void validate() const;  // theta > 0, probability in [0, 0.5)
};

enum class Parity { Even, Odd };

// Signed probe phase for a photon pair: HH -> +theta, VV -> -theta, mixed
// polarizations -> 0.
double probe_phase(Polarization first, Polarization second, double theta);

// X-quadrature readout class: the phase magnitude. +theta and -theta are
// indistinguishable.
double x_quadrature_class(double signed_phase);

// Nonzero magnitude class reads as even parity, zero as odd.
Parity parity_from_phase_class(double phase_class);

Parity pair_parity(Polarization first, Polarization second, double theta);

struct ParityOutcome {
  Parity parity;       // reported label
  double phase_class;  // theta magnitude for even, 0 for odd
};

struct PcdResult {
  ParityOutcome outcome;
  double probability;    // of the projected branch
  PureState post_state;  // photons retained; the check is nondestructive
};

// (p_even, p_odd) over the equal/unequal-label subspaces at (qubit_i,
// qubit_j); sums to 1 within kTolerance.
std::pair<double, double> pcd_probabilities(const PureState& state,
                                            int qubit_i, int qubit_j);

// Deterministic projection onto one parity subspace. Amplitude ratios within
// the surviving subspace are unchanged. The sign of theta is irrelevant
// because classification goes through the magnitude fold.
PcdResult pcd_project(const PureState& state, int qubit_i, int qubit_j,
                      Parity parity, double theta);

// Samples the parity branch. Consumes one draw for the branch, plus a second
// draw only when the misclassification probability is nonzero.
PcdResult pcd_measure(const PureState& state, int qubit_i, int qubit_j,
                      const ProbeModel& model, RandomSource& rng);

}  // namespace ecsim
