#include "ecsim/ecp.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace ecsim {
namespace {

void check_rounds(int rounds) {
  if (rounds < 1) {
    throw std::invalid_argument("round count must be at least 1");
  }
}

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

}  // namespace

SchmidtCoefficients::SchmidtCoefficients(double a_in, double b_in)
    : a(a_in), b(b_in) {
  const double n2 = a * a + b * b;
  if (!(n2 > 0.0) || !std::isfinite(n2)) {
    throw std::invalid_argument("coefficients must have positive norm");
  }
  const double inv = 1.0 / std::sqrt(n2);
  a *= inv;
  b *= inv;
  if (a < 0.0) {  // absorb the global phase
    a = -a;
    b = -b;
  }
  if (a == 0.0) b = std::abs(b);
  if (b == 0.0) b = 0.0;  // clear a negative zero
}

SchmidtCoefficients SchmidtCoefficients::from_alpha_sq(double alpha_sq) {
  if (!(alpha_sq >= 0.0 && alpha_sq <= 1.0)) {
    throw std::invalid_argument("alpha^2 must lie in [0, 1]");
  }
  return {std::sqrt(alpha_sq), std::sqrt(1.0 - alpha_sq)};
}

SchmidtCoefficients SchmidtCoefficients::from_entanglement(
    double entanglement) {
  if (!(entanglement >= 0.0 && entanglement <= 1.0)) {
    throw std::invalid_argument("entanglement must lie in [0, 1]");
  }
  return from_alpha_sq(entanglement / 2.0);
}

PureState prepare_ancilla() {
  return PureState(1, {Complex{kInvSqrt2}, Complex{kInvSqrt2}});
}

ProjectionBasis projection_basis(SchmidtCoefficients c) {
  MeasurementBasis basis({Complex{c.a}, Complex{-c.b}},
                         {Complex{c.b}, Complex{c.a}});
  return {std::move(basis), std::atan2(-c.b, c.a)};
}

SchmidtCoefficients failure_coefficients(SchmidtCoefficients c) {
  // The constructor divides out sqrt(a^4 + b^4) and keeps b' <= 0.
  return {c.a * c.a, -(c.b * c.b)};
}

RoundDistribution round_exact(SchmidtCoefficients c) {
  const double a2 = c.alpha_sq();
  const double b2 = c.beta_sq();
  return {2.0 * a2 * b2, a2 * a2 + b2 * b2, failure_coefficients(c)};
}

PureState ghz_state(int n_photons, SchmidtCoefficients c) {
  if (n_photons < 1 || n_photons > kMaxPhotons) {
    throw std::length_error("photon count outside the register cap");
  }
  std::vector<Complex> amps(std::size_t{1} << n_photons, Complex{});
  amps.front() = c.a;
  amps.back() = c.b;
  return PureState(n_photons, std::move(amps));
}

PureState ghz_target(int n_photons) {
  return ghz_state(n_photons, SchmidtCoefficients(1.0, 1.0));
}

bool ghz_consistent(const PureState& state, SchmidtCoefficients c,
                    double tolerance) {
  return std::abs(fidelity(state, ghz_state(state.photon_count(), c)) - 1.0) <=
         tolerance;
}

RoundResult round_statevector(const PureState& state, int alice_qubit,
                              SchmidtCoefficients c, const ProbeModel& model,
                              RandomSource& rng) {
  model.validate();
  if (alice_qubit < 0 || alice_qubit >= state.photon_count()) {
    throw std::out_of_range("alice_qubit out of range");
  }
  assert(model.misclassification_probability > 0.0 || ghz_consistent(state, c));

  PureState work = tensor(state, prepare_ancilla());
  const int ancilla = state.photon_count();

  PcdResult parity = pcd_measure(work, alice_qubit, ancilla, model, rng);
  work = std::move(parity.post_state);
  const bool flipped = parity.outcome.parity == Parity::Odd;
  if (flipped) {
    work = apply_unitary(work, ancilla, SingleQubitUnitary::bit_flip());
  }

  const ProjectionBasis basis = projection_basis(c);
  QubitMeasurement projection =
      measure_qubit(work, ancilla, basis.basis, rng.next_double());

  const RoundDistribution dist = round_exact(c);
  const bool success = projection.outcome == BasisBranch::VPerp;
  RoundOutcome outcome{
      success ? Verdict::Success : Verdict::Failure, dist.p_success,
      success ? std::nullopt
              : std::optional<SchmidtCoefficients>(dist.failure)};
  RoundRecord record{parity.outcome, parity.probability, flipped,
                     projection.outcome, projection.probability};
  return {std::move(outcome), std::move(projection.post_state), record};
}

double total_success_probability(SchmidtCoefficients c, int rounds) {
  check_rounds(rounds);
  double total = 0.0;
  double weight = 1.0;
  SchmidtCoefficients level = c;
  for (int k = 1; k <= rounds; ++k) {
    const RoundDistribution dist = round_exact(level);
    total += weight * dist.p_success;
    weight *= dist.p_failure;
    level = dist.failure;
  }
  return total;
}

double success_probability_series(SchmidtCoefficients c, int rounds) {
  check_rounds(rounds);
  const double a2 = c.alpha_sq();
  const double b2 = c.beta_sq();
  if (a2 == 0.0 || b2 == 0.0) return 0.0;
  const double log_a = std::log(std::abs(c.a));
  const double log_b = std::log(std::abs(c.b));
  double denominator_log = 0.0;
  double sum = 0.0;
  for (int k = 1; k <= rounds; ++k) {
    const double e = std::ldexp(1.0, k);  // exponent 2^k
    const double pa = e * log_a;
    const double pb = e * log_b;
    const double high = std::max(pa, pb);
    // log(a^{2^k} + b^{2^k}) via log-sum-exp
    denominator_log += high + std::log1p(std::exp(std::min(pa, pb) - high));
    sum += std::exp(e * (log_a + log_b) - denominator_log);
  }
  return 2.0 * sum;
}

double entanglement(SchmidtCoefficients c) {
  return 2.0 * std::min(c.alpha_sq(), c.beta_sq());
}

GhzReduction ghz_reduce(int n_photons, SchmidtCoefficients c) {
  if (n_photons < 2) {
    throw std::invalid_argument("GHZ reduction needs at least two photons");
  }
  if (n_photons > kMaxPhotons) {
    throw std::length_error("photon count outside the register cap");
  }
  const std::size_t remote_dim = std::size_t{1} << (n_photons - 1);
  return {n_photons, c, 0, remote_dim - 1};
}

ConcentrationReport concentration_report(SchmidtCoefficients c, int rounds) {
  check_rounds(rounds);
  ConcentrationReport report;
  report.rounds.reserve(static_cast<std::size_t>(rounds));
  double weight = 1.0;
  double cumulative = 0.0;
  SchmidtCoefficients level = c;
  for (int k = 1; k <= rounds; ++k) {
    const RoundDistribution dist = round_exact(level);
    const double increment = weight * dist.p_success;
    cumulative += increment;
    report.rounds.push_back(
        {k, level, dist.p_success, weight, increment, cumulative});
    weight *= dist.p_failure;
    level = dist.failure;
  }
  report.total = cumulative;
  return report;
}

ComparisonPoint comparison_curves(SchmidtCoefficients c, int rounds) {
  check_rounds(rounds);
  const double a2 = c.alpha_sq();
  const double b2 = c.beta_sq();

  // Per-system yield of pairwise concentration with failure recycling:
  // Y_k = a^2 b^2 + ((a^4 + b^4)/2) Y_{k-1}(c'), Y_0 = 0, evaluated from the
  // innermost level outwards.
  std::vector<SchmidtCoefficients> levels{c};
  for (int k = 1; k < rounds; ++k) {
    levels.push_back(failure_coefficients(levels.back()));
  }
  double recycled = 0.0;
  for (int k = rounds - 1; k >= 0; --k) {
    const double x = levels[static_cast<std::size_t>(k)].alpha_sq();
    const double y = levels[static_cast<std::size_t>(k)].beta_sq();
    recycled = x * y + ((x * x + y * y) / 2.0) * recycled;
  }

  return {total_success_probability(c, rounds), a2 * b2, recycled,
          std::min(a2, b2)};
}

}  // namespace ecsim
