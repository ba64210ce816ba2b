#include "ecsim/pcd.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace ecsim {
namespace {

void check_pair(const PureState& state, int qubit_i, int qubit_j) {
  const int n = state.photon_count();
  if (qubit_i < 0 || qubit_i >= n || qubit_j < 0 || qubit_j >= n) {
    throw std::out_of_range("parity-check qubit out of range");
  }
  if (qubit_i == qubit_j) {
    throw std::invalid_argument("parity check needs two distinct photons");
  }
}

}  // namespace

void ProbeModel::validate() const {
  if (!(theta > 0.0)) {
    throw std::invalid_argument("probe phase theta must be positive");
  }
  if (!(misclassification_probability >= 0.0 &&
        misclassification_probability < 0.5)) {
    throw std::invalid_argument(
        "misclassification probability must lie in [0, 0.5)");
  }
}

double probe_phase(Polarization first, Polarization second, double theta) {
  if (first != second) return 0.0;
  return first == Polarization::H ? theta : -theta;
}

double x_quadrature_class(double signed_phase) {
  return std::abs(signed_phase);
}

Parity parity_from_phase_class(double phase_class) {
  return phase_class == 0.0 ? Parity::Odd : Parity::Even;
}

Parity pair_parity(Polarization first, Polarization second, double theta) {
  return parity_from_phase_class(
      x_quadrature_class(probe_phase(first, second, theta)));
}

std::pair<double, double> pcd_probabilities(const PureState& state,
                                            int qubit_i, int qubit_j) {
  check_pair(state, qubit_i, qubit_j);
  const int n = state.photon_count();
  const int bi = n - 1 - qubit_i;
  const int bj = n - 1 - qubit_j;
  double even = 0.0;
  double odd = 0.0;
  for (std::size_t k = 0; k < state.dim(); ++k) {
    const bool equal = (((k >> bi) ^ (k >> bj)) & 1u) == 0;
    (equal ? even : odd) += std::norm(state.amplitude(k));
  }
  return {even, odd};
}

PcdResult pcd_project(const PureState& state, int qubit_i, int qubit_j,
                      Parity parity, double theta) {
  check_pair(state, qubit_i, qubit_j);
  const int n = state.photon_count();
  const int bi = n - 1 - qubit_i;
  const int bj = n - 1 - qubit_j;
  std::vector<Complex> out(state.dim(), Complex{});
  double weight = 0.0;
  for (std::size_t k = 0; k < state.dim(); ++k) {
    const auto li = static_cast<Polarization>((k >> bi) & 1u);
    const auto lj = static_cast<Polarization>((k >> bj) & 1u);
    if (pair_parity(li, lj, theta) == parity) {
      out[k] = state.amplitude(k);
      weight += std::norm(out[k]);
    }
  }
  if (!(weight > 0.0)) {
    throw std::invalid_argument("projection onto an empty parity branch");
  }
  const double phase_class =
      parity == Parity::Even ? x_quadrature_class(theta) : 0.0;
  return {{parity, phase_class}, weight, PureState(n, std::move(out))};
}

PcdResult pcd_measure(const PureState& state, int qubit_i, int qubit_j,
                      const ProbeModel& model, RandomSource& rng) {
  model.validate();
  const auto [p_even, p_odd] = pcd_probabilities(state, qubit_i, qubit_j);
  Parity true_parity;
  if (!(p_odd > 0.0)) {
    true_parity = Parity::Even;
  } else if (!(p_even > 0.0)) {
    true_parity = Parity::Odd;
  } else {
    true_parity = rng.next_double() < p_even ? Parity::Even : Parity::Odd;
  }
  PcdResult result =
      pcd_project(state, qubit_i, qubit_j, true_parity, model.theta);
  if (model.misclassification_probability > 0.0 &&
      rng.next_double() < model.misclassification_probability) {
    const Parity reported =
        true_parity == Parity::Even ? Parity::Odd : Parity::Even;
    result.outcome = {reported, reported == Parity::Even
                                    ? x_quadrature_class(model.theta)
                                    : 0.0};
  }
  return result;
}

}  // namespace ecsim
