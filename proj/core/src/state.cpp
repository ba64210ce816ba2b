#include "ecsim/state.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ecsim {
namespace {

// Bit position of a photon index in the big-endian layout.
int bit_of(int photon_count, int qubit) { return photon_count - 1 - qubit; }

void check_qubit(const PureState& state, int qubit) {
  if (qubit < 0 || qubit >= state.photon_count()) {
    throw std::out_of_range("qubit " + std::to_string(qubit) +
                            " out of range for " +
                            std::to_string(state.photon_count()) + " photons");
  }
}

void check_photon_count(int photon_count) {
  if (photon_count < 0 || photon_count > kMaxPhotons) {
    throw std::length_error("photon count " + std::to_string(photon_count) +
                            " outside [0, " + std::to_string(kMaxPhotons) +
                            "]");
  }
}

// Overlap of the (conjugated) single-qubit vector with the indexed photon,
// laid out over the remaining register. Returns the unnormalized component
// and its squared norm.
std::vector<Complex> reduce_on_qubit(const PureState& state, int qubit,
                                     const std::array<Complex, 2>& vec,
                                     double& weight_out) {
  const std::size_t stride =
      std::size_t{1} << bit_of(state.photon_count(), qubit);
  const std::size_t dim = state.dim();
  std::vector<Complex> reduced(dim / 2);
  const Complex w0 = std::conj(vec[0]);
  const Complex w1 = std::conj(vec[1]);
  double weight = 0.0;
  std::size_t r = 0;
  for (std::size_t base = 0; base < dim; base += 2 * stride) {
    for (std::size_t k = 0; k < stride; ++k, ++r) {
      const Complex amp = w0 * state.amplitude(base + k) +
                          w1 * state.amplitude(base + k + stride);
      reduced[r] = amp;
      weight += std::norm(amp);
    }
  }
  weight_out = weight;
  return reduced;
}

}  // namespace

std::size_t basis_index(std::span<const Polarization> labels) {
  std::size_t index = 0;
  for (Polarization p : labels) {
    index = (index << 1) | static_cast<std::size_t>(p);
  }
  return index;
}

BasisKet basis_labels(std::size_t index, int photon_count) {
  check_photon_count(photon_count);
  BasisKet labels(static_cast<std::size_t>(photon_count));
  for (int q = 0; q < photon_count; ++q) {
    labels[static_cast<std::size_t>(q)] =
        static_cast<Polarization>((index >> bit_of(photon_count, q)) & 1u);
  }
  return labels;
}

PureState::PureState(int photon_count, std::vector<Complex> amplitudes)
    : photon_count_(photon_count), amps_(std::move(amplitudes)) {
  check_photon_count(photon_count);
  if (amps_.size() != (std::size_t{1} << photon_count_)) {
    throw std::invalid_argument("amplitude vector size must be 2^n");
  }
  double n2 = 0.0;
  for (const Complex& a : amps_) n2 += std::norm(a);
  if (!(n2 > 0.0) || !std::isfinite(n2)) {
    throw std::invalid_argument("zero or non-finite amplitude vector");
  }
  const double inv = 1.0 / std::sqrt(n2);
  for (Complex& a : amps_) a *= inv;
}

PureState PureState::basis_ket(int photon_count, std::size_t index) {
  check_photon_count(photon_count);
  std::vector<Complex> amps(std::size_t{1} << photon_count, Complex{});
  if (index >= amps.size()) {
    throw std::out_of_range("basis index out of range");
  }
  amps[index] = 1.0;
  return PureState(photon_count, std::move(amps));
}

PureState PureState::basis_ket(std::span<const Polarization> labels) {
  return basis_ket(static_cast<int>(labels.size()), basis_index(labels));
}

PureState PureState::single(Polarization p) {
  return basis_ket(1, static_cast<std::size_t>(p));
}

double PureState::norm_sq() const {
  double n2 = 0.0;
  for (const Complex& a : amps_) n2 += std::norm(a);
  return n2;
}

SingleQubitUnitary::SingleQubitUnitary(Complex u00, Complex u01, Complex u10,
                                       Complex u11)
    : m{u00, u01, u10, u11} {
  const Complex g00 = std::conj(u00) * u00 + std::conj(u10) * u10;
  const Complex g01 = std::conj(u00) * u01 + std::conj(u10) * u11;
  const Complex g11 = std::conj(u01) * u01 + std::conj(u11) * u11;
  if (std::abs(g00 - 1.0) > kTolerance || std::abs(g11 - 1.0) > kTolerance ||
      std::abs(g01) > kTolerance) {
    throw std::invalid_argument("matrix is not unitary");
  }
}

SingleQubitUnitary SingleQubitUnitary::identity() {
  return {Complex{1.0}, Complex{}, Complex{}, Complex{1.0}};
}

SingleQubitUnitary SingleQubitUnitary::bit_flip() {
  return {Complex{}, Complex{1.0}, Complex{1.0}, Complex{}};
}

MeasurementBasis::MeasurementBasis(std::array<Complex, 2> v_in,
                                   std::array<Complex, 2> v_perp_in)
    : v(v_in), v_perp(v_perp_in) {
  const double nv = std::norm(v[0]) + std::norm(v[1]);
  const double np = std::norm(v_perp[0]) + std::norm(v_perp[1]);
  const Complex overlap =
      std::conj(v[0]) * v_perp[0] + std::conj(v[1]) * v_perp[1];
  if (std::abs(nv - 1.0) > kTolerance || std::abs(np - 1.0) > kTolerance ||
      std::abs(overlap) > kTolerance) {
    throw std::invalid_argument("basis vectors are not orthonormal");
  }
}

MeasurementBasis MeasurementBasis::computational() {
  return {{Complex{1.0}, Complex{}}, {Complex{}, Complex{1.0}}};
}

PureState tensor(const PureState& left, const PureState& right) {
  const int combined = left.photon_count() + right.photon_count();
  if (combined > kMaxPhotons) {
    throw std::length_error("tensor product exceeds the photon register cap");
  }
  std::vector<Complex> out;
  out.reserve(left.dim() * right.dim());
  for (const Complex& l : left.amplitudes()) {
    for (const Complex& r : right.amplitudes()) {
      out.push_back(l * r);
    }
  }
  return PureState(combined, std::move(out));
}

PureState apply_unitary(const PureState& state, int qubit,
                        const SingleQubitUnitary& u) {
  check_qubit(state, qubit);
  const std::size_t stride =
      std::size_t{1} << bit_of(state.photon_count(), qubit);
  std::vector<Complex> out(state.amplitudes().begin(),
                           state.amplitudes().end());
  for (std::size_t base = 0; base < out.size(); base += 2 * stride) {
    for (std::size_t k = 0; k < stride; ++k) {
      const Complex a0 = out[base + k];
      const Complex a1 = out[base + k + stride];
      out[base + k] = u.m[0] * a0 + u.m[1] * a1;
      out[base + k + stride] = u.m[2] * a0 + u.m[3] * a1;
    }
  }
  return PureState(state.photon_count(), std::move(out));
}

std::pair<double, double> branch_probabilities(const PureState& state,
                                               int qubit,
                                               const MeasurementBasis& basis) {
  check_qubit(state, qubit);
  double p_v = 0.0;
  double p_perp = 0.0;
  reduce_on_qubit(state, qubit, basis.v, p_v);
  reduce_on_qubit(state, qubit, basis.v_perp, p_perp);
  return {p_v, p_perp};
}

QubitMeasurement project_qubit(const PureState& state, int qubit,
                               const MeasurementBasis& basis,
                               BasisBranch branch) {
  check_qubit(state, qubit);
  double p = 0.0;
  auto reduced = reduce_on_qubit(
      state, qubit, branch == BasisBranch::V ? basis.v : basis.v_perp, p);
  if (!(p > 0.0)) {
    throw std::invalid_argument("projection onto a zero-probability branch");
  }
  return {branch, p, PureState(state.photon_count() - 1, std::move(reduced))};
}

QubitMeasurement measure_qubit(const PureState& state, int qubit,
                               const MeasurementBasis& basis, double draw) {
  check_qubit(state, qubit);
  assert(draw >= 0.0 && draw < 1.0);
  const auto [p_v, p_perp] = branch_probabilities(state, qubit, basis);
  BasisBranch branch = draw < p_v ? BasisBranch::V : BasisBranch::VPerp;
  // A draw in the rounding sliver above p_v must not select an empty branch.
  if (branch == BasisBranch::VPerp && !(p_perp > 0.0)) branch = BasisBranch::V;
  return project_qubit(state, qubit, basis, branch);
}

double fidelity(const PureState& state, const PureState& target) {
  if (state.dim() != target.dim()) {
    throw std::invalid_argument("fidelity requires equal dimensions");
  }
  Complex overlap{};
  for (std::size_t i = 0; i < state.dim(); ++i) {
    overlap += std::conj(target.amplitude(i)) * state.amplitude(i);
  }
  return std::norm(overlap);
}

}  // namespace ecsim
