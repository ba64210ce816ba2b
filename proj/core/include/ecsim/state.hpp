#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace ecsim {

using Complex = std::complex<double>;

// Register cap: dense vectors stay desk-sized (2^20 amplitudes).
inline constexpr int kMaxPhotons = 20;

// Tolerance for all unitarity/normalization checks.
inline constexpr double kTolerance = 1e-12;

// Photon polarization; H encodes to bit 0, V to bit 1.
enum class Polarization : std::uint8_t { H = 0, V = 1 };

// One polarization label per photon; index 0 is the leftmost ket symbol.
using BasisKet = std::vector<Polarization>;

// Basis kets are indexed big-endian by photon: photon 0 owns the most
// significant bit, so |HVH> -> 0b010.
std::size_t basis_index(std::span<const Polarization> labels);
BasisKet basis_labels(std::size_t index, int photon_count);

// Normalized complex amplitude vector over the 2^n polarization kets of an
// n-photon register. Immutable after construction; operations return new
// states, so sharing across workers needs no synchronization.
class PureState {
 public:
  // Takes ownership of the amplitudes and normalizes them. Rejects zero
  // vectors and size mismatches.
  PureState(int photon_count, std::vector<Complex> amplitudes);

  static PureState basis_ket(int photon_count, std::size_t index);
  static PureState basis_ket(std::span<const Polarization> labels);
  static PureState single(Polarization p);

  int photon_count() const { return photon_count_; }
  std::size_t dim() const { return amps_.size(); }
  std::span<const Complex> amplitudes() const { return amps_; }
  const Complex& amplitude(std::size_t index) const { return amps_[index]; }
  double norm_sq() const;

 private:
  int photon_count_;
  std::vector<Complex> amps_;
};

// 2x2 unitary on one photon's polarization, row-major (u00 u01 / u10 u11).
struct SingleQubitUnitary {
  std::array<Complex, 4> m;

  // Validates U^dagger U = I within kTolerance.
  SingleQubitUnitary(Complex u00, Complex u01, Complex u10, Complex u11);

  static SingleQubitUnitary identity();
  static SingleQubitUnitary bit_flip();  // sigma_x = |H><V| + |V><H|
};

// Orthonormal single-qubit basis (v, v_perp); each vector is stored as
// (coefficient of |H>, coefficient of |V>).
struct MeasurementBasis {
  std::array<Complex, 2> v;
  std::array<Complex, 2> v_perp;

  MeasurementBasis(std::array<Complex, 2> v, std::array<Complex, 2> v_perp);

  static MeasurementBasis computational();  // {|H>, |V>}
};

enum class BasisBranch { V, VPerp };

struct QubitMeasurement {
  BasisBranch outcome;
  double probability;    // of the selected branch
  PureState post_state;  // measured photon removed from the register
};

// Kronecker product; photon indices of `left` precede those of `right`.
// Throws std::length_error when the combined register exceeds kMaxPhotons.
PureState tensor(const PureState& left, const PureState& right);

PureState apply_unitary(const PureState& state, int qubit,
                        const SingleQubitUnitary& u);

// (p_v, p_v_perp); sums to 1 within kTolerance for a normalized state.
std::pair<double, double> branch_probabilities(const PureState& state,
                                               int qubit,
                                               const MeasurementBasis& basis);

// Deterministic projection onto one branch; the detector absorbs the photon,
// so the post-state has one photon fewer. Throws on a zero-probability
// branch.
QubitMeasurement project_qubit(const PureState& state, int qubit,
                               const MeasurementBasis& basis,
                               BasisBranch branch);

// Samples a branch by comparing `draw` (uniform in [0,1)) against the
// v-branch probability.
QubitMeasurement measure_qubit(const PureState& state, int qubit,
                               const MeasurementBasis& basis, double draw);

// |<target|state>|^2; insensitive to global phase by construction.
double fidelity(const PureState& state, const PureState& target);

}  // namespace ecsim
