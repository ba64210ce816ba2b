#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "ecsim/rng.hpp"
#include "ecsim/state.hpp"

namespace ecsim::testing {

// Replays a fixed list of draws; used to force specific branches.
struct ScriptedSource final : RandomSource {
  std::vector<double> draws;
  std::size_t next = 0;

  explicit ScriptedSource(std::vector<double> d) : draws(std::move(d)) {}

  double next_double() override {
    if (next >= draws.size()) {
      throw std::runtime_error("scripted draws exhausted");
    }
    return draws[next++];
  }
};

inline bool close(double x, double y, double tol = 1e-12) {
  return std::abs(x - y) <= tol;
}

inline bool close(const Complex& x, const Complex& y, double tol = 1e-12) {
  return std::abs(x - y) <= tol;
}

// Random normalized state over n photons, components uniform in the square.
inline PureState random_state(int photon_count, RandomSource& rng) {
  std::vector<Complex> amps(std::size_t{1} << photon_count);
  for (Complex& a : amps) {
    a = Complex{2.0 * rng.next_double() - 1.0, 2.0 * rng.next_double() - 1.0};
  }
  return PureState(photon_count, std::move(amps));
}

// Haar-ish random single-qubit unitary from three angles: enough to exercise
// norm preservation on arbitrary rotations.
inline SingleQubitUnitary random_unitary(RandomSource& rng) {
  const double t = 3.14159265358979323846 * rng.next_double();
  const double p = 6.28318530717958647692 * rng.next_double();
  const double q = 6.28318530717958647692 * rng.next_double();
  const Complex zp{std::cos(p), std::sin(p)};
  const Complex zq{std::cos(q), std::sin(q)};
  const double c = std::cos(t);
  const double s = std::sin(t);
  return {zp * c, zq * s, -std::conj(zq) * s, std::conj(zp) * c};
}

}  // namespace ecsim::testing
