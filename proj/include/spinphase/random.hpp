// Seeded, reproducible random values. The uniform source is the standard
// mt19937_64 output sequence; normals are derived by Box-Muller so runs with
// equal seeds produce identical streams.
#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "spinphase/spin.hpp"

namespace spinphase {

class SeededRng {
public:
  explicit SeededRng(std::uint64_t seed) : eng_(seed) {}

  double uniform() {  // [0,1)
    return double(eng_() >> 11) * 0x1.0p-53;
  }

  double normal() {
    const double u1 = 1.0 - uniform();  // (0,1]
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

  cplx complex_normal() {
    const double re = normal();
    const double im = normal();
    return {re, im};
  }

  Direction direction() {
    const double ct = 1.0 - 2.0 * uniform();
    return {std::acos(ct), 2.0 * std::numbers::pi * uniform()};
  }

private:
  std::mt19937_64 eng_;
};

// Hermitian matrix with gaussian entries, (G + G^dag)/2.
OperatorMatrix random_hermitian(Spin spin, SeededRng& rng);

// Density matrix G G^dag / tr(G G^dag) with gaussian G.
OperatorMatrix random_density(Spin spin, SeededRng& rng);

// Normalized state with gaussian amplitudes.
StateVector random_pure_state(Spin spin, SeededRng& rng);

}  // namespace spinphase
