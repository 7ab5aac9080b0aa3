#include "spinphase/random.hpp"

namespace spinphase {

OperatorMatrix random_hermitian(Spin spin, SeededRng& rng) {
  const int n = spin.dim();
  OperatorMatrix g(spin);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) g(r, c) = rng.complex_normal();
  OperatorMatrix h(spin);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      h(r, c) = 0.5 * (g(r, c) + std::conj(g(c, r)));
  return h;
}

OperatorMatrix random_density(Spin spin, SeededRng& rng) {
  const int n = spin.dim();
  OperatorMatrix g(spin);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) g(r, c) = rng.complex_normal();
  OperatorMatrix rho = g * g.adjoint();
  rho *= 1.0 / rho.trace().real();
  return rho;
}

StateVector random_pure_state(Spin spin, SeededRng& rng) {
  StateVector psi(spin);
  for (auto& a : psi.amplitudes) a = rng.complex_normal();
  psi.normalize();
  return psi;
}

}  // namespace spinphase
