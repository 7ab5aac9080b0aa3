// P, Q, and Weyl symbols: coefficient formulas, symbol evaluation,
// conversions between kinds (exact and asymptotic), Wigner functions.
#pragma once

#include "spinphase/sphere.hpp"
#include "spinphase/spin.hpp"
#include "spinphase/tensor.hpp"

namespace spinphase {

enum class SymbolKind { P, Q, W };

const char* to_string(SymbolKind kind);

// The symbol of Y_lm(J) of each kind is a^kind_jl Y_lm(n). Product forms:
//   a^Q = prod_{k=1..l} (j - (k-1)/2)
//   a^P = prod_{k=1..l} (j + (k+1)/2)
//   a^W = prod_{k=1..l} sqrt((j+1/2)^2 - k^2/4) = sqrt(a^P a^Q)
// a^Q and a^W vanish for l > 2j.
double coeff_a(SymbolKind kind, Spin spin, int l);

// K_jl = (2l+1) [(2j)!]^2 / ((2j-l)! (2j+l+1)!), factorial-free; requires
// l <= 2j. Satisfies a^Q_jl = ((2j+1)/(2l+1)) K_jl a^P_jl.
double coeff_K(Spin spin, int l);

// Symbol of an operator: harmonic coefficients tagged with kind and spin.
class SymbolCoefficients {
public:
  SymbolCoefficients(Spin spin, SymbolKind kind)
      : spin_(spin), kind_(kind), c_(spin.two_j()) {}

  Spin spin() const { return spin_; }
  SymbolKind kind() const { return kind_; }
  int lmax() const { return c_.lmax(); }

  cplx& at(int l, int m) { return c_.at(l, m); }
  const cplx& at(int l, int m) const { return c_.at(l, m); }
  cplx get(int l, int m) const { return c_.get(l, m); }

  const HarmonicCoefficients& harmonics() const { return c_; }
  HarmonicCoefficients& harmonics() { return c_; }

private:
  Spin spin_;
  SymbolKind kind_;
  HarmonicCoefficients c_;
};

// coefficients of the kind-symbol of A: decompose(A) scaled by a^kind_jl
SymbolCoefficients symbol_of(const OperatorMatrix& a, SymbolKind kind);

cplx eval_symbol(const SymbolCoefficients& s, Direction n);
SymbolField eval_on_grid(const SymbolCoefficients& s, const SphereGrid& grid);

// rescale coefficients by a^to_jl / a^from_jl
SymbolCoefficients convert(const SymbolCoefficients& s, SymbolKind to);

// Grid-space conversions. Smoothing applies
//   ((2j+1)/4pi) int [(1+n.n')/2]^(2j) f(n') dn',
// sharpening the inverse kernel
//   (1/4pi) int G(n,n') f(n') dn',
//   G = sum_{l<=2j} (2l+1) (2j-l)!(2j+l+1)!/((2j)!(2j+1)!) P_l(n.n').
// Both require grid exact degree >= 4j and throw GridDegreeError otherwise.
SymbolField smooth_p_to_q(const SymbolField& p_field, Spin spin);
SymbolField sharpen_q_to_p(const SymbolField& q_field, Spin spin);

// Truncated large-j series for a^to_jl / a^from_jl with L = l(l+1):
//   Q->P: 1 + L/2j + L(L-2)/8j^2 + L(L-2)(L-3)/48j^3
//   W->P: 1 + L/4j + L(L-4)/32j^2 + L(L^2-8L+24)/384j^3
// order in 0..3; only the pairs above are supported.
double asymptotic_ratio(SymbolKind from, SymbolKind to, double j, int l,
                        int order);

// Weyl symbol of a density matrix sampled on a grid; its (1/4pi) quadrature
// average equals tr(rho)/(2j+1).
SymbolField wigner_function(const OperatorMatrix& rho, const SphereGrid& grid);

inline std::array<cplx, 3> tangential_gradient(const SymbolCoefficients& s,
                                               Direction n) {
  return tangential_gradient(s.harmonics(), n);
}

inline cplx poisson_sphere(const SymbolCoefficients& fa,
                           const SymbolCoefficients& fb, Direction n,
                           double j_c = 1.0) {
  return poisson_sphere(fa.harmonics(), fb.harmonics(), n, j_c);
}

}  // namespace spinphase
