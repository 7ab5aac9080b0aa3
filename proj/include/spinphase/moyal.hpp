// Stratonovich-Weyl kernel, identity kernel, Moyal trikernel, exact and
// leading-order Moyal products, commutator/anticommutator symbols, and the
// large-j scaling studies behind the classical-limit checks.
#pragma once

#include <string>

#include "spinphase/symbols.hpp"

namespace spinphase {

// Delta^j(n) = 4pi sum_{l<=2j,m} Y*_lm(n) Y_lm(J) / a^W_jl; Hermitian,
// trace 2j+1, and (1/(2j+1)) tr(A Delta^j(n)) is the Weyl symbol of A.
OperatorMatrix sw_kernel(Spin spin, Direction n);

// I^j(n1,n2) = sum_{l<=2j} (2l+1)/(4pi) P_l(n1.n2), the reproducing kernel
// on harmonics of degree <= 2j.
double identity_kernel(Spin spin, Direction n1, Direction n2);

// (1/4pi) int field(n) Delta^j(n) dn; inverse of the Weyl symbol map.
// Requires grid exact degree >= 4j.
OperatorMatrix operator_from_symbol(const SymbolField& w_field, Spin spin);

// M_j(n1,n2,n3) = (1/(2j+1)) tr(Delta^j(n1) Delta^j(n2) Delta^j(n3))
cplx trikernel(Spin spin, Direction n1, Direction n2, Direction n3);

// Weyl coefficients of the operator product AB
SymbolCoefficients moyal_exact(const OperatorMatrix& a, const OperatorMatrix& b);

// Two-term Moyal approximation at a point:
//   Phi_A Phi_B + (i/2j_c) n.(grad Phi_A x grad Phi_B),  j_c = sqrt(j(j+1)).
// Both symbols must be of kind W on the same spin.
cplx moyal_leading(const SymbolCoefficients& sa, const SymbolCoefficients& sb,
                   Direction n);

// Weyl coefficients of AB - BA and AB + BA, computed exactly.
SymbolCoefficients commutator_symbol(const OperatorMatrix& a,
                                     const OperatorMatrix& b);
SymbolCoefficients anticommutator_symbol(const OperatorMatrix& a,
                                         const OperatorMatrix& b);

// (a^W_j2 - j(j+1)) / (3 (a^W_j1)^2), the diagonal second-moment constant of
// the trikernel; O(j^-2) and not used elsewhere.
double moment_constant(Spin spin);

// Residuals of one classical-limit identity over a list of j values,
// sup-norm over a degree-4j grid, with the log-log least-squares slope.
struct ScalingStudy {
  std::vector<double> j_values;
  std::vector<double> errors;
  double fitted_slope = 0.0;
  std::string operators;
};

struct BracketScan {
  ScalingStudy commutator;      // Phi_[A,B] - i {Phi_A, Phi_B}_PB
  ScalingStudy anticommutator;  // Phi_{AB+BA} - 2 Phi_A Phi_B
};

// Operator expressions are parsed with the J components scaled to J/j_c, so
// the symbols stay finite as j grows. Requires at least one j; every entry
// must be a half-integer.
BracketScan bracket_scan(const std::string& op_a, const std::string& op_b,
                         const std::vector<Spin>& spins);

// Unweighted least squares slope of log(y) against log(x).
double fit_loglog_slope(const std::vector<double>& x,
                        const std::vector<double>& y);

}  // namespace spinphase
