// Spherical-harmonic tensor operators Y_lm(J) built from the operator
// Herglotz generating function, and the decomposition of arbitrary operators
// over that basis.
#pragma once

#include <functional>

#include "spinphase/sphere.hpp"
#include "spinphase/spin.hpp"

namespace spinphase {

// Laurent polynomial in the Herglotz parameter lambda with matrix-valued
// coefficients; powers run -degree()..degree(). Holds (Jz - (lambda/2)J+ +
// (1/2 lambda)J-)^l during the basis construction.
class LaurentMatrixPoly {
public:
  // lambda^0 -> identity
  explicit LaurentMatrixPoly(Spin spin);

  Spin spin() const { return spin_; }
  int degree() const { return degree_; }

  // coefficient of lambda^power (zero matrix outside -degree..degree)
  const OperatorMatrix& coeff(int power) const;

  // multiply in place by (Jz - (lambda/2)J+ + (1/2 lambda)J-)
  void mul_generator();

  // sum_m lambda^m C_m evaluated at a numeric lambda (test hook)
  OperatorMatrix eval(cplx lambda) const;

private:
  Spin spin_;
  int degree_;
  std::vector<OperatorMatrix> coeffs_;  // index = power + degree_
  std::vector<double> jp_elem_;         // superdiagonal of J+
  std::vector<double> jm_elem_;         // subdiagonal of J-
  OperatorMatrix zero_;
};

// Y_lm(J) = sqrt((2l+1)/4pi) sqrt((l+m)!(l-m)!) / l! x
//           [coefficient of lambda^m in (Jz - (lambda/2)J+ + (1/2 lambda)J-)^l].
// Returns the zero matrix for l > 2j. Throws std::domain_error for |m| > l.
OperatorMatrix tensor_op(Spin spin, int l, int m);

// sqrt((2l+1)/4pi) sqrt((l+m)!(l-m)!) / l!, via ratio products
double tensor_prefactor(int l, int m);

// true iff || Y_lm(J)^dagger - (-1)^m Y_{l,-m}(J) ||_max < 1e-12
bool adjoint_check(Spin spin, int l, int m);

// Walks l = 0..lmax and visits every Y_lm once, reusing one Laurent
// polynomial; the matrix reference is only valid during the call.
void for_each_tensor_op(
    Spin spin, int lmax,
    const std::function<void(int l, int m, const OperatorMatrix&)>& fn);

// Expansion coefficients of an operator over the Y_lm(J), l <= 2j.
struct TensorDecomposition {
  Spin spin;
  HarmonicCoefficients coeffs;

  explicit TensorDecomposition(Spin s) : spin(s), coeffs(s.two_j()) {}
};

// c_lm = 4pi tr(A Y_lm^dagger) / ((2j+1) (a^W_jl)^2)
TensorDecomposition decompose(const OperatorMatrix& a);

// sum_lm c_lm Y_lm(J)
OperatorMatrix reconstruct(const TensorDecomposition& d);

}  // namespace spinphase
