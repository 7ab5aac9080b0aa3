// Exact finite-dimensional spin algebra: angular momentum matrices,
// coherent states, overlaps, expectation values.
//
// Everything in this library is pure and value-semantic; objects are
// immutable once built, so concurrent calls need no synchronization.
#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace spinphase {

using cplx = std::complex<double>;
using Vec3 = std::array<double, 3>;

inline double dot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}

// Representation label j, stored exactly as the integer 2j.
class Spin {
public:
  explicit Spin(int two_j) : two_j_(two_j) {
    if (two_j < 0)
      throw std::domain_error("Spin: 2j must be a nonnegative integer");
  }

  int two_j() const { return two_j_; }
  int dim() const { return two_j_ + 1; }
  double j() const { return 0.5 * two_j_; }
  // sqrt(j(j+1)), the classical angular momentum magnitude
  double j_c() const;
  // m value of basis index i (m runs j, j-1, ..., -j)
  double m_of(int i) const { return 0.5 * two_j_ - i; }

  friend bool operator==(const Spin& a, const Spin& b) {
    return a.two_j_ == b.two_j_;
  }
  friend bool operator!=(const Spin& a, const Spin& b) { return !(a == b); }

private:
  int two_j_;
};

// Point on the unit sphere, spherical polar angles in radians.
// theta in [0,pi], phi in [0,2pi).
struct Direction {
  double theta = 0.0;
  double phi = 0.0;

  Vec3 unit() const;
};

// Dense complex matrix in the |j,m> basis, m descending from j to -j.
// Row-major storage; entry (r,c) is <j, j-r| A |j, j-c>.
class OperatorMatrix {
public:
  explicit OperatorMatrix(Spin spin)
      : spin_(spin), data_(static_cast<std::size_t>(spin.dim()) * spin.dim()) {}

  static OperatorMatrix identity(Spin spin);

  Spin spin() const { return spin_; }
  int dim() const { return spin_.dim(); }

  cplx& operator()(int r, int c) { return data_[std::size_t(r) * dim() + c]; }
  const cplx& operator()(int r, int c) const {
    return data_[std::size_t(r) * dim() + c];
  }

  OperatorMatrix& operator+=(const OperatorMatrix& o);
  OperatorMatrix& operator-=(const OperatorMatrix& o);
  OperatorMatrix& operator*=(cplx s);

  OperatorMatrix adjoint() const;
  cplx trace() const;
  double max_abs() const;
  double frobenius_norm() const;
  bool is_hermitian(double tol = 1e-12) const;

  // accumulate a*b into *this (used by the hot construction loops)
  void add_product(const OperatorMatrix& a, const OperatorMatrix& b, cplx scale = 1.0);

  const std::vector<cplx>& data() const { return data_; }
  std::vector<cplx>& data() { return data_; }

private:
  Spin spin_;
  std::vector<cplx> data_;
};

OperatorMatrix operator+(OperatorMatrix a, const OperatorMatrix& b);
OperatorMatrix operator-(OperatorMatrix a, const OperatorMatrix& b);
OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b);
OperatorMatrix operator*(cplx s, OperatorMatrix a);
OperatorMatrix operator*(OperatorMatrix a, cplx s);

// tr(a * b^dagger), the Frobenius pairing
cplx frobenius_inner(const OperatorMatrix& a, const OperatorMatrix& b);

// Complex state vector; amplitudes[i] is the |j, j-i> component.
struct StateVector {
  Spin spin;
  std::vector<cplx> amplitudes;

  explicit StateVector(Spin s)
      : spin(s), amplitudes(static_cast<std::size_t>(s.dim())) {}

  double norm() const;
  void normalize();
};

// |psi><psi|
OperatorMatrix outer_product(const StateVector& psi);

struct SpinMatrices {
  OperatorMatrix jx, jy, jz, jp, jm;
};

// Jz diagonal with entries j..-j; Jp/Jm the standard ladder matrices;
// Jx = (Jp+Jm)/2, Jy = (Jp-Jm)/(2i).
SpinMatrices spin_matrices(Spin spin);

// Normalized spin coherent state |n>, the maximal-projection eigenstate of
// J.n. Amplitude of |j,m> is binom(2j,j-m)^(1/2) cos^(j+m)(t/2)
// sin^(j-m)(t/2) e^(i(j-m)phi); regular at both poles.
StateVector coherent_ket(Spin spin, Direction n);

// |<n1|n2>|^2 = [(1 + n1.n2)/2]^(2j)
double overlap_sq(Spin spin, Direction n1, Direction n2);

// <psi|A|psi>; throws std::invalid_argument on spin mismatch
cplx expectation(const StateVector& psi, const OperatorMatrix& a);

// Binomial coefficient; exact 64-bit integer path for n <= 60, multiplicative
// recurrence in floating point above.
double binomial(int n, int k);

}  // namespace spinphase
