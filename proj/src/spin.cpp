#include "spinphase/spin.hpp"

#include <cmath>

namespace spinphase {

double Spin::j_c() const {
  const double jj = j();
  return std::sqrt(jj * (jj + 1.0));
}

Vec3 Direction::unit() const {
  const double st = std::sin(theta);
  return {st * std::cos(phi), st * std::sin(phi), std::cos(theta)};
}

OperatorMatrix OperatorMatrix::identity(Spin spin) {
  OperatorMatrix m(spin);
  for (int i = 0; i < spin.dim(); ++i) m(i, i) = 1.0;
  return m;
}

OperatorMatrix& OperatorMatrix::operator+=(const OperatorMatrix& o) {
  if (spin_ != o.spin_)
    throw std::invalid_argument("OperatorMatrix: incompatible spins");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

OperatorMatrix& OperatorMatrix::operator-=(const OperatorMatrix& o) {
  if (spin_ != o.spin_)
    throw std::invalid_argument("OperatorMatrix: incompatible spins");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

OperatorMatrix& OperatorMatrix::operator*=(cplx s) {
  for (auto& v : data_) v *= s;
  return *this;
}

OperatorMatrix OperatorMatrix::adjoint() const {
  OperatorMatrix out(spin_);
  const int n = dim();
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) out(r, c) = std::conj((*this)(c, r));
  return out;
}

cplx OperatorMatrix::trace() const {
  cplx t = 0.0;
  for (int i = 0; i < dim(); ++i) t += (*this)(i, i);
  return t;
}

double OperatorMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& v : data_) m = std::max(m, std::abs(v));
  return m;
}

double OperatorMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& v : data_) s += std::norm(v);
  return std::sqrt(s);
}

bool OperatorMatrix::is_hermitian(double tol) const {
  const int n = dim();
  for (int r = 0; r < n; ++r)
    for (int c = r; c < n; ++c)
      if (std::abs((*this)(r, c) - std::conj((*this)(c, r))) > tol) return false;
  return true;
}

void OperatorMatrix::add_product(const OperatorMatrix& a,
                                 const OperatorMatrix& b, cplx scale) {
  if (spin_ != a.spin_ || spin_ != b.spin_)
    throw std::invalid_argument("OperatorMatrix: incompatible spins");
  const int n = dim();
  for (int r = 0; r < n; ++r) {
    for (int k = 0; k < n; ++k) {
      const cplx ark = scale * a(r, k);
      if (ark == cplx(0.0)) continue;
      const cplx* brow = &b.data_[std::size_t(k) * n];
      cplx* orow = &data_[std::size_t(r) * n];
      for (int c = 0; c < n; ++c) orow[c] += ark * brow[c];
    }
  }
}

OperatorMatrix operator+(OperatorMatrix a, const OperatorMatrix& b) {
  a += b;
  return a;
}

OperatorMatrix operator-(OperatorMatrix a, const OperatorMatrix& b) {
  a -= b;
  return a;
}

OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b) {
  OperatorMatrix out(a.spin());
  out.add_product(a, b);
  return out;
}

OperatorMatrix operator*(cplx s, OperatorMatrix a) {
  a *= s;
  return a;
}

OperatorMatrix operator*(OperatorMatrix a, cplx s) {
  a *= s;
  return a;
}

cplx frobenius_inner(const OperatorMatrix& a, const OperatorMatrix& b) {
  if (a.spin() != b.spin())
    throw std::invalid_argument("frobenius_inner: incompatible spins");
  cplx s = 0.0;
  const auto& da = a.data();
  const auto& db = b.data();
  for (std::size_t i = 0; i < da.size(); ++i) s += da[i] * std::conj(db[i]);
  return s;
}

double StateVector::norm() const {
  double s = 0.0;
  for (const auto& v : amplitudes) s += std::norm(v);
  return std::sqrt(s);
}

void StateVector::normalize() {
  const double n = norm();
  if (n > 0.0)
    for (auto& v : amplitudes) v /= n;
}

OperatorMatrix outer_product(const StateVector& psi) {
  OperatorMatrix out(psi.spin);
  const int n = psi.spin.dim();
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      out(r, c) = psi.amplitudes[r] * std::conj(psi.amplitudes[c]);
  return out;
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  if (k > n - k) k = n - k;
  if (n <= 60) {
    // exact: C(60,30) and every intermediate fit in 64 bits
    std::uint64_t b = 1;
    for (int i = 1; i <= k; ++i) b = b * std::uint64_t(n - k + i) / std::uint64_t(i);
    return double(b);
  }
  double b = 1.0;
  for (int i = 1; i <= k; ++i) b *= double(n - k + i) / double(i);
  return b;
}

SpinMatrices spin_matrices(Spin spin) {
  const int n = spin.dim();
  const double j = spin.j();
  OperatorMatrix jz(spin), jp(spin), jm(spin);
  for (int c = 0; c < n; ++c) {
    const double m = spin.m_of(c);
    jz(c, c) = m;
    if (c > 0) jp(c - 1, c) = std::sqrt((j - m) * (j + m + 1.0));
    if (c + 1 < n) jm(c + 1, c) = std::sqrt((j + m) * (j - m + 1.0));
  }
  OperatorMatrix jx = 0.5 * (jp + jm);
  OperatorMatrix jy = cplx(0.0, -0.5) * (jp - jm);
  return {std::move(jx), std::move(jy), std::move(jz), std::move(jp),
          std::move(jm)};
}

StateVector coherent_ket(Spin spin, Direction n) {
  const double ch = std::cos(0.5 * n.theta);
  const double sh = std::sin(0.5 * n.theta);
  StateVector psi(spin);
  const int dim = spin.dim();
  for (int i = 0; i < dim; ++i) {
    // j - m = i, j + m = 2j - i
    const double mag = std::sqrt(binomial(spin.two_j(), i)) *
                       std::pow(ch, double(spin.two_j() - i)) *
                       std::pow(sh, double(i));
    psi.amplitudes[i] = std::polar(mag, double(i) * n.phi);
  }
  psi.normalize();
  return psi;
}

double overlap_sq(Spin spin, Direction n1, Direction n2) {
  const double c = dot(n1.unit(), n2.unit());
  return std::pow(0.5 * (1.0 + c), double(spin.two_j()));
}

cplx expectation(const StateVector& psi, const OperatorMatrix& a) {
  if (psi.spin != a.spin())
    throw std::invalid_argument("expectation: state and operator have incompatible spins");
  const int n = a.dim();
  cplx s = 0.0;
  for (int r = 0; r < n; ++r) {
    cplx row = 0.0;
    for (int c = 0; c < n; ++c) row += a(r, c) * psi.amplitudes[c];
    s += std::conj(psi.amplitudes[r]) * row;
  }
  return s;
}

}  // namespace spinphase
