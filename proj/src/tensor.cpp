#include "spinphase/tensor.hpp"

#include <cmath>
#include <numbers>

#include "spinphase/symbols.hpp"

namespace spinphase {

LaurentMatrixPoly::LaurentMatrixPoly(Spin spin)
    : spin_(spin), degree_(0), zero_(spin) {
  coeffs_.push_back(OperatorMatrix::identity(spin));
  const int n = spin.dim();
  const double j = spin.j();
  jp_elem_.assign(n, 0.0);
  jm_elem_.assign(n, 0.0);
  for (int c = 0; c < n; ++c) {
    const double m = spin.m_of(c);
    jp_elem_[c] = std::sqrt(std::max(0.0, (j - m) * (j + m + 1.0)));
    jm_elem_[c] = std::sqrt(std::max(0.0, (j + m) * (j - m + 1.0)));
  }
}

const OperatorMatrix& LaurentMatrixPoly::coeff(int power) const {
  if (power < -degree_ || power > degree_) return zero_;
  return coeffs_[std::size_t(power + degree_)];
}

void LaurentMatrixPoly::mul_generator() {
  const int n = spin_.dim();
  const int new_degree = degree_ + 1;
  std::vector<OperatorMatrix> out(std::size_t(2 * new_degree + 1),
                                  OperatorMatrix(spin_));
  // D_m = Jz C_m - (1/2) J+ C_{m-1} + (1/2) J- C_{m+1}; the generator
  // matrices act on rows (Jz scales, J+/J- shift by one).
  for (int m = -new_degree; m <= new_degree; ++m) {
    OperatorMatrix& d = out[std::size_t(m + new_degree)];
    const OperatorMatrix& c0 = coeff(m);
    const OperatorMatrix& cp = coeff(m - 1);
    const OperatorMatrix& cm = coeff(m + 1);
    for (int r = 0; r < n; ++r) {
      const double mz = spin_.m_of(r);
      for (int c = 0; c < n; ++c) {
        cplx v = mz * c0(r, c);
        if (r + 1 < n) v -= 0.5 * jp_elem_[r + 1] * cp(r + 1, c);
        if (r > 0) v += 0.5 * jm_elem_[r - 1] * cm(r - 1, c);
        d(r, c) = v;
      }
    }
  }
  coeffs_ = std::move(out);
  degree_ = new_degree;
}

OperatorMatrix LaurentMatrixPoly::eval(cplx lambda) const {
  OperatorMatrix out(spin_);
  for (int m = -degree_; m <= degree_; ++m) {
    const cplx lm = std::pow(lambda, m);
    const OperatorMatrix& c = coeff(m);
    for (int r = 0; r < spin_.dim(); ++r)
      for (int col = 0; col < spin_.dim(); ++col) out(r, col) += lm * c(r, col);
  }
  return out;
}

double tensor_prefactor(int l, int m) {
  const int am = std::abs(m);
  // (l+|m|)! (l-|m|)! / (l!)^2 as a ratio product
  long double r = 1.0L;
  for (int i = 1; i <= am; ++i)
    r *= static_cast<long double>(l + i) / static_cast<long double>(l - am + i);
  return std::sqrt((2.0 * l + 1.0) / (4.0 * std::numbers::pi)) *
         double(std::sqrt(r));
}

namespace {

// Y_ll(J) = sqrt((2l+1)/4pi) sqrt(binom(2l,l)) (-J+/2)^l, a single positive
// diagonal product (no cancellation).
OperatorMatrix tensor_top(Spin spin, int l) {
  const int n = spin.dim();
  const double j = spin.j();
  OperatorMatrix t(spin);
  double pref = std::sqrt((2.0 * l + 1.0) / (4.0 * std::numbers::pi) *
                          binomial(2 * l, l));
  if (l & 1) pref = -pref;
  for (int c = l; c < n; ++c) {
    double prod = pref;
    for (int k = 0; k < l; ++k) {
      const double m = spin.m_of(c - k);
      prod *= 0.5 * std::sqrt((j - m) * (j + m + 1.0));
    }
    t(c - l, c) = prod;
  }
  return t;
}

// one covariance ladder step: Y_{l,m-1} = [J-, Y_lm] / sqrt((l+m)(l-m+1)).
// J- acts as a band shift, so x is consumed entry by entry.
void ladder_down(Spin spin, int l, int m, const OperatorMatrix& x,
                 OperatorMatrix& out, const std::vector<double>& jm_elem) {
  const int n = spin.dim();
  const double s = std::sqrt(double(l + m) * (l - m + 1));
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      cplx v = 0.0;
      if (r > 0) v += jm_elem[r - 1] * x(r - 1, c);
      if (c + 1 < n) v -= x(r, c + 1) * jm_elem[c];
      out(r, c) = v / s;
    }
}

std::vector<double> jm_elements(Spin spin) {
  const int n = spin.dim();
  const double j = spin.j();
  std::vector<double> e(n, 0.0);
  for (int c = 0; c < n; ++c) {
    const double m = spin.m_of(c);
    e[c] = std::sqrt(std::max(0.0, (j + m) * (j - m + 1.0)));
  }
  return e;
}

}  // namespace

OperatorMatrix tensor_op(Spin spin, int l, int m) {
  if (l < 0 || std::abs(m) > l)
    throw std::domain_error("tensor_op: require l >= 0 and |m| <= l");
  if (l > spin.two_j()) return OperatorMatrix(spin);  // identically zero
  const std::vector<double> jme = jm_elements(spin);
  OperatorMatrix x = tensor_top(spin, l);
  OperatorMatrix next(spin);
  for (int mm = l; mm > m; --mm) {
    ladder_down(spin, l, mm, x, next, jme);
    std::swap(x, next);
  }
  return x;
}

bool adjoint_check(Spin spin, int l, int m) {
  const OperatorMatrix lhs = tensor_op(spin, l, m).adjoint();
  OperatorMatrix rhs = tensor_op(spin, l, -m);
  if (m & 1) rhs *= -1.0;
  return (lhs - rhs).max_abs() < 1e-12;
}

void for_each_tensor_op(
    Spin spin, int lmax,
    const std::function<void(int l, int m, const OperatorMatrix&)>& fn) {
  const std::vector<double> jme = jm_elements(spin);
  OperatorMatrix x(spin), next(spin);
  for (int l = 0; l <= lmax; ++l) {
    if (l > spin.two_j()) {
      // representation-theoretic truncation: Y_lm(J) = 0 above l = 2j
      OperatorMatrix zero(spin);
      for (int m = -l; m <= l; ++m) fn(l, m, zero);
      continue;
    }
    x = tensor_top(spin, l);
    fn(l, l, x);
    for (int m = l; m > -l; --m) {
      ladder_down(spin, l, m, x, next, jme);
      std::swap(x, next);
      fn(l, m - 1, x);
    }
  }
}

TensorDecomposition decompose(const OperatorMatrix& a) {
  const Spin spin = a.spin();
  const int dim = spin.dim();
  {
    const double top = coeff_a(SymbolKind::W, spin, spin.two_j());
    if (!std::isfinite(top * top))
      throw std::overflow_error(
          "decompose: (a^W)^2 exceeds the double range at this spin (supported up to 2j = 98)");
  }
  TensorDecomposition d(spin);
  for_each_tensor_op(spin, spin.two_j(),
                     [&](int l, int m, const OperatorMatrix& ylm) {
                       const double aw = coeff_a(SymbolKind::W, spin, l);
                       d.coeffs.at(l, m) = 4.0 * std::numbers::pi *
                                           frobenius_inner(a, ylm) /
                                           (double(dim) * aw * aw);
                     });
  return d;
}

OperatorMatrix reconstruct(const TensorDecomposition& d) {
  OperatorMatrix out(d.spin);
  const int n = d.spin.dim();
  for_each_tensor_op(d.spin, d.spin.two_j(),
                     [&](int l, int m, const OperatorMatrix& ylm) {
                       const cplx c = d.coeffs.at(l, m);
                       if (c == cplx(0.0)) return;
                       for (int r = 0; r < n; ++r)
                         for (int col = 0; col < n; ++col)
                           out(r, col) += c * ylm(r, col);
                     });
  return out;
}

}  // namespace spinphase
