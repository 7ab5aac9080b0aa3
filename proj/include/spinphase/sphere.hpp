// Surface spherical harmonics, Legendre polynomials, sphere quadrature,
// tangential derivatives, and the sphere Poisson bracket.
//
// Phase and normalization convention, used by every module: Y_lm carries the
// Condon-Shortley phase fixed by the Herglotz generating function
//
//   e^(zeta a.r) = sum_lm sqrt(4pi/(2l+1)) r^l zeta^l lambda^m
//                     / sqrt((l+m)!(l-m)!) Y_lm(n),
//   a = z_hat - (lambda/2)(x_hat + i y_hat) + (1/2 lambda)(x_hat - i y_hat),
//
// so that Y_11 = -sqrt(3/8pi) sin(theta) e^(i phi), the integral of |Y_lm|^2
// over the sphere is 1, and Y*_lm = (-1)^m Y_{l,-m}.
#pragma once

#include <memory>
#include <stdexcept>

#include "spinphase/spin.hpp"

namespace spinphase {

// Thrown when a grid is too coarse for the requested operation.
struct GridDegreeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Quadrature nodes (theta,phi) with solid-angle weights (steradian).
// Tensor grid: Gauss-Legendre in cos(theta) times uniform phi. Integrates any
// product of surface harmonics of total degree <= exact_degree() exactly.
// Node ordering is theta-major: node(it*n_phi + ip) = (theta_it, phi_ip).
// Immutable and cheap to copy.
class SphereGrid {
public:
  // Smallest tensor grid exact to the given degree, with one extra node in
  // each factor beyond the exactness bound.
  static SphereGrid for_degree(int exact_degree);
  // Explicit node counts (the CLI override); exact degree is derived as
  // min(2*n_theta - 1, n_phi - 1).
  static SphereGrid with_counts(int n_theta, int n_phi);

  const std::vector<Direction>& nodes() const;
  const std::vector<double>& weights() const;
  int exact_degree() const;
  int n_theta() const;
  int n_phi() const;
  std::size_t size() const { return nodes().size(); }

  struct Impl;  // opaque; defined in sphere.cpp

private:
  explicit SphereGrid(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

inline SphereGrid quadrature_grid(int exact_degree) {
  return SphereGrid::for_degree(exact_degree);
}

// Sampled complex values of a function on a SphereGrid, one per node.
struct SymbolField {
  SphereGrid grid;
  std::vector<cplx> values;

  SymbolField(SphereGrid g, std::vector<cplx> v)
      : grid(std::move(g)), values(std::move(v)) {
    if (values.size() != grid.size())
      throw std::invalid_argument("SymbolField: value count does not match grid");
  }
};

// sum_i w_i f_i
cplx integrate(const SymbolField& field);

// Orthonormal surface harmonic in the convention above; |m| <= l required.
cplx eval_ylm(int l, int m, Direction n);

// Legendre polynomial P_l(x), |x| <= 1, stable three-term recurrence.
double legendre_p(int l, double x);

// Gauss-Legendre nodes and weights on [-1,1].
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w);

// Coefficients of an expansion over surface harmonics, (l,m) -> complex for
// 0 <= l <= lmax, |m| <= l. Flat storage.
class HarmonicCoefficients {
public:
  explicit HarmonicCoefficients(int lmax)
      : lmax_(lmax), c_(std::size_t(lmax + 1) * (lmax + 1)) {
    if (lmax < 0) throw std::domain_error("HarmonicCoefficients: lmax < 0");
  }

  int lmax() const { return lmax_; }

  cplx& at(int l, int m) { return c_[index(l, m)]; }
  const cplx& at(int l, int m) const { return c_[index(l, m)]; }

  // 0 outside the stored range
  cplx get(int l, int m) const {
    if (l < 0 || l > lmax_ || std::abs(m) > l) return 0.0;
    return c_[index(l, m)];
  }

private:
  std::size_t index(int l, int m) const {
    if (l < 0 || l > lmax_ || std::abs(m) > l)
      throw std::domain_error("HarmonicCoefficients: (l,m) out of range");
    return std::size_t(l) * l + l + m;
  }

  int lmax_;
  std::vector<cplx> c_;
};

// f(n) = sum_lm c_lm Y_lm(n)
cplx eval_harmonics(const HarmonicCoefficients& f, Direction n);

// Same, over a whole grid (m-major fast path; equals pointwise evaluation).
SymbolField eval_harmonics_on_grid(const HarmonicCoefficients& f,
                                   const SphereGrid& grid);

// Surface gradient of f as a Cartesian 3-vector tangent to the sphere.
// Evaluated from ladder identities that stay regular at the poles.
std::array<cplx, 3> tangential_gradient(const HarmonicCoefficients& f,
                                        Direction n);

// (theta, phi/sin(theta)) derivative components on a grid; the Cartesian
// gradient is theta_hat * first + phi_hat * second.
struct GradientField {
  SphereGrid grid;
  std::vector<cplx> d_theta;
  std::vector<cplx> d_phi_over_sin;
};

GradientField tangential_gradient_on_grid(const HarmonicCoefficients& f,
                                          const SphereGrid& grid);

// (1/j_c) n.(grad fa x grad fb). With fa, fb Weyl symbols as functions of
// j_c*n this is the Poisson bracket generated by {j_a, j_b} = eps_abc j_c.
cplx poisson_sphere(const HarmonicCoefficients& fa,
                    const HarmonicCoefficients& fb, Direction n,
                    double j_c = 1.0);

// Quadrature projection onto harmonics up to lmax; requires grid degree
// >= 2*lmax.
HarmonicCoefficients project_harmonics(const SymbolField& field, int lmax);

// Unit vectors of the spherical frame at n; theta_hat x phi_hat = n_hat.
Vec3 theta_hat(Direction n);
Vec3 phi_hat(Direction n);

// Normalized associated Legendre values
// sqrt((2l+1)/4pi (l-m)!/(l+m)!) P_l^m(cos theta), Condon-Shortley phase,
// for all 0 <= m <= l <= lmax at a fixed theta. at(l,m) handles m < 0 via
// the (-1)^m symmetry and returns 0 for |m| > l or l < 0.
class AssocLegendreTable {
public:
  AssocLegendreTable(int lmax, double theta);

  double at(int l, int m) const {
    if (l < 0 || l > lmax_) return 0.0;
    const int am = m < 0 ? -m : m;
    if (am > l) return 0.0;
    const double v = p_[std::size_t(l) * (l + 1) / 2 + am];
    return (m < 0 && (am & 1)) ? -v : v;
  }

  int lmax() const { return lmax_; }

private:
  int lmax_;
  std::vector<double> p_;
};

}  // namespace spinphase
