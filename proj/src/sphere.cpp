#include "spinphase/sphere.hpp"

#include <cmath>
#include <numbers>

namespace spinphase {

namespace {
constexpr double kPi = std::numbers::pi;

// ladder factors for the regular derivative identities
inline double splus(int l, int m) {
  const long s = long(l - m) * (l + m + 1);
  return s > 0 ? std::sqrt(double(s)) : 0.0;
}
inline double sminus(int l, int m) {
  const long s = long(l + m) * (l - m + 1);
  return s > 0 ? std::sqrt(double(s)) : 0.0;
}
inline double dplus(int l, int m) {  // sqrt((l+m)(l+m-1))
  const long s = long(l + m) * (l + m - 1);
  return s > 0 ? std::sqrt(double(s)) : 0.0;
}
inline double dminus(int l, int m) {  // sqrt((l-m)(l-m-1))
  const long s = long(l - m) * (l - m - 1);
  return s > 0 ? std::sqrt(double(s)) : 0.0;
}
}  // namespace

void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double xi = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 1.0;
    for (int it = 0; it < 64; ++it) {
      double p0 = 1.0, p1 = xi;
      for (int l = 2; l <= n; ++l) {
        const double p2 = ((2.0 * l - 1.0) * xi * p1 - (l - 1.0) * p0) / l;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (p0 - xi * p1) / (1.0 - xi * xi);
      const double dx = p1 / dp;
      xi -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    // one clean evaluation at the converged node for the weight
    double p0 = 1.0, p1 = xi;
    for (int l = 2; l <= n; ++l) {
      const double p2 = ((2.0 * l - 1.0) * xi * p1 - (l - 1.0) * p0) / l;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (p0 - xi * p1) / (1.0 - xi * xi);
    x[i] = xi;
    w[i] = 2.0 / ((1.0 - xi * xi) * dp * dp);
  }
}

struct SphereGrid::Impl {
  std::vector<Direction> nodes;
  std::vector<double> weights;
  std::vector<double> thetas;
  std::vector<double> phis;
  std::vector<double> theta_weights;
  int exact_degree = 0;
};

static std::shared_ptr<const SphereGrid::Impl> make_grid_impl(int n_theta,
                                                              int n_phi,
                                                              int degree) {
  auto impl = std::make_shared<SphereGrid::Impl>();
  std::vector<double> x, w;
  gauss_legendre(n_theta, x, w);
  impl->thetas.resize(n_theta);
  impl->theta_weights.resize(n_theta);
  for (int i = 0; i < n_theta; ++i) {
    // GL nodes come out descending in x = cos(theta); theta ascends
    impl->thetas[i] = std::acos(x[i]);
    impl->theta_weights[i] = w[i];
  }
  impl->phis.resize(n_phi);
  const double dphi = 2.0 * kPi / n_phi;
  for (int k = 0; k < n_phi; ++k) impl->phis[k] = k * dphi;

  impl->nodes.reserve(std::size_t(n_theta) * n_phi);
  impl->weights.reserve(std::size_t(n_theta) * n_phi);
  for (int i = 0; i < n_theta; ++i)
    for (int k = 0; k < n_phi; ++k) {
      impl->nodes.push_back({impl->thetas[i], impl->phis[k]});
      impl->weights.push_back(impl->theta_weights[i] * dphi);
    }
  impl->exact_degree = degree;
  return impl;
}

SphereGrid SphereGrid::for_degree(int exact_degree) {
  if (exact_degree < 0)
    throw std::domain_error("SphereGrid: exact degree must be nonnegative");
  const int n_theta = (exact_degree + 2) / 2 + 1;  // ceil((L+1)/2) + 1
  const int n_phi = exact_degree + 2;
  return SphereGrid(make_grid_impl(n_theta, n_phi, exact_degree));
}

SphereGrid SphereGrid::with_counts(int n_theta, int n_phi) {
  if (n_theta < 1 || n_phi < 1)
    throw std::domain_error("SphereGrid: node counts must be positive");
  const int degree = std::min(2 * n_theta - 1, n_phi - 1);
  return SphereGrid(make_grid_impl(n_theta, n_phi, degree));
}

const std::vector<Direction>& SphereGrid::nodes() const { return impl_->nodes; }
const std::vector<double>& SphereGrid::weights() const { return impl_->weights; }
int SphereGrid::exact_degree() const { return impl_->exact_degree; }
int SphereGrid::n_theta() const { return int(impl_->thetas.size()); }
int SphereGrid::n_phi() const { return int(impl_->phis.size()); }

cplx integrate(const SymbolField& field) {
  cplx s = 0.0;
  const auto& w = field.grid.weights();
  for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * field.values[i];
  return s;
}

double legendre_p(int l, double x) {
  if (l < 0) throw std::domain_error("legendre_p: l < 0");
  if (std::abs(x) > 1.0) throw std::domain_error("legendre_p: |x| > 1");
  if (l == 0) return 1.0;
  double p0 = 1.0, p1 = x;
  for (int k = 2; k <= l; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

AssocLegendreTable::AssocLegendreTable(int lmax, double theta) : lmax_(lmax) {
  p_.assign(std::size_t(lmax + 1) * (lmax + 2) / 2, 0.0);
  const double ct = std::cos(theta);
  const double st = std::sin(theta);
  auto idx = [](int l, int m) { return std::size_t(l) * (l + 1) / 2 + m; };
  p_[0] = std::sqrt(1.0 / (4.0 * kPi));
  for (int m = 1; m <= lmax; ++m)
    p_[idx(m, m)] =
        -std::sqrt((2.0 * m + 1.0) / (2.0 * m)) * st * p_[idx(m - 1, m - 1)];
  for (int m = 0; m < lmax; ++m)
    p_[idx(m + 1, m)] = std::sqrt(2.0 * m + 3.0) * ct * p_[idx(m, m)];
  for (int m = 0; m <= lmax; ++m)
    for (int l = m + 2; l <= lmax; ++l) {
      const double a =
          std::sqrt((4.0 * l * l - 1.0) / (double(l) * l - double(m) * m));
      const double b = std::sqrt(
          ((double(l - 1) * (l - 1) - double(m) * m)) /
          (4.0 * double(l - 1) * (l - 1) - 1.0));
      p_[idx(l, m)] = a * (ct * p_[idx(l - 1, m)] - b * p_[idx(l - 2, m)]);
    }
}

cplx eval_ylm(int l, int m, Direction n) {
  if (l < 0 || std::abs(m) > l)
    throw std::domain_error("eval_ylm: require l >= 0 and |m| <= l");
  AssocLegendreTable t(l, n.theta);
  return t.at(l, m) * std::polar(1.0, m * n.phi);
}

cplx eval_harmonics(const HarmonicCoefficients& f, Direction n) {
  const int L = f.lmax();
  AssocLegendreTable t(L, n.theta);
  cplx s = 0.0;
  for (int m = -L; m <= L; ++m) {
    cplx gm = 0.0;
    for (int l = std::abs(m); l <= L; ++l) gm += f.at(l, m) * t.at(l, m);
    s += gm * std::polar(1.0, m * n.phi);
  }
  return s;
}

SymbolField eval_harmonics_on_grid(const HarmonicCoefficients& f,
                                   const SphereGrid& grid) {
  const int L = f.lmax();
  const int nt = grid.n_theta(), np = grid.n_phi();
  std::vector<cplx> out(grid.size());
  std::vector<cplx> gm(2 * L + 1);
  for (int it = 0; it < nt; ++it) {
    const Direction row = grid.nodes()[std::size_t(it) * np];
    AssocLegendreTable t(L, row.theta);
    for (int m = -L; m <= L; ++m) {
      cplx g = 0.0;
      for (int l = std::abs(m); l <= L; ++l) g += f.at(l, m) * t.at(l, m);
      gm[m + L] = g;
    }
    for (int ip = 0; ip < np; ++ip) {
      const double phi = grid.nodes()[std::size_t(it) * np + ip].phi;
      cplx s = gm[L];
      for (int m = 1; m <= L; ++m) {
        const cplx e = std::polar(1.0, m * phi);
        s += gm[L + m] * e + gm[L - m] * std::conj(e);
      }
      out[std::size_t(it) * np + ip] = s;
    }
  }
  return SymbolField(grid, std::move(out));
}

namespace {

// theta-row aggregates for the field and its two tangential derivative
// components, from the pole-regular ladder identities
//   d(Y_lm)/dtheta = (1/2)[s+(l,m) Pb_{l,m+1} - s-(l,m) Pb_{l,m-1}] e^(im phi)
//   (im/sin)Y_lm  = -(i/2) sqrt((2l+1)/(2l-1))
//                      [d+(l,m) Pb_{l-1,m-1} + d-(l,m) Pb_{l-1,m+1}] e^(im phi)
struct DerivAggregates {
  std::vector<cplx> g_theta;     // indexed m + L
  std::vector<cplx> g_phi_sin;   // (1/sin) d/dphi aggregate, indexed m + L
};

DerivAggregates deriv_aggregates(const HarmonicCoefficients& f,
                                 const AssocLegendreTable& t) {
  const int L = f.lmax();
  DerivAggregates agg;
  agg.g_theta.assign(2 * L + 1, 0.0);
  agg.g_phi_sin.assign(2 * L + 1, 0.0);
  for (int m = -L; m <= L; ++m) {
    cplx gt = 0.0, gp = 0.0;
    for (int l = std::abs(m); l <= L; ++l) {
      const cplx c = f.at(l, m);
      if (c == cplx(0.0)) continue;
      gt += c * 0.5 * (splus(l, m) * t.at(l, m + 1) - sminus(l, m) * t.at(l, m - 1));
      if (l >= 1) {
        const double r = std::sqrt((2.0 * l + 1.0) / (2.0 * l - 1.0));
        gp += c * cplx(0.0, -0.5) * r *
              (dplus(l, m) * t.at(l - 1, m - 1) + dminus(l, m) * t.at(l - 1, m + 1));
      }
    }
    agg.g_theta[m + L] = gt;
    agg.g_phi_sin[m + L] = gp;
  }
  return agg;
}

inline void sum_over_m(const std::vector<cplx>& g, int L, double phi, cplx& out) {
  out = g[L];
  for (int m = 1; m <= L; ++m) {
    const cplx e = std::polar(1.0, m * phi);
    out += g[L + m] * e + g[L - m] * std::conj(e);
  }
}

}  // namespace

Vec3 theta_hat(Direction n) {
  const double ct = std::cos(n.theta), st = std::sin(n.theta);
  return {ct * std::cos(n.phi), ct * std::sin(n.phi), -st};
}

Vec3 phi_hat(Direction n) {
  return {-std::sin(n.phi), std::cos(n.phi), 0.0};
}

std::array<cplx, 3> tangential_gradient(const HarmonicCoefficients& f,
                                        Direction n) {
  const int L = f.lmax();
  AssocLegendreTable t(L, n.theta);
  const DerivAggregates agg = deriv_aggregates(f, t);
  cplx dth, dph;
  sum_over_m(agg.g_theta, L, n.phi, dth);
  sum_over_m(agg.g_phi_sin, L, n.phi, dph);
  const Vec3 th = theta_hat(n), ph = phi_hat(n);
  return {dth * th[0] + dph * ph[0], dth * th[1] + dph * ph[1],
          dth * th[2] + dph * ph[2]};
}

GradientField tangential_gradient_on_grid(const HarmonicCoefficients& f,
                                          const SphereGrid& grid) {
  const int L = f.lmax();
  const int nt = grid.n_theta(), np = grid.n_phi();
  GradientField out{grid, std::vector<cplx>(grid.size()),
                    std::vector<cplx>(grid.size())};
  for (int it = 0; it < nt; ++it) {
    const Direction row = grid.nodes()[std::size_t(it) * np];
    AssocLegendreTable t(L, row.theta);
    const DerivAggregates agg = deriv_aggregates(f, t);
    for (int ip = 0; ip < np; ++ip) {
      const std::size_t k = std::size_t(it) * np + ip;
      sum_over_m(agg.g_theta, L, grid.nodes()[k].phi, out.d_theta[k]);
      sum_over_m(agg.g_phi_sin, L, grid.nodes()[k].phi, out.d_phi_over_sin[k]);
    }
  }
  return out;
}

cplx poisson_sphere(const HarmonicCoefficients& fa,
                    const HarmonicCoefficients& fb, Direction n, double j_c) {
  const auto ga = tangential_gradient(fa, n);
  const auto gb = tangential_gradient(fb, n);
  const Vec3 u = n.unit();
  // n.(ga x gb)
  const cplx cx = ga[1] * gb[2] - ga[2] * gb[1];
  const cplx cy = ga[2] * gb[0] - ga[0] * gb[2];
  const cplx cz = ga[0] * gb[1] - ga[1] * gb[0];
  return (u[0] * cx + u[1] * cy + u[2] * cz) / j_c;
}

HarmonicCoefficients project_harmonics(const SymbolField& field, int lmax) {
  if (field.grid.exact_degree() < 2 * lmax)
    throw GridDegreeError("project_harmonics: grid exact degree must be >= 2*lmax");
  const SphereGrid& grid = field.grid;
  const int nt = grid.n_theta(), np = grid.n_phi();
  HarmonicCoefficients out(lmax);
  for (int it = 0; it < nt; ++it) {
    const Direction row = grid.nodes()[std::size_t(it) * np];
    AssocLegendreTable t(lmax, row.theta);
    // phi moments of the sampled values along this row
    std::vector<cplx> mom(2 * lmax + 1, 0.0);
    for (int ip = 0; ip < np; ++ip) {
      const std::size_t k = std::size_t(it) * np + ip;
      const cplx wv = field.grid.weights()[k] * field.values[k];
      const double phi = grid.nodes()[k].phi;
      for (int m = -lmax; m <= lmax; ++m)
        mom[m + lmax] += wv * std::polar(1.0, -m * phi);
    }
    for (int m = -lmax; m <= lmax; ++m)
      for (int l = std::abs(m); l <= lmax; ++l)
        out.at(l, m) += mom[m + lmax] * t.at(l, m);
  }
  return out;
}

}  // namespace spinphase
