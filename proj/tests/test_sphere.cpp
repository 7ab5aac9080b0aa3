#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "spinphase/random.hpp"
#include "spinphase/sphere.hpp"

using namespace spinphase;

namespace {

constexpr double kPi = std::numbers::pi;

// Independent oracle: Y_lm from the scalar Herglotz generating function.
// (a.n)^l is a Laurent polynomial in lambda; Y_lm is its lambda^m coefficient
// times sqrt((2l+1)/4pi) sqrt((l+m)!(l-m)!)/l!.
cplx herglotz_ylm(int l, int m, Direction n) {
  const double ct = std::cos(n.theta), st = std::sin(n.theta);
  const cplx up = -0.5 * st * std::polar(1.0, n.phi);   // lambda^1 coefficient
  const cplx dn = 0.5 * st * std::polar(1.0, -n.phi);   // lambda^-1 coefficient
  std::vector<cplx> poly{1.0};  // powers -deg..deg
  int deg = 0;
  for (int k = 0; k < l; ++k) {
    std::vector<cplx> next(poly.size() + 2, 0.0);
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i + 1] += ct * poly[i];
      next[i + 2] += up * poly[i];
      next[i] += dn * poly[i];
    }
    poly = std::move(next);
    ++deg;
  }
  double pref = std::sqrt((2.0 * l + 1.0) / (4.0 * kPi));
  // sqrt((l+m)!(l-m)!)/l!
  long double ratio = 1.0L;
  const int am = std::abs(m);
  for (int i = 1; i <= am; ++i)
    ratio *= static_cast<long double>(l + i) / static_cast<long double>(l - am + i);
  pref *= double(std::sqrt(ratio));
  return pref * poly[std::size_t(m + deg)];
}

// surface function n_z = sqrt(4pi/3) Y_10
HarmonicCoefficients nz_coeffs() {
  HarmonicCoefficients c(1);
  c.at(1, 0) = std::sqrt(4.0 * kPi / 3.0);
  return c;
}

HarmonicCoefficients nx_coeffs() {
  HarmonicCoefficients c(1);
  const double r = std::sqrt(2.0 * kPi / 3.0);
  c.at(1, -1) = r;
  c.at(1, 1) = -r;
  return c;
}

HarmonicCoefficients ny_coeffs() {
  HarmonicCoefficients c(1);
  const cplx ir(0.0, std::sqrt(2.0 * kPi / 3.0));
  c.at(1, -1) = ir;
  c.at(1, 1) = ir;
  return c;
}

}  // namespace

TEST_CASE("low-order harmonics") {
  const Direction n{1.234, 2.345};
  CHECK(std::abs(eval_ylm(0, 0, n) - 1.0 / std::sqrt(4.0 * kPi)) < 1e-15);
  CHECK(std::abs(eval_ylm(1, 0, n) -
                 std::sqrt(3.0 / (4.0 * kPi)) * std::cos(n.theta)) < 1e-15);
  // Y_11 at the equator, phi = 0
  CHECK(std::abs(eval_ylm(1, 1, {kPi / 2, 0.0}) + std::sqrt(3.0 / (8.0 * kPi))) <
        1e-15);
  CHECK_THROWS_AS(eval_ylm(1, 2, n), std::domain_error);
}

TEST_CASE("harmonics match the Herglotz generating function to l=6") {
  SeededRng rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    const Direction n = rng.direction();
    for (int l = 0; l <= 6; ++l)
      for (int m = -l; m <= l; ++m)
        CHECK(std::abs(eval_ylm(l, m, n) - herglotz_ylm(l, m, n)) < 1e-12);
  }
}

TEST_CASE("conjugation law") {
  SeededRng rng(32);
  for (int trial = 0; trial < 20; ++trial) {
    const Direction n = rng.direction();
    for (int l = 0; l <= 5; ++l)
      for (int m = -l; m <= l; ++m) {
        const double sign = (m & 1) ? -1.0 : 1.0;
        CHECK(std::abs(std::conj(eval_ylm(l, m, n)) -
                       sign * eval_ylm(l, -m, n)) < 1e-12);
      }
  }
}

TEST_CASE("legendre polynomials") {
  for (int l = 0; l <= 10; ++l) CHECK(legendre_p(l, 1.0) == doctest::Approx(1.0));
  CHECK(legendre_p(2, 0.0) == doctest::Approx(-0.5));
  CHECK_THROWS_AS(legendre_p(2, 1.5), std::domain_error);

  // addition theorem, brute-force m sum as the oracle
  SeededRng rng(33);
  for (int trial = 0; trial < 10; ++trial) {
    const Direction n1 = rng.direction();
    const Direction n2 = rng.direction();
    for (int l = 0; l <= 6; ++l) {
      cplx sum = 0.0;
      for (int m = -l; m <= l; ++m)
        sum += eval_ylm(l, m, n1) * std::conj(eval_ylm(l, m, n2));
      const double expected =
          (2.0 * l + 1.0) / (4.0 * kPi) * legendre_p(l, dot(n1.unit(), n2.unit()));
      CHECK(std::abs(sum - expected) < 1e-10);
    }
  }
}

TEST_CASE("quadrature weights and exactness") {
  for (int L : {0, 1, 4, 9, 16}) {
    const SphereGrid grid = quadrature_grid(L);
    double sum = 0.0;
    for (double w : grid.weights()) sum += w;
    CHECK(std::abs(sum - 4.0 * kPi) < 1e-10);
    CHECK(grid.exact_degree() == L);
  }

  const SphereGrid grid = quadrature_grid(16);
  auto integral_yy = [&grid](int l1, int m1, int l2, int m2) {
    cplx acc = 0.0;
    for (std::size_t k = 0; k < grid.size(); ++k)
      acc += grid.weights()[k] * eval_ylm(l1, m1, grid.nodes()[k]) *
             std::conj(eval_ylm(l2, m2, grid.nodes()[k]));
    return acc;
  };

  // int Y_00 = sqrt(4pi); |Y_21|^2 integrates to 1; Y_21 x Y_11* to 0
  cplx y00 = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k)
    y00 += grid.weights()[k] * eval_ylm(0, 0, grid.nodes()[k]);
  CHECK(std::abs(y00 - std::sqrt(4.0 * kPi)) < 1e-10);
  CHECK(std::abs(integral_yy(2, 1, 2, 1) - 1.0) < 1e-10);
  CHECK(std::abs(integral_yy(2, 1, 1, 1)) < 1e-10);

  // orthonormality for all l,l' <= 8 (the phi integral kills m != m' exactly)
  for (int l1 = 0; l1 <= 8; ++l1)
    for (int m1 = -l1; m1 <= l1; ++m1)
      for (int l2 = l1; l2 <= 8; ++l2) {
        if (std::abs(m1) > l2) continue;
        const double expected = (l1 == l2) ? 1.0 : 0.0;
        CHECK(std::abs(integral_yy(l1, m1, l2, m1) - expected) < 1e-10);
      }
}

TEST_CASE("integrate over a SymbolField") {
  const SphereGrid grid = quadrature_grid(6);
  std::vector<cplx> ones(grid.size(), 1.0);
  CHECK(std::abs(integrate(SymbolField(grid, std::move(ones))) - 4.0 * kPi) <
        1e-10);
}

TEST_CASE("with_counts derives a usable exact degree") {
  const SphereGrid g = SphereGrid::with_counts(6, 13);
  CHECK(g.n_theta() == 6);
  CHECK(g.n_phi() == 13);
  CHECK(g.exact_degree() == 11);
  double sum = 0.0;
  for (double w : g.weights()) sum += w;
  CHECK(std::abs(sum - 4.0 * kPi) < 1e-10);
}

TEST_CASE("tangential gradient of n_z and of a constant") {
  const HarmonicCoefficients nz = nz_coeffs();
  SeededRng rng(34);
  for (int trial = 0; trial < 20; ++trial) {
    const Direction n = rng.direction();
    const auto g = tangential_gradient(nz, n);
    // gradient of cos(theta) is -sin(theta) theta_hat
    const Vec3 th = theta_hat(n);
    for (int k = 0; k < 3; ++k)
      CHECK(std::abs(g[k] - cplx(-std::sin(n.theta) * th[k])) < 1e-12);
    const Vec3 u = n.unit();
    CHECK(std::abs(u[0] * g[0] + u[1] * g[1] + u[2] * g[2]) < 1e-10);
  }

  HarmonicCoefficients c(0);
  c.at(0, 0) = 3.7;
  const auto g = tangential_gradient(c, rng.direction());
  CHECK(std::abs(g[0]) + std::abs(g[1]) + std::abs(g[2]) < 1e-14);
}

TEST_CASE("gradient matches central finite differences") {
  SeededRng rng(35);
  HarmonicCoefficients f(5);
  for (int l = 0; l <= 5; ++l)
    for (int m = -l; m <= l; ++m) f.at(l, m) = rng.complex_normal();

  const double h = 1e-5;
  int checked = 0;
  while (checked < 20) {
    Direction n = rng.direction();
    if (n.theta < 0.3 || n.theta > kPi - 0.3) continue;  // FD accuracy only
    ++checked;
    const cplx fp_t = eval_harmonics(f, {n.theta + h, n.phi});
    const cplx fm_t = eval_harmonics(f, {n.theta - h, n.phi});
    const cplx fp_p = eval_harmonics(f, {n.theta, n.phi + h});
    const cplx fm_p = eval_harmonics(f, {n.theta, n.phi - h});
    const cplx dt = (fp_t - fm_t) / (2.0 * h);
    const cplx dp = (fp_p - fm_p) / (2.0 * h) / std::sin(n.theta);
    const Vec3 th = theta_hat(n), ph = phi_hat(n);
    const auto g = tangential_gradient(f, n);
    double scale = 0.0;
    for (int k = 0; k < 3; ++k) scale = std::max(scale, std::abs(g[k]));
    for (int k = 0; k < 3; ++k) {
      const cplx fd = dt * th[k] + dp * ph[k];
      CHECK(std::abs(g[k] - fd) < 1e-6 * std::max(1.0, scale));
    }
  }
}

TEST_CASE("gradient is finite and tangent at the poles") {
  SeededRng rng(36);
  HarmonicCoefficients f(4);
  for (int l = 0; l <= 4; ++l)
    for (int m = -l; m <= l; ++m) f.at(l, m) = rng.complex_normal();
  for (const Direction n : {Direction{0.0, 0.7}, Direction{kPi, 0.2}}) {
    const auto g = tangential_gradient(f, n);
    for (int k = 0; k < 3; ++k) CHECK(std::isfinite(std::abs(g[k])));
    const Vec3 u = n.unit();
    CHECK(std::abs(u[0] * g[0] + u[1] * g[1] + u[2] * g[2]) < 1e-10);
    // limit from just off the pole
    const double eps = 1e-7;
    const Direction near_pole{n.theta == 0.0 ? eps : kPi - eps, n.phi};
    const auto gn = tangential_gradient(f, near_pole);
    for (int k = 0; k < 3; ++k) CHECK(std::abs(g[k] - gn[k]) < 1e-5);
  }
}

TEST_CASE("poisson bracket on coordinate functions") {
  const HarmonicCoefficients nx = nx_coeffs();
  const HarmonicCoefficients ny = ny_coeffs();
  const HarmonicCoefficients nz = nz_coeffs();
  SeededRng rng(37);
  for (int trial = 0; trial < 20; ++trial) {
    const Direction n = rng.direction();
    const Vec3 u = n.unit();
    CHECK(std::abs(poisson_sphere(nx, ny, n) - cplx(u[2])) < 1e-11);
    CHECK(std::abs(poisson_sphere(nz, nx, n) - cplx(u[1])) < 1e-11);
    CHECK(std::abs(poisson_sphere(ny, nz, n) - cplx(u[0])) < 1e-11);
    CHECK(std::abs(poisson_sphere(nx, nx, n)) < 1e-12);
    CHECK(std::abs(poisson_sphere(nx, ny, n, 5.0) - cplx(u[2] / 5.0)) < 1e-11);
  }
}

TEST_CASE("poisson bracket obeys the Leibniz rule on projected products") {
  SeededRng rng(38);
  HarmonicCoefficients f(2), g(2), h(2);
  for (int l = 0; l <= 2; ++l)
    for (int m = -l; m <= l; ++m) {
      f.at(l, m) = rng.complex_normal();
      g.at(l, m) = rng.complex_normal();
      h.at(l, m) = rng.complex_normal();
    }
  // g*h has degree <= 4; project it from a degree-8 grid
  const SphereGrid grid = quadrature_grid(8);
  const SymbolField gf = eval_harmonics_on_grid(g, grid);
  const SymbolField hf = eval_harmonics_on_grid(h, grid);
  std::vector<cplx> prod(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k)
    prod[k] = gf.values[k] * hf.values[k];
  const HarmonicCoefficients gh =
      project_harmonics(SymbolField(grid, std::move(prod)), 4);

  for (int trial = 0; trial < 10; ++trial) {
    const Direction n = rng.direction();
    const cplx lhs = poisson_sphere(f, gh, n);
    const cplx rhs = eval_harmonics(g, n) * poisson_sphere(f, h, n) +
                     poisson_sphere(f, g, n) * eval_harmonics(h, n);
    CHECK(std::abs(lhs - rhs) < 1e-8);
  }
}

TEST_CASE("grid evaluation equals pointwise evaluation") {
  SeededRng rng(39);
  HarmonicCoefficients f(6);
  for (int l = 0; l <= 6; ++l)
    for (int m = -l; m <= l; ++m) f.at(l, m) = rng.complex_normal();
  const SphereGrid grid = quadrature_grid(9);
  const SymbolField field = eval_harmonics_on_grid(f, grid);
  for (std::size_t k = 0; k < grid.size(); k += 7)
    CHECK(std::abs(field.values[k] - eval_harmonics(f, grid.nodes()[k])) < 1e-12);
}

TEST_CASE("projection round trip on band-limited coefficients") {
  SeededRng rng(40);
  HarmonicCoefficients f(5);
  for (int l = 0; l <= 5; ++l)
    for (int m = -l; m <= l; ++m) f.at(l, m) = rng.complex_normal();
  const SphereGrid grid = quadrature_grid(10);
  const HarmonicCoefficients back =
      project_harmonics(eval_harmonics_on_grid(f, grid), 5);
  for (int l = 0; l <= 5; ++l)
    for (int m = -l; m <= l; ++m)
      CHECK(std::abs(back.at(l, m) - f.at(l, m)) < 1e-11);
  CHECK_THROWS_AS(project_harmonics(eval_harmonics_on_grid(f, grid), 6),
                  GridDegreeError);
}
