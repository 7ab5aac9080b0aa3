#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "spinphase/expr.hpp"
#include "spinphase/moyal.hpp"
#include "spinphase/random.hpp"

using namespace spinphase;

namespace {

constexpr double kPi = std::numbers::pi;

Direction dir_from_unit(Vec3 u) {
  const double r = std::sqrt(dot(u, u));
  double phi = std::atan2(u[1], u[0]);
  if (phi < 0.0) phi += 2.0 * kPi;
  return {std::acos(u[2] / r), phi};
}

// rotation by angle about a unit axis (Rodrigues)
Vec3 rotate(Vec3 v, Vec3 axis, double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  const Vec3 axv = cross(axis, v);
  const double ad = dot(axis, v);
  return {v[0] * c + axv[0] * s + axis[0] * ad * (1.0 - c),
          v[1] * c + axv[1] * s + axis[1] * ad * (1.0 - c),
          v[2] * c + axv[2] * s + axis[2] * ad * (1.0 - c)};
}

}  // namespace

TEST_CASE("kernel at j=1/2 is I + sqrt(3) n.sigma") {
  const Spin half(1);
  const SpinMatrices J = spin_matrices(half);
  SeededRng rng(61);
  for (int t = 0; t < 10; ++t) {
    const Direction n = rng.direction();
    const Vec3 u = n.unit();
    const OperatorMatrix expected =
        OperatorMatrix::identity(half) +
        (2.0 * std::sqrt(3.0)) * (u[0] * J.jx + u[1] * J.jy + u[2] * J.jz);
    CHECK((sw_kernel(half, n) - expected).max_abs() < 1e-12);
  }
  // north pole: diag(1 + sqrt 3, 1 - sqrt 3)
  const OperatorMatrix dz = sw_kernel(half, {0.0, 0.0});
  CHECK(std::abs(dz(0, 0) - (1.0 + std::sqrt(3.0))) < 1e-12);
  CHECK(std::abs(dz(1, 1) - (1.0 - std::sqrt(3.0))) < 1e-12);
  CHECK(std::abs(dz(0, 1)) < 1e-12);
}

TEST_CASE("kernel trace, hermiticity and the trace pairing") {
  SeededRng rng(62);
  for (int tj : {1, 2, 4, 7}) {
    const Spin spin(tj);
    for (int t = 0; t < 5; ++t) {
      const Direction n = rng.direction();
      const OperatorMatrix delta = sw_kernel(spin, n);
      CHECK(std::abs(delta.trace() - cplx(spin.dim())) < 1e-10);
      CHECK(delta.is_hermitian(1e-10));

      // (1/(2j+1)) tr(A Delta(n)) equals the Weyl symbol of A at n
      const OperatorMatrix a = random_hermitian(spin, rng);
      const cplx via_kernel = (a * delta).trace() / double(spin.dim());
      const cplx via_symbol = eval_symbol(symbol_of(a, SymbolKind::W), n);
      CHECK(std::abs(via_kernel - via_symbol) < 1e-9);
    }
  }
}

TEST_CASE("sphere average of the kernel is the identity") {
  for (int tj : {1, 3, 6}) {
    const Spin spin(tj);
    const SphereGrid grid = quadrature_grid(tj + 1);
    OperatorMatrix avg(spin);
    for (std::size_t k = 0; k < grid.size(); ++k) {
      OperatorMatrix d = sw_kernel(spin, grid.nodes()[k]);
      d *= grid.weights()[k] / (4.0 * kPi);
      avg += d;
    }
    CHECK((avg - OperatorMatrix::identity(spin)).max_abs() < 1e-10);
  }
}

TEST_CASE("two-point rule tr(Delta Delta')/dim = 4 pi I^j") {
  SeededRng rng(63);
  for (int tj : {1, 2, 5, 8}) {
    const Spin spin(tj);
    for (int t = 0; t < 13; ++t) {
      const Direction n1 = rng.direction();
      const Direction n2 = rng.direction();
      const cplx lhs =
          (sw_kernel(spin, n1) * sw_kernel(spin, n2)).trace() / double(spin.dim());
      const double rhs = 4.0 * kPi * identity_kernel(spin, n1, n2);
      CHECK(std::abs(lhs - rhs) < 1e-9);
    }
  }
}

TEST_CASE("identity kernel reproduces band-limited harmonics") {
  const Spin spin(3);
  CHECK(identity_kernel(spin, {0.4, 1.0}, {0.4, 1.0}) ==
        doctest::Approx(spin.dim() * spin.dim() / (4.0 * kPi)).epsilon(1e-12));

  const SphereGrid grid = quadrature_grid(4 * spin.two_j() + 2);
  SeededRng rng(64);
  for (int t = 0; t < 3; ++t) {
    const Direction n = rng.direction();
    for (int l = 0; l <= spin.two_j() + 1; ++l) {
      const int m = std::min(l, 1);
      cplx acc = 0.0;
      for (std::size_t k = 0; k < grid.size(); ++k)
        acc += grid.weights()[k] * identity_kernel(spin, n, grid.nodes()[k]) *
               eval_ylm(l, m, grid.nodes()[k]);
      if (l <= spin.two_j())
        CHECK(std::abs(acc - eval_ylm(l, m, n)) < 1e-8);
      else
        CHECK(std::abs(acc) < 1e-8);  // annihilates l = 2j+1
    }
  }
}

TEST_CASE("operator_from_symbol inverts the symbol map") {
  const Spin spin(3);
  const SphereGrid grid = quadrature_grid(2 * spin.two_j());

  std::vector<cplx> ones(grid.size(), 1.0);
  const OperatorMatrix id = operator_from_symbol(SymbolField(grid, std::move(ones)), spin);
  CHECK((id - OperatorMatrix::identity(spin)).max_abs() < 1e-10);

  const SpinMatrices J = spin_matrices(spin);
  const double jc = spin.j_c();
  std::vector<cplx> zfield(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k)
    zfield[k] = jc * std::cos(grid.nodes()[k].theta);
  const OperatorMatrix jz = operator_from_symbol(SymbolField(grid, std::move(zfield)), spin);
  CHECK((jz - J.jz).max_abs() < 1e-9);

  SeededRng rng(65);
  for (int t = 0; t < 5; ++t) {
    const OperatorMatrix a = random_hermitian(spin, rng);
    const OperatorMatrix back =
        operator_from_symbol(eval_on_grid(symbol_of(a, SymbolKind::W), grid), spin);
    CHECK((a - back).max_abs() < 1e-9);
  }

  const SphereGrid coarse = quadrature_grid(2 * spin.two_j() - 1);
  std::vector<cplx> small(coarse.size(), 1.0);
  CHECK_THROWS_AS(operator_from_symbol(SymbolField(coarse, std::move(small)), spin),
                  GridDegreeError);
}

TEST_CASE("trikernel at coincident points, j=1/2") {
  const Spin half(1);
  SeededRng rng(66);
  for (int t = 0; t < 5; ++t) {
    const Direction n = rng.direction();
    CHECK(std::abs(trikernel(half, n, n, n) - cplx(10.0)) < 1e-10);
  }
}

TEST_CASE("trikernel is invariant under simultaneous rotations") {
  const Spin spin(3);
  SeededRng rng(67);
  for (int t = 0; t < 8; ++t) {
    const Direction n1 = rng.direction();
    const Direction n2 = rng.direction();
    const Direction n3 = rng.direction();
    const Vec3 axis = rng.direction().unit();
    const double angle = 2.0 * kPi * rng.uniform();
    const cplx before = trikernel(spin, n1, n2, n3);
    const cplx after = trikernel(spin, dir_from_unit(rotate(n1.unit(), axis, angle)),
                                 dir_from_unit(rotate(n2.unit(), axis, angle)),
                                 dir_from_unit(rotate(n3.unit(), axis, angle)));
    CHECK(std::abs(before - after) < 1e-9 * std::max(1.0, std::abs(before)));
  }
}

TEST_CASE("trikernel double integral reproduces the exact Moyal product at j=1") {
  const Spin spin(2);
  const SpinMatrices J = spin_matrices(spin);
  const OperatorMatrix a = J.jz;
  const OperatorMatrix b = J.jx;
  const SphereGrid grid = quadrature_grid(2 * spin.two_j());

  // precompute the kernels once per node
  std::vector<OperatorMatrix> deltas;
  deltas.reserve(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k)
    deltas.push_back(sw_kernel(spin, grid.nodes()[k]));

  const SymbolField fa = eval_on_grid(symbol_of(a, SymbolKind::W), grid);
  const SymbolField fb = eval_on_grid(symbol_of(b, SymbolKind::W), grid);
  const SymbolCoefficients sab = moyal_exact(a, b);

  SeededRng rng(68);
  for (int t = 0; t < 4; ++t) {
    const Direction n1 = rng.direction();
    const OperatorMatrix d1 = sw_kernel(spin, n1);
    cplx acc = 0.0;
    for (std::size_t k2 = 0; k2 < grid.size(); ++k2) {
      const OperatorMatrix d12 = d1 * deltas[k2];
      for (std::size_t k3 = 0; k3 < grid.size(); ++k3) {
        const cplx m = (d12 * deltas[k3]).trace() / double(spin.dim());
        acc += grid.weights()[k2] * grid.weights()[k3] * m * fa.values[k2] *
               fb.values[k3];
      }
    }
    acc /= (4.0 * kPi) * (4.0 * kPi);
    CHECK(std::abs(acc - eval_symbol(sab, n1)) < 1e-7);
  }
}

TEST_CASE("moyal_exact on simple products") {
  const Spin spin(3);
  const SpinMatrices J = spin_matrices(spin);
  const OperatorMatrix id = OperatorMatrix::identity(spin);

  const SymbolCoefficients sii = moyal_exact(id, id);
  CHECK(std::abs(sii.at(0, 0) - std::sqrt(4.0 * kPi)) < 1e-12);

  // antisymmetric part of Jx Jy is the symbol of (i/2) Jz
  const SymbolCoefficients sxy = moyal_exact(J.jx, J.jy);
  const SymbolCoefficients syx = moyal_exact(J.jy, J.jx);
  const SymbolCoefficients target = symbol_of(cplx(0.0, 0.5) * J.jz, SymbolKind::W);
  for (int l = 0; l <= spin.two_j(); ++l)
    for (int m = -l; m <= l; ++m)
      CHECK(std::abs(0.5 * (sxy.at(l, m) - syx.at(l, m)) - target.at(l, m)) < 1e-11);

  // j=1/2: the Weyl symbol of Jx Jz is -i (sqrt3/4) n_y
  const Spin half(1);
  const SpinMatrices Jh = spin_matrices(half);
  const SymbolCoefficients sxz = moyal_exact(Jh.jx, Jh.jz);
  SeededRng rng(69);
  for (int t = 0; t < 6; ++t) {
    const Direction n = rng.direction();
    const cplx expected(0.0, -std::sqrt(3.0) / 4.0 * n.unit()[1]);
    CHECK(std::abs(eval_symbol(sxz, n) - expected) < 1e-12);
  }

  CHECK_THROWS_AS(moyal_exact(id, OperatorMatrix::identity(half)),
                  std::invalid_argument);
}

TEST_CASE("moyal_leading degenerate cases") {
  const Spin spin(4);
  const SpinMatrices J = spin_matrices(spin);
  SeededRng rng(70);
  const OperatorMatrix a = random_hermitian(spin, rng);
  const SymbolCoefficients sa = symbol_of(a, SymbolKind::W);

  // A = B: the bracket term vanishes by antisymmetry
  for (int t = 0; t < 5; ++t) {
    const Direction n = rng.direction();
    const cplx va = eval_symbol(sa, n);
    CHECK(std::abs(moyal_leading(sa, sa, n) - va * va) < 1e-9);
  }

  // constant B reduces to the pointwise product
  const SymbolCoefficients sc = symbol_of(3.0 * OperatorMatrix::identity(spin),
                                          SymbolKind::W);
  for (int t = 0; t < 5; ++t) {
    const Direction n = rng.direction();
    CHECK(std::abs(moyal_leading(sa, sc, n) - 3.0 * eval_symbol(sa, n)) < 1e-9);
  }

  const SymbolCoefficients wrong = symbol_of(a, SymbolKind::Q);
  CHECK_THROWS_AS(moyal_leading(sa, wrong, rng.direction()), std::invalid_argument);
}

TEST_CASE("moyal leading-order residual decays for quadratic operators") {
  // sup | Phi_AB - [Phi_A Phi_B + (i/2jc) bracket] | for A=(Jx/jc)^2, B=(Jz/jc)^2
  std::vector<double> js{4, 8, 16, 32}, errs;
  for (double j : js) {
    const Spin spin(int(2 * j));
    const double jc = spin.j_c();
    const SpinMatrices J = spin_matrices(spin);
    const OperatorMatrix a = (1.0 / (jc * jc)) * (J.jx * J.jx);
    const OperatorMatrix b = (1.0 / (jc * jc)) * (J.jz * J.jz);
    const SymbolCoefficients sa = symbol_of(a, SymbolKind::W);
    const SymbolCoefficients sb = symbol_of(b, SymbolKind::W);
    const SphereGrid grid = quadrature_grid(2 * spin.two_j());
    const SymbolField fab = eval_on_grid(moyal_exact(a, b), grid);
    double err = 0.0;
    for (std::size_t k = 0; k < grid.size(); k += 3)
      err = std::max(err, std::abs(fab.values[k] -
                                   moyal_leading(sa, sb, grid.nodes()[k])));
    errs.push_back(err);
  }
  CHECK(fit_loglog_slope(js, errs) <= -1.7);
}

TEST_CASE("commutator and anticommutator symbols") {
  const Spin spin(5);
  const SpinMatrices J = spin_matrices(spin);
  const double jc = spin.j_c();

  // [Jx, Jy] = i Jz: symbol i jc n_z, equal to i x poisson bracket of the symbols
  const SymbolCoefficients sc = commutator_symbol(J.jx, J.jy);
  const SymbolCoefficients sx = symbol_of(J.jx, SymbolKind::W);
  const SymbolCoefficients sy = symbol_of(J.jy, SymbolKind::W);
  SeededRng rng(72);
  for (int t = 0; t < 8; ++t) {
    const Direction n = rng.direction();
    const cplx expected(0.0, jc * n.unit()[2]);
    CHECK(std::abs(eval_symbol(sc, n) - expected) < 1e-10);
    const cplx via_pb = cplx(0.0, 1.0) *
                        poisson_sphere(sx.harmonics(), sy.harmonics(), n, jc);
    CHECK(std::abs(eval_symbol(sc, n) - via_pb) < 1e-10);
  }

  // {Jz, Jz} = 2 Jz^2
  const SymbolCoefficients sz2 = anticommutator_symbol(J.jz, J.jz);
  const SymbolCoefficients target = symbol_of(J.jz * J.jz, SymbolKind::W);
  for (int l = 0; l <= spin.two_j(); ++l)
    for (int m = -l; m <= l; ++m)
      CHECK(std::abs(sz2.at(l, m) - 2.0 * target.at(l, m)) < 1e-11);

  // [A, A] = 0
  const OperatorMatrix a = random_hermitian(spin, rng);
  const SymbolCoefficients saa = commutator_symbol(a, a);
  for (int l = 0; l <= spin.two_j(); ++l)
    for (int m = -l; m <= l; ++m) CHECK(std::abs(saa.at(l, m)) < 1e-12);
}

TEST_CASE("moment constant is O(j^-2)") {
  std::vector<double> js{10, 20, 40, 80}, vals;
  for (double j : js) {
    const Spin spin(int(2 * j));
    vals.push_back(std::abs(moment_constant(spin)));
  }
  CHECK(fit_loglog_slope(js, vals) == doctest::Approx(-2.0).epsilon(0.1));
}

TEST_CASE("bracket_scan: linear operators close exactly") {
  const BracketScan scan =
      bracket_scan("Jx", "Jz", {Spin(8), Spin(16), Spin(32), Spin(64)});
  for (double e : scan.commutator.errors) CHECK(e <= 1e-10);
  // anticommutator residual decays ~ j^-2 even in the linear case
  CHECK(scan.anticommutator.fitted_slope <= -1.7);
}

TEST_CASE("bracket_scan: quadratic pair decays per the leading-order remainder") {
  const BracketScan scan =
      bracket_scan("Jx^2", "Jz^2", {Spin(8), Spin(16), Spin(32)});
  CHECK(scan.commutator.fitted_slope <= -1.6);
  CHECK(scan.anticommutator.fitted_slope <= -1.6);
  CHECK(scan.commutator.operators == "[Jx^2, Jz^2]");
  for (double e : scan.commutator.errors) CHECK(e > 0.0);
}

TEST_CASE("bracket_scan propagates parse failures") {
  CHECK_THROWS_AS(bracket_scan("Jx^2", "Jw", {Spin(2), Spin(4)}), ParseError);
  CHECK_THROWS_AS(bracket_scan("Jx", "Jz", {}), std::invalid_argument);
  CHECK_THROWS_AS(bracket_scan("Jx", "Jz", {Spin(0)}), std::invalid_argument);
}
