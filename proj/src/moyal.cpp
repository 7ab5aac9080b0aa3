#include "spinphase/moyal.hpp"

#include <cmath>
#include <numbers>

#include "spinphase/expr.hpp"

namespace spinphase {

namespace {
constexpr double kPi = std::numbers::pi;
}

OperatorMatrix sw_kernel(Spin spin, Direction n) {
  OperatorMatrix delta(spin);
  const int dim = spin.dim();
  AssocLegendreTable table(spin.two_j(), n.theta);
  for_each_tensor_op(spin, spin.two_j(),
                     [&](int l, int m, const OperatorMatrix& ylm) {
                       const cplx ystar =
                           table.at(l, m) * std::polar(1.0, -m * n.phi);
                       const cplx w =
                           4.0 * kPi * ystar / coeff_a(SymbolKind::W, spin, l);
                       for (int r = 0; r < dim; ++r)
                         for (int c = 0; c < dim; ++c)
                           delta(r, c) += w * ylm(r, c);
                     });
  return delta;
}

double identity_kernel(Spin spin, Direction n1, Direction n2) {
  const double c = dot(n1.unit(), n2.unit());
  double acc = 0.0;
  double p0 = 1.0, p1 = c;
  for (int l = 0; l <= spin.two_j(); ++l) {
    double pl;
    if (l == 0)
      pl = 1.0;
    else if (l == 1)
      pl = c;
    else {
      pl = ((2.0 * l - 1.0) * c * p1 - (l - 1.0) * p0) / l;
      p0 = p1;
      p1 = pl;
    }
    acc += (2.0 * l + 1.0) * pl;
  }
  return acc / (4.0 * kPi);
}

OperatorMatrix operator_from_symbol(const SymbolField& w_field, Spin spin) {
  if (w_field.grid.exact_degree() < 2 * spin.two_j())
    throw GridDegreeError("operator_from_symbol: grid exact degree must be >= 4j");
  // project the field and divide out a^W; equivalent to averaging against
  // Delta^j but with a single basis walk
  const HarmonicCoefficients proj =
      project_harmonics(w_field, spin.two_j());
  TensorDecomposition d(spin);
  for (int l = 0; l <= spin.two_j(); ++l) {
    const double aw = coeff_a(SymbolKind::W, spin, l);
    for (int m = -l; m <= l; ++m) d.coeffs.at(l, m) = proj.get(l, m) / aw;
  }
  return reconstruct(d);
}

cplx trikernel(Spin spin, Direction n1, Direction n2, Direction n3) {
  const OperatorMatrix d1 = sw_kernel(spin, n1);
  const OperatorMatrix d2 = sw_kernel(spin, n2);
  const OperatorMatrix d3 = sw_kernel(spin, n3);
  return ((d1 * d2) * d3).trace() / double(spin.dim());
}

SymbolCoefficients moyal_exact(const OperatorMatrix& a,
                               const OperatorMatrix& b) {
  if (a.spin() != b.spin())
    throw std::invalid_argument("moyal_exact: incompatible spins");
  return symbol_of(a * b, SymbolKind::W);
}

cplx moyal_leading(const SymbolCoefficients& sa, const SymbolCoefficients& sb,
                   Direction n) {
  if (sa.kind() != SymbolKind::W || sb.kind() != SymbolKind::W)
    throw std::invalid_argument("moyal_leading: both symbols must be of kind W");
  if (sa.spin() != sb.spin())
    throw std::invalid_argument("moyal_leading: incompatible spins");
  const double jc = sa.spin().j_c();
  const cplx va = eval_symbol(sa, n);
  const cplx vb = eval_symbol(sb, n);
  const cplx bracket = poisson_sphere(sa.harmonics(), sb.harmonics(), n, 1.0);
  return va * vb + cplx(0.0, 1.0) / (2.0 * jc) * bracket;
}

SymbolCoefficients commutator_symbol(const OperatorMatrix& a,
                                     const OperatorMatrix& b) {
  if (a.spin() != b.spin())
    throw std::invalid_argument("commutator_symbol: incompatible spins");
  return symbol_of(a * b - b * a, SymbolKind::W);
}

SymbolCoefficients anticommutator_symbol(const OperatorMatrix& a,
                                         const OperatorMatrix& b) {
  if (a.spin() != b.spin())
    throw std::invalid_argument("anticommutator_symbol: incompatible spins");
  return symbol_of(a * b + b * a, SymbolKind::W);
}

double moment_constant(Spin spin) {
  const double aw1 = coeff_a(SymbolKind::W, spin, 1);
  const double aw2 = coeff_a(SymbolKind::W, spin, 2);
  const double j = spin.j();
  return (aw2 - j * (j + 1.0)) / (3.0 * aw1 * aw1);
}

double fit_loglog_slope(const std::vector<double>& x,
                        const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("fit_loglog_slope: need >= 2 points");
  const std::size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(std::max(y[i], 1e-300));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

BracketScan bracketscan_impl(const OperatorExpr& ea, const OperatorExpr& eb,
                             const std::vector<Spin>& spins,
                             const std::string& desc_a,
                             const std::string& desc_b) {
  BracketScan scan;
  scan.commutator.operators = "[" + desc_a + ", " + desc_b + "]";
  scan.anticommutator.operators = "{" + desc_a + ", " + desc_b + "}";
  for (const Spin& spin : spins) {
    if (spin.two_j() < 1)
      throw std::invalid_argument("bracket_scan: needs j >= 1/2 (j_c > 0)");
    const double jc = spin.j_c();
    const OperatorMatrix a = eval_operator(ea, spin, 1.0 / jc);
    const OperatorMatrix b = eval_operator(eb, spin, 1.0 / jc);
    const SphereGrid grid = quadrature_grid(2 * spin.two_j());

    const SymbolCoefficients sa = symbol_of(a, SymbolKind::W);
    const SymbolCoefficients sb = symbol_of(b, SymbolKind::W);
    const SymbolField fa = eval_on_grid(sa, grid);
    const SymbolField fb = eval_on_grid(sb, grid);
    const GradientField ga = tangential_gradient_on_grid(sa.harmonics(), grid);
    const GradientField gb = tangential_gradient_on_grid(sb.harmonics(), grid);

    const SymbolField fc = eval_on_grid(commutator_symbol(a, b), grid);
    const SymbolField fs = eval_on_grid(anticommutator_symbol(a, b), grid);

    double err_comm = 0.0, err_anti = 0.0;
    for (std::size_t k = 0; k < grid.size(); ++k) {
      // {f,g} = (1/j_c)(f_theta g_phi - f_phi g_theta) in the spherical frame
      const cplx bracket = (ga.d_theta[k] * gb.d_phi_over_sin[k] -
                            ga.d_phi_over_sin[k] * gb.d_theta[k]) /
                           jc;
      err_comm = std::max(
          err_comm, std::abs(fc.values[k] - cplx(0.0, 1.0) * bracket));
      err_anti = std::max(
          err_anti, std::abs(fs.values[k] - 2.0 * fa.values[k] * fb.values[k]));
    }
    scan.commutator.j_values.push_back(spin.j());
    scan.commutator.errors.push_back(err_comm);
    scan.anticommutator.j_values.push_back(spin.j());
    scan.anticommutator.errors.push_back(err_anti);
  }
  if (spins.size() >= 2) {
    scan.commutator.fitted_slope =
        fit_loglog_slope(scan.commutator.j_values, scan.commutator.errors);
    scan.anticommutator.fitted_slope = fit_loglog_slope(
        scan.anticommutator.j_values, scan.anticommutator.errors);
  }
  return scan;
}

BracketScan bracket_scan(const std::string& op_a, const std::string& op_b,
                         const std::vector<Spin>& spins) {
  if (spins.empty())
    throw std::invalid_argument("bracket_scan: need at least one j value");
  const OperatorExpr ea = parse_operator(op_a);
  const OperatorExpr eb = parse_operator(op_b);
  return bracketscan_impl(ea, eb, spins, op_a, op_b);
}

}  // namespace spinphase
