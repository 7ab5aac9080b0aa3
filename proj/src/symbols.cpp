#include "spinphase/symbols.hpp"

#include <cmath>
#include <functional>
#include <numbers>

namespace spinphase {

const char* to_string(SymbolKind kind) {
  switch (kind) {
    case SymbolKind::P: return "P";
    case SymbolKind::Q: return "Q";
    case SymbolKind::W: return "W";
  }
  return "?";
}

double coeff_a(SymbolKind kind, Spin spin, int l) {
  if (l < 0) throw std::domain_error("coeff_a: l must be nonnegative");
  const double j = spin.j();
  if (l > spin.two_j() && kind != SymbolKind::P) return 0.0;
  long double prod = 1.0L;
  switch (kind) {
    case SymbolKind::P:
      for (int k = 1; k <= l; ++k) prod *= j + 0.5 * (k + 1);
      break;
    case SymbolKind::Q:
      for (int k = 1; k <= l; ++k) prod *= j - 0.5 * (k - 1);
      break;
    case SymbolKind::W:
      for (int k = 1; k <= l; ++k) {
        const long double f =
            (j + 0.5L) * (j + 0.5L) - 0.25L * k * k;
        prod *= std::sqrt(f);
      }
      break;
  }
  return double(prod);
}

double coeff_K(Spin spin, int l) {
  if (l < 0 || l > spin.two_j())
    throw std::domain_error("coeff_K: require 0 <= l <= 2j");
  const int tj = spin.two_j();
  // (2l+1) (2j)(2j-1)...(2j-l+1) / ((2j+1)(2j+2)...(2j+l+1)), interleaved
  long double r = 2.0L * l + 1.0L;
  for (int i = 0; i <= l; ++i) {
    if (i < l) r *= tj - i;
    r /= tj + i + 1;
  }
  return double(r);
}

SymbolCoefficients symbol_of(const OperatorMatrix& a, SymbolKind kind) {
  const Spin spin = a.spin();
  const TensorDecomposition d = decompose(a);
  SymbolCoefficients s(spin, kind);
  for (int l = 0; l <= spin.two_j(); ++l) {
    const double al = coeff_a(kind, spin, l);
    for (int m = -l; m <= l; ++m) s.at(l, m) = d.coeffs.at(l, m) * al;
  }
  return s;
}

cplx eval_symbol(const SymbolCoefficients& s, Direction n) {
  return eval_harmonics(s.harmonics(), n);
}

SymbolField eval_on_grid(const SymbolCoefficients& s, const SphereGrid& grid) {
  return eval_harmonics_on_grid(s.harmonics(), grid);
}

SymbolCoefficients convert(const SymbolCoefficients& s, SymbolKind to) {
  const Spin spin = s.spin();
  SymbolCoefficients out(spin, to);
  for (int l = 0; l <= spin.two_j(); ++l) {
    const double ratio = coeff_a(to, spin, l) / coeff_a(s.kind(), spin, l);
    for (int m = -l; m <= l; ++m) out.at(l, m) = s.at(l, m) * ratio;
  }
  return out;
}

namespace {

SymbolField apply_zonal_kernel(const SymbolField& in, Spin spin,
                               const std::function<double(double)>& kernel,
                               double prefactor) {
  if (in.grid.exact_degree() < 2 * spin.two_j())
    throw GridDegreeError("symbol conversion: grid exact degree must be >= 4j");
  const auto& nodes = in.grid.nodes();
  const auto& w = in.grid.weights();
  std::vector<Vec3> units(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) units[i] = nodes[i].unit();
  std::vector<cplx> out(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    cplx acc = 0.0;
    for (std::size_t k = 0; k < nodes.size(); ++k)
      acc += w[k] * kernel(dot(units[i], units[k])) * in.values[k];
    out[i] = prefactor * acc;
  }
  return SymbolField(in.grid, std::move(out));
}

}  // namespace

SymbolField smooth_p_to_q(const SymbolField& p_field, Spin spin) {
  const int tj = spin.two_j();
  const double pref = (tj + 1.0) / (4.0 * std::numbers::pi);
  return apply_zonal_kernel(
      p_field, spin,
      [tj](double c) { return std::pow(0.5 * (1.0 + c), double(tj)); }, pref);
}

SymbolField sharpen_q_to_p(const SymbolField& q_field, Spin spin) {
  const int tj = spin.two_j();
  // g_l = (2l+1) prod_{k=1..l} (2j+1+k) / prod_{i=0..l-1} (2j-i)
  std::vector<double> g(tj + 1);
  for (int l = 0; l <= tj; ++l) {
    long double r = 2.0L * l + 1.0L;
    for (int k = 1; k <= l; ++k) r = r * (tj + 1 + k) / (tj - k + 1);
    g[l] = double(r);
  }
  auto kernel = [&g, tj](double c) {
    double acc = g[0];
    if (tj == 0) return acc;
    double p0 = 1.0, p1 = c;
    acc += g[1] * p1;
    for (int l = 2; l <= tj; ++l) {
      const double p2 = ((2.0 * l - 1.0) * c * p1 - (l - 1.0) * p0) / l;
      p0 = p1;
      p1 = p2;
      acc += g[l] * p2;
    }
    return acc;
  };
  return apply_zonal_kernel(q_field, spin, kernel,
                            1.0 / (4.0 * std::numbers::pi));
}

double asymptotic_ratio(SymbolKind from, SymbolKind to, double j, int l,
                        int order) {
  if (order < 0 || order > 3)
    throw std::domain_error("asymptotic_ratio: order must be in 0..3");
  if (to != SymbolKind::P || (from != SymbolKind::Q && from != SymbolKind::W))
    throw std::invalid_argument("asymptotic_ratio: only Q->P and W->P are supported");
  const double L = double(l) * (l + 1);
  double terms[4];
  terms[0] = 1.0;
  if (from == SymbolKind::Q) {
    terms[1] = L / (2.0 * j);
    terms[2] = L * (L - 2.0) / (8.0 * j * j);
    terms[3] = L * (L - 2.0) * (L - 3.0) / (48.0 * j * j * j);
  } else {
    terms[1] = L / (4.0 * j);
    terms[2] = L * (L - 4.0) / (32.0 * j * j);
    terms[3] = L * (L * L - 8.0 * L + 24.0) / (384.0 * j * j * j);
  }
  double s = 0.0;
  for (int k = 0; k <= order; ++k) s += terms[k];
  return s;
}

SymbolField wigner_function(const OperatorMatrix& rho, const SphereGrid& grid) {
  return eval_on_grid(symbol_of(rho, SymbolKind::W), grid);
}

}  // namespace spinphase
