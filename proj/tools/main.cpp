// spinphase command line: phase-space symbols for spin systems.
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "spinphase/expr.hpp"
#include "spinphase/moyal.hpp"
#include "spinphase/symbols.hpp"
#include "spinphase/version.hpp"

using json = nlohmann::ordered_json;
using namespace spinphase;

namespace {

std::string g_command_line;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Spin parse_spin_label(const std::string& s) {
  std::size_t pos = 0;
  long n = -1;
  try {
    n = std::stol(s, &pos);
  } catch (const std::exception&) {
    throw std::domain_error("bad j '" + s + "': expected \"n\" or \"n/2\"");
  }
  if (n < 0 || n > 100000)
    throw std::domain_error("bad j '" + s + "': j out of range");
  int two_j;
  if (pos == s.size()) {
    two_j = int(2 * n);
  } else if (s.substr(pos) == "/2") {
    two_j = int(n);
  } else {
    throw std::domain_error("bad j '" + s + "': expected \"n\" or \"n/2\"");
  }
  return Spin(two_j);
}

std::string spin_label(Spin spin) {
  if (spin.two_j() % 2 == 0) return std::to_string(spin.two_j() / 2);
  return std::to_string(spin.two_j()) + "/2";
}

// default grid for spin j: Gauss-Legendre (2j+2) x uniform (4j+2), degree-4j
// exact; an explicit "NTHETAxNPHI" overrides it
SphereGrid make_grid(Spin spin, const std::string& grid_spec) {
  if (grid_spec.empty())
    return SphereGrid::with_counts(spin.two_j() + 2, 2 * spin.two_j() + 2);
  const auto x = grid_spec.find('x');
  if (x == std::string::npos)
    throw std::domain_error("bad --grid '" + grid_spec + "': expected NTHETAxNPHI");
  int nt = 0, np = 0;
  try {
    nt = std::stoi(grid_spec.substr(0, x));
    np = std::stoi(grid_spec.substr(x + 1));
  } catch (const std::exception&) {
    throw std::domain_error("bad --grid '" + grid_spec + "': expected NTHETAxNPHI");
  }
  return SphereGrid::with_counts(nt, np);
}

Direction parse_direction(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos)
    throw std::domain_error("bad --dir '" + s + "': expected theta,phi");
  double theta = 0.0, phi = 0.0;
  try {
    theta = std::stod(s.substr(0, comma));
    phi = std::stod(s.substr(comma + 1));
  } catch (const std::exception&) {
    throw std::domain_error("bad --dir '" + s + "': expected theta,phi");
  }
  if (theta < 0.0 || theta > std::numbers::pi || phi < 0.0 ||
      phi >= 2.0 * std::numbers::pi)
    throw std::domain_error("--dir out of range: need theta in [0,pi], phi in [0,2pi)");
  return {theta, phi};
}

void write_output(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::string path = out_path;
  if (const char* dir = std::getenv("OUTPUT_DIR");
      dir && !out_path.empty() && out_path.front() != '/')
    path = std::string(dir) + "/" + out_path;
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file '" + path + "'");
  f << text;
}

// every output embeds tool, version, the command line, and the exactness
// degree of whatever grid was used (null when the command uses none)
json meta_block(json grid_exact_degree = nullptr) {
  return json{{"tool", "spinphase"},
              {"version", kVersion},
              {"command", g_command_line},
              {"grid_exact_degree", std::move(grid_exact_degree)}};
}

std::string csv_meta(Spin spin, const SphereGrid& grid) {
  std::ostringstream os;
  os << "# spinphase " << kVersion << "\n";
  os << "# command: " << g_command_line << "\n";
  os << "# j: " << spin_label(spin) << "\n";
  os << "# grid: " << grid.n_theta() << "x" << grid.n_phi()
     << " gauss-legendre x uniform\n";
  os << "# grid_exact_degree: " << grid.exact_degree() << "\n";
  return os.str();
}

std::string field_csv(const SymbolField& field, const std::string& meta) {
  std::ostringstream os;
  os << meta << "theta,phi,re,im\n";
  const auto& nodes = field.grid.nodes();
  for (std::size_t k = 0; k < nodes.size(); ++k)
    os << fmt17(nodes[k].theta) << ',' << fmt17(nodes[k].phi) << ','
       << fmt17(field.values[k].real()) << ',' << fmt17(field.values[k].imag())
       << '\n';
  return os.str();
}

json field_json(const SymbolField& field) {
  json rows = json::array();
  const auto& nodes = field.grid.nodes();
  for (std::size_t k = 0; k < nodes.size(); ++k)
    rows.push_back({nodes[k].theta, nodes[k].phi, field.values[k].real(),
                    field.values[k].imag()});
  return rows;
}

// ---------------------------------------------------------------- commands

struct CoeffsOpts {
  std::string j, out, format = "json";
  int max_l = 0;
  bool allow_truncated = false;
};

void run_coeffs(const CoeffsOpts& o) {
  const Spin spin = parse_spin_label(o.j);
  if (o.max_l < 0) throw std::domain_error("--max-l must be >= 0");
  if (o.max_l > spin.two_j() && !o.allow_truncated)
    throw std::domain_error("--max-l exceeds 2j (use --allow-truncated for the vanishing rows)");
  json rows = json::array();
  std::ostringstream csv;
  csv << "l,aP,aQ,aW,K\n";
  for (int l = 0; l <= o.max_l; ++l) {
    const double ap = coeff_a(SymbolKind::P, spin, l);
    const double aq = coeff_a(SymbolKind::Q, spin, l);
    const double aw = coeff_a(SymbolKind::W, spin, l);
    json row{{"l", l}, {"aP", ap}, {"aQ", aq}, {"aW", aw}};
    csv << l << ',' << fmt17(ap) << ',' << fmt17(aq) << ',' << fmt17(aw) << ',';
    if (l <= spin.two_j()) {
      const double k = coeff_K(spin, l);
      row["K"] = k;
      csv << fmt17(k);
    } else {
      row["K"] = nullptr;
    }
    csv << '\n';
    rows.push_back(row);
  }
  if (o.format == "csv") {
    write_output(o.out, csv.str());
  } else {
    json doc{{"meta", meta_block()}, {"j", spin_label(spin)}, {"rows", rows}};
    write_output(o.out, doc.dump(2) + "\n");
  }
}

struct SymbolOpts {
  std::string j, op, kind = "W", grid, out, format = "csv";
};

SymbolKind parse_kind(const std::string& s) {
  if (s == "P") return SymbolKind::P;
  if (s == "Q") return SymbolKind::Q;
  if (s == "W") return SymbolKind::W;
  throw std::domain_error("bad --kind '" + s + "': expected P, Q or W");
}

void run_symbol(const SymbolOpts& o) {
  const Spin spin = parse_spin_label(o.j);
  const SymbolKind kind = parse_kind(o.kind);
  const OperatorExpr expr = parse_operator(o.op);
  const SphereGrid grid = make_grid(spin, o.grid);
  const OperatorMatrix a = eval_operator(expr, spin);
  const SymbolField field = eval_on_grid(symbol_of(a, kind), grid);
  if (o.format == "json") {
    json doc{{"meta", meta_block(grid.exact_degree())},
             {"j", spin_label(spin)},
             {"kind", o.kind},
             {"op", o.op},
             {"grid_exact_degree", grid.exact_degree()},
             {"columns", {"theta", "phi", "re", "im"}},
             {"rows", field_json(field)}};
    write_output(o.out, doc.dump(2) + "\n");
  } else {
    std::string meta = csv_meta(spin, grid);
    meta += "# kind: " + o.kind + "\n# op: " + o.op + "\n";
    write_output(o.out, field_csv(field, meta));
  }
}

struct WignerOpts {
  std::string j, state, grid, out, format = "csv";
};

void run_wigner(const WignerOpts& o) {
  const Spin spin = parse_spin_label(o.j);
  const SphereGrid grid = make_grid(spin, o.grid);
  if (grid.exact_degree() < spin.two_j())
    throw GridDegreeError(
        "wigner: grid exact degree must be >= 2j for the reported quadrature mean");
  const OperatorMatrix rho = parse_state(o.state, spin);
  const SymbolField field = wigner_function(rho, grid);
  const double mean = integrate(field).real() / (4.0 * std::numbers::pi);
  double min_value = field.values.empty() ? 0.0 : field.values[0].real();
  for (const auto& v : field.values) min_value = std::min(min_value, v.real());
  if (o.format == "json") {
    json doc{{"meta", meta_block(grid.exact_degree())},
             {"j", spin_label(spin)},
             {"state", o.state},
             {"grid_exact_degree", grid.exact_degree()},
             {"quadrature_mean", mean},
             {"min_value", min_value},
             {"negative_values", min_value < 0.0},
             {"columns", {"theta", "phi", "re", "im"}},
             {"rows", field_json(field)}};
    write_output(o.out, doc.dump(2) + "\n");
  } else {
    std::string meta = csv_meta(spin, grid);
    meta += "# state: " + o.state + "\n";
    meta += "# quadrature_mean: " + fmt17(mean) + "\n";
    meta += "# min_value: " + fmt17(min_value) + "\n";
    meta += std::string("# negative_values: ") + (min_value < 0.0 ? "yes" : "no") + "\n";
    write_output(o.out, field_csv(field, meta));
  }
}

struct ScanOpts {
  std::string op_a, op_b, j_list, out;
};

void run_moyal_scan(const ScanOpts& o) {
  std::vector<Spin> spins;
  std::vector<std::string> labels;
  std::stringstream ss(o.j_list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    spins.push_back(parse_spin_label(item));
    labels.push_back(spin_label(spins.back()));
  }
  if (spins.size() < 3)
    throw std::domain_error("--j-list: need >=3 points for a slope fit");
  const BracketScan scan = bracket_scan(o.op_a, o.op_b, spins);
  json doc{{"meta", meta_block("4j per j value")},
           {"operators",
            {{"A", o.op_a},
             {"B", o.op_b},
             {"normalization", "J components are scaled to J/sqrt(j(j+1))"}}},
           {"j", json::array()},
           {"commutator",
            {{"errors", scan.commutator.errors},
             {"fitted_slope", scan.commutator.fitted_slope}}},
           {"anticommutator",
            {{"errors", scan.anticommutator.errors},
             {"fitted_slope", scan.anticommutator.fitted_slope}}}};
  for (const auto& l : labels) doc["j"].push_back(l);
  write_output(o.out, doc.dump(2) + "\n");
}

struct KernelOpts {
  std::string j, dir, out;
};

void run_kernel(const KernelOpts& o) {
  const Spin spin = parse_spin_label(o.j);
  const Direction n = parse_direction(o.dir);
  const OperatorMatrix delta = sw_kernel(spin, n);
  double herm_err = 0.0;
  for (int r = 0; r < delta.dim(); ++r)
    for (int c = 0; c < delta.dim(); ++c)
      herm_err = std::max(herm_err,
                          std::abs(delta(r, c) - std::conj(delta(c, r))));
  if (herm_err > 1e-10)
    throw std::runtime_error("kernel: hermiticity check failed");
  json matrix = json::array();
  for (int r = 0; r < delta.dim(); ++r) {
    json row = json::array();
    for (int c = 0; c < delta.dim(); ++c)
      row.push_back({{"re", delta(r, c).real()}, {"im", delta(r, c).imag()}});
    matrix.push_back(row);
  }
  json doc{{"meta", meta_block()},
           {"j", spin_label(spin)},
           {"direction", {{"theta", n.theta}, {"phi", n.phi}}},
           {"trace_re", delta.trace().real()},
           {"hermiticity_error", herm_err},
           {"matrix", matrix}};
  write_output(o.out, doc.dump(2) + "\n");
}

}  // namespace

int main(int argc, char** argv) {
  for (int i = 0; i < argc; ++i) {
    if (i) g_command_line += ' ';
    const std::string a = argv[i];
    g_command_line += a.find(' ') == std::string::npos ? a : "\"" + a + "\"";
  }

  CLI::App app{
      "phase-space symbols for spin: P/Q/Weyl symbols, Wigner functions,\n"
      "Stratonovich-Weyl kernels, Moyal scaling scans\n\n"
      "Operator expression grammar (stable):\n"
      "  expr    := term (('+'|'-') term)*\n"
      "  term    := unary ('*' unary)*\n"
      "  unary   := '-' unary | power\n"
      "  power   := atom ('^' nonneg-int)?      exponent at most 16\n"
      "  atom    := I | Jx | Jy | Jz | Jp | Jm | literal | '(' expr ')'\n"
      "  literal := decimal number, optionally suffixed i; bare i\n"
      "Complex values such as 1+2i are ordinary sums; no implicit\n"
      "multiplication. Exit codes: 0 success, 2 usage/parse error, 3\n"
      "numerical precondition failure."};
  app.require_subcommand(1);

  CoeffsOpts co;
  auto* coeffs = app.add_subcommand(
      "coeffs", "tabulate the symbol coefficients aP, aQ, aW and K per l");
  coeffs->add_option("--j", co.j, "spin j as \"n\" or \"n/2\"")->required();
  coeffs->add_option("--max-l", co.max_l, "largest l to tabulate")->required();
  coeffs->add_flag("--allow-truncated", co.allow_truncated,
                   "permit l > 2j rows (aQ = aW = 0, K absent)");
  coeffs->add_option("--out", co.out, "output path (default stdout)");
  coeffs->add_option("--format", co.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  coeffs->callback([&co] { run_coeffs(co); });

  SymbolOpts so;
  auto* symbol = app.add_subcommand(
      "symbol", "sample the P/Q/W symbol of an operator expression on a grid");
  symbol->add_option("--j", so.j, "spin j as \"n\" or \"n/2\"")->required();
  symbol->add_option("--op", so.op,
                     "operator expression over I, Jx, Jy, Jz, Jp, Jm with + - "
                     "* ^ and complex literals (e.g. \"Jz + 0.5i*Jp^2\")")
      ->required();
  symbol->add_option("--kind", so.kind, "symbol kind: P, Q or W (default W)");
  symbol->add_option("--grid", so.grid,
                     "grid as NTHETAxNPHI (default (2j+2)x(4j+2), degree-4j exact)");
  symbol->add_option("--out", so.out, "output path (default stdout)");
  symbol->add_option("--format", so.format, "csv or json (default csv)")
      ->check(CLI::IsMember({"json", "csv"}));
  symbol->callback([&so] { run_symbol(so); });

  WignerOpts wo;
  auto* wigner = app.add_subcommand(
      "wigner", "sample the Wigner function (Weyl symbol) of a state");
  wigner->add_option("--j", wo.j, "spin j as \"n\" or \"n/2\"")->required();
  wigner->add_option("--state", wo.state,
                     "state spec: ket:M | coherent:THETA,PHI | mixed | "
                     "random_pure:SEED | random_density:SEED")
      ->required();
  wigner->add_option("--grid", wo.grid,
                     "grid as NTHETAxNPHI; its exact degree must be >= 2j");
  wigner->add_option("--out", wo.out, "output path (default stdout)");
  wigner->add_option("--format", wo.format, "csv or json (default csv)")
      ->check(CLI::IsMember({"json", "csv"}));
  wigner->callback([&wo] { run_wigner(wo); });

  ScanOpts mo;
  auto* scan = app.add_subcommand(
      "moyal-scan",
      "scaling of the commutator and anticommutator Moyal residuals over j; "
      "inside the expressions the J identifiers denote J/sqrt(j(j+1))");
  scan->add_option("--opA", mo.op_a, "first operator expression")->required();
  scan->add_option("--opB", mo.op_b, "second operator expression")->required();
  scan->add_option("--j-list", mo.j_list,
                   "comma-separated j values (>= 3), e.g. 4,8,16,32")
      ->required();
  scan->add_option("--out", mo.out, "output path (default stdout)");
  scan->callback([&mo] { run_moyal_scan(mo); });

  KernelOpts ko;
  auto* kernel = app.add_subcommand(
      "kernel", "Stratonovich-Weyl kernel matrix at a direction");
  kernel->add_option("--j", ko.j, "spin j as \"n\" or \"n/2\"")->required();
  kernel->add_option("--dir", ko.dir, "direction as theta,phi (radians)")
      ->required();
  kernel->add_option("--out", ko.out, "output path (default stdout)");
  kernel->callback([&ko] { run_kernel(ko); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const spinphase::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const GridDegreeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::overflow_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
