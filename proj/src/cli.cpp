#include "magnonspec/cli.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "magnonspec/dynamics.hpp"
#include "magnonspec/operators.hpp"
#include "magnonspec/spectral.hpp"
#include "magnonspec/symbols.hpp"

namespace magnonspec::cli {

namespace {

constexpr double kIdentityTolerance = 1e-12;
constexpr double kBlochTolerance = 1e-10;

struct Model {
  ShiftSymbol phi;
  ShiftSymbol psi;
  ShiftSymbol cayley;  // M, only for the cayley model
  int N = 1;
};

Model load_model(const RunConfig& c) {
  try {
    if (c.model == "heisenberg") {
      auto [phi, psi] = heisenberg_symbols(c.a, c.b, c.N);
      return {phi, psi, unit_vector_indicator(c.N), c.N};
    }
    if (c.model == "symbols") {
      if (c.phi_path.empty()) throw ConfigError("symbols model needs --phi");
      ShiftSymbol phi = read_symbol_file(c.phi_path);
      ShiftSymbol psi = c.psi_path.empty() ? ShiftSymbol(phi.dim()) : read_symbol_file(c.psi_path, phi.dim());
      return {phi, psi, ShiftSymbol(phi.dim()), phi.dim()};
    }
    if (c.model == "cayley") {
      if (c.cayley_path.empty()) throw ConfigError("cayley model needs --cayley");
      ShiftSymbol m = read_symbol_file(c.cayley_path);
      return {m, -m, m, m.dim()};
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  throw ConfigError("unknown model '" + c.model + "' (expected heisenberg, symbols or cayley)");
}

std::pair<double, double> parse_pair(const std::string& text, const char* what) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw ConfigError(std::string(what) + " must be 'lo,hi'");
  try {
    const double lo = std::stod(text.substr(0, comma));
    const double hi = std::stod(text.substr(comma + 1));
    if (!(lo < hi)) throw ConfigError(std::string(what) + " needs lo < hi");
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw ConfigError(std::string(what) + " must be 'lo,hi'");
  }
}

double max_abs_difference(const SparseMatrix& a, const SparseMatrix& b) {
  const SparseMatrix d = a - b;
  double worst = 0.0;
  for (Eigen::Index k = 0; k < d.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(d, k); it; ++it) worst = std::max(worst, std::abs(it.value()));
  }
  return worst;
}

TruncationBox full_box(const RunConfig& c, int N) { return TruncationBox::full(N, parse_range(c.z1), c.gap_max); }

CompressedOperator study_operator(const RunConfig& c, const Model& m) {
  if (c.study == "fiber") return fiber_hamiltonian(c.tau, m.phi, m.psi, c.gap_max);
  return compress_toeplitz_plus_potential(m.phi, m.psi, LatticeDomain::full_ordered(m.N), full_box(c, m.N));
}

std::vector<double> time_grid(const RunConfig& c) {
  std::vector<double> grid;
  const auto steps = static_cast<long>(std::floor(c.t_max / c.t_step + 1e-9));
  for (long i = 0; i <= steps; ++i) grid.push_back(static_cast<double>(i) * c.t_step);
  return grid;
}

/// Window around the eigenvalues of `h` lying below (or, failing that,
/// above) the hull of the union of the Sigma_j.
EnergyWindow outlier_window(const SpectralResolution& h, const Interval& band, std::ostream& log) {
  std::vector<double> below;
  std::vector<double> above;
  for (Eigen::Index i = 0; i < h.eigensystem().values.size(); ++i) {
    const double v = h.eigensystem().values[i];
    if (v < band.lo) below.push_back(v);
    if (v > band.hi) above.push_back(v);
  }
  if (!below.empty()) {
    const double s = 0.5 * (band.lo - below.back());
    log << "outliers below band: " << below.size() << ", lowest " << format_double(below.front()) << '\n';
    return {below.front() - s, below.back() + s};
  }
  if (!above.empty()) {
    const double s = 0.5 * (above.front() - band.hi);
    log << "outliers above band: " << above.size() << ", highest " << format_double(above.back()) << '\n';
    return {above.front() - s, above.back() + s};
  }
  throw NumericalError("no eigenvalue outside the hull of the Sigma_j union; pass --window explicitly");
}

EnergyWindow resolve_window(const RunConfig& c, const Model& m, const SpectralResolution& h, std::ostream& log) {
  if (c.window != "auto") {
    auto [lo, hi] = parse_pair(c.window, "--window");
    return {lo, hi};
  }
  const Interval band = sigma_j_union(c.j, m.phi, m.psi, c.grid, c.gap_max).hull();
  log << "Sigma_" << c.j << " union hull: [" << format_double(band.lo) << ", " << format_double(band.hi) << "]\n";
  return outlier_window(h, band, log);
}

Table run_nonprop(const RunConfig& c, const Model& m, std::ostream& log) {
  const SpectralResolution h(study_operator(c, m));
  const EnergyWindow kappa = resolve_window(c, m, h, log);
  std::optional<EnergyWindow> contrast;
  if (!c.contrast_window.empty()) {
    auto [lo, hi] = parse_pair(c.contrast_window, "--contrast-window");
    contrast.emplace(lo, hi);
  }
  Table table;
  table.columns = {"n", "norm"};
  if (contrast) table.columns.emplace_back("contrast_norm");
  for (Coord n = c.n_min; n <= c.n_max; ++n) {
    std::vector<Cell> row{static_cast<long long>(n), nonprop_norm(h, c.j, n, kappa)};
    if (contrast) row.emplace_back(nonprop_norm(h, c.j, n, *contrast));
    table.add_row(std::move(row));
  }
  const double first = std::get<double>(table.rows.front()[1]);
  const double last = std::get<double>(table.rows.back()[1]);
  log << "window [" << format_double(kappa.support().lo) << ", " << format_double(kappa.support().hi)
      << "] norm(n=" << c.n_min << ")=" << format_double(first) << " norm(n=" << c.n_max
      << ")=" << format_double(last) << '\n';
  return table;
}

Table run_evolve(const RunConfig& c, const Model& m, std::ostream& log) {
  const SpectralResolution h(study_operator(c, m));
  const EnergyWindow kappa = resolve_window(c, m, h, log);
  std::mt19937_64 rng(c.seed);
  std::normal_distribution<double> gauss;
  Vector g(static_cast<Eigen::Index>(h.size()));
  for (Eigen::Index i = 0; i < g.size(); ++i) g[i] = Complex(gauss(rng), gauss(rng));
  const Vector f = h.apply_function(kappa, g);
  if (f.norm() == 0.0) throw NumericalError("kappa(H) g vanished; the window contains no eigenvalue");
  const PointPredicate region = region_predicate(h.domain(), c.j, c.n_max);
  Table table;
  table.columns = {"t", "ratio"};
  double worst = 0.0;
  for (double t : time_grid(c)) {
    const double t_only[] = {t};
    const double ratio = h.projected_evolution_ratio(region, f, t_only);
    worst = std::max(worst, ratio);
    table.add_row({t, ratio});
  }
  const double bound = nonprop_norm(h, c.j, c.n_max, kappa) * g.norm() / f.norm();
  log << "max ratio " << format_double(worst) << ", operator-norm bound " << format_double(bound) << '\n';
  return table;
}

}  // namespace

IntRange parse_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) throw ConfigError("range '" + text + "' must look like lo..hi");
  try {
    std::size_t used_lo = 0;
    std::size_t used_hi = 0;
    const std::string lo_text = text.substr(0, dots);
    const std::string hi_text = text.substr(dots + 2);
    IntRange r{std::stoll(lo_text, &used_lo), std::stoll(hi_text, &used_hi)};
    if (used_lo != lo_text.size() || used_hi != hi_text.size()) throw std::invalid_argument(text);
    if (r.hi < r.lo) throw ConfigError("range '" + text + "' is empty");
    return r;
  } catch (const ConfigError&) {
    throw;
  } catch (const std::logic_error&) {
    throw ConfigError("range '" + text + "' must look like lo..hi");
  }
}

void validate(const std::string& sub, const RunConfig& c) {
  if (std::find(kSubcommands.begin(), kSubcommands.end(), sub) == kSubcommands.end()) {
    throw ConfigError("unknown subcommand '" + sub + "'");
  }
  if (c.model != "heisenberg" && c.model != "symbols" && c.model != "cayley") {
    throw ConfigError("unknown model '" + c.model + "'");
  }
  if (c.model == "heisenberg" && c.N < 1) throw ConfigError("--N must be >= 1");
  if (!std::isfinite(c.a) || !std::isfinite(c.b)) throw ConfigError("--a and --b must be finite");
  if (c.gap_max < 1) throw ConfigError("--gap-max must be >= 1");
  if (c.grid < 1) throw ConfigError("--grid must be >= 1");
  if (!std::isfinite(c.tau)) throw ConfigError("--tau must be finite");
  if (c.L1 < 1) throw ConfigError("--L1 must be >= 1");
  if (c.n_min < 0 || c.n_max < c.n_min) throw ConfigError("need 0 <= --n-min <= --n-max");
  if (!(c.t_step > 0.0) || !(c.t_max >= 0.0)) throw ConfigError("need --t-step > 0 and --t-max >= 0");
  if (!(c.eps_mass > 0.0)) throw ConfigError("--eps-mass must be positive");
  if (c.study != "fiber" && c.study != "full") throw ConfigError("--study must be fiber or full");
  parse_format(c.format);
  parse_range(c.z1);
  if (c.window != "auto") parse_pair(c.window, "--window");
  if (!c.contrast_window.empty()) parse_pair(c.contrast_window, "--contrast-window");
}

Provenance provenance(const std::string& sub, const RunConfig& c) {
  auto num = [](double v) { return format_double(v); };
  return {{"subcommand", sub},
          {"model", c.model},
          {"a", num(c.a)},
          {"b", num(c.b)},
          {"N", std::to_string(c.N)},
          {"phi", c.phi_path},
          {"psi", c.psi_path},
          {"cayley", c.cayley_path},
          {"gap-max", std::to_string(c.gap_max)},
          {"z1", c.z1},
          {"L1", std::to_string(c.L1)},
          {"tau", num(c.tau)},
          {"grid", std::to_string(c.grid)},
          {"j", std::to_string(c.j)},
          {"study", c.study},
          {"n-min", std::to_string(c.n_min)},
          {"n-max", std::to_string(c.n_max)},
          {"window", c.window},
          {"contrast-window", c.contrast_window},
          {"t-max", num(c.t_max)},
          {"t-step", num(c.t_step)},
          {"seed", std::to_string(c.seed)},
          {"eps-mass", num(c.eps_mass)}};
}

int run(const std::string& sub, const RunConfig& c, std::ostream& log, std::ostream& err) {
  try {
    validate(sub, c);
    const Model m = load_model(c);
    const bool needs_fiber = sub == "fiber" || sub == "essential" || sub == "bloch" ||
                             ((sub == "nonprop" || sub == "evolve") && c.study == "fiber");
    if (needs_fiber && m.N < 2) throw ConfigError(sub + " needs N >= 2");
    if ((sub == "essential" || sub == "nonprop" || sub == "evolve") && (c.j < 2 || c.j > m.N)) {
      throw ConfigError("--j must lie in 2..N");
    }
    if (sub == "verify-equivalence" && c.model == "symbols") {
      throw ConfigError("verify-equivalence needs the heisenberg or cayley model");
    }
    if ((sub == "nonprop" || sub == "evolve") && c.study == "full" &&
        full_box(c, m.N).size() > kDenseCap) {
      throw ConfigError("full study box exceeds the dense cap of " + std::to_string(kDenseCap));
    }
    const OutputFormat format = parse_format(c.format);
    const Provenance prov = provenance(sub, c);

    if (sub == "verify-equivalence") {
      const TruncationBox box = full_box(c, m.N);
      const LatticeDomain domain = LatticeDomain::full_ordered(m.N);
      bool pass = true;
      if (c.model == "heisenberg") {
        const double diff = max_abs_difference(build_heisenberg_direct(m.N, c.a, c.b, box).matrix(),
                                               compress_toeplitz_plus_potential(m.phi, m.psi, domain, box).matrix());
        log << "heisenberg max_diff " << format_double(diff) << '\n';
        pass = pass && diff <= kIdentityTolerance;
      }
      const double diff = max_abs_difference(cayley_laplacian(m.cayley, domain, box).matrix(),
                                             compress_toeplitz_plus_potential(m.cayley, -m.cayley, domain, box).matrix());
      log << "cayley max_diff " << format_double(diff) << '\n';
      pass = pass && diff <= kIdentityTolerance;
      log << (pass ? "PASS" : "FAIL") << '\n';
      return pass ? 0 : 1;
    }
    if (sub == "bloch") {
      const double d = bloch_check(m.phi, m.psi, c.L1, c.gap_max);
      log << format_double(d) << '\n';
      return d <= kBlochTolerance ? 0 : 1;
    }

    Table table;
    if (sub == "spectrum") {
      table.columns = {"tau", "eigenvalue_index", "value"};
      for (const FiberSample& s : fiber_sweep(m.phi, m.psi, c.grid, c.gap_max)) {
        for (std::size_t i = 0; i < s.values.size(); ++i) table.add_row({s.tau, static_cast<long long>(i), s.values[i]});
      }
    } else if (sub == "fiber") {
      const CompressedOperator h = fiber_hamiltonian(c.tau, m.phi, m.psi, c.gap_max);
      if (!c.dump_matrix.empty()) {
        std::ofstream dump(c.dump_matrix);
        if (!dump) throw ConfigError("cannot write matrix dump " + c.dump_matrix);
        dump_matrix(dump, h);
      }
      const SpectrumSet spec = eig_dense(h);
      table.columns = {"tau", "eigenvalue_index", "value"};
      for (std::size_t i = 0; i < spec.size(); ++i) {
        table.add_row({FiberParameter(c.tau).value(), static_cast<long long>(i), spec.values()[i]});
      }
    } else if (sub == "essential") {
      table.columns = {"tau_prime", "band_value", "j"};
      for (const BandSample& s : essential_bands(c.tau, m.phi, m.psi, c.grid, c.gap_max)) {
        for (double v : s.values) table.add_row({s.tau_prime, v, static_cast<long long>(s.j)});
      }
    } else if (sub == "nonprop") {
      table = run_nonprop(c, m, log);
    } else if (sub == "evolve") {
      table = run_evolve(c, m, log);
    }
    emit(table, format, prov, c.out);
    return 0;
  } catch (const NumericalError& e) {
    err << "numerical contract violated: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

int main(int argc, char** argv) {
  CLI::App app{"Spectral analysis of Toeplitz-plus-potential operators on ordered lattices", "magnonspec"};
  app.set_config("--config", "", "flat key = value configuration file (flags override it)");
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig c;
  app.add_option("--model", c.model, "heisenberg | symbols | cayley")->capture_default_str();
  app.add_option("--a", c.a, "transverse coupling")->capture_default_str();
  app.add_option("--b", c.b, "longitudinal coupling")->capture_default_str();
  app.add_option("--N", c.N, "number of magnons")->capture_default_str();
  app.add_option("--phi", c.phi_path, "Toeplitz symbol file (symbols model)");
  app.add_option("--psi", c.psi_path, "potential symbol file (symbols model)");
  app.add_option("--cayley", c.cayley_path, "generator set M file (cayley model)");
  app.add_option("--gap-max", c.gap_max, "largest gap coordinate L")->capture_default_str();
  app.add_option("--z1", c.z1, "z_1 range lo..hi for full boxes")->capture_default_str();
  app.add_option("--L1", c.L1, "ring period for bloch")->capture_default_str();
  app.add_option("--tau", c.tau, "fiber parameter")->capture_default_str();
  app.add_option("--grid", c.grid, "torus grid size")->capture_default_str();
  app.add_option("--j", c.j, "cluster index j")->capture_default_str();
  app.add_option("--study", c.study, "fiber | full")->capture_default_str();
  app.add_option("--n-min", c.n_min, "smallest region distance")->capture_default_str();
  app.add_option("--n-max", c.n_max, "largest region distance")->capture_default_str();
  app.add_option("--window", c.window, "energy window lo,hi or auto")->capture_default_str();
  app.add_option("--contrast-window", c.contrast_window, "second window lo,hi for the contrast control");
  app.add_option("--t-max", c.t_max, "last time of the grid")->capture_default_str();
  app.add_option("--t-step", c.t_step, "time step of the grid")->capture_default_str();
  app.add_option("--seed", c.seed, "random seed")->capture_default_str();
  app.add_option("--eps-mass", c.eps_mass, "spectral support threshold")->capture_default_str();
  app.add_option("--out", c.out, "output path, - for stdout")->capture_default_str();
  app.add_option("--format", c.format, "csv | json")->capture_default_str();
  app.add_option("--dump-matrix", c.dump_matrix, "write the fiber matrix as i k re im triplets");

  app.add_subcommand("verify-equivalence", "compare the direct Hamiltonian with its Toeplitz form");
  app.add_subcommand("spectrum", "fiber spectra over the torus grid");
  app.add_subcommand("fiber", "spectrum of one fiber Hamiltonian");
  app.add_subcommand("essential", "Sigma_j bands of one fiber");
  app.add_subcommand("bloch", "periodised operator vs fiber union");
  app.add_subcommand("nonprop", "localisation norms over a range of n");
  app.add_subcommand("evolve", "time trace of the projected evolution");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return 2;
  }
  const std::string sub = app.get_subcommands().front()->get_name();
  return run(sub, c, std::cout, std::cerr);
}

}  // namespace magnonspec::cli
