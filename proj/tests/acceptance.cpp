#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "magnonspec/dynamics.hpp"
#include "property_suites.hpp"

using namespace magnonspec;
using std::numbers::pi;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  std::string id;
  std::string title;
  double time_limit;  // seconds
  std::function<Outcome()> check;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

double max_abs(const SparseMatrix& a, const SparseMatrix& b) {
  const SparseMatrix d = a - b;
  double worst = 0.0;
  for (Eigen::Index k = 0; k < d.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(d, k); it; ++it) worst = std::max(worst, std::abs(it.value()));
  }
  return worst;
}

Outcome a1() {
  double worst = 0.0;
  bool same_points = true;
  for (auto [N, a, b] : {std::tuple{2, 1.0, 1.0}, std::tuple{3, 1.0, 1.0}, std::tuple{2, 1.0, 0.7}}) {
    const auto box = TruncationBox::full(N, {-8, 8}, 8);
    auto [phi, psi] = heisenberg_symbols(a, b, N);
    const auto direct = build_heisenberg_direct(N, a, b, box);
    const auto tv = compress_toeplitz_plus_potential(phi, psi, LatticeDomain::full_ordered(N), box);
    same_points = same_points && direct.index().points() == tv.index().points();
    worst = std::max(worst, max_abs(direct.matrix(), tv.matrix()));
  }
  return {same_points && worst <= 1e-12, "max |direct - (T+V)| = " + fmt(worst) + " over 3 parameter sets"};
}

Outcome a2() {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<Coord> c(-3, 3);
  const auto domain = LatticeDomain::full_ordered(2);
  const auto box = TruncationBox::full(2, {-8, 8}, 8);
  double worst = 0.0;
  std::size_t largest = 0;
  for (int trial = 0; trial < 10; ++trial) {
    ShiftSymbol m(2);
    const std::size_t target = 2 * (1 + rng() % 4);
    while (m.support_size() < target) {
      const Point eta{c(rng), c(rng)};
      if (eta[0] == 0 && eta[1] == 0) continue;
      m.set(eta, 1.0);
      m.set({-eta[0], -eta[1]}, 1.0);
    }
    largest = std::max(largest, m.support_size());
    worst = std::max(worst, max_abs(cayley_laplacian(m, domain, box).matrix(),
                                    (compress_toeplitz(m, domain, box) + compress_potential(-m, domain, box)).matrix()));
  }
  return {worst == 0.0 && largest <= 8, "10 random M (|M| <= " + std::to_string(largest) + "), max diff " + fmt(worst)};
}

Outcome a3() {
  double worst = 0.0;
  std::ostringstream d;
  auto [phi2, psi2] = heisenberg_symbols(1, 1, 2);
  for (Coord L1 : {2, 4, 8}) {
    const double v = bloch_check(phi2, psi2, L1, 12);
    worst = std::max(worst, v);
    d << "N=2 L1=" << L1 << ": " << fmt(v) << "; ";
  }
  auto [phi3, psi3] = heisenberg_symbols(1, 1, 3);
  const double v = bloch_check(phi3, psi3, 4, 8);
  worst = std::max(worst, v);
  d << "N=3 L1=4: " << fmt(v);
  return {worst <= 1e-10, d.str()};
}

Outcome a4() {
  auto [phi, psi] = heisenberg_symbols(1, 1, 2);
  double hull_err = 0.0;
  double filtered = 0.0;
  for (double tau : {0.0, 0.25, 0.5}) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    // Dense analytic sampling of the band function in tau'.
    for (int i = 0; i <= 200000; ++i) {
      const double tp = i / 200000.0;
      const double v = 8.0 - 4.0 * std::cos(2 * pi * tp) - 4.0 * std::cos(2 * pi * (tau - tp));
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    const Interval ess = essential_spectrum_fiber(tau, phi, psi, 256, 4).hull();
    hull_err = std::max({hull_err, std::abs(ess.lo - lo), std::abs(ess.hi - hi)});
    filtered = std::max(filtered, hausdorff(continuum_part(fiber_hamiltonian(tau, phi, psi, 400)), Interval{lo, hi}));
  }
  return {hull_err <= 1e-6 && filtered <= 0.1,
          "hull error " + fmt(hull_err) + ", filtered L=400 Hausdorff " + fmt(filtered)};
}

// Shared A5/A6 setup: N=2, a=1, b=1.6.
struct Study {
  std::string name;
  SpectralResolution h;
  EnergyWindow outlier;
  EnergyWindow contrast;
  std::size_t outliers;
};

Interval sigma2_hull() {
  auto [phi, psi] = heisenberg_symbols(1, 1.6, 2);
  return sigma_j_union(2, phi, psi, 64, 4).hull();
}

EnergyWindow outlier_window(const SpectralResolution& h, const Interval& band, std::size_t& count) {
  std::vector<double> below;
  for (Eigen::Index i = 0; i < h.eigensystem().values.size(); ++i) {
    if (h.eigensystem().values[i] < band.lo) below.push_back(h.eigensystem().values[i]);
  }
  count = below.size();
  if (below.empty()) throw NumericalError("no eigenvalue below the Sigma_2 hull");
  const double s = 0.5 * (band.lo - below.back());
  return {below.front() - s, below.back() + s};
}

std::vector<Study>& studies() {
  static std::vector<Study> all = [] {
    auto [phi, psi] = heisenberg_symbols(1, 1.6, 2);
    const Interval band = sigma2_hull();
    const EnergyWindow contrast = EnergyWindow::centered(0.5 * (band.lo + band.hi), 1.0);
    std::vector<Study> out;
    SpectralResolution fiber(fiber_hamiltonian(0.0, phi, psi, 300));
    std::size_t n_fiber = 0;
    const EnergyWindow w_fiber = outlier_window(fiber, band, n_fiber);
    out.push_back({"fiber tau=0 L=300", std::move(fiber), w_fiber, contrast, n_fiber});
    SpectralResolution full(compress_toeplitz_plus_potential(phi, psi, LatticeDomain::full_ordered(2),
                                                             TruncationBox::full(2, {-40, 40}, 48)));
    std::size_t n_full = 0;
    const EnergyWindow w_full = outlier_window(full, band, n_full);
    out.push_back({"full z1 in [-40,40], gaps <= 48", std::move(full), w_full, contrast, n_full});
    return out;
  }();
  return all;
}

Outcome a5() {
  const Interval band = sigma2_hull();
  std::ostringstream d;
  d << "Sigma_2 hull [" << fmt(band.lo) << ", " << fmt(band.hi) << "]";
  bool pass = true;
  for (const Study& s : studies()) {
    const double n2 = nonprop_norm(s.h, 2, 2, s.outlier);
    const double n20 = nonprop_norm(s.h, 2, 20, s.outlier);
    const double c2 = nonprop_norm(s.h, 2, 2, s.contrast);
    const double c20 = nonprop_norm(s.h, 2, 20, s.contrast);
    const bool ok = s.outliers > 0 && n20 <= 0.1 * n2 && c2 > 0.0 && c20 > 0.5 * c2;
    pass = pass && ok;
    d << "; " << s.name << ": " << s.outliers << " outliers, window [" << fmt(s.outlier.support().lo) << ", "
      << fmt(s.outlier.support().hi) << "], n=20/n=2 " << fmt(n20 / n2) << ", contrast " << fmt(c20 / c2);
  }
  return {pass, d.str()};
}

Outcome a6() {
  std::ostringstream d;
  bool pass = true;
  std::mt19937_64 rng(6);
  std::normal_distribution<double> gauss;
  const auto grid = default_time_grid();
  for (const Study& s : studies()) {
    Vector g(static_cast<Eigen::Index>(s.h.size()));
    for (auto& x : g) x = Complex(gauss(rng), gauss(rng));
    const Vector f = s.h.apply_function(s.outlier, g);
    const double ratio = nonprop_dynamical(s.h, 2, 20, f, grid);
    const double bound = nonprop_norm(s.h, 2, 20, s.outlier) * g.norm() / f.norm();
    const bool ok = ratio <= 1.05 * bound && ratio <= 0.15;
    pass = pass && ok;
    d << (d.tellp() > 0 ? "; " : "") << s.name << ": max ratio " << fmt(ratio) << " vs bound " << fmt(bound);
  }
  return {pass, d.str()};
}

Outcome a7() {
  auto [phi, psi] = heisenberg_symbols(1, 1, 1);
  const double sampled = hausdorff(full_spectrum_union(phi, psi, 2000, 1), Interval{0.0, 8.0});
  const auto box = TruncationBox::full(1, {1, 2000}, 1);
  const double compressed =
      hausdorff(eig_dense(compress_toeplitz_plus_potential(phi, psi, LatticeDomain::full_ordered(1), box)),
                Interval{0.0, 8.0});
  return {sampled <= 0.05 && compressed <= 0.05,
          "grid 2000: " + fmt(sampled) + ", 2000-site compression: " + fmt(compressed)};
}

Outcome a8() {
  std::ostringstream d;
  bool pass = true;
  for (const auto& r : {suites::hermiticity(81), suites::theta_round_trip(82), suites::fourier_consistency(83),
                        suites::evolution(84), suites::nonprop_monotone(85)}) {
    pass = pass && r.passed();
    d << (d.tellp() > 0 ? "; " : "") << r.name << " " << r.instances - r.failures << "/" << r.instances;
  }
  return {pass, d.str()};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"A1", "unitary equivalence of the direct Hamiltonian", 5, a1},
      {"A2", "Cayley Laplacian identity", 5, a2},
      {"A3", "Bloch decomposition", 30, a3},
      {"A4", "two-magnon band formula", 60, a4},
      {"A5", "non-propagation decay", 300, a5},
      {"A6", "uniform-in-time non-propagation", 300, a6},
      {"A7", "single-magnon closed form", 30, a7},
      {"A8", "randomised invariant suites", 120, a8},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool pass = o.pass && secs <= c.time_limit;
    if (!pass) ++failed;
    std::printf("%s %s  %s | %s | %.1fs (limit %.0fs)\n", c.id.c_str(), pass ? "PASS" : "FAIL", c.title.c_str(),
                o.detail.c_str(), secs, c.time_limit);
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
