#include "property_suites.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "magnonspec/dynamics.hpp"

namespace magnonspec::suites {

namespace {

using Rng = std::mt19937_64;

ShiftSymbol random_hermitian(Rng& rng, int dim, int terms) {
  std::uniform_int_distribution<Coord> c(-3, 3);
  std::normal_distribution<double> g;
  ShiftSymbol rho(dim);
  for (int t = 0; t < terms; ++t) {
    Point eta(dim), neg(dim);
    for (int i = 0; i < dim; ++i) {
      eta[i] = c(rng);
      neg[i] = -eta[i];
    }
    const Complex v(g(rng), g(rng));
    if (eta == neg) {
      rho.add(eta, v.real());
    } else {
      rho.add(eta, v);
      rho.add(neg, std::conj(v));
    }
  }
  return rho;
}

ShiftSymbol random_real(Rng& rng, int dim, int terms) {
  std::uniform_int_distribution<Coord> c(-3, 3);
  std::normal_distribution<double> g;
  ShiftSymbol rho(dim);
  for (int t = 0; t < terms; ++t) {
    Point eta(dim);
    for (auto& e : eta) e = c(rng);
    rho.add(eta, g(rng));
  }
  return rho;
}

ShiftSymbol random_generators(Rng& rng, int dim, int max_size) {
  std::uniform_int_distribution<Coord> c(-2, 2);
  ShiftSymbol m(dim);
  while (static_cast<int>(m.support_size()) + 2 <= max_size) {
    Point eta(dim), neg(dim);
    for (int i = 0; i < dim; ++i) {
      eta[i] = c(rng);
      neg[i] = -eta[i];
    }
    if (eta == neg) continue;
    m.set(eta, 1.0);
    m.set(neg, 1.0);
    if (rng() % 3 == 0) break;
  }
  return m;
}

Vector random_vector(Rng& rng, std::size_t n) {
  std::normal_distribution<double> g;
  Vector v(static_cast<Eigen::Index>(n));
  for (auto& x : v) x = Complex(g(rng), g(rng));
  return v;
}

void record(SuiteResult& r, double defect, double tolerance) {
  ++r.instances;
  r.worst = std::max(r.worst, defect);
  if (!(defect <= tolerance)) ++r.failures;
}

CompressedOperator random_fiber(Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_real_distribution<double> coupling(-2.0, 2.0);
  const int N = rng() % 3 == 0 ? 3 : 2;
  const Coord L = N == 2 ? 5 + static_cast<Coord>(rng() % 36) : 3 + static_cast<Coord>(rng() % 6);
  if (rng() % 2 == 0) {
    auto [phi, psi] = heisenberg_symbols(coupling(rng), coupling(rng), N);
    return fiber_hamiltonian(u(rng), phi, psi, L);
  }
  return fiber_hamiltonian(u(rng), random_hermitian(rng, N, 4), random_real(rng, N, 3), L);
}

}  // namespace

SuiteResult hermiticity(unsigned seed, int instances) {
  SuiteResult r{"hermiticity"};
  Rng rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  constexpr double tol = 1e-12;
  for (int i = 0; i < instances; ++i) {
    const int N = 1 + static_cast<int>(rng() % 3);
    const ShiftSymbol phi = random_hermitian(rng, N, 5);
    const ShiftSymbol psi = random_real(rng, N, 4);
    const TruncationBox full = TruncationBox::full(N, {-3, 3}, N == 3 ? 4 : 6);
    double worst = compress_toeplitz_plus_potential(phi, psi, LatticeDomain::full_ordered(N), full).hermiticity_defect();
    worst = std::max(worst, compress_toeplitz_plus_potential(phi, psi, LatticeDomain::whole_group(N),
                                                             TruncationBox::full(N, {-2, 2}, 3))
                                .hermiticity_defect());
    worst = std::max(worst, cayley_laplacian(random_generators(rng, N, 8), LatticeDomain::full_ordered(N), full)
                                .hermiticity_defect());
    std::uniform_real_distribution<double> coupling(-2.0, 2.0);
    worst = std::max(worst, build_heisenberg_direct(N, coupling(rng), coupling(rng), full).hermiticity_defect());
    if (N >= 2) {
      const double tau = u(rng);
      worst = std::max(worst, fiber_hamiltonian(tau, phi, psi, 6).hermiticity_defect());
      const int j = 2 + static_cast<int>(rng() % static_cast<unsigned>(N - 1));
      worst = std::max(worst, sigma_operator(j, tau, u(rng), phi, psi, 6).hermiticity_defect());
      const Coord L1 = 1 + static_cast<Coord>(rng() % 4);
      const LatticeDomain ring = LatticeDomain::ring_cross_fiber(N, L1);
      worst = std::max(worst, compress_toeplitz_plus_potential(pullback_theta_inv(phi), pullback_theta_inv(psi), ring,
                                                               TruncationBox::fiber(N, 4))
                                  .hermiticity_defect());
    }
    record(r, worst, tol);
  }
  return r;
}

SuiteResult theta_round_trip(unsigned seed, int instances) {
  SuiteResult r{"theta round trips"};
  Rng rng(seed);
  std::uniform_int_distribution<Coord> start(-1000, 1000);
  std::uniform_int_distribution<Coord> step(1, 50);
  for (int i = 0; i < instances; ++i) {
    const int N = 1 + static_cast<int>(rng() % 6);
    Point x(N);
    x[0] = start(rng);
    for (int k = 1; k < N; ++k) x[k] = x[k - 1] + step(rng);
    const OrderedConfig cfg(x);
    const GapCoord z = theta(cfg);
    bool ok = theta_inv(z).point() == x;
    ok = ok && std::all_of(z.coords().begin() + 1, z.coords().end(), [](Coord g) { return g >= 1; });
    Point shifted = x;
    for (auto& v : shifted) v += 7;
    Point expected = z.point();
    expected[0] += 7;
    ok = ok && theta(OrderedConfig(shifted)).point() == expected;
    record(r, ok ? 0.0 : 1.0, 0.0);
  }
  return r;
}

SuiteResult fourier_consistency(unsigned seed, int instances) {
  SuiteResult r{"mu/nu Fourier consistency"};
  Rng rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  constexpr double tol = 1e-12;
  for (int i = 0; i < instances; ++i) {
    const int N = 2 + i % 3;
    const ShiftSymbol rho = random_hermitian(rng, N, 6);
    std::vector<double> taus(N);
    for (auto& t : taus) t = u(rng);
    const Complex direct = full_fourier(pullback_theta_inv(rho), taus);
    const ShiftSymbol m = mu(taus[0], rho);
    double worst = std::abs(direct - full_fourier(m, std::span<const double>(taus).subspan(1)));
    // Summing out the gap coordinates one label at a time, in any order.
    std::vector<int> order(N - 1);
    for (int j = 0; j < N - 1; ++j) order[j] = j + 2;
    std::shuffle(order.begin(), order.end(), rng);
    ShiftSymbol reduced = m;
    for (int j : order) reduced = nu_j(j, taus[j - 1], reduced);
    worst = std::max(worst, std::abs(reduced.at({}) - direct));
    worst = std::max(worst, m.is_hermitian(tol) ? 0.0 : 1.0);
    record(r, worst, tol);
  }
  return r;
}

SuiteResult evolution(unsigned seed, int instances) {
  SuiteResult r{"evolve unitarity and group law"};
  Rng rng(seed);
  std::uniform_real_distribution<double> time(-20.0, 20.0);
  for (int i = 0; i < instances; ++i) {
    const CompressedOperator h = random_fiber(rng);
    const SpectralResolution res(h);
    const Vector f = random_vector(rng, h.size());
    const double s = time(rng), t = time(rng);
    const Vector fs = res.evolve(f, s);
    double worst = std::abs(fs.norm() - f.norm()) / f.norm() / 1e-10;
    worst = std::max(worst, (res.evolve(fs, -s) - f).norm() / f.norm() / 1e-9);
    worst = std::max(worst, (res.evolve(fs, t) - res.evolve(f, s + t)).norm() / f.norm() / 1e-9);
    if (i % 10 == 0) {
      const LinearAction apply = [&h](const Vector& v) { return h.apply(v); };
      const Vector cheb = evolve_chebyshev(apply, h.gershgorin_bound(), f, s);
      worst = std::max(worst, (cheb - fs).norm() / f.norm() / 1e-9);
    }
    // Defects are reported in units of their tolerances.
    record(r, worst, 1.0);
  }
  return r;
}

SuiteResult nonprop_monotone(unsigned seed, int instances) {
  SuiteResult r{"nonprop monotone in n"};
  Rng rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < instances; ++i) {
    CompressedOperator h = random_fiber(rng);
    if (i % 4 == 0) {
      const int N = 2 + static_cast<int>(rng() % 2);
      auto [phi, psi] = heisenberg_symbols(1.0, 0.5 + 1.5 * u(rng), N);
      h = compress_toeplitz_plus_potential(phi, psi, LatticeDomain::full_ordered(N),
                                           TruncationBox::full(N, {-3, 3}, N == 2 ? 12 : 5));
    }
    const SpectralResolution res(h);
    const Interval hull{res.eigensystem().values.minCoeff(), res.eigensystem().values.maxCoeff()};
    const double centre = hull.lo + u(rng) * hull.width();
    const EnergyWindow w = EnergyWindow::centered(centre, 0.05 + 0.3 * u(rng) * std::max(1.0, hull.width()));
    const int j = 2 + static_cast<int>(rng() % static_cast<unsigned>(res.domain().max_gap_label() - 1));
    const double top = res.function_norm(w);
    double previous = nonprop_norm(res, j, 0, w);
    double worst = std::abs(previous - top) / std::max(top, 1e-300) / 1e-10;
    for (Coord n = 1; n <= h.box().gap_max + 1; ++n) {
      const double v = nonprop_norm(res, j, n, w);
      // Round-off slack only: exact values are non-increasing.
      worst = std::max(worst, (v - previous) / (1e-12 * std::max(top, 1e-300)));
      previous = v;
    }
    worst = std::max(worst, previous / std::max(top, 1e-300) / 1e-12);
    record(r, top == 0.0 ? 0.0 : worst, 1.0);
  }
  return r;
}

}  // namespace magnonspec::suites
