#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "doctest.h"
#include "magnonspec/symbols.hpp"

using namespace magnonspec;

namespace {

constexpr double kPi = std::numbers::pi;

Complex cis(double angle) { return {std::cos(angle), std::sin(angle)}; }

ShiftSymbol random_hermitian(std::mt19937& rng, int dim, int terms) {
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

}  // namespace

TEST_CASE("fiber parameters are reduced mod 1") {
  CHECK(FiberParameter(1.25).value() == doctest::Approx(0.25));
  CHECK(FiberParameter(-0.25).value() == doctest::Approx(0.75));
  CHECK(FiberParameter(1.0).value() == 0.0);
  CHECK_THROWS(FiberParameter(std::nan("")));
}

TEST_CASE("heisenberg_symbols") {
  SUBCASE("a=b=1, N=2") {
    auto [phi, psi] = heisenberg_symbols(1, 1, 2);
    CHECK(phi.support_size() == 4);
    for (const Point& e : {Point{1, 0}, Point{-1, 0}, Point{0, 1}, Point{0, -1}}) {
      CHECK(phi.at(e) == Complex(-2));
      CHECK(psi.at(e) == Complex(2));
    }
    CHECK(phi.is_hermitian());
    CHECK(psi.is_hermitian());
  }
  SUBCASE("a=b=0 gives the zero operator") {
    auto [phi, psi] = heisenberg_symbols(0, 0, 3);
    CHECK(phi.empty());
    CHECK(psi.empty());
  }
  SUBCASE("N=1") {
    auto [phi, psi] = heisenberg_symbols(1, 0, 1);
    CHECK(phi.at({1}) == Complex(-2));
    CHECK(phi.at({-1}) == Complex(-2));
    CHECK(psi.empty());
  }
}

TEST_CASE("pullback through theta inverse") {
  auto [phi, psi] = heisenberg_symbols(1, 1, 2);
  const ShiftSymbol pulled = pullback_theta_inv(phi);
  CHECK(pulled.support_size() == 4);
  for (const Point& e : {Point{1, -1}, Point{-1, 1}, Point{0, 1}, Point{0, -1}}) CHECK(pulled.at(e) == Complex(-2));
  CHECK(pullback_theta_inv(ShiftSymbol(3)).empty());
  auto [phi1, psi1] = heisenberg_symbols(1.5, 0, 1);
  CHECK(pullback_theta_inv(phi1).entries() == phi1.entries());
}

TEST_CASE("mu on the two-magnon symbols") {
  auto [phi, psi] = heisenberg_symbols(1, 1, 2);
  for (double tau : {0.0, 0.1, 0.25, 0.5, 0.83}) {
    const ShiftSymbol m = mu(tau, phi);
    CHECK(m.labels() == std::vector<int>{2});
    CHECK(std::abs(m.at({1}) - (-2.0 * (cis(2 * kPi * tau) + 1.0))) < 1e-14);
    CHECK(std::abs(m.at({-1}) - (-2.0 * (cis(-2 * kPi * tau) + 1.0))) < 1e-14);
    CHECK(m.is_hermitian());
  }
  const ShiftSymbol m0 = mu(0.0, psi);
  CHECK(m0.at({1}) == Complex(4));
  CHECK(m0.at({-1}) == Complex(4));
  CHECK(mu(0.5, phi).empty());
  CHECK_THROWS_AS(mu(0.0, ShiftSymbol(1)), std::invalid_argument);
}

TEST_CASE("nu_j reproduces the two-magnon band function") {
  auto [phi, psi] = heisenberg_symbols(1, 1, 2);
  for (double tau : {0.0, 0.2, 0.5}) {
    for (double tp : {0.0, 0.125, 0.3, 0.77}) {
      const ShiftSymbol s = nu_j(2, tp, mu(tau, phi));
      CHECK(s.dim() == 0);
      const Complex expected = -4 * std::cos(2 * kPi * tp) - 4 * std::cos(2 * kPi * (tau - tp));
      CHECK(std::abs(s.at({}) - expected) < 1e-13);
    }
  }
  ShiftSymbol single(std::vector<int>{2, 3, 4});
  single.add({2, -1, 5}, Complex(0.5, 1.0));
  const ShiftSymbol reduced = nu_j(3, 0.0, single);
  CHECK(reduced.labels() == std::vector<int>{2, 4});
  CHECK(reduced.at({2, 5}) == Complex(0.5, 1.0));
  CHECK(reduced.support_size() == 1);
  CHECK(nu_j(2, 0.3, ShiftSymbol(std::vector<int>{2})).empty());
  CHECK_THROWS_AS(nu_j(5, 0.0, single), std::out_of_range);
}

TEST_CASE("full_fourier") {
  auto [phi, psi] = heisenberg_symbols(1, 1, 1);
  for (double tau : {0.0, 0.1, 0.37}) {
    const double t[] = {tau};
    CHECK(std::abs(full_fourier(phi, t) - Complex(-4 * std::cos(2 * kPi * tau))) < 1e-14);
  }
  const double zero[] = {0.0};
  CHECK(full_fourier(psi, zero) == Complex(4));
  CHECK(full_fourier(ShiftSymbol(1), zero) == Complex(0));
  const double two[] = {0.0, 0.0};
  CHECK_THROWS_AS(full_fourier(phi, two), std::invalid_argument);
}

TEST_CASE("random symbols: linearity, hermiticity and Fourier consistency") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 100; ++trial) {
    const int N = 2 + trial % 3;
    const ShiftSymbol r1 = random_hermitian(rng, N, 5);
    const ShiftSymbol r2 = random_hermitian(rng, N, 4);
    const double tau = u(rng);
    const Complex alpha(g(rng), g(rng)), beta(g(rng), g(rng));

    const ShiftSymbol lhs = mu(tau, alpha * r1 + beta * r2);
    const ShiftSymbol rhs = alpha * mu(tau, r1) + beta * mu(tau, r2);
    for (const auto& [eta, v] : lhs.entries()) CHECK(std::abs(v - rhs.at(eta)) < 1e-12);
    for (const auto& [eta, v] : rhs.entries()) CHECK(std::abs(v - lhs.at(eta)) < 1e-12);

    const ShiftSymbol m = mu(tau, r1);
    CHECK(m.is_hermitian(1e-12));

    std::vector<double> taus(N);
    taus[0] = tau;
    for (int i = 1; i < N; ++i) taus[i] = u(rng);
    const Complex direct = full_fourier(pullback_theta_inv(r1), taus);
    const Complex via_mu = full_fourier(m, std::span<const double>(taus).subspan(1));
    CHECK(std::abs(direct - via_mu) < 1e-12);

    ShiftSymbol reduced = m;
    for (int j = 2; j <= N; ++j) reduced = nu_j(j, taus[j - 1], reduced);
    CHECK(reduced.dim() == 0);
    CHECK(std::abs(reduced.at({}) - direct) < 1e-12);

    const int j = 2 + trial % (N - 1);
    const ShiftSymbol nl = nu_j(j, taus[1], alpha * mu(tau, r1) + beta * mu(tau, r2));
    const ShiftSymbol nr = alpha * nu_j(j, taus[1], mu(tau, r1)) + beta * nu_j(j, taus[1], mu(tau, r2));
    for (const auto& [eta, v] : nl.entries()) CHECK(std::abs(v - nr.at(eta)) < 1e-12);
    for (const auto& [eta, v] : nr.entries()) CHECK(std::abs(v - nl.at(eta)) < 1e-12);
  }
}

TEST_CASE("symbol text format") {
  std::istringstream in("# phi for a test\n 1 0  -2 0\n-1 0 -2 0 # trailing\n\n0 1 0.5 -0.25\n");
  const ShiftSymbol rho = parse_symbol(in);
  CHECK(rho.dim() == 2);
  CHECK(rho.at({1, 0}) == Complex(-2));
  CHECK(rho.at({0, 1}) == Complex(0.5, -0.25));
  std::ostringstream out;
  write_symbol(out, rho);
  std::istringstream back(out.str());
  CHECK(parse_symbol(back).entries() == rho.entries());

  std::istringstream ragged("1 0 1 0\n1 1 0\n");
  CHECK_THROWS(parse_symbol(ragged));
  std::istringstream junk("1 x 1 0\n");
  CHECK_THROWS(parse_symbol(junk));
}

TEST_CASE("arithmetic drops cancelled entries") {
  ShiftSymbol a(1);
  a.add({2}, 1.0);
  a.add({2}, -1.0);
  CHECK(a.empty());
  a.add({1}, 1e-16);
  CHECK(a.empty());
  ShiftSymbol b(std::vector<int>{2});
  CHECK_THROWS(a += b);
}
