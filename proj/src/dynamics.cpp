#include "magnonspec/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace magnonspec {

EnergyWindow::EnergyWindow(double lo, double hi) : lo_(lo), hi_(hi) {
  if (!(hi > lo)) throw std::invalid_argument("energy window needs lo < hi");
}

double EnergyWindow::operator()(double x) const {
  if (x <= lo_ || x >= hi_) return 0.0;
  const double ramp = 0.25 * (hi_ - lo_);
  const double u = std::min(x - lo_, hi_ - x) / ramp;
  if (u >= 1.0) return 1.0;
  return u * u * (3.0 - 2.0 * u);
}

SpectralResolution::SpectralResolution(const CompressedOperator& op)
    : es_(magnonspec::eigensystem(op)), index_(op.index()), domain_(op.domain()) {}

DenseMatrix SpectralResolution::function(const SpectralFunction& kappa) const {
  Eigen::VectorXd k(es_.values.size());
  for (Eigen::Index i = 0; i < k.size(); ++i) k[i] = kappa(es_.values[i]);
  return es_.vectors * k.asDiagonal() * es_.vectors.adjoint();
}

Vector SpectralResolution::apply_function(const SpectralFunction& kappa, const Vector& g) const {
  if (static_cast<std::size_t>(g.size()) != size()) throw std::invalid_argument("vector length does not match operator");
  Vector c = es_.vectors.adjoint() * g;
  for (Eigen::Index i = 0; i < c.size(); ++i) c[i] *= kappa(es_.values[i]);
  return es_.vectors * c;
}

double SpectralResolution::function_norm(const SpectralFunction& kappa) const {
  double best = 0.0;
  for (Eigen::Index i = 0; i < es_.values.size(); ++i) best = std::max(best, std::abs(kappa(es_.values[i])));
  return best;
}

Vector SpectralResolution::evolve(const Vector& f, double t) const {
  if (static_cast<std::size_t>(f.size()) != size()) throw std::invalid_argument("vector length does not match operator");
  if (t == 0.0) return f;
  Vector c = es_.vectors.adjoint() * f;
  for (Eigen::Index i = 0; i < c.size(); ++i) c[i] *= std::polar(1.0, -t * es_.values[i]);
  return es_.vectors * c;
}

SpectrumSet SpectralResolution::spectral_support(const Vector& f, double eps_mass) const {
  if (static_cast<std::size_t>(f.size()) != size()) throw std::invalid_argument("vector length does not match operator");
  const Vector c = es_.vectors.adjoint() * f;
  const double total = f.squaredNorm();
  std::vector<double> support;
  for (Eigen::Index i = 0; i < c.size(); ++i) {
    if (std::norm(c[i]) > eps_mass * total) support.push_back(es_.values[i]);
  }
  return SpectrumSet(std::move(support), "spectral support");
}

double SpectralResolution::projected_norm(const PointPredicate& region, const SpectralFunction& kappa) const {
  // kappa(H) = U_S D U_S^* with U_S^* a co-isometry, so
  // ||chi kappa(H)||^2 = lambda_max(D U_S^* chi U_S D).
  std::vector<Eigen::Index> active;
  std::vector<double> weights;
  for (Eigen::Index i = 0; i < es_.values.size(); ++i) {
    const double k = kappa(es_.values[i]);
    if (k != 0.0) {
      active.push_back(i);
      weights.push_back(k);
    }
  }
  std::vector<Eigen::Index> rows;
  for (std::size_t r = 0; r < index_.size(); ++r) {
    if (region(index_[r])) rows.push_back(static_cast<Eigen::Index>(r));
  }
  if (active.empty() || rows.empty()) return 0.0;
  DenseMatrix b(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(active.size()));
  for (std::size_t c = 0; c < active.size(); ++c) {
    for (std::size_t r = 0; r < rows.size(); ++r) {
      b(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = es_.vectors(rows[r], active[c]) * weights[c];
    }
  }
  DenseMatrix gram(b.cols(), b.cols());
  gram.setZero();
  gram.selfadjointView<Eigen::Lower>().rankUpdate(b.adjoint());
  gram = gram.selfadjointView<Eigen::Lower>();
  const Eigensystem g = hermitian_eigensystem(gram, false);
  return std::sqrt(std::max(0.0, g.values[g.values.size() - 1]));
}

double SpectralResolution::projected_evolution_ratio(const PointPredicate& region, const Vector& f,
                                                     std::span<const double> t_grid) const {
  if (static_cast<std::size_t>(f.size()) != size()) throw std::invalid_argument("vector length does not match operator");
  const double norm = f.norm();
  if (norm == 0.0) throw std::invalid_argument("nonprop_dynamical needs a nonzero state");
  std::vector<Eigen::Index> rows;
  for (std::size_t r = 0; r < index_.size(); ++r) {
    if (region(index_[r])) rows.push_back(static_cast<Eigen::Index>(r));
  }
  if (rows.empty()) return 0.0;
  DenseMatrix u_region(static_cast<Eigen::Index>(rows.size()), es_.vectors.cols());
  for (std::size_t r = 0; r < rows.size(); ++r) u_region.row(static_cast<Eigen::Index>(r)) = es_.vectors.row(rows[r]);
  const Vector c = es_.vectors.adjoint() * f;
  double worst = 0.0;
  Vector phased(c.size());
  for (double t : t_grid) {
    if (t == 0.0) {
      double mass = 0.0;
      for (Eigen::Index r : rows) mass += std::norm(f[r]);
      worst = std::max(worst, std::sqrt(mass) / norm);
      continue;
    }
    for (Eigen::Index i = 0; i < c.size(); ++i) phased[i] = c[i] * std::polar(1.0, -t * es_.values[i]);
    worst = std::max(worst, (u_region * phased).norm() / norm);
  }
  return worst;
}

DenseMatrix functional_calculus(const CompressedOperator& op, const SpectralFunction& kappa) {
  if (op.size() > kDenseCap) {
    throw std::length_error("functional_calculus is dense-only (size " + std::to_string(op.size()) +
                            "); use evolve-based estimates for larger operators");
  }
  return SpectralResolution(op).function(kappa);
}

Vector evolve_chebyshev(const LinearAction& apply, double spectral_bound, const Vector& f, double t, double cutoff) {
  if (!std::isfinite(t)) throw std::invalid_argument("evolution time must be finite");
  if (spectral_bound <= 0.0 || t == 0.0) return f;
  const double x = std::abs(t) * spectral_bound;
  // e^{-i x y} = J_0(x) + 2 sum_k (-i)^k J_k(x) T_k(y); t < 0 flips the phase.
  const Complex step = t > 0 ? Complex(0.0, -1.0) : Complex(0.0, 1.0);
  auto scaled = [&](const Vector& v) { return Vector(apply(v) / spectral_bound); };

  Vector prev = f;
  Vector curr = scaled(f);
  Vector out = std::cyl_bessel_j(0.0, x) * f;
  Complex phase = step;
  out += 2.0 * phase * std::cyl_bessel_j(1.0, x) * curr;
  int small_run = 0;
  for (int k = 2;; ++k) {
    Vector next = 2.0 * scaled(curr) - prev;
    phase *= step;
    const double coeff = std::cyl_bessel_j(static_cast<double>(k), x);
    out += 2.0 * phase * coeff * next;
    prev = std::move(curr);
    curr = std::move(next);
    small_run = (k > x && std::abs(coeff) < cutoff) ? small_run + 1 : 0;
    if (small_run >= 2) break;
  }
  return out;
}

Vector evolve(const CompressedOperator& op, const Vector& f, double t) {
  if (!std::isfinite(t)) throw std::invalid_argument("evolution time must be finite");
  if (op.size() <= kDenseCap) return SpectralResolution(op).evolve(f, t);
  return evolve_chebyshev([&op](const Vector& v) { return op.apply(v); }, op.gershgorin_bound(), f, t);
}

SpectrumSet spectral_support(const Vector& f, const CompressedOperator& op, double eps_mass) {
  return SpectralResolution(op).spectral_support(f, eps_mass);
}

double nonprop_norm(const SpectralResolution& h, int j, Coord n, const SpectralFunction& kappa) {
  return h.projected_norm(region_predicate(h.domain(), j, n), kappa);
}

double nonprop_norm(const CompressedOperator& op, int j, Coord n, const SpectralFunction& kappa) {
  return nonprop_norm(SpectralResolution(op), j, n, kappa);
}

double nonprop_dynamical(const SpectralResolution& h, int j, Coord n, const Vector& f, std::span<const double> t_grid) {
  return h.projected_evolution_ratio(region_predicate(h.domain(), j, n), f, t_grid);
}

double nonprop_dynamical(const CompressedOperator& op, int j, Coord n, const Vector& f,
                         std::span<const double> t_grid) {
  return nonprop_dynamical(SpectralResolution(op), j, n, f, t_grid);
}

std::vector<double> default_time_grid() {
  std::vector<double> grid;
  for (int i = 0; i <= 100; ++i) grid.push_back(0.5 * i);
  return grid;
}

}  // namespace magnonspec
