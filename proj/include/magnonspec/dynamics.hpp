#pragma once

#include <functional>
#include <span>
#include <vector>

#include "magnonspec/operators.hpp"
#include "magnonspec/spectral.hpp"

namespace magnonspec {

/// C^1 piecewise-cubic bump: zero outside [lo, hi], one on the middle half,
/// smoothstep ramps on the outer quarters.
class EnergyWindow {
 public:
  EnergyWindow(double lo, double hi);
  static EnergyWindow centered(double center, double half_width) {
    return {center - half_width, center + half_width};
  }

  double operator()(double x) const;
  Interval support() const { return {lo_, hi_}; }

 private:
  double lo_;
  double hi_;
};

using SpectralFunction = std::function<double(double)>;

/// Full eigendecomposition of a dense-size compression, shared by the
/// functional calculus, the propagator and the localisation norms.
class SpectralResolution {
 public:
  explicit SpectralResolution(const CompressedOperator& op);

  const Eigensystem& eigensystem() const { return es_; }
  const PointIndex& index() const { return index_; }
  const LatticeDomain& domain() const { return domain_; }
  std::size_t size() const { return index_.size(); }

  /// U kappa(Lambda) U^*.
  DenseMatrix function(const SpectralFunction& kappa) const;
  Vector apply_function(const SpectralFunction& kappa, const Vector& g) const;
  /// max_i |kappa(lambda_i)|, i.e. the norm of kappa(H).
  double function_norm(const SpectralFunction& kappa) const;
  Vector evolve(const Vector& f, double t) const;
  /// Eigenvalues carrying more than eps_mass of the weight of f.
  SpectrumSet spectral_support(const Vector& f, double eps_mass) const;
  /// || chi_region kappa(H) ||.
  double projected_norm(const PointPredicate& region, const SpectralFunction& kappa) const;
  /// max_t || chi_region e^{-itH} f || / ||f||.
  double projected_evolution_ratio(const PointPredicate& region, const Vector& f, std::span<const double> t_grid) const;

 private:
  Eigensystem es_;
  PointIndex index_;
  LatticeDomain domain_;
};

DenseMatrix functional_calculus(const CompressedOperator& op, const SpectralFunction& kappa);

/// e^{-itH} f by a Chebyshev expansion scaled to `spectral_bound`.
Vector evolve_chebyshev(const LinearAction& apply, double spectral_bound, const Vector& f, double t,
                        double cutoff = 1e-12);
/// Dense path at desk scale, Chebyshev path above the dense cap.
Vector evolve(const CompressedOperator& op, const Vector& f, double t);

inline constexpr double kDefaultMassThreshold = 1e-8;
SpectrumSet spectral_support(const Vector& f, const CompressedOperator& op, double eps_mass = kDefaultMassThreshold);

/// || chi_{Omega_j(n)} kappa(H) ||.
double nonprop_norm(const SpectralResolution& h, int j, Coord n, const SpectralFunction& kappa);
double nonprop_norm(const CompressedOperator& op, int j, Coord n, const SpectralFunction& kappa);

/// max over t_grid of || chi_{Omega_j(n)} e^{-itH} f || / ||f||.
double nonprop_dynamical(const SpectralResolution& h, int j, Coord n, const Vector& f, std::span<const double> t_grid);
double nonprop_dynamical(const CompressedOperator& op, int j, Coord n, const Vector& f,
                         std::span<const double> t_grid);

/// {0, 0.5, ..., 50}.
std::vector<double> default_time_grid();

}  // namespace magnonspec
