#pragma once

#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "magnonspec/linalg.hpp"
#include "magnonspec/operators.hpp"
#include "magnonspec/symbols.hpp"

namespace magnonspec {

/// Raised when a numerical contract (Hermiticity, convergence) is violated.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double width() const { return hi - lo; }
};

/// Sorted list of real spectral values.
class SpectrumSet {
 public:
  SpectrumSet() = default;
  explicit SpectrumSet(std::vector<double> values, std::string source = {});

  const std::vector<double>& values() const { return values_; }
  const std::string& source() const { return source_; }
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }
  double min() const;
  double max() const;
  Interval hull() const;

  /// Merges `other` into this set, keeping the order.
  void merge(const SpectrumSet& other);

 private:
  std::vector<double> values_;
  std::string source_;
};

double hausdorff(const SpectrumSet& a, const SpectrumSet& b);
double hausdorff(const SpectrumSet& a, const Interval& interval);
/// Largest gap between equally sized sorted multisets.
double multiset_distance(const SpectrumSet& a, const SpectrumSet& b);

/// Relative Hermiticity tolerance accepted by the dense solver.
inline constexpr double kHermitianTolerance = 1e-12;

Eigensystem eigensystem(const CompressedOperator& op);
SpectrumSet eig_dense(const CompressedOperator& op);

enum class Extremal { smallest, largest };

struct LanczosOptions {
  double tolerance = 1e-8;
  std::size_t max_basis = 1000;
  unsigned seed = 12345;
};

using LinearAction = std::function<Vector(const Vector&)>;

/// k extremal Ritz values of a Hermitian action, full reorthogonalisation.
/// Throws NumericalError when the residuals do not reach the tolerance.
SpectrumSet eig_lanczos(const LinearAction& apply, std::size_t dim, int k, Extremal which,
                        const LanczosOptions& options = {});

/// H(tau) = T_{mu(tau) phi} + V_{mu(0) psi} on {1..L}^{N-1}.
CompressedOperator fiber_hamiltonian(FiberParameter tau, const ShiftSymbol& phi, const ShiftSymbol& psi, Coord L);

/// T_{nu_j(tau') mu(tau) phi} + V_{nu_j(0) mu(0) psi} on {1..L}^{N-2}.
CompressedOperator sigma_operator(int j, FiberParameter tau, FiberParameter tau_prime, const ShiftSymbol& phi,
                                  const ShiftSymbol& psi, Coord L);
SpectrumSet sigma_j(int j, FiberParameter tau, FiberParameter tau_prime, const ShiftSymbol& phi,
                    const ShiftSymbol& psi, Coord L);

/// Uniform torus grid {0, 1/n, ..., (n-1)/n}.
std::vector<double> torus_grid(std::size_t n);

struct BandSample {
  int j = 2;
  double tau_prime = 0.0;
  std::vector<double> values;
};

/// Sigma_j(tau, tau') for every j and every tau' of the grid, ordered by
/// (j, tau').
std::vector<BandSample> essential_bands(FiberParameter tau, const ShiftSymbol& phi, const ShiftSymbol& psi,
                                        std::size_t grid_size, Coord L);
SpectrumSet essential_spectrum_fiber(FiberParameter tau, const ShiftSymbol& phi, const ShiftSymbol& psi,
                                     std::size_t grid_size, Coord L);
/// Union of Sigma_j(tau, tau') over both torus variables for one j.
SpectrumSet sigma_j_union(int j, const ShiftSymbol& phi, const ShiftSymbol& psi, std::size_t grid_size, Coord L);

struct FiberSample {
  double tau = 0.0;
  std::vector<double> values;
};

std::vector<FiberSample> fiber_sweep(const ShiftSymbol& phi, const ShiftSymbol& psi, std::size_t grid_size, Coord L);
SpectrumSet full_spectrum_union(const ShiftSymbol& phi, const ShiftSymbol& psi, std::size_t grid_size, Coord L);

/// Compares the spectrum of the z_1-periodised operator on
/// Z_{L1} x {1..L}^{N-1} with the union of fiber spectra at tau = k/L1.
double bloch_check(const ShiftSymbol& phi, const ShiftSymbol& psi, Coord L1, Coord L);

/// Bound-state filter: an eigenvector is "bound" when at least `mass` of its
/// weight sits on fiber sites whose every gap is <= ceil(fraction * L).
struct BoundStateCriterion {
  double mass = 0.9;
  double fraction = 0.1;
};

std::vector<bool> bound_state_mask(const Eigensystem& es, const CompressedOperator& op,
                                   const BoundStateCriterion& criterion = {});
/// Eigenvalues of a fiber compression whose eigenvectors are not bound.
SpectrumSet continuum_part(const CompressedOperator& op, const BoundStateCriterion& criterion = {});

}  // namespace magnonspec
