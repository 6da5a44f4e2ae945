#include "magnonspec/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "magnonspec/parallel.hpp"

namespace magnonspec {

SpectrumSet::SpectrumSet(std::vector<double> values, std::string source)
    : values_(std::move(values)), source_(std::move(source)) {
  std::sort(values_.begin(), values_.end());
}

double SpectrumSet::min() const {
  if (values_.empty()) throw std::logic_error("empty spectrum");
  return values_.front();
}

double SpectrumSet::max() const {
  if (values_.empty()) throw std::logic_error("empty spectrum");
  return values_.back();
}

Interval SpectrumSet::hull() const { return {min(), max()}; }

void SpectrumSet::merge(const SpectrumSet& other) {
  const auto mid = values_.insert(values_.end(), other.values_.begin(), other.values_.end());
  std::inplace_merge(values_.begin(), mid, values_.end());
}

namespace {

double distance_to_sorted(double x, const std::vector<double>& sorted) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), x);
  double best = std::numeric_limits<double>::infinity();
  if (it != sorted.end()) best = *it - x;
  if (it != sorted.begin()) best = std::min(best, x - *std::prev(it));
  return best;
}

double directed(const std::vector<double>& from, const std::vector<double>& to) {
  double worst = 0.0;
  for (double x : from) worst = std::max(worst, distance_to_sorted(x, to));
  return worst;
}

}  // namespace

double hausdorff(const SpectrumSet& a, const SpectrumSet& b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("hausdorff distance of an empty set");
  return std::max(directed(a.values(), b.values()), directed(b.values(), a.values()));
}

double hausdorff(const SpectrumSet& a, const Interval& interval) {
  if (a.empty()) throw std::invalid_argument("hausdorff distance of an empty set");
  const auto& v = a.values();
  double worst = 0.0;
  for (double x : v) {
    const double d = x < interval.lo ? interval.lo - x : (x > interval.hi ? x - interval.hi : 0.0);
    worst = std::max(worst, d);
  }
  worst = std::max({worst, distance_to_sorted(interval.lo, v), distance_to_sorted(interval.hi, v)});
  for (std::size_t i = 1; i < v.size(); ++i) {
    const double mid = 0.5 * (v[i - 1] + v[i]);
    if (mid >= interval.lo && mid <= interval.hi) worst = std::max(worst, 0.5 * (v[i] - v[i - 1]));
  }
  return worst;
}

double multiset_distance(const SpectrumSet& a, const SpectrumSet& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a.values()[i] - b.values()[i]));
  return worst;
}

Eigensystem eigensystem(const CompressedOperator& op) {
  if (op.size() > kDenseCap) {
    throw std::length_error("operator of size " + std::to_string(op.size()) + " exceeds the dense cap of " +
                            std::to_string(kDenseCap) + "; use eig_lanczos");
  }
  if (const double defect = op.hermiticity_defect(); defect > kHermitianTolerance) {
    std::ostringstream msg;
    msg << "operator '" << op.label() << "' is not Hermitian (relative defect " << defect << ")";
    throw NumericalError(msg.str());
  }
  return hermitian_eigensystem(op.dense(), true);
}

SpectrumSet eig_dense(const CompressedOperator& op) {
  if (op.size() > kDenseCap) {
    throw std::length_error("operator of size " + std::to_string(op.size()) + " exceeds the dense cap of " +
                            std::to_string(kDenseCap) + "; use eig_lanczos");
  }
  if (const double defect = op.hermiticity_defect(); defect > kHermitianTolerance) {
    std::ostringstream msg;
    msg << "operator '" << op.label() << "' is not Hermitian (relative defect " << defect << ")";
    throw NumericalError(msg.str());
  }
  const Eigensystem es = hermitian_eigensystem(op.dense(), false);
  return SpectrumSet(std::vector<double>(es.values.begin(), es.values.end()), op.label());
}

SpectrumSet eig_lanczos(const LinearAction& apply, std::size_t dim, int k, Extremal which,
                        const LanczosOptions& options) {
  if (k < 1 || static_cast<std::size_t>(k) > dim) throw std::invalid_argument("eig_lanczos needs 1 <= k <= dim");
  const auto n = static_cast<Eigen::Index>(dim);
  const std::size_t max_basis = std::min(dim, options.max_basis);
  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> gauss;
  auto random_vector = [&] {
    Vector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = Complex(gauss(rng), gauss(rng));
    return v;
  };

  DenseMatrix basis(n, static_cast<Eigen::Index>(max_basis));
  std::vector<double> alpha;
  std::vector<double> beta;  // beta[m] couples basis m and m+1
  Vector q = random_vector();
  q.normalize();
  double scale = 0.0;
  double last_residual = std::numeric_limits<double>::infinity();

  for (std::size_t m = 0; m < max_basis; ++m) {
    basis.col(static_cast<Eigen::Index>(m)) = q;
    Vector w = apply(q);
    if (w.size() != n) throw std::invalid_argument("eig_lanczos: action returned a vector of the wrong length");
    const double a = std::real(q.dot(w));
    alpha.push_back(a);
    auto block = basis.leftCols(static_cast<Eigen::Index>(m + 1));
    for (int pass = 0; pass < 2; ++pass) w -= block * (block.adjoint() * w);
    double b = w.norm();
    scale = std::max({scale, std::abs(a), b});

    const auto size = static_cast<Eigen::Index>(m + 1);
    Eigen::VectorXd diag = Eigen::Map<const Eigen::VectorXd>(alpha.data(), size);
    Eigen::VectorXd sub = size > 1 ? Eigen::VectorXd(Eigen::Map<const Eigen::VectorXd>(beta.data(), size - 1))
                                   : Eigen::VectorXd();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
    tri.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    const bool exhausted = (m + 1 == dim);
    const bool invariant = b <= 1e-13 * std::max(1.0, scale);

    if (static_cast<Eigen::Index>(k) <= size) {
      double worst = 0.0;
      std::vector<double> ritz;
      for (int i = 0; i < k; ++i) {
        const Eigen::Index col = which == Extremal::smallest ? i : size - 1 - i;
        const double residual = std::abs(b * tri.eigenvectors()(size - 1, col));
        worst = std::max(worst, residual);
        ritz.push_back(tri.eigenvalues()[col]);
      }
      last_residual = worst;
      if (worst <= options.tolerance * std::max(1.0, scale) || exhausted) {
        return SpectrumSet(std::move(ritz), "lanczos");
      }
    }
    if (exhausted) break;
    if (invariant) {
      // Krylov space closed: continue from a fresh direction orthogonal to it.
      w = random_vector();
      for (int pass = 0; pass < 2; ++pass) w -= block * (block.adjoint() * w);
      q = w.normalized();
      beta.push_back(0.0);
    } else {
      q = w / b;
      beta.push_back(b);
    }
  }
  std::ostringstream msg;
  msg << "Lanczos did not converge within " << max_basis << " vectors (residual " << last_residual << ")";
  throw NumericalError(msg.str());
}

namespace {

void require_fiber_symbols(const ShiftSymbol& phi, const ShiftSymbol& psi) {
  if (phi.dim() != psi.dim()) throw std::invalid_argument("phi and psi must have the same dimension");
  if (phi.dim() < 2) throw std::invalid_argument("fiber Hamiltonians need N >= 2");
}

}  // namespace

CompressedOperator fiber_hamiltonian(FiberParameter tau, const ShiftSymbol& phi, const ShiftSymbol& psi, Coord L) {
  require_fiber_symbols(phi, psi);
  const ShiftSymbol hop = mu(tau, phi);
  const ShiftSymbol pot = mu(0.0, psi);
  const LatticeDomain domain = LatticeDomain::fiber(hop.labels());
  const TruncationBox box = TruncationBox::fiber(phi.dim(), L);
  CompressedOperator h = compress_toeplitz(hop, domain, box) + compress_potential(pot, domain, box);
  std::ostringstream label;
  label << "H(tau=" << tau.value() << ")";
  return {h.domain(), h.box(), h.index(), h.matrix(), label.str()};
}

CompressedOperator sigma_operator(int j, FiberParameter tau, FiberParameter tau_prime, const ShiftSymbol& phi,
                                  const ShiftSymbol& psi, Coord L) {
  require_fiber_symbols(phi, psi);
  if (j < 2 || j > phi.dim()) throw std::out_of_range("sigma_j: j=" + std::to_string(j) + " outside 2..N");
  const ShiftSymbol hop = nu_j(j, tau_prime, mu(tau, phi));
  const ShiftSymbol pot = nu_j(j, 0.0, mu(0.0, psi));
  const LatticeDomain domain = LatticeDomain::fiber(hop.labels());
  const TruncationBox box = TruncationBox::fiber(phi.dim() - 1, L);
  CompressedOperator h = compress_toeplitz(hop, domain, box) + compress_potential(pot, domain, box);
  std::ostringstream label;
  label << "Sigma_" << j << "(tau=" << tau.value() << ",tau'=" << tau_prime.value() << ")";
  return {h.domain(), h.box(), h.index(), h.matrix(), label.str()};
}

SpectrumSet sigma_j(int j, FiberParameter tau, FiberParameter tau_prime, const ShiftSymbol& phi,
                    const ShiftSymbol& psi, Coord L) {
  return eig_dense(sigma_operator(j, tau, tau_prime, phi, psi, L));
}

std::vector<double> torus_grid(std::size_t n) {
  if (n == 0) throw std::invalid_argument("torus grid needs at least one point");
  std::vector<double> grid(n);
  for (std::size_t i = 0; i < n; ++i) grid[i] = static_cast<double>(i) / static_cast<double>(n);
  return grid;
}

std::vector<BandSample> essential_bands(FiberParameter tau, const ShiftSymbol& phi, const ShiftSymbol& psi,
                                        std::size_t grid_size, Coord L) {
  require_fiber_symbols(phi, psi);
  const std::vector<double> grid = torus_grid(grid_size);
  const int N = phi.dim();
  std::vector<BandSample> samples(static_cast<std::size_t>(N - 1) * grid_size);
  parallel_for(samples.size(), [&](std::size_t s) {
    const int j = 2 + static_cast<int>(s / grid_size);
    const double tp = grid[s % grid_size];
    samples[s] = {j, tp, sigma_j(j, tau, tp, phi, psi, L).values()};
  });
  return samples;
}

SpectrumSet essential_spectrum_fiber(FiberParameter tau, const ShiftSymbol& phi, const ShiftSymbol& psi,
                                     std::size_t grid_size, Coord L) {
  std::vector<double> all;
  for (const BandSample& s : essential_bands(tau, phi, psi, grid_size, L)) {
    all.insert(all.end(), s.values.begin(), s.values.end());
  }
  return SpectrumSet(std::move(all), "essential spectrum of H(tau)");
}

SpectrumSet sigma_j_union(int j, const ShiftSymbol& phi, const ShiftSymbol& psi, std::size_t grid_size, Coord L) {
  require_fiber_symbols(phi, psi);
  const std::vector<double> grid = torus_grid(grid_size);
  std::vector<std::vector<double>> parts(grid_size * grid_size);
  parallel_for(parts.size(), [&](std::size_t s) {
    parts[s] = sigma_j(j, grid[s / grid_size], grid[s % grid_size], phi, psi, L).values();
  });
  std::vector<double> all;
  for (const auto& p : parts) all.insert(all.end(), p.begin(), p.end());
  return SpectrumSet(std::move(all), "union of Sigma_" + std::to_string(j));
}

std::vector<FiberSample> fiber_sweep(const ShiftSymbol& phi, const ShiftSymbol& psi, std::size_t grid_size, Coord L) {
  if (phi.dim() != psi.dim()) throw std::invalid_argument("phi and psi must have the same dimension");
  const std::vector<double> grid = torus_grid(grid_size);
  std::vector<FiberSample> samples(grid_size);
  if (phi.dim() == 1) {
    // Dimension-zero fibers: H(tau) is the scalar (F phi)(tau) + (F psi)(0).
    const double zero[] = {0.0};
    const double offset = full_fourier(psi, zero).real();
    for (std::size_t i = 0; i < grid_size; ++i) {
      const double t[] = {grid[i]};
      samples[i] = {grid[i], {full_fourier(phi, t).real() + offset}};
    }
    return samples;
  }
  parallel_for(grid_size, [&](std::size_t i) {
    samples[i] = {grid[i], eig_dense(fiber_hamiltonian(grid[i], phi, psi, L)).values()};
  });
  return samples;
}

SpectrumSet full_spectrum_union(const ShiftSymbol& phi, const ShiftSymbol& psi, std::size_t grid_size, Coord L) {
  std::vector<double> all;
  for (const FiberSample& s : fiber_sweep(phi, psi, grid_size, L)) all.insert(all.end(), s.values.begin(), s.values.end());
  return SpectrumSet(std::move(all), "union of fiber spectra");
}

double bloch_check(const ShiftSymbol& phi, const ShiftSymbol& psi, Coord L1, Coord L) {
  if (phi.dim() != psi.dim()) throw std::invalid_argument("phi and psi must have the same dimension");
  if (L1 < 1) throw std::invalid_argument("bloch_check needs L1 >= 1");
  const int N = phi.dim();
  if (N < 2) throw std::invalid_argument("bloch_check needs N >= 2");
  const LatticeDomain ring = LatticeDomain::ring_cross_fiber(N, L1);
  const TruncationBox box = TruncationBox::fiber(N, L);
  const CompressedOperator periodic = compress_toeplitz(pullback_theta_inv(phi), ring, box) +
                                      compress_potential(pullback_theta_inv(psi), ring, box);
  const SpectrumSet whole = eig_dense(periodic);

  std::vector<std::vector<double>> blocks(static_cast<std::size_t>(L1));
  parallel_for(blocks.size(), [&](std::size_t k) {
    blocks[k] = eig_dense(fiber_hamiltonian(static_cast<double>(k) / static_cast<double>(L1), phi, psi, L)).values();
  });
  std::vector<double> all;
  for (const auto& b : blocks) all.insert(all.end(), b.begin(), b.end());
  const SpectrumSet fibers(std::move(all), "fiber union");
  return std::max(hausdorff(whole, fibers), multiset_distance(whole, fibers));
}

std::vector<bool> bound_state_mask(const Eigensystem& es, const CompressedOperator& op,
                                   const BoundStateCriterion& criterion) {
  if (op.domain().kind != DomainKind::fiber) throw std::invalid_argument("bound_state_mask needs a fiber operator");
  const auto cols = static_cast<std::size_t>(es.vectors.cols());
  std::vector<bool> mask(cols, false);
  if (op.domain().dim == 0) return mask;
  const auto edge = static_cast<Coord>(std::ceil(criterion.fraction * static_cast<double>(op.box().gap_max)));
  std::vector<Eigen::Index> near;
  for (std::size_t i = 0; i < op.size(); ++i) {
    const Point& p = op.index()[i];
    if (*std::max_element(p.begin(), p.end()) <= edge) near.push_back(static_cast<Eigen::Index>(i));
  }
  for (std::size_t c = 0; c < cols; ++c) {
    const auto v = es.vectors.col(static_cast<Eigen::Index>(c));
    double inside = 0.0;
    for (Eigen::Index i : near) inside += std::norm(v[i]);
    mask[c] = inside >= criterion.mass * v.squaredNorm();
  }
  return mask;
}

SpectrumSet continuum_part(const CompressedOperator& op, const BoundStateCriterion& criterion) {
  const Eigensystem es = eigensystem(op);
  const std::vector<bool> bound = bound_state_mask(es, op, criterion);
  std::vector<double> kept;
  for (Eigen::Index i = 0; i < es.values.size(); ++i) {
    if (!bound[static_cast<std::size_t>(i)]) kept.push_back(es.values[i]);
  }
  return SpectrumSet(std::move(kept), op.label() + " continuum");
}

}  // namespace magnonspec
