#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "magnonspec/lattice.hpp"
#include "magnonspec/symbols.hpp"

namespace magnonspec {

using Vector = Eigen::VectorXcd;
using DenseMatrix = Eigen::MatrixXcd;
using SparseMatrix = Eigen::SparseMatrix<Complex, Eigen::RowMajor>;

/// Operators above this many indices are never materialised densely.
inline constexpr std::size_t kDenseCap = 4000;

enum class DomainKind { full_ordered, fiber, whole_group, ring_cross_fiber };

const char* to_string(DomainKind kind);

/// The subset E of the group the operators act on.
///  - full_ordered:      Z^N_<, points in original coordinates (y_1 < ... < y_N)
///  - fiber:             (N*)^d, points are gap tuples
///  - whole_group:       Z^d
///  - ring_cross_fiber:  Z_{L1} x (N*)^{N-1}, points in gap coordinates with
///                       z_1 reduced to [0, L1)
struct LatticeDomain {
  DomainKind kind = DomainKind::fiber;
  int dim = 1;
  Coord ring_period = 0;
  /// Coordinate label of each gap position (fiber domains).  Empty means the
  /// default labels 2..dim+1.
  std::vector<int> labels;

  static LatticeDomain full_ordered(int N);
  static LatticeDomain fiber(int d);
  static LatticeDomain fiber(std::vector<int> labels);
  static LatticeDomain whole_group(int d);
  static LatticeDomain ring_cross_fiber(int N, Coord L1);

  /// Membership in the infinite set E (after ring reduction).
  bool contains(std::span<const Coord> p) const;
  /// Canonical representative of a group element (ring reduction of z_1).
  void reduce(Point& p) const;
  /// Finite index set of `box` (box.N is the number of particles for
  /// full/fiber/ring; for whole_group, box.N is the dimension and every
  /// coordinate ranges over box.first_range).
  std::vector<Point> enumerate(const TruncationBox& box, std::size_t size_cap = kDefaultSizeCap) const;
  /// Gap y_j - y_{j-1} (full), z_j (ring), or the coordinate labelled j (fiber).
  Coord gap(std::span<const Coord> p, int j) const;
  /// Largest valid j for `gap`.
  int max_gap_label() const;
};

/// Bijection between the enumerated points and matrix indices.
class PointIndex {
 public:
  PointIndex() = default;
  explicit PointIndex(std::vector<Point> points);

  std::size_t size() const { return points_.size(); }
  const std::vector<Point>& points() const { return points_; }
  const Point& operator[](std::size_t i) const { return points_[i]; }
  /// Index of `p`, or -1 when outside the box.
  std::ptrdiff_t find(const Point& p) const;

 private:
  std::vector<Point> points_;
  std::unordered_map<Point, std::size_t, PointHash> lookup_;
};

/// Exact compression of a lattice operator to a finite index set.
class CompressedOperator {
 public:
  CompressedOperator(LatticeDomain domain, TruncationBox box, PointIndex index, SparseMatrix matrix,
                     std::string label);

  const LatticeDomain& domain() const { return domain_; }
  const TruncationBox& box() const { return box_; }
  const PointIndex& index() const { return index_; }
  const SparseMatrix& matrix() const { return matrix_; }
  const std::string& label() const { return label_; }
  std::size_t size() const { return index_.size(); }

  DenseMatrix dense() const;
  Vector apply(const Vector& f) const;
  bool is_real() const;
  /// max |A - A^*| relative to max |A| (absolute when A = 0).
  double hermiticity_defect() const;
  /// max_i sum_k |A_ik|, an upper bound for the spectral radius.
  double gershgorin_bound() const;

  CompressedOperator& operator+=(const CompressedOperator& other);
  friend CompressedOperator operator+(CompressedOperator lhs, const CompressedOperator& rhs) { return lhs += rhs; }

 private:
  LatticeDomain domain_;
  TruncationBox box_;
  PointIndex index_;
  SparseMatrix matrix_;
  std::string label_;
};

/// <delta_xi, T delta_xi'> = phi(xi - xi') for xi, xi' in the box.
CompressedOperator compress_toeplitz(const ShiftSymbol& phi, const LatticeDomain& domain, const TruncationBox& box);
/// Diagonal sum_eta psi(eta) [xi in E and xi - eta in E].
CompressedOperator compress_potential(const ShiftSymbol& psi, const LatticeDomain& domain, const TruncationBox& box);
CompressedOperator compress_toeplitz_plus_potential(const ShiftSymbol& phi, const ShiftSymbol& psi,
                                                    const LatticeDomain& domain, const TruncationBox& box);

/// Adjacency minus degree of the Cayley graph of M restricted to E,
/// assembled by walking graph edges.
CompressedOperator cayley_laplacian(const ShiftSymbol& M, const LatticeDomain& domain, const TruncationBox& box);

/// The N-magnon XXZ Hamiltonian assembled from spin-flip moves on occupied
/// site sets, independent of the symbol machinery.
CompressedOperator build_heisenberg_direct(int N, double a, double b, const TruncationBox& box);

/// Matrix-free T^E_phi + V^E_psi on a box; each apply walks the symbol
/// supports with hash lookups.
class ToeplitzPotentialAction {
 public:
  ToeplitzPotentialAction(ShiftSymbol phi, ShiftSymbol psi, LatticeDomain domain, const TruncationBox& box);

  std::size_t size() const { return index_.size(); }
  const PointIndex& index() const { return index_; }
  const LatticeDomain& domain() const { return domain_; }
  Vector apply(const Vector& f) const;
  Vector operator()(const Vector& f) const { return apply(f); }
  /// max_xi |V(xi)| + sum_eta |phi(eta)|.
  double gershgorin_bound() const;

 private:
  ShiftSymbol phi_;
  ShiftSymbol psi_;
  LatticeDomain domain_;
  PointIndex index_;
  std::vector<Complex> diagonal_;
};

using PointPredicate = std::function<bool(const Point&)>;

/// Zeroes the entries whose lattice point fails `pred`.
Vector indicator_project(const PointPredicate& pred, const PointIndex& index, const Vector& f);

/// Omega_j(n) read on the points of `domain`: gap j >= n.
PointPredicate region_predicate(const LatticeDomain& domain, int j, Coord n);

/// Triplet dump `i k re im`, 0-based, row-major, nonzeros only.
void dump_matrix(std::ostream& out, const CompressedOperator& op);

}  // namespace magnonspec
