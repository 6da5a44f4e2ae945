#include "magnonspec/operators.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <set>
#include <stdexcept>

namespace magnonspec {

namespace {

using Triplets = std::vector<Eigen::Triplet<Complex>>;

SparseMatrix from_triplets(std::size_t n, const Triplets& triplets) {
  SparseMatrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  m.setFromTriplets(triplets.begin(), triplets.end());
  m.prune(Complex{}, 0.0);
  return m;
}

void require_dim(const ShiftSymbol& rho, const LatticeDomain& domain, const char* what) {
  if (rho.dim() != domain.dim) {
    throw std::invalid_argument(std::string(what) + ": symbol dimension " + std::to_string(rho.dim()) +
                                " does not match domain dimension " + std::to_string(domain.dim));
  }
}

Point minus(const Point& a, const Point& b) {
  Point d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  return d;
}

}  // namespace

const char* to_string(DomainKind kind) {
  switch (kind) {
    case DomainKind::full_ordered: return "full_ordered";
    case DomainKind::fiber: return "fiber";
    case DomainKind::whole_group: return "whole_group";
    case DomainKind::ring_cross_fiber: return "ring_cross_fiber";
  }
  return "unknown";
}

LatticeDomain LatticeDomain::full_ordered(int N) {
  if (N < 1) throw std::invalid_argument("full_ordered domain needs N >= 1");
  return {DomainKind::full_ordered, N, 0, {}};
}

LatticeDomain LatticeDomain::fiber(int d) {
  if (d < 0) throw std::invalid_argument("fiber domain needs d >= 0");
  std::vector<int> labels(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) labels[i] = i + 2;
  return {DomainKind::fiber, d, 0, std::move(labels)};
}

LatticeDomain LatticeDomain::fiber(std::vector<int> labels) {
  const int d = static_cast<int>(labels.size());
  return {DomainKind::fiber, d, 0, std::move(labels)};
}

LatticeDomain LatticeDomain::whole_group(int d) {
  if (d < 0) throw std::invalid_argument("whole_group domain needs d >= 0");
  return {DomainKind::whole_group, d, 0, {}};
}

LatticeDomain LatticeDomain::ring_cross_fiber(int N, Coord L1) {
  if (N < 1) throw std::invalid_argument("ring_cross_fiber domain needs N >= 1");
  if (L1 < 1) throw std::invalid_argument("ring_cross_fiber domain needs L1 >= 1");
  return {DomainKind::ring_cross_fiber, N, L1, {}};
}

bool LatticeDomain::contains(std::span<const Coord> p) const {
  if (static_cast<int>(p.size()) != dim) return false;
  switch (kind) {
    case DomainKind::full_ordered: return is_strictly_increasing(p);
    case DomainKind::fiber: return std::all_of(p.begin(), p.end(), [](Coord c) { return c >= 1; });
    case DomainKind::whole_group: return true;
    case DomainKind::ring_cross_fiber: return std::all_of(p.begin() + 1, p.end(), [](Coord c) { return c >= 1; });
  }
  return false;
}

void LatticeDomain::reduce(Point& p) const {
  if (kind == DomainKind::ring_cross_fiber && !p.empty()) {
    p[0] %= ring_period;
    if (p[0] < 0) p[0] += ring_period;
  }
}

std::vector<Point> LatticeDomain::enumerate(const TruncationBox& box, std::size_t size_cap) const {
  box.validate();
  switch (kind) {
    case DomainKind::full_ordered:
      if (box.N != dim || box.is_fiber()) throw std::invalid_argument("full_ordered domain needs a full box of matching N");
      return enumerate_box(box, size_cap);
    case DomainKind::fiber:
      if (box.N - 1 != dim || !box.is_fiber()) {
        throw std::invalid_argument("fiber domain of dimension " + std::to_string(dim) + " needs a fiber box with N = " +
                                    std::to_string(dim + 1));
      }
      return enumerate_box(box, size_cap);
    case DomainKind::whole_group: {
      if (box.N != dim || box.is_fiber()) throw std::invalid_argument("whole_group domain needs a box with a coordinate range");
      const auto side = static_cast<std::size_t>(box.first_range->count());
      std::size_t total = 1;
      for (int i = 0; i < dim; ++i) {
        if (total > size_cap / side + 1) throw std::length_error("whole_group box exceeds size cap");
        total *= side;
      }
      if (total > size_cap) throw std::length_error("whole_group box exceeds size cap");
      std::vector<Point> out;
      out.reserve(total);
      Point p(static_cast<std::size_t>(dim), box.first_range->lo);
      while (true) {
        out.push_back(p);
        int pos = dim - 1;
        while (pos >= 0 && p[pos] == box.first_range->hi) {
          p[pos] = box.first_range->lo;
          --pos;
        }
        if (pos < 0) break;
        ++p[pos];
      }
      return out;
    }
    case DomainKind::ring_cross_fiber: {
      if (box.N != dim) throw std::invalid_argument("ring_cross_fiber domain needs a box of matching N");
      TruncationBox gaps = TruncationBox::fiber(box.N, box.gap_max);
      const std::size_t total = gaps.size() * static_cast<std::size_t>(ring_period);
      if (total > size_cap) throw std::length_error("ring_cross_fiber box exceeds size cap");
      std::vector<Point> out;
      out.reserve(total);
      for (Coord z1 = 0; z1 < ring_period; ++z1) {
        for_each_gap_tuple(dim - 1, box.gap_max, [&](const Point& g) {
          Point p(static_cast<std::size_t>(dim));
          p[0] = z1;
          std::copy(g.begin(), g.end(), p.begin() + 1);
          out.push_back(std::move(p));
        });
      }
      return out;
    }
  }
  return {};
}

int LatticeDomain::max_gap_label() const {
  switch (kind) {
    case DomainKind::full_ordered:
    case DomainKind::ring_cross_fiber: return dim;
    case DomainKind::fiber: return labels.empty() ? dim + 1 : *std::max_element(labels.begin(), labels.end());
    case DomainKind::whole_group: return 0;
  }
  return 0;
}

Coord LatticeDomain::gap(std::span<const Coord> p, int j) const {
  switch (kind) {
    case DomainKind::full_ordered:
      if (j < 2 || j > dim) break;
      return p[j - 1] - p[j - 2];
    case DomainKind::ring_cross_fiber:
      if (j < 2 || j > dim) break;
      return p[j - 1];
    case DomainKind::fiber: {
      auto it = std::find(labels.begin(), labels.end(), j);
      if (it == labels.end()) break;
      return p[static_cast<std::size_t>(it - labels.begin())];
    }
    case DomainKind::whole_group: break;
  }
  throw std::out_of_range("gap index j=" + std::to_string(j) + " not available on " + to_string(kind) + " domain");
}

PointIndex::PointIndex(std::vector<Point> points) : points_(std::move(points)) {
  lookup_.reserve(points_.size());
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (!lookup_.emplace(points_[i], i).second) throw std::invalid_argument("duplicate lattice point in index");
  }
}

std::ptrdiff_t PointIndex::find(const Point& p) const {
  auto it = lookup_.find(p);
  return it == lookup_.end() ? -1 : static_cast<std::ptrdiff_t>(it->second);
}

CompressedOperator::CompressedOperator(LatticeDomain domain, TruncationBox box, PointIndex index, SparseMatrix matrix,
                                       std::string label)
    : domain_(std::move(domain)),
      box_(box),
      index_(std::move(index)),
      matrix_(std::move(matrix)),
      label_(std::move(label)) {
  if (static_cast<std::size_t>(matrix_.rows()) != index_.size() || matrix_.rows() != matrix_.cols()) {
    throw std::invalid_argument("matrix shape does not match the index set");
  }
}

DenseMatrix CompressedOperator::dense() const { return DenseMatrix(matrix_); }

Vector CompressedOperator::apply(const Vector& f) const {
  if (static_cast<std::size_t>(f.size()) != size()) throw std::invalid_argument("vector length does not match operator");
  return matrix_ * f;
}

bool CompressedOperator::is_real() const {
  for (Eigen::Index k = 0; k < matrix_.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(matrix_, k); it; ++it) {
      if (it.value().imag() != 0.0) return false;
    }
  }
  return true;
}

double CompressedOperator::hermiticity_defect() const {
  const SparseMatrix adj = matrix_.adjoint();
  const SparseMatrix diff = matrix_ - adj;
  double worst = 0.0;
  double scale = 0.0;
  for (Eigen::Index k = 0; k < diff.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(diff, k); it; ++it) worst = std::max(worst, std::abs(it.value()));
  }
  for (Eigen::Index k = 0; k < matrix_.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(matrix_, k); it; ++it) scale = std::max(scale, std::abs(it.value()));
  }
  return scale > 0.0 ? worst / scale : worst;
}

double CompressedOperator::gershgorin_bound() const {
  double bound = 0.0;
  for (Eigen::Index k = 0; k < matrix_.outerSize(); ++k) {
    double row = 0.0;
    for (SparseMatrix::InnerIterator it(matrix_, k); it; ++it) row += std::abs(it.value());
    bound = std::max(bound, row);
  }
  return bound;
}

CompressedOperator& CompressedOperator::operator+=(const CompressedOperator& other) {
  if (other.index_.points() != index_.points()) throw std::invalid_argument("adding operators on different index sets");
  matrix_ += other.matrix_;
  matrix_.prune(Complex{}, 0.0);
  label_ += " + " + other.label_;
  return *this;
}

CompressedOperator compress_toeplitz(const ShiftSymbol& phi, const LatticeDomain& domain, const TruncationBox& box) {
  require_dim(phi, domain, "compress_toeplitz");
  PointIndex index(domain.enumerate(box));
  Triplets triplets;
  triplets.reserve(index.size() * phi.support_size());
  for (std::size_t i = 0; i < index.size(); ++i) {
    for (const auto& [eta, value] : phi.entries()) {
      Point target = minus(index[i], eta);
      domain.reduce(target);
      if (const auto k = index.find(target); k >= 0) triplets.emplace_back(i, k, value);
    }
  }
  SparseMatrix m = from_triplets(index.size(), triplets);
  return {domain, box, std::move(index), std::move(m), "T"};
}

CompressedOperator compress_potential(const ShiftSymbol& psi, const LatticeDomain& domain, const TruncationBox& box) {
  require_dim(psi, domain, "compress_potential");
  PointIndex index(domain.enumerate(box));
  Triplets triplets;
  triplets.reserve(index.size());
  for (std::size_t i = 0; i < index.size(); ++i) {
    Complex diag{};
    for (const auto& [eta, value] : psi.entries()) {
      Point shifted = minus(index[i], eta);
      domain.reduce(shifted);
      if (domain.contains(shifted)) diag += value;
    }
    if (diag != Complex{}) triplets.emplace_back(i, i, diag);
  }
  SparseMatrix m = from_triplets(index.size(), triplets);
  return {domain, box, std::move(index), std::move(m), "V"};
}

CompressedOperator compress_toeplitz_plus_potential(const ShiftSymbol& phi, const ShiftSymbol& psi,
                                                    const LatticeDomain& domain, const TruncationBox& box) {
  return compress_toeplitz(phi, domain, box) + compress_potential(psi, domain, box);
}

CompressedOperator cayley_laplacian(const ShiftSymbol& M, const LatticeDomain& domain, const TruncationBox& box) {
  require_dim(M, domain, "cayley_laplacian");
  std::vector<Point> generators;
  for (const auto& [eta, value] : M.entries()) {
    if (value != Complex(1.0)) throw std::invalid_argument("cayley_laplacian: M must be a 0/1 indicator");
    if (std::all_of(eta.begin(), eta.end(), [](Coord c) { return c == 0; })) {
      throw std::invalid_argument("cayley_laplacian: M must not contain 0");
    }
    generators.push_back(eta);
  }
  for (const Point& g : generators) {
    Point neg(g.size());
    std::transform(g.begin(), g.end(), neg.begin(), [](Coord c) { return -c; });
    if (M.at(neg) == Complex{}) throw std::invalid_argument("cayley_laplacian: M is not symmetric");
  }

  PointIndex index(domain.enumerate(box));
  Triplets triplets;
  for (std::size_t i = 0; i < index.size(); ++i) {
    // Neighbours of xi are xi + m, m in M (M = -M).
    long degree = 0;
    for (const Point& g : generators) {
      Point neighbour = index[i];
      for (std::size_t c = 0; c < g.size(); ++c) neighbour[c] += g[c];
      domain.reduce(neighbour);
      if (!domain.contains(neighbour)) continue;
      ++degree;
      if (const auto k = index.find(neighbour); k >= 0) triplets.emplace_back(i, k, 1.0);
    }
    if (degree != 0) triplets.emplace_back(i, i, -static_cast<double>(degree));
  }
  SparseMatrix m = from_triplets(index.size(), triplets);
  return {domain, box, std::move(index), std::move(m), "Laplacian"};
}

CompressedOperator build_heisenberg_direct(int N, double a, double b, const TruncationBox& box) {
  if (N < 1) throw std::invalid_argument("build_heisenberg_direct needs N >= 1");
  const LatticeDomain domain = LatticeDomain::full_ordered(N);
  PointIndex index(domain.enumerate(box));
  Triplets triplets;
  for (std::size_t i = 0; i < index.size(); ++i) {
    const Point& alpha = index[i];
    const std::set<Coord> occupied(alpha.begin(), alpha.end());
    double diag = 0.0;
    for (std::size_t s = 0; s < alpha.size(); ++s) {
      for (Coord y : {alpha[s] - 1, alpha[s] + 1}) {
        if (occupied.contains(y)) continue;
        diag += 2.0 * b;
        Point moved = alpha;
        moved[s] = y;
        std::sort(moved.begin(), moved.end());
        if (const auto k = index.find(moved); k >= 0 && a != 0.0) triplets.emplace_back(i, k, -2.0 * a);
      }
    }
    if (diag != 0.0) triplets.emplace_back(i, i, diag);
  }
  SparseMatrix m = from_triplets(index.size(), triplets);
  return {domain, box, std::move(index), std::move(m), "heisenberg_direct"};
}

ToeplitzPotentialAction::ToeplitzPotentialAction(ShiftSymbol phi, ShiftSymbol psi, LatticeDomain domain,
                                                 const TruncationBox& box)
    : phi_(std::move(phi)), psi_(std::move(psi)), domain_(std::move(domain)), index_(domain_.enumerate(box)) {
  require_dim(phi_, domain_, "ToeplitzPotentialAction");
  require_dim(psi_, domain_, "ToeplitzPotentialAction");
  diagonal_.assign(index_.size(), Complex{});
  for (std::size_t i = 0; i < index_.size(); ++i) {
    for (const auto& [eta, value] : psi_.entries()) {
      Point shifted = minus(index_[i], eta);
      domain_.reduce(shifted);
      if (domain_.contains(shifted)) diagonal_[i] += value;
    }
  }
}

Vector ToeplitzPotentialAction::apply(const Vector& f) const {
  if (static_cast<std::size_t>(f.size()) != index_.size()) throw std::invalid_argument("vector length does not match box");
  Vector out(f.size());
  for (std::size_t i = 0; i < index_.size(); ++i) {
    Complex acc = diagonal_[i] * f[static_cast<Eigen::Index>(i)];
    for (const auto& [eta, value] : phi_.entries()) {
      Point target = minus(index_[i], eta);
      domain_.reduce(target);
      if (const auto k = index_.find(target); k >= 0) acc += value * f[k];
    }
    out[static_cast<Eigen::Index>(i)] = acc;
  }
  return out;
}

double ToeplitzPotentialAction::gershgorin_bound() const {
  double diag = 0.0;
  for (const Complex& d : diagonal_) diag = std::max(diag, std::abs(d));
  return diag + phi_.l1_norm();
}

Vector indicator_project(const PointPredicate& pred, const PointIndex& index, const Vector& f) {
  if (static_cast<std::size_t>(f.size()) != index.size()) throw std::invalid_argument("vector length does not match index");
  Vector out = f;
  for (std::size_t i = 0; i < index.size(); ++i) {
    if (!pred(index[i])) out[static_cast<Eigen::Index>(i)] = Complex{};
  }
  return out;
}

PointPredicate region_predicate(const LatticeDomain& domain, int j, Coord n) {
  if (j < 2 || j > domain.max_gap_label()) {
    throw std::out_of_range("region index j=" + std::to_string(j) + " not available on " + to_string(domain.kind) +
                            " domain");
  }
  return [domain, j, n](const Point& p) { return domain.gap(p, j) >= n; };
}

void dump_matrix(std::ostream& out, const CompressedOperator& op) {
  const auto old = out.precision(17);
  const SparseMatrix& m = op.matrix();
  for (Eigen::Index r = 0; r < m.outerSize(); ++r) {
    for (SparseMatrix::InnerIterator it(m, r); it; ++it) {
      out << it.row() << ' ' << it.col() << ' ' << it.value().real() << ' ' << it.value().imag() << '\n';
    }
  }
  out.precision(old);
}

}  // namespace magnonspec
