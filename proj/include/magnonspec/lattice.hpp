#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace magnonspec {

using Coord = std::int64_t;
using Point = std::vector<Coord>;

/// Hash for lattice points, used by every index lookup.
struct PointHash {
  std::size_t operator()(const Point& p) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (Coord c : p) {
      h ^= static_cast<std::size_t>(c) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }
};

/// A point of Z^N_<: a strictly increasing integer tuple.  The same object
/// stands for the N-element subset of Z it enumerates.
class OrderedConfig {
 public:
  explicit OrderedConfig(Point coords);

  std::span<const Coord> coords() const { return coords_; }
  const Point& point() const { return coords_; }
  std::size_t size() const { return coords_.size(); }
  Coord operator[](std::size_t i) const { return coords_[i]; }

  friend bool operator==(const OrderedConfig&, const OrderedConfig&) = default;

 private:
  Point coords_;
};

/// A point of Z x (N*)^{N-1}: first entry free, the remaining entries >= 1.
class GapCoord {
 public:
  explicit GapCoord(Point coords);

  std::span<const Coord> coords() const { return coords_; }
  const Point& point() const { return coords_; }
  std::size_t size() const { return coords_.size(); }
  Coord operator[](std::size_t i) const { return coords_[i]; }

  friend bool operator==(const GapCoord&, const GapCoord&) = default;

 private:
  Point coords_;
};

// The automorphism (y_1, ..., y_N) -> (y_1, y_2 - y_1, ..., y_N - y_{N-1}) of
// Z^N and its inverse (partial sums).  The raw forms act on arbitrary tuples.
Point theta_raw(std::span<const Coord> y);
Point theta_inv_raw(std::span<const Coord> z);

GapCoord theta(const OrderedConfig& xi);
OrderedConfig theta_inv(const GapCoord& zeta);

bool is_strictly_increasing(std::span<const Coord> y);

struct IntRange {
  Coord lo = 0;
  Coord hi = 0;

  Coord count() const { return hi >= lo ? hi - lo + 1 : 0; }
  friend bool operator==(const IntRange&, const IntRange&) = default;
};

inline constexpr std::size_t kDefaultSizeCap = 200000;

/// Finite window in gap coordinates.  With `first_range` set the box is a
/// full-operator box (z_1 in the range, gaps in [1, gap_max]); without it the
/// box describes the fiber index set {1..gap_max}^{N-1}.
struct TruncationBox {
  int N = 1;
  std::optional<IntRange> first_range;
  Coord gap_max = 1;

  static TruncationBox fiber(int N, Coord gap_max) { return {N, std::nullopt, gap_max}; }
  static TruncationBox full(int N, IntRange z1, Coord gap_max) { return {N, z1, gap_max}; }

  bool is_fiber() const { return !first_range.has_value(); }

  /// Number of enumerated points; saturates instead of overflowing.
  std::size_t size() const;

  /// Throws std::invalid_argument on malformed boxes.
  void validate() const;
};

/// Lexicographic (in gap coordinates) enumeration of the box.  Fiber mode
/// yields the (N-1)-tuples (z_2, ..., z_N); full mode yields theta^{-1}(z).
std::vector<Point> enumerate_box(const TruncationBox& box, std::size_t size_cap = kDefaultSizeCap);

/// Odometer over {1..gap_max}^dims, lexicographic, last index fastest.
void for_each_gap_tuple(int dims, Coord gap_max, const std::function<void(const Point&)>& visit);

/// Membership in Omega_j(n) = { y in Z^N_< : y_j - y_{j-1} >= n }, j in 2..N.
class RegionOmega {
 public:
  RegionOmega(int N, int j, Coord n);

  int N() const { return N_; }
  int j() const { return j_; }
  Coord n() const { return n_; }

  bool operator()(const OrderedConfig& y) const;
  /// Same predicate read in gap coordinates: z_j >= n.
  bool contains_gap(const GapCoord& z) const { return z[j_ - 1] >= n_; }

 private:
  int N_;
  int j_;
  Coord n_;
};

inline RegionOmega region_omega(int N, int j, Coord n) { return RegionOmega(N, j, n); }

}  // namespace magnonspec
