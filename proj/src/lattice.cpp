#include "magnonspec/lattice.hpp"

#include <limits>
#include <stdexcept>
#include <string>

namespace magnonspec {

bool is_strictly_increasing(std::span<const Coord> y) {
  for (std::size_t i = 1; i < y.size(); ++i) {
    if (y[i] <= y[i - 1]) return false;
  }
  return true;
}

OrderedConfig::OrderedConfig(Point coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw std::invalid_argument("OrderedConfig needs N >= 1");
  if (!is_strictly_increasing(coords_)) {
    throw std::invalid_argument("OrderedConfig coordinates must be strictly increasing");
  }
}

GapCoord::GapCoord(Point coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw std::invalid_argument("GapCoord needs N >= 1");
  for (std::size_t i = 1; i < coords_.size(); ++i) {
    if (coords_[i] < 1) throw std::invalid_argument("GapCoord gaps must be >= 1");
  }
}

Point theta_raw(std::span<const Coord> y) {
  Point z(y.begin(), y.end());
  for (std::size_t i = y.size(); i-- > 1;) z[i] = y[i] - y[i - 1];
  return z;
}

Point theta_inv_raw(std::span<const Coord> z) {
  Point y(z.size());
  Coord acc = 0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    acc += z[i];
    y[i] = acc;
  }
  return y;
}

GapCoord theta(const OrderedConfig& xi) { return GapCoord(theta_raw(xi.coords())); }

OrderedConfig theta_inv(const GapCoord& zeta) { return OrderedConfig(theta_inv_raw(zeta.coords())); }

std::size_t TruncationBox::size() const {
  constexpr auto kMax = std::numeric_limits<std::size_t>::max();
  std::size_t total = first_range ? static_cast<std::size_t>(first_range->count()) : 1;
  const auto gaps = static_cast<std::size_t>(gap_max < 0 ? 0 : gap_max);
  for (int i = 1; i < N; ++i) {
    if (gaps != 0 && total > kMax / gaps) return kMax;
    total *= gaps;
  }
  return total;
}

void TruncationBox::validate() const {
  if (N < 1) throw std::invalid_argument("TruncationBox: N must be >= 1");
  if (gap_max < 1) throw std::invalid_argument("TruncationBox: gap_max must be >= 1");
  if (first_range && first_range->count() < 1) {
    throw std::invalid_argument("TruncationBox: empty z_1 range");
  }
}

void for_each_gap_tuple(int dims, Coord gap_max, const std::function<void(const Point&)>& visit) {
  Point z(static_cast<std::size_t>(dims), 1);
  if (gap_max < 1) return;
  while (true) {
    visit(z);
    int pos = dims - 1;
    while (pos >= 0 && z[pos] == gap_max) {
      z[pos] = 1;
      --pos;
    }
    if (pos < 0) return;
    ++z[pos];
  }
}

std::vector<Point> enumerate_box(const TruncationBox& box, std::size_t size_cap) {
  box.validate();
  const std::size_t n = box.size();
  if (n > size_cap) {
    throw std::length_error("box enumerates " + std::to_string(n) + " points, cap is " +
                            std::to_string(size_cap));
  }
  std::vector<Point> out;
  out.reserve(n);
  if (box.is_fiber()) {
    for_each_gap_tuple(box.N - 1, box.gap_max, [&](const Point& g) { out.push_back(g); });
    return out;
  }
  Point z(static_cast<std::size_t>(box.N));
  for (Coord z1 = box.first_range->lo; z1 <= box.first_range->hi; ++z1) {
    z[0] = z1;
    for_each_gap_tuple(box.N - 1, box.gap_max, [&](const Point& g) {
      std::copy(g.begin(), g.end(), z.begin() + 1);
      out.push_back(theta_inv_raw(z));
    });
  }
  return out;
}

RegionOmega::RegionOmega(int N, int j, Coord n) : N_(N), j_(j), n_(n) {
  if (j < 2 || j > N) {
    throw std::out_of_range("region index j=" + std::to_string(j) + " outside 2.." + std::to_string(N));
  }
}

bool RegionOmega::operator()(const OrderedConfig& y) const {
  if (static_cast<int>(y.size()) != N_) throw std::invalid_argument("RegionOmega: dimension mismatch");
  return y[j_ - 1] - y[j_ - 2] >= n_;
}

}  // namespace magnonspec
