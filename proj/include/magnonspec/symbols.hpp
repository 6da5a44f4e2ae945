#pragma once

#include <complex>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "magnonspec/lattice.hpp"

namespace magnonspec {

using Complex = std::complex<double>;

/// Entries with magnitude below this are dropped after arithmetic.
inline constexpr double kSymbolDropTolerance = 1e-15;

/// A point of the torus T = [0,1) with 0 identified to 1.
class FiberParameter {
 public:
  FiberParameter() = default;
  // Implicit on purpose: call sites read as mu(0.25, rho).
  FiberParameter(double tau);  // NOLINT(google-explicit-constructor)

  double value() const { return tau_; }
  operator double() const { return tau_; }  // NOLINT(google-explicit-constructor)

 private:
  double tau_ = 0.0;
};

/// e_z(tau) = exp(-2 pi i z tau).
Complex character(Coord z, double tau);

/// Finitely supported complex function on Z^d.  Coordinates carry labels so
/// that, after Fourier maps remove variables, a coordinate keeps the index it
/// had on Z^N (labels 2..N after mu, and so on).  d = 0 is a plain scalar
/// stored at the empty tuple.
class ShiftSymbol {
 public:
  using Entries = std::map<Point, Complex>;

  explicit ShiftSymbol(int dim = 0);
  explicit ShiftSymbol(std::vector<int> labels);

  static ShiftSymbol scalar(Complex value);
  static ShiftSymbol delta(int dim, Complex value = 1.0);

  int dim() const { return static_cast<int>(labels_.size()); }
  const std::vector<int>& labels() const { return labels_; }
  const Entries& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t support_size() const { return entries_.size(); }

  /// Position of coordinate `label`, or -1.
  int position_of(int label) const;

  Complex at(const Point& eta) const;
  /// Adds `value` to the entry at `eta`, dropping it if it cancels.
  void add(const Point& eta, Complex value);
  void set(const Point& eta, Complex value);

  /// rho(-eta) == conj(rho(eta)) for every eta, within `tol`.
  bool is_hermitian(double tol = 1e-12) const;
  bool is_real(double tol = 0.0) const;
  /// Sum of |rho(eta)|.
  double l1_norm() const;

  ShiftSymbol& operator+=(const ShiftSymbol& other);
  ShiftSymbol& operator*=(Complex factor);
  friend ShiftSymbol operator+(ShiftSymbol lhs, const ShiftSymbol& rhs) { return lhs += rhs; }
  friend ShiftSymbol operator*(Complex factor, ShiftSymbol rhs) { return rhs *= factor; }
  friend ShiftSymbol operator-(ShiftSymbol rhs) { return rhs *= -1.0; }

 private:
  void check_point(const Point& eta) const;

  std::vector<int> labels_;
  Entries entries_;
};

/// Characteristic function of the 2N signed unit vectors of Z^N.
ShiftSymbol unit_vector_indicator(int N);

/// phi = -2a chi_S and psi = 2b chi_S for the N-magnon XXZ chain.
std::pair<ShiftSymbol, ShiftSymbol> heisenberg_symbols(double a, double b, int N);

/// rho o theta^{-1}: the entry at zeta equals rho(theta^{-1} zeta).
ShiftSymbol pullback_theta_inv(const ShiftSymbol& rho);

/// [mu(tau) rho](z_2..z_N) = sum_{z_1} e_{z_1}(tau) (rho o theta^{-1})(z_1, z_2..z_N).
ShiftSymbol mu(FiberParameter tau, const ShiftSymbol& rho);

/// Fourier-sums out the coordinate labelled `j` at dual value tau'.
ShiftSymbol nu_j(int j, FiberParameter tau_prime, const ShiftSymbol& rho);

/// sum_eta rho(eta) exp(-2 pi i eta . tau).
Complex full_fourier(const ShiftSymbol& rho, std::span<const double> tau);

/// Text format: one entry per line, `z_1 ... z_d re im`; `#` starts a comment.
ShiftSymbol parse_symbol(std::istream& in, int dim = -1);
ShiftSymbol read_symbol_file(const std::string& path, int dim = -1);
void write_symbol(std::ostream& out, const ShiftSymbol& rho);

}  // namespace magnonspec
