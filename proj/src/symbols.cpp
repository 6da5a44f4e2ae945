#include "magnonspec/symbols.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace magnonspec {

FiberParameter::FiberParameter(double tau) {
  if (!std::isfinite(tau)) throw std::invalid_argument("fiber parameter must be finite");
  double r = tau - std::floor(tau);
  if (r >= 1.0) r = 0.0;
  tau_ = r;
}

Complex character(Coord z, double tau) {
  // Reduce the phase before scaling so large z keeps full precision.
  const double phase = std::fmod(static_cast<double>(z) * tau, 1.0);
  const double angle = -2.0 * std::numbers::pi * phase;
  return {std::cos(angle), std::sin(angle)};
}

ShiftSymbol::ShiftSymbol(int dim) {
  if (dim < 0) throw std::invalid_argument("symbol dimension must be >= 0");
  labels_.resize(static_cast<std::size_t>(dim));
  for (int i = 0; i < dim; ++i) labels_[i] = i + 1;
}

ShiftSymbol::ShiftSymbol(std::vector<int> labels) : labels_(std::move(labels)) {}

ShiftSymbol ShiftSymbol::scalar(Complex value) {
  ShiftSymbol s(0);
  s.add({}, value);
  return s;
}

ShiftSymbol ShiftSymbol::delta(int dim, Complex value) {
  ShiftSymbol s(dim);
  s.add(Point(static_cast<std::size_t>(dim), 0), value);
  return s;
}

int ShiftSymbol::position_of(int label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] == label) return static_cast<int>(i);
  }
  return -1;
}

void ShiftSymbol::check_point(const Point& eta) const {
  if (eta.size() != labels_.size()) {
    throw std::invalid_argument("symbol point has dimension " + std::to_string(eta.size()) + ", expected " +
                                std::to_string(labels_.size()));
  }
}

Complex ShiftSymbol::at(const Point& eta) const {
  check_point(eta);
  auto it = entries_.find(eta);
  return it == entries_.end() ? Complex{} : it->second;
}

void ShiftSymbol::add(const Point& eta, Complex value) {
  check_point(eta);
  auto [it, inserted] = entries_.try_emplace(eta, value);
  if (!inserted) it->second += value;
  if (std::abs(it->second) < kSymbolDropTolerance) entries_.erase(it);
}

void ShiftSymbol::set(const Point& eta, Complex value) {
  check_point(eta);
  if (std::abs(value) < kSymbolDropTolerance) {
    entries_.erase(eta);
  } else {
    entries_[eta] = value;
  }
}

bool ShiftSymbol::is_hermitian(double tol) const {
  for (const auto& [eta, value] : entries_) {
    Point neg(eta.size());
    for (std::size_t i = 0; i < eta.size(); ++i) neg[i] = -eta[i];
    if (std::abs(at(neg) - std::conj(value)) > tol) return false;
  }
  return true;
}

bool ShiftSymbol::is_real(double tol) const {
  for (const auto& [eta, value] : entries_) {
    if (std::abs(value.imag()) > tol) return false;
  }
  return true;
}

double ShiftSymbol::l1_norm() const {
  double total = 0.0;
  for (const auto& [eta, value] : entries_) total += std::abs(value);
  return total;
}

ShiftSymbol& ShiftSymbol::operator+=(const ShiftSymbol& other) {
  if (other.labels_ != labels_) throw std::invalid_argument("adding symbols with different coordinate labels");
  for (const auto& [eta, value] : other.entries_) add(eta, value);
  return *this;
}

ShiftSymbol& ShiftSymbol::operator*=(Complex factor) {
  Entries scaled;
  for (const auto& [eta, value] : entries_) {
    const Complex v = value * factor;
    if (std::abs(v) >= kSymbolDropTolerance) scaled.emplace(eta, v);
  }
  entries_ = std::move(scaled);
  return *this;
}

ShiftSymbol unit_vector_indicator(int N) {
  if (N < 1) throw std::invalid_argument("N must be >= 1");
  ShiftSymbol chi(N);
  for (int i = 0; i < N; ++i) {
    Point e(static_cast<std::size_t>(N), 0);
    e[i] = 1;
    chi.add(e, 1.0);
    e[i] = -1;
    chi.add(e, 1.0);
  }
  return chi;
}

std::pair<ShiftSymbol, ShiftSymbol> heisenberg_symbols(double a, double b, int N) {
  const ShiftSymbol chi = unit_vector_indicator(N);
  return {Complex(-2.0 * a) * chi, Complex(2.0 * b) * chi};
}

ShiftSymbol pullback_theta_inv(const ShiftSymbol& rho) {
  ShiftSymbol out(rho.labels());
  for (const auto& [eta, value] : rho.entries()) out.add(theta_raw(eta), value);
  return out;
}

ShiftSymbol mu(FiberParameter tau, const ShiftSymbol& rho) {
  if (rho.dim() < 2) throw std::invalid_argument("mu needs a symbol of dimension >= 2");
  std::vector<int> labels(rho.labels().begin() + 1, rho.labels().end());
  ShiftSymbol out(std::move(labels));
  for (const auto& [eta, value] : rho.entries()) {
    const Point zeta = theta_raw(eta);
    Point rest(zeta.begin() + 1, zeta.end());
    out.add(rest, character(zeta[0], tau) * value);
  }
  return out;
}

ShiftSymbol nu_j(int j, FiberParameter tau_prime, const ShiftSymbol& rho) {
  const int pos = rho.position_of(j);
  if (pos < 0) throw std::out_of_range("nu_j: symbol has no coordinate labelled " + std::to_string(j));
  std::vector<int> labels = rho.labels();
  labels.erase(labels.begin() + pos);
  ShiftSymbol out(std::move(labels));
  for (const auto& [eta, value] : rho.entries()) {
    Point rest = eta;
    rest.erase(rest.begin() + pos);
    out.add(rest, character(eta[pos], tau_prime) * value);
  }
  return out;
}

Complex full_fourier(const ShiftSymbol& rho, std::span<const double> tau) {
  if (static_cast<int>(tau.size()) != rho.dim()) {
    throw std::invalid_argument("full_fourier: expected " + std::to_string(rho.dim()) + " torus coordinates");
  }
  Complex total{};
  for (const auto& [eta, value] : rho.entries()) {
    double phase = 0.0;
    for (std::size_t i = 0; i < eta.size(); ++i) phase += std::fmod(static_cast<double>(eta[i]) * tau[i], 1.0);
    const double angle = -2.0 * std::numbers::pi * phase;
    total += value * Complex(std::cos(angle), std::sin(angle));
  }
  return total;
}

ShiftSymbol parse_symbol(std::istream& in, int dim) {
  std::vector<std::pair<Point, Complex>> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::vector<std::string> tokens;
    for (std::string tok; fields >> tok;) tokens.push_back(tok);
    if (tokens.empty()) continue;
    if (tokens.size() < 2) throw std::runtime_error("symbol line " + std::to_string(line_no) + ": too few fields");
    const int d = static_cast<int>(tokens.size()) - 2;
    if (dim < 0) dim = d;
    if (d != dim) {
      throw std::runtime_error("symbol line " + std::to_string(line_no) + ": expected " + std::to_string(dim) +
                               " coordinates, got " + std::to_string(d));
    }
    try {
      Point eta(static_cast<std::size_t>(d));
      for (int i = 0; i < d; ++i) {
        std::size_t used = 0;
        eta[i] = std::stoll(tokens[i], &used);
        if (used != tokens[i].size()) throw std::invalid_argument(tokens[i]);
      }
      rows.emplace_back(std::move(eta), Complex(std::stod(tokens[d]), std::stod(tokens[d + 1])));
    } catch (const std::logic_error&) {
      throw std::runtime_error("symbol line " + std::to_string(line_no) + ": malformed number");
    }
  }
  ShiftSymbol rho(dim < 0 ? 0 : dim);
  for (auto& [eta, value] : rows) rho.add(eta, value);
  return rho;
}

ShiftSymbol read_symbol_file(const std::string& path, int dim) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open symbol file " + path);
  return parse_symbol(in, dim);
}

void write_symbol(std::ostream& out, const ShiftSymbol& rho) {
  const auto old = out.precision(17);
  for (const auto& [eta, value] : rho.entries()) {
    for (Coord c : eta) out << c << ' ';
    out << value.real() << ' ' << value.imag() << '\n';
  }
  out.precision(old);
}

}  // namespace magnonspec
