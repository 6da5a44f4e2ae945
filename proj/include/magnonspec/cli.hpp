#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "magnonspec/io.hpp"
#include "magnonspec/lattice.hpp"

namespace magnonspec::cli {

/// Every knob of a batch run.  Config files (`key = value`) and flags set
/// the same fields; flags win.
struct RunConfig {
  std::string model = "heisenberg";  // heisenberg | symbols | cayley
  double a = 1.0;
  double b = 1.0;
  int N = 2;
  std::string phi_path;
  std::string psi_path;
  std::string cayley_path;

  Coord gap_max = 8;
  std::string z1 = "-8..8";
  Coord L1 = 4;

  double tau = 0.0;
  std::size_t grid = 64;
  int j = 2;

  std::string study = "fiber";  // fiber | full
  Coord n_min = 1;
  Coord n_max = 20;
  std::string window = "auto";  // "lo,hi" or "auto"
  std::string contrast_window;  // optional "lo,hi"
  double t_max = 50.0;
  double t_step = 0.5;
  unsigned seed = 1;
  double eps_mass = 1e-8;

  std::string out = "-";
  std::string format = "csv";
  std::string dump_matrix;
};

inline const std::vector<std::string> kSubcommands = {"verify-equivalence", "spectrum", "fiber", "essential",
                                                      "bloch",              "nonprop",  "evolve"};

/// Thrown for configurations rejected before any computation (exit code 2).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

IntRange parse_range(const std::string& text);
void validate(const std::string& subcommand, const RunConfig& config);
Provenance provenance(const std::string& subcommand, const RunConfig& config);

/// Runs one subcommand.  Tables go to config.out, scalar summaries to `log`.
/// Returns 0 on success, 1 on a numerical-contract violation, 2 on a
/// configuration error.
int run(const std::string& subcommand, const RunConfig& config, std::ostream& log, std::ostream& err);

int main(int argc, char** argv);

}  // namespace magnonspec::cli
