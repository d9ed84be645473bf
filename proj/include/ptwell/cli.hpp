#pragma once

// Command-line front end. Exit status: 0 success, 2 invalid flag,
// 3 solver error, 4 I/O error.

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ptwell/spectrum.hpp"

namespace ptwell {

enum class Command { spectrum, count, complex, critical, curves, sweep };
enum class OutputFormat { json, csv };
enum class CurveFamily { theta, oval, intersection };

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalidFlag = 2;
inline constexpr int kExitSolverError = 3;
inline constexpr int kExitIoError = 4;

struct RunConfig {
  Command command = Command::spectrum;
  double Z = 0.0;
  double omega = 0.0;
  double e_max = 1000.0;
  double s_max = kDefaultSMax;
  /// Set: real levels by the lattice method on stripes up to k_max.
  std::optional<long> k_max;
  /// complex: search window (default when unset). sweep: also count pairs.
  std::optional<EnergyWindow> window;
  OutputFormat format = OutputFormat::json;
  /// Empty: standard output.
  std::string output;
  int n_pairs = 1;
  CurveFamily family = CurveFamily::theta;
  std::vector<double> xi{0.0, 0.5, 0.9, 0.99};
  std::vector<int> p{1};
  long stripe = 30;
  /// Sweep grid is the product of these lists.
  std::vector<double> Z_list;
  std::vector<double> omega_list;
  int jobs = 1;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Throws DomainError if a numeric field is non-finite or out of range.
void validate(const RunConfig& config);

/// Runs one command and writes its output. Diagnostics go to `err`.
int run(const RunConfig& config, std::ostream& err);

/// Text the command would write, without touching the file system.
std::string render(const RunConfig& config);

/// Parses argv (subcommand first) and runs it.
int cli_main(int argc, const char* const* argv);

}  // namespace ptwell
