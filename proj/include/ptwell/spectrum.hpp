#pragma once

// Real levels (two independent real-plane methods), complex conjugate pairs
// from the quantization function, level counts and critical couplings.

#include <optional>
#include <string>
#include <vector>

#include "ptwell/model.hpp"

namespace ptwell {

inline constexpr double kDefaultSMax = 12.0;
inline constexpr double kDefaultSMin = 1e-6;

struct EnergyWindow {
  double re_min = 0.0;
  double re_max = 2000.0;
  double im_min = -200.0;
  double im_max = 200.0;

  /// Throws DomainError unless re_min < re_max and im_min < im_max.
  void validate() const;
  friend bool operator==(const EnergyWindow&, const EnergyWindow&) = default;
};

struct Diagnostics {
  std::string method;
  double max_residual = 0.0;
  /// Zeros counted by the argument principle (complex solver only).
  std::optional<long> argument_count;
  std::optional<double> separation_sigma;
  std::optional<double> t_min;
  std::optional<double> t_max;
  std::vector<std::string> notes;

  friend bool operator==(const Diagnostics&, const Diagnostics&) = default;
};

struct SpectrumReport {
  ModelParams params{0.0, 0.0};
  std::vector<BoundState> real_levels;
  /// Upper members (Im E > 0) of the conjugate pairs, sorted by Re E.
  std::vector<cplx> complex_pairs;
  std::optional<EnergyWindow> window;
  Diagnostics diagnostics;
};

struct BracketScan {
  std::vector<BoundState> levels;
  double t_min = 0.0;
  double t_max = 0.0;
  double max_residual = 0.0;
  /// Grid intervals whose phase advance exceeded half a local oscillation period.
  long coarse_steps = 0;
};

/// One-dimensional oracle along the hyperbola t = Z/(2s), s in [s_min, s_max].
/// The adaptive grid advances the phase tau by at most pi/4 per step and
/// inserts the critical points of the residual, so near-coincident pairs of
/// roots are resolved. Requires Z > 0.
BracketScan bracket_scan(const ModelParams& params, double s_max = kDefaultSMax,
                         double s_min = kDefaultSMin);

std::vector<BoundState> real_spectrum_bracket(const ModelParams& params,
                                              double s_max = kDefaultSMax,
                                              double s_min = kDefaultSMin);

struct LatticeFailure {
  LatticeIndex index;
  RotatedPoint start;
  std::string reason;
};

struct LatticeSpectrum {
  std::vector<BoundState> levels;
  std::vector<LatticeFailure> failures;
  long stripes_scanned = 0;
};

/// Moving-lattice method: on every lattice line tau_{(k,q)}(p, xi), k <= k_max,
/// intersect the frozen Theta curve with the hyperbola branch, then polish each
/// intersection by two-dimensional Newton on (residual_real, 2st - Z).
/// Negative omega is handled through the mirrored picture and reflected_branch.
LatticeSpectrum real_spectrum_lattice(const ModelParams& params, long k_max);

/// Stripe count that makes the lattice cover every level with E <= e_max.
long lattice_k_max_for(const ModelParams& params, double e_max);

struct LocusPoint {
  double sigma = 0.0;
  double tau = 0.0;
  double xi = 0.0;
};

/// Solution locus of the frozen matching condition on the lattice line
/// tau_{(k,q)}(p, xi), sampled at n_xi values of xi in [0, 1).
std::vector<LocusPoint> trace_locus(const ModelParams& params, long k, int p, int q, int n_xi);

/// (n+1)^2 pi^2 / 4 for every level <= e_max. Requires Z = 0; omega is free.
std::vector<BoundState> hermitian_spectrum(const ModelParams& params, double e_max);

/// All zeros of the quantization function inside the window, by the argument
/// principle with recursive subdivision and Newton refinement. The window must
/// be symmetric about the real axis.
SpectrumReport complex_spectrum(const ModelParams& params, const EnergyWindow& window = {});

/// Real levels with E <= e_max.
long count_real(const ModelParams& params, double e_max);

/// Real levels with E <= e_max (bracketing for Z > 0, closed form for Z = 0).
std::vector<BoundState> real_levels_below(const ModelParams& params, double e_max);

/// Couplings Z_1 < ... < Z_n at which successive real pairs merge, each
/// bracketed to width 1e-4 by bisection on the real-level count of a
/// low-energy tracking window.
std::vector<double> critical_couplings(double omega, int n_pairs);

struct SweepRow {
  ModelParams params{0.0, 0.0};
  long n_real = 0;
  std::optional<long> n_pairs;
};

/// count_real (and, with a window, the pair count) over a parameter list,
/// spread over `jobs` threads; rows come back in input order.
std::vector<SweepRow> sweep(const std::vector<ModelParams>& grid, double e_max,
                            const std::optional<EnergyWindow>& window, int jobs);

}  // namespace ptwell
