#pragma once

// Domain types of the complexified square well and the exact coordinate
// maps between the wave-vector plane (s, t) and the rotated plane (sigma, tau).

#include <complex>
#include <optional>

namespace ptwell {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Coupling Z >= 0 and matching-point shift omega; phi = atan(omega).
class ModelParams {
 public:
  /// Throws DomainError for Z < 0 or non-finite input.
  ModelParams(double Z, double omega);

  double Z() const { return Z_; }
  double omega() const { return omega_; }
  double phi() const { return phi_; }

  friend bool operator==(const ModelParams&, const ModelParams&) = default;

 private:
  double Z_;
  double omega_;
  double phi_;
};

/// kappa = s - i t. Physical states live in the quadrant s >= 0, t >= 0.
struct WaveVector {
  double s = 0.0;
  double t = 0.0;

  friend bool operator==(const WaveVector&, const WaveVector&) = default;
};

struct RotatedPoint {
  double sigma = 0.0;
  double tau = 0.0;

  friend bool operator==(const RotatedPoint&, const RotatedPoint&) = default;
};

/// tau = (2k+1)pi + p pi/2 + q pi xi/2.
struct LatticeIndex {
  long k = 0;
  int p = 1;
  int q = 1;
  double xi = 0.0;

  friend bool operator==(const LatticeIndex&, const LatticeIndex&) = default;
};

/// Result of the inverse rotation; `in_quadrant` is false for points that
/// do not correspond to s >= 0, t >= 0 and must be discarded.
struct QuadrantMapped {
  WaveVector wave;
  bool in_quadrant = false;
};

enum class StateKind { real, complex_pair_member };

/// One eigenvalue. Real states carry their (s, t) pair; complex ones only E.
/// A and the amplitudes are absent when psi has a node at i*omega.
struct BoundState {
  StateKind kind = StateKind::real;
  WaveVector wave;
  cplx energy;
  std::optional<double> A;
  std::optional<cplx> R_minus;
  std::optional<cplx> R_plus;
};

cplx kappa_from_st(const WaveVector& w);
double energy_from_st(const WaveVector& w);

RotatedPoint sigma_tau_from_st(const WaveVector& w, const ModelParams& params);
QuadrantMapped st_from_sigma_tau(const RotatedPoint& r, const ModelParams& params);

/// Rotated energy formula, algebraically identical to t^2 - s^2.
double energy_from_sigma_tau(const RotatedPoint& r, const ModelParams& params);

/// Accepts xi in [0, 1]; xi = 1 only ever labels a zero of sin(tau).
double lattice_compose(const LatticeIndex& idx);

/// Inverse of lattice_compose. Centers of the half-stripes (xi = 0) get q = -1.
LatticeIndex lattice_decompose(double tau);

/// Omega(p, xi) = p / cos(pi xi / 2); equals -1/sin(tau) on every lattice point.
double omega_factor(int p, double xi);

/// Wave vector on the hyperbola 2st = Z for a real energy, s, t >= 0.
WaveVector st_from_energy(double E, double Z);

}  // namespace ptwell
