#include "ptwell/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ptwell/errors.hpp"

namespace ptwell {

ModelParams::ModelParams(double Z, double omega) : Z_(Z), omega_(omega), phi_(std::atan(omega)) {
  if (!std::isfinite(Z) || !std::isfinite(omega)) {
    throw DomainError("model parameters must be finite");
  }
  if (Z < 0.0) {
    throw DomainError("coupling Z must be non-negative, got " + std::to_string(Z));
  }
}

cplx kappa_from_st(const WaveVector& w) { return {w.s, -w.t}; }

double energy_from_st(const WaveVector& w) { return w.t * w.t - w.s * w.s; }

RotatedPoint sigma_tau_from_st(const WaveVector& w, const ModelParams& params) {
  // 2S/cos(phi) and 2T/cos(phi) written without the trigonometric detour.
  const double omega = params.omega();
  return {2.0 * (w.s - w.t * omega), 2.0 * (w.s * omega + w.t)};
}

QuadrantMapped st_from_sigma_tau(const RotatedPoint& r, const ModelParams& params) {
  const double omega = params.omega();
  const double norm = 2.0 * (1.0 + omega * omega);
  WaveVector w{(r.sigma + r.tau * omega) / norm, (r.tau - r.sigma * omega) / norm};
  return {w, w.s >= 0.0 && w.t >= 0.0};
}

double energy_from_sigma_tau(const RotatedPoint& r, const ModelParams& params) {
  const double phi = params.phi();
  const double c = std::cos(phi);
  const double bracket = (r.tau * r.tau - r.sigma * r.sigma) * std::cos(2.0 * phi) -
                         2.0 * r.sigma * r.tau * std::sin(2.0 * phi);
  return 0.25 * bracket * c * c;
}

double lattice_compose(const LatticeIndex& idx) {
  return (2.0 * static_cast<double>(idx.k) + 1.0) * kPi + idx.p * kPi / 2.0 +
         idx.q * kPi * idx.xi / 2.0;
}

LatticeIndex lattice_decompose(double tau) {
  const double period = 2.0 * kPi;
  auto k = static_cast<long>(std::floor(tau / period));
  // Position inside the stripe in quarter-period units, in [0, 4).
  double w = (tau - static_cast<double>(k) * period) / (kPi / 2.0);
  if (w >= 4.0) {
    w -= 4.0;
    ++k;
  } else if (w < 0.0) {
    w += 4.0;
    --k;
  }
  LatticeIndex idx;
  idx.k = k;
  idx.p = w < 2.0 ? -1 : 1;
  double offset = w - (idx.p < 0 ? 1.0 : 3.0);
  // Snap rounding noise at the half-stripe centers onto the canonical xi = 0.
  if (std::abs(offset) * (kPi / 2.0) <= 8.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(tau))) {
    offset = 0.0;
  }
  idx.q = offset > 0.0 ? 1 : -1;
  idx.xi = std::abs(offset);
  return idx;
}

double omega_factor(int p, double xi) { return p / std::cos(kPi * xi / 2.0); }

WaveVector st_from_energy(double E, double Z) {
  if (Z == 0.0) {
    return E >= 0.0 ? WaveVector{0.0, std::sqrt(E)} : WaveVector{std::sqrt(-E), 0.0};
  }
  // t^2 = (E + sqrt(E^2 + Z^2)) / 2, arranged to avoid cancellation for E < 0.
  const double root = std::hypot(E, Z);
  double t = 0.0;
  if (E >= 0.0) {
    t = std::sqrt(0.5 * (E + root));
  } else {
    t = Z / std::sqrt(2.0 * (root - E));
  }
  return {Z / (2.0 * t), t};
}

}  // namespace ptwell
