#pragma once

// Every form of the left/right matching condition at x0 = i*omega.

#include <optional>

#include "ptwell/model.hpp"

namespace ptwell {

inline constexpr double kResidualZero = 1e-10;
inline constexpr double kNodeThreshold = 1e-12;
inline constexpr double kPoleThreshold = 1e-14;

/// s sinh(sigma) + t sin(tau); vanishes exactly on matching solutions.
double residual_real(const WaveVector& w, const ModelParams& params);

/// residual_real / (s cosh(sigma) + t): same sign and zero set, bounded by 1,
/// finite for arbitrarily large |sigma|.
double residual_real_scaled(const WaveVector& w, const ModelParams& params);

struct Gradient {
  double d_ds = 0.0;
  double d_dt = 0.0;
};

/// Partial derivatives of residual_real with respect to s and t.
Gradient residual_real_gradient(const WaveVector& w, const ModelParams& params);

/// tau (1 - rho omega sinh sigma) - sigma (omega + rho sinh sigma), rho = -1/sin(tau).
/// Throws PoleError near sin(tau) = 0 and AsymptoteError where the
/// denominator of the solved form vanishes.
double residual_rotated(const RotatedPoint& r, const ModelParams& params);

struct ThetaCurveSpec {
  int p = 1;
  double xi = 0.0;
  double omega = 0.0;
};

/// tau = Theta_{(p,xi)}(sigma), the matching condition with rho frozen to Omega(p, xi).
double theta_curve(const ThetaCurveSpec& spec, double sigma);

/// Vertical asymptote asinh(1/(omega Omega)) of a Theta curve, if omega != 0.
std::optional<double> theta_asymptote(const ThetaCurveSpec& spec);

/// Lattice-frozen matching condition multiplied through by cos(pi xi/2) and
/// divided by cosh(sigma): no poles, valid for xi in [0, 1], any omega.
/// Zero iff Theta_{(p,xi)}(sigma) = tau (or, at xi = 1, iff sigma = 0 or s = 0).
double frozen_matching_residual(double sigma, double tau, int p, double xi, double omega);

enum class EnvelopeBranch { upper, lower };

/// Leading large-|sigma| form of the xi = 0 envelopes in the sigma << -1 region:
/// upper = Theta_{(-1,0)}, lower = Theta_{(+1,0)}, both evaluated at |omega|.
/// Requires sigma < -2 and omega != 0.
double envelope_asymptote(double sigma, double omega, EnvelopeBranch branch);

/// Wronskian of the left and right solutions at i*omega (principal square roots):
/// k+ cosh(k+(1-i w)) sinh(k-(1+i w)) + k- cosh(k-(1+i w)) sinh(k+(1-i w)).
cplx matching_determinant(cplx E, const ModelParams& params);

/// matching_determinant / (k+ k-). Entire in E, free of branch cuts, and
/// without the spurious zeros of the determinant at E = +-iZ.
cplx quantization_function(cplx E, const ModelParams& params);
cplx quantization_derivative(cplx E, const ModelParams& params);

/// kappa* coth(kappa*(1 + i omega)) = (residual + i A) / (cosh(sigma) - cos(tau)).
/// Throws NodeError when psi vanishes at the matching point.
cplx matching_ratio(const WaveVector& w, const ModelParams& params);

/// Slope parameter A of a matched real state. Throws NodeError at a node and
/// DomainError when the real part of matching_ratio does not vanish.
double amplitude_A(const WaveVector& w, const ModelParams& params);

/// Real state with E, A and the amplitudes normalized to psi(i omega) = 1.
BoundState make_real_state(const WaveVector& w, const ModelParams& params);

BoundState make_complex_state(cplx E);

/// psi on the broken-line contour -1 -> i omega -> +1. Throws OffContourError
/// for points off the contour and NodeError when the normalization is undefined.
cplx wavefunction_eval(const BoundState& state, cplx x, const ModelParams& params);

}  // namespace ptwell
