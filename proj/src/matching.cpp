#include "ptwell/matching.hpp"

#include <cmath>

#include "ptwell/errors.hpp"

namespace ptwell {

namespace {

constexpr cplx kI{0.0, 1.0};

// sinh(z)/z, even and entire.
cplx sinhc(cplx z) {
  if (std::abs(z) < 1e-4) {
    const cplx z2 = z * z;
    return 1.0 + z2 / 6.0 + z2 * z2 / 120.0;
  }
  return std::sinh(z) / z;
}

// (z cosh z - sinh z) / z^3, even and entire.
cplx cosh_sinh_defect(cplx z) {
  if (std::abs(z) < 0.05) {
    const cplx z2 = z * z;
    return 1.0 / 3.0 + z2 * (1.0 / 30.0 + z2 * (1.0 / 840.0 + z2 / 45360.0));
  }
  return (z * std::cosh(z) - std::sinh(z)) / (z * z * z);
}

struct Wavenumbers {
  cplx plus;   // right half, kappa^2 = -E - iZ
  cplx minus;  // left half, (kappa*)^2 = -E + iZ
  cplx u;      // 1 - i omega
  cplx v;      // 1 + i omega
};

Wavenumbers wavenumbers(cplx E, const ModelParams& params) {
  // Adding +0.0 turns a signed -0 imaginary part into +0, so at Z = 0 both
  // principal roots land on the same side of the cut on the real axis.
  const cplx a{-E.real(), -E.imag() - params.Z() + 0.0};
  const cplx b{-E.real(), -E.imag() + params.Z() + 0.0};
  return {std::sqrt(a), std::sqrt(b), cplx{1.0, -params.omega()}, cplx{1.0, params.omega()}};
}

}  // namespace

double residual_real(const WaveVector& w, const ModelParams& params) {
  const RotatedPoint r = sigma_tau_from_st(w, params);
  return w.s * std::sinh(r.sigma) + w.t * std::sin(r.tau);
}

double residual_real_scaled(const WaveVector& w, const ModelParams& params) {
  const RotatedPoint r = sigma_tau_from_st(w, params);
  const double sech = 1.0 / std::cosh(r.sigma);
  const double num = w.s * std::tanh(r.sigma) + w.t * std::sin(r.tau) * sech;
  const double den = w.s + w.t * sech;
  return den > 0.0 ? num / den : 0.0;
}

Gradient residual_real_gradient(const WaveVector& w, const ModelParams& params) {
  const double omega = params.omega();
  const RotatedPoint r = sigma_tau_from_st(w, params);
  const double sh = std::sinh(r.sigma);
  const double ch = std::cosh(r.sigma);
  const double sn = std::sin(r.tau);
  const double cs = std::cos(r.tau);
  return {sh + 2.0 * w.s * ch + 2.0 * omega * w.t * cs,
          -2.0 * omega * w.s * ch + sn + 2.0 * w.t * cs};
}

double residual_rotated(const RotatedPoint& r, const ModelParams& params) {
  const double sin_tau = std::sin(r.tau);
  if (std::abs(sin_tau) < kPoleThreshold) {
    throw PoleError("rho(tau) has a pole: sin(tau) = 0 at tau = " + std::to_string(r.tau));
  }
  const double rho = -1.0 / sin_tau;
  const double omega = params.omega();
  const double sh = std::sinh(r.sigma);
  const double den = 1.0 - rho * omega * sh;
  if (std::abs(den) <= kPoleThreshold * (1.0 + std::abs(rho * omega * sh))) {
    throw AsymptoteError("rotated matching condition is on its asymptote");
  }
  return r.tau * den - r.sigma * (omega + rho * sh);
}

double theta_curve(const ThetaCurveSpec& spec, double sigma) {
  if (!(spec.xi >= 0.0 && spec.xi < 1.0)) {
    throw DomainError("Theta curve needs xi in [0, 1)");
  }
  const double big_omega = omega_factor(spec.p, spec.xi);
  if (auto asym = theta_asymptote(spec); asym && std::abs(sigma - *asym) < 1e-12) {
    throw AsymptoteError("Theta curve evaluated on its vertical asymptote");
  }
  const double sh = std::sinh(sigma);
  const double den = 1.0 - big_omega * spec.omega * sh;
  if (den == 0.0) {
    throw AsymptoteError("Theta curve evaluated on its vertical asymptote");
  }
  return sigma * (spec.omega + big_omega * sh) / den;
}

std::optional<double> theta_asymptote(const ThetaCurveSpec& spec) {
  const double product = spec.omega * omega_factor(spec.p, spec.xi);
  if (product == 0.0) {
    return std::nullopt;
  }
  return std::asinh(1.0 / product);
}

double frozen_matching_residual(double sigma, double tau, int p, double xi, double omega) {
  // cos(pi xi/2) via sin of the complement keeps precision as xi -> 1.
  const double c = std::sin(kPi * (1.0 - xi) / 2.0);
  const double sech = 1.0 / std::cosh(sigma);
  const double th = std::tanh(sigma);
  return sigma * (omega * c * sech + p * th) - tau * (c * sech - p * omega * th);
}

double envelope_asymptote(double sigma, double omega, EnvelopeBranch branch) {
  if (omega == 0.0) {
    throw DomainError("envelope asymptote needs omega != 0");
  }
  if (!(sigma < -2.0)) {
    throw DomainError("envelope asymptote is valid for sigma < -2 only");
  }
  const double w = std::abs(omega);
  const double a = w + 1.0 / w;
  const double sign = branch == EnvelopeBranch::upper ? 1.0 : -1.0;
  return -(sigma / w) * (1.0 - sign * a / std::sinh(sigma));
}

cplx matching_determinant(cplx E, const ModelParams& params) {
  const Wavenumbers k = wavenumbers(E, params);
  return k.plus * std::cosh(k.plus * k.u) * std::sinh(k.minus * k.v) +
         k.minus * std::cosh(k.minus * k.v) * std::sinh(k.plus * k.u);
}

namespace {

// Product-to-sum form of the determinant: with S = k+ + k-, Delta = k+ - k-,
// D = (S sinh(S - i w Delta) - Delta sinh(Delta - i w S)) / 2. Each term is
// evaluated once, so no large cancelling products appear at high energy.
struct SumForm {
  cplx S;
  cplx delta;
  cplx P;  // k+ k-
};

SumForm sum_form(cplx E, const ModelParams& params) {
  const Wavenumbers k = wavenumbers(E, params);
  // F is unchanged when one wavenumber flips sign; pick the pair with |S| >= |Delta|.
  cplx minus = k.minus;
  if (std::abs(k.plus + minus) < std::abs(k.plus - minus)) {
    minus = -minus;
  }
  const cplx S = k.plus + minus;
  // k+^2 - k-^2 = -2iZ
  return {S, cplx(0.0, -2.0 * params.Z()) / S, k.plus * minus};
}

// Below this |k+ k-| the direct form is used; it has no cancellation there.
constexpr double kSmallProduct = 1.0;

cplx quantization_function_direct(cplx E, const ModelParams& params) {
  const Wavenumbers k = wavenumbers(E, params);
  const cplx zp = k.plus * k.u;
  const cplx zm = k.minus * k.v;
  return std::cosh(zp) * k.v * sinhc(zm) + std::cosh(zm) * k.u * sinhc(zp);
}

cplx quantization_derivative_direct(cplx E, const ModelParams& params) {
  const Wavenumbers k = wavenumbers(E, params);
  const cplx zp = k.plus * k.u;
  const cplx zm = k.minus * k.v;
  const cplx u2 = k.u * k.u;
  const cplx v2 = k.v * k.v;
  // d/dE cosh(kappa w) = -(w^2/2) sinhc(kappa w); d/dE sinh(kappa w)/kappa = -(w^3/2) defect(kappa w).
  const cplx d_cosh_p = -0.5 * u2 * sinhc(zp);
  const cplx d_cosh_m = -0.5 * v2 * sinhc(zm);
  const cplx d_shc_p = -0.5 * u2 * k.u * cosh_sinh_defect(zp);
  const cplx d_shc_m = -0.5 * v2 * k.v * cosh_sinh_defect(zm);
  return d_cosh_p * k.v * sinhc(zm) + std::cosh(zp) * d_shc_m + d_cosh_m * k.u * sinhc(zp) +
         std::cosh(zm) * d_shc_p;
}

}  // namespace

cplx quantization_function(cplx E, const ModelParams& params) {
  const SumForm f = sum_form(E, params);
  if (std::abs(f.P) < kSmallProduct) {
    return quantization_function_direct(E, params);
  }
  const cplx iw(0.0, params.omega());
  const cplx D = 0.5 * (f.S * std::sinh(f.S - iw * f.delta) - f.delta * std::sinh(f.delta - iw * f.S));
  return D / f.P;
}

cplx quantization_derivative(cplx E, const ModelParams& params) {
  const SumForm f = sum_form(E, params);
  if (std::abs(f.P) < kSmallProduct) {
    return quantization_derivative_direct(E, params);
  }
  const cplx iw(0.0, params.omega());
  const cplx a = f.S - iw * f.delta;
  const cplx b = f.delta - iw * f.S;
  // dS/dE = -S/(2P), dDelta/dE = Delta/(2P), dP/dE = E/P.
  const cplx dS = -f.S / (2.0 * f.P);
  const cplx dDelta = f.delta / (2.0 * f.P);
  const cplx D = 0.5 * (f.S * std::sinh(a) - f.delta * std::sinh(b));
  const cplx dD = 0.5 * (dS * std::sinh(a) + f.S * std::cosh(a) * (dS - iw * dDelta) - dDelta * std::sinh(b) -
                         f.delta * std::cosh(b) * (dDelta - iw * dS));
  return (dD - D / f.P * (E / f.P)) / f.P;
}

cplx matching_ratio(const WaveVector& w, const ModelParams& params) {
  const RotatedPoint r = sigma_tau_from_st(w, params);
  // cosh(sigma) - cos(tau) = 2 |sinh(kappa*(1 + i omega))|^2, written without cancellation.
  const double half_sh = std::sinh(r.sigma / 2.0);
  const double half_sn = std::sin(r.tau / 2.0);
  const double mod2 = half_sh * half_sh + half_sn * half_sn;
  if (std::sqrt(mod2) < kNodeThreshold) {
    throw NodeError("psi vanishes at the matching point; psi(i omega) = 1 is impossible");
  }
  const double sh = std::sinh(r.sigma);
  const double sn = std::sin(r.tau);
  const double den = 2.0 * mod2;
  return {(w.s * sh + w.t * sn) / den, (w.t * sh - w.s * sn) / den};
}

double amplitude_A(const WaveVector& w, const ModelParams& params) {
  const cplx ratio = matching_ratio(w, params);
  if (std::abs(residual_real_scaled(w, params)) > 1e-8) {
    throw DomainError("amplitude_A called on a point that does not satisfy the matching condition");
  }
  return ratio.imag();
}

BoundState make_real_state(const WaveVector& w, const ModelParams& params) {
  BoundState state;
  state.kind = StateKind::real;
  state.wave = w;
  state.energy = energy_from_st(w);
  try {
    state.A = matching_ratio(w, params).imag();
    const cplx kappa_conj{w.s, w.t};
    const cplx left = std::sinh(kappa_conj * cplx{1.0, params.omega()});
    state.R_minus = 1.0 / left;
    state.R_plus = 1.0 / std::conj(left);
  } catch (const NodeError&) {
    // Node at i*omega: A and the psi(i omega) = 1 amplitudes do not exist.
  }
  return state;
}

BoundState make_complex_state(cplx E) {
  BoundState state;
  state.kind = StateKind::complex_pair_member;
  state.energy = E;
  return state;
}

cplx wavefunction_eval(const BoundState& state, cplx x, const ModelParams& params) {
  if (state.kind != StateKind::real || !state.R_minus || !state.R_plus) {
    throw NodeError("state has no psi(i omega) = 1 normalization");
  }
  constexpr double tol = 1e-10;
  const cplx corner{0.0, params.omega()};
  const cplx kappa = kappa_from_st(state.wave);

  auto locate = [&](cplx start, cplx end) -> std::optional<double> {
    const cplx d = end - start;
    const double lambda = std::real((x - start) * std::conj(d)) / std::norm(d);
    if (lambda < -tol || lambda > 1.0 + tol) {
      return std::nullopt;
    }
    if (std::abs(x - (start + lambda * d)) > tol) {
      return std::nullopt;
    }
    return lambda;
  };

  if (locate(cplx{-1.0, 0.0}, corner)) {
    return *state.R_minus * std::sinh(std::conj(kappa) * (1.0 + x));
  }
  if (locate(corner, cplx{1.0, 0.0})) {
    return *state.R_plus * std::sinh(kappa * (1.0 - x));
  }
  throw OffContourError("point is not on the contour -1 -> i omega -> 1");
}

}  // namespace ptwell
