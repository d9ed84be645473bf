#include <algorithm>
#include <cmath>
#include <limits>

#include "ptwell/constraint.hpp"
#include "ptwell/errors.hpp"
#include "ptwell/matching.hpp"
#include "ptwell/spectrum.hpp"

namespace ptwell {

namespace {

constexpr int kXiSamples = 64;

// Both roots of a x^2 + b x + c = 0 (a != 0), empty when complex.
std::vector<double> quadratic_roots(double a, double b, double c) {
  const double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) {
    return {};
  }
  const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
  if (q == 0.0) {
    return {0.0};
  }
  return {q / a, c / q};
}

// sigma values of the hyperbola at a given tau, in the working picture whose
// Theta curves use |omega|. Empty where the branch has no point.
std::vector<double> hyperbola_sigmas(double tau, const ModelParams& params) {
  const double omega = params.omega();
  const double Z = params.Z();
  if (omega == 0.0) {
    if (!(tau > 1e-8)) {
      return {};
    }
    return {2.0 * Z / tau};
  }
  if (omega < 0.0) {
    return {reflected_branch(tau, params)};
  }
  if (tau <= 0.0) {
    return {};
  }
  // omega sigma^2 - tau (1 - omega^2) sigma - omega tau^2 + 2Z (1 + omega^2)^2 = 0
  const double g = 1.0 + omega * omega;
  return quadratic_roots(omega, -tau * (1.0 - omega * omega), -omega * tau * tau + 2.0 * Z * g * g);
}

struct Polished {
  WaveVector wave;
  bool converged = false;
  std::string reason;
};

// Newton on (residual_real, 2st - Z) with the analytic Jacobian.
Polished polish(WaveVector w, const ModelParams& params) {
  const double Z = params.Z();
  for (int it = 0; it < 60; ++it) {
    const double f1 = residual_real(w, params);
    const double f2 = 2.0 * w.s * w.t - Z;
    const Gradient g = residual_real_gradient(w, params);
    const double det = g.d_ds * 2.0 * w.s - g.d_dt * 2.0 * w.t;
    if (!std::isfinite(det) || det == 0.0) {
      return {w, false, "singular Jacobian"};
    }
    const double ds = (f1 * 2.0 * w.s - g.d_dt * f2) / det;
    const double dt = (g.d_ds * f2 - 2.0 * w.t * f1) / det;
    w.s -= ds;
    w.t -= dt;
    if (!(w.s > 0.0) || !(w.t > 0.0)) {
      return {w, false, "left the s > 0, t > 0 quadrant"};
    }
    const double scale = std::max(w.s, w.t);
    if (std::abs(ds) + std::abs(dt) <= 1e-15 * scale) {
      break;
    }
  }
  if (std::abs(residual_real_scaled(w, params)) > kResidualZero ||
      std::abs(2.0 * w.s * w.t - Z) > 1e-10 * std::max(1.0, Z)) {
    return {w, false, "Newton did not reach the residual threshold"};
  }
  return {w, true, {}};
}

template <class F>
double bisect_xi(const F& f, double a, double b, double fa) {
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (a + b);
    if (mid <= a || mid >= b) {
      break;
    }
    const double fm = f(mid);
    if (fm == 0.0) {
      return mid;
    }
    if ((fm < 0.0) == (fa < 0.0)) {
      a = mid;
      fa = fm;
    } else {
      b = mid;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

LatticeSpectrum real_spectrum_lattice(const ModelParams& params, long k_max) {
  if (k_max < 1) {
    throw DomainError("lattice method needs k_max >= 1");
  }
  if (!(params.Z() > 0.0)) {
    throw DomainError("lattice method needs Z > 0; Z = 0 is the Hermitian spectrum");
  }
  const double omega = params.omega();
  const bool mirrored = omega < 0.0;
  const double w = std::abs(omega);

  long k_min = 0;
  if (mirrored) {
    // tau = 2(t - s|omega|) goes negative for large s; cover s up to kDefaultSMax.
    const double tau_lo = 2.0 * (params.Z() / (2.0 * kDefaultSMax) - kDefaultSMax * w);
    k_min = static_cast<long>(std::floor(tau_lo / (2.0 * kPi)));
  }

  LatticeSpectrum out;
  std::vector<WaveVector> found;

  for (long k = k_min; k <= k_max; ++k) {
    for (int p : {-1, 1}) {
      for (int q : {-1, 1}) {
        ++out.stripes_scanned;
        auto tau_of = [&](double xi) { return lattice_compose({k, p, q, xi}); };
        // Branch b of the hyperbola; NaN where it does not exist.
        auto sigma_of = [&](double xi, std::size_t b) {
          const auto sigmas = hyperbola_sigmas(tau_of(xi), params);
          if (b >= sigmas.size()) {
            return std::numeric_limits<double>::quiet_NaN();
          }
          std::vector<double> sorted = sigmas;
          std::sort(sorted.begin(), sorted.end());
          return sorted[b];
        };
        for (std::size_t b = 0; b < 2; ++b) {
          auto g = [&](double xi) {
            const double sigma = sigma_of(xi, b);
            if (std::isnan(sigma)) {
              return std::numeric_limits<double>::quiet_NaN();
            }
            return frozen_matching_residual(sigma, tau_of(xi), p, xi, w);
          };
          std::vector<double> xs;
          for (int j = 0; j <= kXiSamples; ++j) {
            xs.push_back(static_cast<double>(j) / kXiSamples);
          }
          if (omega > 0.0) {
            // The branch pair starts at tau = sqrt(8 omega Z); sample just inside that edge.
            const double tau_edge = std::sqrt(8.0 * omega * params.Z());
            const double xi_edge = (tau_edge - tau_of(0.0)) / (q * kPi / 2.0);
            if (xi_edge > 0.0 && xi_edge < 1.0) {
              xs.push_back(xi_edge + q * 1e-12);
              std::sort(xs.begin(), xs.end());
            }
          }
          std::vector<double> gs;
          for (double xi : xs) {
            gs.push_back(g(xi));
          }
          auto record = [&](double xi) {
            const double tau = tau_of(xi);
            double sigma = sigma_of(xi, b);
            if (mirrored) {
              sigma = -sigma;
            }
            const QuadrantMapped mapped = st_from_sigma_tau({sigma, tau}, params);
            if (!mapped.in_quadrant) {
              return;
            }
            const Polished result = polish(mapped.wave, params);
            if (!result.converged) {
              out.failures.push_back({{k, p, q, xi}, {sigma, tau}, result.reason});
              return;
            }
            found.push_back(result.wave);
          };
          for (std::size_t j = 0; j < xs.size(); ++j) {
            if (gs[j] == 0.0) {
              record(xs[j]);
              continue;
            }
            if (j + 1 == xs.size() || std::isnan(gs[j]) || std::isnan(gs[j + 1]) || gs[j + 1] == 0.0) {
              continue;
            }
            if ((gs[j] < 0.0) != (gs[j + 1] < 0.0)) {
              record(bisect_xi(g, xs[j], xs[j + 1], gs[j]));
            }
          }
        }
      }
    }
  }

  std::sort(found.begin(), found.end(),
            [](const WaveVector& a, const WaveVector& b) { return energy_from_st(a) < energy_from_st(b); });
  for (const WaveVector& wave : found) {
    const double E = energy_from_st(wave);
    if (!out.levels.empty()) {
      const double prev = out.levels.back().energy.real();
      if (std::abs(E - prev) <= 1e-9 * std::max(1.0, std::abs(E))) {
        continue;
      }
    }
    out.levels.push_back(make_real_state(wave, params));
  }
  return out;
}

long lattice_k_max_for(const ModelParams& params, double e_max) {
  const double t_edge = st_from_energy(e_max, params.Z()).t;
  const double tau_max = 2.0 * (kDefaultSMax * std::max(params.omega(), 0.0) + t_edge);
  return std::max(1L, static_cast<long>(std::ceil(tau_max / (2.0 * kPi))));
}

std::vector<LocusPoint> trace_locus(const ModelParams& params, long k, int p, int q, int n_xi) {
  if (n_xi < 1) {
    throw DomainError("trace_locus needs n_xi >= 1");
  }
  const double omega = params.omega();
  std::vector<LocusPoint> points;
  for (int j = 0; j < n_xi; ++j) {
    const double xi = static_cast<double>(j) / n_xi;
    const double tau = lattice_compose({k, p, q, xi});
    auto f = [&](double sigma) { return frozen_matching_residual(sigma, tau, p, xi, omega); };
    const double reach = std::abs(tau * omega) + std::asinh(std::abs(tau) + 1.0) + 2.0;
    std::vector<double> grid;
    constexpr double step = 0.01;
    for (double sigma = -reach; sigma <= reach; sigma += step) {
      grid.push_back(sigma);
    }
    // The wedge solutions hug sigma = -tau omega exponentially closely.
    grid.push_back(-tau * omega);
    std::sort(grid.begin(), grid.end());
    double prev = f(grid.front());
    for (std::size_t i = 1; i < grid.size(); ++i) {
      const double cur = f(grid[i]);
      if (cur == 0.0) {
        points.push_back({grid[i], tau, xi});
      } else if (prev != 0.0 && (prev < 0.0) != (cur < 0.0)) {
        points.push_back({bisect_xi(f, grid[i - 1], grid[i], prev), tau, xi});
      }
      prev = cur;
    }
  }
  return points;
}

}  // namespace ptwell
