#pragma once

// Randomized invariant checks shared by the unit suites and the acceptance
// binary. Each returns how many cases ran and the first failure, if any.

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ptwell/cli.hpp"
#include "ptwell/constraint.hpp"
#include "ptwell/matching.hpp"
#include "ptwell/report.hpp"
#include "ptwell/spectrum.hpp"

namespace props {

using namespace ptwell;

struct Result {
  std::string name;
  long cases = 0;
  long failures = 0;
  std::string first_failure;

  bool ok() const { return failures == 0 && cases > 0; }

  void check(bool pass, const std::function<std::string()>& what) {
    ++cases;
    if (!pass) {
      if (failures++ == 0) {
        first_failure = what();
      }
    }
  }
};

class Sampler {
 public:
  explicit Sampler(unsigned long long seed) : gen_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(gen_); }
  int sign() { return integer(0, 1) == 0 ? -1 : 1; }

 private:
  std::mt19937_64 gen_;
};

template <class... T>
std::string describe(const T&... parts) {
  std::ostringstream out;
  out.precision(17);
  ((out << parts << ' '), ...);
  return out.str();
}

inline double hermitian_level(long n) { return (n + 1) * (n + 1) * kPi * kPi / 4; }

inline std::vector<double> energies(const std::vector<BoundState>& levels, double e_max) {
  std::vector<double> out;
  for (const BoundState& b : levels) {
    if (b.energy.real() <= e_max) {
      out.push_back(b.energy.real());
    }
  }
  return out;
}

inline double level_distance(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) {
    return INFINITY;
  }
  double d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    d = std::max(d, std::abs(a[i] - b[i]));
  }
  return d;
}

// ---- model -----------------------------------------------------------------

inline Result rotation_roundtrip(Sampler& r, int n) {
  Result res{"rotation round trip"};
  for (int i = 0; i < n; ++i) {
    const WaveVector w{r.uniform(0, 20), r.uniform(0, 20)};
    const ModelParams p(1, r.uniform(-2, 2));
    const WaveVector back = st_from_sigma_tau(sigma_tau_from_st(w, p), p).wave;
    const double err = std::max(std::abs(back.s - w.s), std::abs(back.t - w.t));
    res.check(err <= 1e-12 * std::max(1.0, w.s + w.t), [&] { return describe("w", w.s, w.t, "err", err); });
  }
  return res;
}

inline Result energy_consistency(Sampler& r, int n) {
  Result res{"energy consistency"};
  for (int i = 0; i < n; ++i) {
    const WaveVector w{r.uniform(0, 20), r.uniform(0, 20)};
    const ModelParams p(1, r.uniform(-2, 2));
    const double err = std::abs(energy_from_sigma_tau(sigma_tau_from_st(w, p), p) - energy_from_st(w));
    res.check(err <= 1e-12 * std::max(1.0, w.s * w.s + w.t * w.t), [&] { return describe("err", err); });
  }
  return res;
}

inline Result lattice_roundtrip(Sampler& r, int n) {
  Result res{"lattice round trip"};
  for (int i = 0; i < n; ++i) {
    const double tau = r.uniform(-300, 300);
    const LatticeIndex idx = lattice_decompose(tau);
    const double err = std::abs(lattice_compose(idx) - tau);
    res.check(idx.xi >= 0 && idx.xi <= 1 && err <= 1e-12 * std::max(1.0, std::abs(tau)),
              [&] { return describe("tau", tau, "err", err); });
  }
  return res;
}

inline Result omega_consistency(Sampler& r, int n) {
  Result res{"Omega = -1/sin(tau) on the lattice"};
  for (int i = 0; i < n; ++i) {
    const long k = r.integer(-5, 50);
    const int p = r.sign();
    const int q = r.sign();
    const double xi = r.uniform(1e-6, 0.999);
    // Reference in extended precision.
    constexpr long double pi = 3.141592653589793238462643383279502884L;
    const long double tau = (2.0L * k + 1.0L) * pi + p * pi / 2.0L + q * pi * static_cast<long double>(xi) / 2.0L;
    const double ref = static_cast<double>(-1.0L / std::sin(tau));
    const double got = omega_factor(p, xi);
    res.check(std::abs(got - ref) <= 1e-12 * std::abs(ref), [&] { return describe("k p q xi", k, p, q, xi); });
  }
  return res;
}

inline Result omega_magnitude(Sampler& r, int n) {
  Result res{"|Omega| >= 1"};
  for (int i = 0; i < n; ++i) {
    const double xi = r.uniform(0, 1);
    const int p = r.sign();
    res.check(std::abs(omega_factor(p, xi)) >= 1.0, [&] { return describe("xi", xi); });
  }
  return res;
}

inline Result hyperbola_preservation(Sampler& r, int n) {
  Result res{"2st = Z maps onto the rotated quadratic"};
  for (int i = 0; i < n; ++i) {
    const double Z = r.uniform(0.01, 10);
    const double omega = r.sign() * r.uniform(0.01, 2);
    const double s = std::exp(r.uniform(-6, 3));
    const ModelParams p(Z, omega);
    const RotatedPoint pt = sigma_tau_from_st({s, Z / (2 * s)}, p);
    const double scale = pt.sigma * pt.sigma + pt.tau * pt.tau + std::abs(hyperbola_x2(p));
    const double q = quadratic_residual(pt, p);
    res.check(std::abs(q) <= 1e-10 * scale, [&] { return describe("Z w s", Z, omega, s, "q", q); });
  }
  return res;
}

// ---- matching ----------------------------------------------------------------

inline Result conjugation_symmetry(Sampler& r, int n) {
  Result res{"F(conj E) = conj F(E)"};
  for (int i = 0; i < n; ++i) {
    const ModelParams p(r.uniform(0, 10), r.uniform(-1, 1));
    const cplx E{r.uniform(-100, 3000), r.uniform(-300, 300)};
    const cplx a = quantization_function(std::conj(E), p);
    const cplx b = std::conj(quantization_function(E, p));
    res.check(std::abs(a - b) <= 1e-12 * (1 + std::abs(a)), [&] { return describe("E", E.real(), E.imag()); });
  }
  return res;
}

inline Result zero_set_equivalence(Sampler& r, int n) {
  // At a matched level the Newton step of F is below 1e-8; at the midpoint
  // between neighbouring levels it is of the order of the gap.
  Result res{"residual zeros = determinant zeros"};
  while (res.cases < n) {
    const ModelParams p(r.uniform(0.2, 4), r.uniform(-0.25, 0.25));
    const auto levels = real_levels_below(p, 800);
    for (std::size_t i = 0; i < levels.size(); ++i) {
      const double E = levels[i].energy.real();
      const double step = std::abs(quantization_function(E, p) / quantization_derivative(E, p));
      const double scaled = std::abs(residual_real_scaled(levels[i].wave, p));
      res.check(step < 1e-8 && scaled < 1e-9,
                [&] { return describe("Z w E", p.Z(), p.omega(), E, "step", step, "res", scaled); });
      if (i + 1 < levels.size()) {
        const double next = levels[i + 1].energy.real();
        const double mid = 0.5 * (E + next);
        const double away = std::abs(quantization_function(mid, p) / quantization_derivative(mid, p));
        res.check(away > 1e-4 * (next - E), [&] { return describe("Z w mid", p.Z(), p.omega(), mid); });
      }
    }
  }
  return res;
}

inline std::vector<double> frozen_roots(double tau, int p, double xi, double omega) {
  std::vector<double> roots;
  auto f = [&](double s) { return frozen_matching_residual(s, tau, p, xi, omega); };
  const double reach = std::abs(tau * omega) + std::asinh(std::abs(tau) + 1.0) + 2.0;
  double a = -reach;
  double fa = f(a);
  for (double b = a + 0.01; b <= reach; b += 0.01) {
    const double fb = f(b);
    if ((fa < 0) != (fb < 0)) {
      double lo = a, hi = b, flo = fa;
      for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((fm < 0) == (flo < 0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      roots.push_back(0.5 * (lo + hi));
    }
    a = b;
    fa = fb;
  }
  return roots;
}

inline Result lattice_self_consistency(Sampler& r, int n) {
  Result res{"frozen solutions solve the matching condition on their lattice"};
  while (res.cases < n) {
    const long k = r.integer(0, 40);
    const int p = r.sign();
    const int q = r.sign();
    const double xi = r.uniform(0, 0.95);
    const double omega = r.uniform(0, 1) < 0.3 ? 0.0 : r.uniform(-0.3, 0.3);
    const double tau = lattice_compose({k, p, q, xi});
    for (double sigma : frozen_roots(tau, p, xi, omega)) {
      const double rho_sh = std::abs(std::sinh(sigma) / std::sin(tau));
      const double scale = 1 + std::abs(tau) + std::abs(sigma) * (1 + rho_sh) + std::abs(tau * omega) * rho_sh;
      const double rot = residual_rotated({sigma, tau}, ModelParams(0, omega));
      const LatticeIndex idx = lattice_decompose(tau);
      res.check(std::abs(rot) <= 1e-9 * scale && idx.p == p && std::abs(idx.xi - xi) <= 1e-9,
                [&] { return describe("k p q xi w sigma", k, p, q, xi, omega, sigma); });
    }
  }
  return res;
}

inline Result envelope_bound_hermitian(Sampler& r, int n) {
  // omega = 0: sigma sinh(sigma) = tau / Omega with |Omega| >= 1, so every
  // matched point lies inside the |Omega| = 1 parabola tau = sigma sinh(sigma).
  Result res{"omega = 0 loci inside the |Omega| = 1 parabola"};
  while (res.cases < n) {
    const long k = r.integer(0, 60);
    const int p = r.sign();
    const int q = r.sign();
    const double xi = r.uniform(0, 0.99);
    const double tau = lattice_compose({k, p, q, xi});
    for (double sigma : frozen_roots(tau, p, xi, 0.0)) {
      res.check(tau >= std::abs(sigma * std::sinh(sigma)) * (1 - 1e-9),
                [&] { return describe("tau sigma", tau, sigma); });
    }
  }
  return res;
}

inline Result envelope_asymptote_order(Sampler& r, int n) {
  // Relative remainder: Theta = -(sigma/w)(1 -+ a/sinh(sigma) + O(sinh^-2 sigma)).
  Result res{"envelope - asymptote = (sigma/w) O(sinh^-2 sigma) on [-12, -4]"};
  for (int i = 0; i < n; ++i) {
    const double w = r.uniform(0.1, 2);
    const double sigma = r.uniform(-12, -4);
    for (auto [branch, p] : {std::pair{EnvelopeBranch::upper, -1}, std::pair{EnvelopeBranch::lower, 1}}) {
      const double diff = std::abs(theta_curve({p, 0, w}, sigma) - envelope_asymptote(sigma, w, branch));
      const double ratio = diff * std::sinh(sigma) * std::sinh(sigma) / std::abs(sigma / w);
      const double bound = 2 * (1 + w * w) / (w * w);
      res.check(ratio <= bound, [&] { return describe("w sigma ratio", w, sigma, ratio); });
    }
  }
  return res;
}

inline Result reduction_at_phi_zero(Sampler& r, int n) {
  Result res{"phi = 0 residual is s sinh 2s + t sin 2t"};
  const ModelParams p(0, 0);
  for (int i = 0; i < n; ++i) {
    const double s = r.uniform(0, 5);
    const double t = r.uniform(0, 50);
    const double expected = s * std::sinh(2 * s) + t * std::sin(2 * t);
    const double err = std::abs(residual_real({s, t}, p) - expected);
    res.check(err <= 1e-12 * (1 + s * std::cosh(2 * s) + t), [&] { return describe("s t", s, t); });
  }
  return res;
}

// ---- constraint --------------------------------------------------------------

inline Result branch_membership(Sampler& r, int n) {
  Result res{"branch points satisfy the quadratic and map back to 2st = Z"};
  for (int i = 0; i < n; ++i) {
    const double Z = r.uniform(0.01, 10);
    const double w = r.uniform(0.01, 2);
    const double x = r.uniform(-40, 40);
    const ModelParams pos(Z, w);
    const ModelParams neg(Z, -w);
    const RotatedPoint a{x, xi_branch(x, pos)};
    const RotatedPoint b{upsilon_branch(x, neg), x};
    for (auto [pt, p] : {std::pair{a, pos}, std::pair{b, neg}}) {
      const double scale = pt.sigma * pt.sigma + pt.tau * pt.tau + std::abs(hyperbola_x2(p));
      const QuadrantMapped m = st_from_sigma_tau(pt, p);
      const bool ok = std::abs(quadratic_residual(pt, p)) <= 1e-9 * scale && m.in_quadrant &&
                      std::abs(2 * m.wave.s * m.wave.t - Z) <= 1e-9 * std::max(1.0, Z);
      res.check(ok, [&] { return describe("Z w x", Z, p.omega(), x); });
    }
  }
  return res;
}

inline Result asymptotic_separation(Sampler& r, int n) {
  Result res{"envelope deviation < hyperbola deviation beyond sigma*"};
  for (int i = 0; i < n; ++i) {
    const ModelParams p(r.uniform(0.1, 5), r.sign() * r.uniform(0.02, 1));
    const double star = separation_sigma(p);
    const double sigma = r.uniform(-50, star);
    res.check(envelope_deviation(sigma, p) < hyperbola_deviation(sigma, p),
              [&] { return describe("Z w sigma", p.Z(), p.omega(), sigma); });
  }
  return res;
}

// ---- spectrum ----------------------------------------------------------------

inline Result method_agreement(Sampler& r, int n) {
  Result res{"lattice = bracketing"};
  for (int i = 0; i < n; ++i) {
    const ModelParams p(r.uniform(0.3, 4.5), r.uniform(0, 1) < 0.2 ? 0.0 : r.uniform(-0.3, 0.3));
    const double e_max = r.uniform(50, 400);
    const LatticeSpectrum lat = real_spectrum_lattice(p, lattice_k_max_for(p, e_max));
    const double d = level_distance(energies(lat.levels, e_max), energies(real_levels_below(p, e_max), e_max));
    res.check(d <= 1e-8 && lat.failures.empty(), [&] { return describe("Z w emax", p.Z(), p.omega(), e_max, d); });
  }
  return res;
}

inline Result determinant_agreement(Sampler& r, int n) {
  Result res{"real zeros of F = bracketed levels"};
  for (int i = 0; i < n; ++i) {
    const ModelParams p(r.uniform(0.3, 4.5), r.uniform(-0.3, 0.3));
    const double e_max = r.uniform(50, 400);
    const SpectrumReport rep = complex_spectrum(p, {-10, e_max, -30, 30});
    const double d = level_distance(energies(rep.real_levels, e_max), energies(real_levels_below(p, e_max), e_max));
    res.check(d <= 1e-8, [&] { return describe("Z w emax", p.Z(), p.omega(), e_max, d); });
  }
  return res;
}

inline Result pairing_and_count(Sampler& r, int n) {
  Result res{"conjugate pairing and argument count"};
  for (int i = 0; i < n; ++i) {
    const ModelParams p(r.uniform(0, 5), r.uniform(-0.3, 0.3));
    const double re = r.uniform(-50, 3000);
    const double h = r.uniform(1, 100);
    const SpectrumReport rep = complex_spectrum(p, {re, re + r.uniform(10, 300), -h, h});
    bool ok = rep.diagnostics.argument_count &&
              *rep.diagnostics.argument_count == static_cast<long>(rep.real_levels.size() + 2 * rep.complex_pairs.size());
    for (const cplx& z : rep.complex_pairs) {
      const cplx zc = std::conj(z);
      ok = ok && z.imag() > 0 && std::abs(quantization_function(zc, p) / quantization_derivative(zc, p)) < 1e-8;
    }
    res.check(ok, [&] { return describe("Z w re h", p.Z(), p.omega(), re, h); });
  }
  return res;
}

/// Dense residual sampling along 2st = Z over sigma in [-50, sigma*]; true when no sign change.
inline bool no_roots_beyond_separation(const ModelParams& p, long* samples = nullptr) {
  const double star = separation_sigma(p);
  const double wz = p.omega() * p.Z();
  // sigma(s) = 2s - wz/s is monotone; invert at both ends.
  auto s_at = [&](double sigma) { return (sigma + std::sqrt(sigma * sigma + 8 * wz)) / 4; };
  if (wz <= 0) {
    // For omega < 0, sigma < 0 needs the s < 0 half; the physical branch never reaches it.
    return true;
  }
  const double s_end = s_at(star);
  double s = s_at(-50);
  double prev = residual_real_scaled({s, p.Z() / (2 * s)}, p);
  long count = 0;
  bool clean = true;
  while (s < s_end) {
    const double h = std::min(1e-3, (kPi / 16) / std::abs(2 * p.omega() - p.Z() / (s * s)));
    s = std::min(s_end, s + h);
    const double cur = residual_real_scaled({s, p.Z() / (2 * s)}, p);
    clean = clean && ((cur < 0) == (prev < 0));
    prev = cur;
    ++count;
  }
  if (samples) {
    *samples = count;
  }
  return clean;
}

inline Result finite_count(Sampler& r, int n) {
  Result res{"no real roots beyond sigma*"};
  for (int i = 0; i < n; ++i) {
    const ModelParams p(r.uniform(0.3, 3), r.uniform(0.05, 0.5));
    res.check(no_roots_beyond_separation(p), [&] { return describe("Z w", p.Z(), p.omega()); });
  }
  return res;
}

inline Result small_omega_continuity(Sampler& r, int n) {
  Result res{"lowest levels continuous at omega -> 0"};
  for (int i = 0; i < n; ++i) {
    const double Z = r.uniform(0.1, 3);
    const double omega = r.sign() * r.uniform(1e-5, 1e-3);
    const auto a = real_levels_below(ModelParams(Z, 0), 60);
    const auto b = real_levels_below(ModelParams(Z, omega), 60);
    bool ok = a.size() >= 3 && b.size() >= 3;
    for (std::size_t k = 0; ok && k < 3; ++k) {
      ok = std::abs(a[k].energy.real() - b[k].energy.real()) < 1e-2;
    }
    res.check(ok, [&] { return describe("Z w", Z, omega); });
  }
  return res;
}

inline Result hermitian_limit(Sampler& r, int n) {
  // The shift of the low levels is O(Z^2) at omega = 0 and O(Z) otherwise.
  Result res{"levels tend to (n+1)^2 pi^2/4 as Z -> 0+"};
  for (int i = 0; i < n; ++i) {
    const double Z = std::exp(r.uniform(std::log(1e-9), std::log(1e-6)));
    const double omega = r.uniform(-0.5, 0.5);
    const auto levels = real_levels_below(ModelParams(Z, omega), 250);
    double err = levels.size() >= 8 ? 0.0 : INFINITY;
    for (std::size_t k = 0; k < 8 && k < levels.size(); ++k) {
      err = std::max(err, std::abs(levels[k].energy.real() - hermitian_level(static_cast<long>(k))));
    }
    res.check(err < 1e4 * Z, [&] { return describe("Z w err", Z, omega, err); });
  }
  return res;
}

// ---- cli ---------------------------------------------------------------------

inline SpectrumReport random_report(Sampler& r) {
  SpectrumReport rep;
  rep.params = ModelParams(std::exp(r.uniform(-10, 5)), r.uniform(-3, 3));
  const long n_real = r.integer(0, 5);
  for (long k = 0; k < n_real; ++k) {
    BoundState b;
    b.wave = {std::exp(r.uniform(-20, 3)), std::exp(r.uniform(-3, 10))};
    b.energy = energy_from_st(b.wave);
    if (r.integer(0, 3) > 0) {
      b.A = r.sign() * std::exp(r.uniform(-15, 15));
    }
    rep.real_levels.push_back(b);
  }
  const long n_pairs = r.integer(0, 4);
  for (long k = 0; k < n_pairs; ++k) {
    rep.complex_pairs.emplace_back(r.uniform(-1e7, 1e7), std::exp(r.uniform(-9, 9)));
  }
  if (r.integer(0, 1)) {
    const double h = r.uniform(1, 500);
    rep.window = EnergyWindow{r.uniform(-100, 0), r.uniform(1, 1e5), -h, h};
    rep.diagnostics.argument_count = r.integer(0, 50);
  }
  rep.diagnostics.method = r.integer(0, 1) ? "bracketing" : "argument-principle";
  rep.diagnostics.max_residual = std::exp(r.uniform(-40, 0));
  if (r.integer(0, 1)) {
    rep.diagnostics.separation_sigma = r.uniform(-50, -2);
    rep.diagnostics.t_min = r.uniform(0, 1);
    rep.diagnostics.t_max = std::exp(r.uniform(0, 20));
  }
  if (r.integer(0, 1)) {
    rep.diagnostics.notes.push_back("note " + std::to_string(r.integer(0, 1000)) + " \"quoted\"\t\\");
  }
  return rep;
}

inline bool close12(double a, double b) { return std::abs(a - b) <= 5e-12 * std::max(std::abs(a), 1e-300); }

inline Result json_round_trip(Sampler& r, int n) {
  Result res{"json round trip"};
  for (int i = 0; i < n; ++i) {
    const SpectrumReport rep = random_report(r);
    const std::string text = report_to_json(rep);
    const SpectrumReport back = report_from_json(text);
    bool ok = report_to_json(back) == text && back.real_levels.size() == rep.real_levels.size() &&
              back.complex_pairs.size() == rep.complex_pairs.size() && close12(back.params.Z(), rep.params.Z()) &&
              close12(back.params.omega(), rep.params.omega()) &&
              back.diagnostics.notes == rep.diagnostics.notes &&
              back.diagnostics.argument_count == rep.diagnostics.argument_count &&
              back.window.has_value() == rep.window.has_value();
    for (std::size_t k = 0; ok && k < rep.real_levels.size(); ++k) {
      const BoundState& x = rep.real_levels[k];
      const BoundState& y = back.real_levels[k];
      ok = close12(x.wave.s, y.wave.s) && close12(x.wave.t, y.wave.t) &&
           close12(x.energy.real(), y.energy.real()) && x.A.has_value() == y.A.has_value() &&
           (!x.A || close12(*x.A, *y.A));
    }
    for (std::size_t k = 0; ok && k < rep.complex_pairs.size(); ++k) {
      ok = close12(rep.complex_pairs[k].real(), back.complex_pairs[k].real()) &&
           close12(rep.complex_pairs[k].imag(), back.complex_pairs[k].imag());
    }
    res.check(ok, [&] { return "report " + text.substr(0, 200); });
  }
  return res;
}

inline Result output_determinism(Sampler& r, int n) {
  Result res{"identical config gives identical bytes"};
  for (int i = 0; i < n; ++i) {
    RunConfig config;
    const long pick = r.integer(0, 2);
    config.command = pick == 0 ? Command::spectrum : pick == 1 ? Command::count : Command::complex;
    config.Z = r.uniform(0, 3);
    config.omega = r.uniform(-0.3, 0.3);
    config.e_max = r.uniform(10, 300);
    config.window = EnergyWindow{0, r.uniform(20, 200), -20, 20};
    config.format = r.integer(0, 1) ? OutputFormat::json : OutputFormat::csv;
    res.check(render(config) == render(config), [&] { return describe("Z w", config.Z, config.omega); });
  }
  return res;
}

/// Every property, with at least `n` cases each.
inline std::vector<Result> all(unsigned long long seed, int n) {
  Sampler r(seed);
  return {rotation_roundtrip(r, n),   energy_consistency(r, n),     lattice_roundtrip(r, n),
          omega_consistency(r, n),    omega_magnitude(r, n),        hyperbola_preservation(r, n),
          conjugation_symmetry(r, n), zero_set_equivalence(r, n),   lattice_self_consistency(r, n),
          envelope_bound_hermitian(r, n), envelope_asymptote_order(r, n), reduction_at_phi_zero(r, n),
          branch_membership(r, n),    asymptotic_separation(r, n),  method_agreement(r, n),
          determinant_agreement(r, n), pairing_and_count(r, n),     finite_count(r, n),
          small_omega_continuity(r, n), hermitian_limit(r, n),      json_round_trip(r, n),
          output_determinism(r, n)};
}

}  // namespace props
