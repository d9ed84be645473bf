#include "ptwell/curves.hpp"

#include <cmath>
#include <string>

#include "ptwell/constraint.hpp"
#include "ptwell/errors.hpp"
#include "ptwell/matching.hpp"
#include "ptwell/spectrum.hpp"

namespace ptwell {

namespace {

constexpr double kCurveStep = 0.01;
constexpr double kDeviationSigmaMin = -40.0;
constexpr int kLocusSamples = 48;

std::string number_label(double x) {
  std::string text = std::to_string(x);
  while (text.back() == '0') {
    text.pop_back();
  }
  if (text.back() == '.') {
    text.pop_back();
  }
  return text;
}

std::vector<CurveSeries> split_at_asymptote(const std::string& label, const ThetaCurveSpec& spec,
                                            double lo, double hi) {
  std::vector<CurveSeries> out{{label, {}}};
  const std::optional<double> asym = theta_asymptote(spec);
  const int n = static_cast<int>(std::round((hi - lo) / kCurveStep));
  for (int i = 0; i <= n; ++i) {
    const double sigma = lo + i * kCurveStep;
    if (asym && !out.back().points.empty() && (out.back().points.back().sigma - *asym) * (sigma - *asym) < 0.0) {
      out.push_back({label, {}});
    }
    try {
      out.back().points.push_back({sigma, theta_curve(spec, sigma)});
    } catch (const AsymptoteError&) {
    }
  }
  return out;
}

void add_loci(std::vector<CurveSeries>& out, const ModelParams& params, long k, const std::vector<int>& ps) {
  for (int p : ps) {
    for (int q : {-1, 1}) {
      CurveSeries series{"locus k=" + std::to_string(k) + " p=" + std::to_string(p) + " q=" + std::to_string(q), {}};
      for (const LocusPoint& pt : trace_locus(params, k, p, q, kLocusSamples)) {
        series.points.push_back({pt.sigma, pt.tau});
      }
      out.push_back(std::move(series));
    }
  }
}

}  // namespace

std::vector<CurveSeries> theta_family(double omega, const std::vector<int>& ps, const std::vector<double>& xis,
                                      double sigma_max) {
  if (!(sigma_max > 0.0)) {
    throw DomainError("theta_family needs sigma_max > 0");
  }
  std::vector<CurveSeries> out;
  for (int p : ps) {
    if (p != 1 && p != -1) {
      throw DomainError("p must be +1 or -1");
    }
    for (double xi : xis) {
      const ThetaCurveSpec spec{p, xi, omega};
      const std::string label = "theta p=" + std::to_string(p) + " xi=" + number_label(xi);
      for (CurveSeries& s : split_at_asymptote(label, spec, -sigma_max, sigma_max)) {
        out.push_back(std::move(s));
      }
    }
  }
  return out;
}

std::vector<CurveSeries> oval_family(const ModelParams& params, long stripe) {
  std::vector<CurveSeries> out;
  add_loci(out, params, stripe, {1});

  const double tau_lo = 2.0 * kPi * static_cast<double>(stripe);
  const double tau_hi = tau_lo + 2.0 * kPi;
  CurveSeries hyperbola{"hyperbola", {}};
  if (params.Z() > 0.0 && params.omega() == 0.0) {
    for (double tau = std::max(tau_lo, 1e-3); tau <= tau_hi; tau += kCurveStep) {
      hyperbola.points.push_back({2.0 * params.Z() / tau, tau});
    }
  } else if (params.Z() > 0.0) {
    // Trace t in the stripe's tau range along 2st = Z.
    for (double s = 1e-3; s <= kDefaultSMax; s += kCurveStep) {
      const RotatedPoint r = sigma_tau_from_st({s, params.Z() / (2.0 * s)}, params);
      if (r.tau >= tau_lo && r.tau <= tau_hi) {
        hyperbola.points.push_back(r);
      }
    }
  }
  out.push_back(std::move(hyperbola));

  // |Omega| = 1 parabola at omega = 0: tau = sigma sinh(sigma), clipped to the stripe.
  CurveSeries parabola{"envelope |Omega|=1", {}};
  const double reach = std::asinh(tau_hi) + 1.0;
  for (double sigma = -reach; sigma <= reach; sigma += kCurveStep) {
    const double tau = sigma * std::sinh(sigma);
    if (tau <= tau_hi) {
      parabola.points.push_back({sigma, tau});
    }
  }
  out.push_back(std::move(parabola));
  return out;
}

std::vector<CurveSeries> intersection_family(const ModelParams& params, long k_max) {
  const double omega = params.omega();
  if (omega == 0.0 || !(params.Z() > 0.0)) {
    throw DomainError("intersection curves need omega != 0 and Z > 0");
  }
  if (k_max < 0) {
    throw DomainError("k_max must be >= 0");
  }
  const double w = std::abs(omega);
  std::vector<CurveSeries> out;
  for (long k = 0; k <= k_max; ++k) {
    add_loci(out, ModelParams(params.Z(), w), k, {-1, 1});
  }

  const double tau_top = 2.0 * kPi * static_cast<double>(k_max + 1);
  const double sigma_lo = -tau_top * w;
  CurveSeries branch{"hyperbola", {}};
  CurveSeries diagonal{"diagonal tau=-sigma/|omega|", {}};
  CurveSeries upper{"envelope upper", {}};
  CurveSeries lower{"envelope lower", {}};
  CurveSeries env_dev{"deviation envelope", {}};
  CurveSeries hyp_dev{"deviation hyperbola", {}};
  for (double sigma = sigma_lo; sigma <= 2.0; sigma += kCurveStep) {
    try {
      branch.points.push_back({sigma, diagonal_branch_tau(sigma, params)});
    } catch (const DomainError&) {
    }
    diagonal.points.push_back({sigma, -sigma / w});
    if (sigma < -2.0) {
      upper.points.push_back({sigma, envelope_asymptote(sigma, w, EnvelopeBranch::upper)});
      lower.points.push_back({sigma, envelope_asymptote(sigma, w, EnvelopeBranch::lower)});
    }
  }
  // The deviations matter far out on the diagonal, beyond the plotted stripes.
  for (double sigma = std::min(sigma_lo, kDeviationSigmaMin); sigma < -2.0; sigma += kCurveStep) {
    const double ed = envelope_deviation(sigma, params);
    if (std::isfinite(ed)) {
      env_dev.points.push_back({sigma, ed});
    }
    try {
      hyp_dev.points.push_back({sigma, hyperbola_deviation(sigma, params)});
    } catch (const DomainError&) {
    }
  }
  for (CurveSeries* s : {&branch, &diagonal, &upper, &lower, &env_dev, &hyp_dev}) {
    out.push_back(std::move(*s));
  }
  return out;
}

}  // namespace ptwell
