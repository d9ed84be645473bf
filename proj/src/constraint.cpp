#include "ptwell/constraint.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ptwell/errors.hpp"
#include "ptwell/matching.hpp"

namespace ptwell {

namespace {

// Largest root of x^2 + b x + c = 0 without cancellation.
double larger_root(double b, double c) {
  const double disc = b * b - 4.0 * c;
  if (disc < 0.0) {
    throw DomainError("hyperbola branch has no real point here");
  }
  const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
  if (q == 0.0) {
    return 0.0;
  }
  return std::max(q, c / q);
}

void require_positive_coupling(const ModelParams& params) {
  if (!(params.Z() > 0.0)) {
    throw DomainError("hyperbola branches need Z > 0");
  }
}

}  // namespace

double hyperbola_x2(const ModelParams& params) {
  const double omega = params.omega();
  if (omega == 0.0) {
    throw DomainError("rotated quadratic degenerates at omega = 0; use 2st = Z");
  }
  const double g = 1.0 + omega * omega;
  return 2.0 * params.Z() * g * g / omega;
}

double quadratic_residual(const RotatedPoint& r, const ModelParams& params) {
  const double omega = params.omega();
  const double x2 = hyperbola_x2(params);
  const double cot2phi = (1.0 - omega * omega) / (2.0 * omega);
  return r.tau * r.tau + 2.0 * r.tau * r.sigma * cot2phi - r.sigma * r.sigma - x2;
}

double xi_branch(double sigma, const ModelParams& params) {
  const double omega = params.omega();
  if (!(omega > 0.0)) {
    throw DomainError("xi_branch is the omega > 0 branch");
  }
  require_positive_coupling(params);
  const double b = sigma * (1.0 - omega * omega) / omega;
  const double c = -(sigma * sigma + hyperbola_x2(params));
  return larger_root(b, c);
}

double upsilon_branch(double tau, const ModelParams& params) {
  const double omega = params.omega();
  if (!(omega < 0.0)) {
    throw DomainError("upsilon_branch is the omega < 0 branch");
  }
  require_positive_coupling(params);
  const double b = -tau * (1.0 - omega * omega) / omega;
  const double c = -tau * tau + hyperbola_x2(params);
  return larger_root(b, c);
}

double reflected_branch(double tau, const ModelParams& params) {
  if (!(params.omega() < 0.0)) {
    throw DomainError("reflected_branch mirrors the omega < 0 branch");
  }
  return -upsilon_branch(tau, params);
}

RotatedPoint branch_point(const HyperbolaBranch& branch, double coordinate) {
  switch (branch.orientation) {
    case BranchOrientation::xi_branch:
      return {coordinate, xi_branch(coordinate, branch.params)};
    case BranchOrientation::upsilon_branch:
      return {upsilon_branch(coordinate, branch.params), coordinate};
    case BranchOrientation::reflected_branch:
      return {reflected_branch(coordinate, branch.params), coordinate};
  }
  throw DomainError("unknown branch orientation");
}

double diagonal_branch_tau(double sigma, const ModelParams& params) {
  const double omega = params.omega();
  if (omega > 0.0) {
    return xi_branch(sigma, params);
  }
  if (omega == 0.0) {
    throw DomainError("no diagonal arm at omega = 0");
  }
  require_positive_coupling(params);
  // Mirrored omega < 0 hyperbola: w tau^2 + sigma (1 - w^2) tau - w sigma^2 + 2Z (1 + w^2)^2 = 0.
  const double w = -omega;
  const double g = 1.0 + w * w;
  const double b = sigma * (1.0 - w * w) / w;
  const double c = -sigma * sigma + 2.0 * params.Z() * g * g / w;
  return larger_root(b, c);
}

double hyperbola_asymptote(double sigma, const ModelParams& params) {
  const double omega = params.omega();
  if (omega == 0.0) {
    throw DomainError("hyperbola asymptote needs omega != 0");
  }
  if (!(sigma < -2.0)) {
    throw DomainError("hyperbola asymptote is valid for sigma < -2 only");
  }
  const double w = std::abs(omega);
  const double x2 = std::abs(hyperbola_x2(params));
  const double sign = omega > 0.0 ? 1.0 : -1.0;
  return -sigma / w - sign * x2 / ((w + 1.0 / w) * sigma);
}

double envelope_deviation(double sigma, const ModelParams& params) {
  const double w = std::abs(params.omega());
  if (w == 0.0) {
    throw DomainError("envelopes share the diagonal only for omega != 0");
  }
  if (!(sigma < -std::asinh(1.0 / w))) {
    return std::numeric_limits<double>::infinity();
  }
  // Theta_{(-1,0)}(sigma) + sigma/w in closed form, free of cancellation.
  return std::abs(sigma) * (1.0 + w * w) / (w * std::abs(1.0 + w * std::sinh(sigma)));
}

double hyperbola_deviation(double sigma, const ModelParams& params) {
  const double w = std::abs(params.omega());
  try {
    return std::abs(diagonal_branch_tau(sigma, params) + sigma / w);
  } catch (const DomainError&) {
    return 0.0;
  }
}

double separation_sigma(const ModelParams& params) {
  if (params.omega() == 0.0 || params.Z() == 0.0) {
    throw DomainError("separation point exists only for omega != 0 and Z != 0");
  }
  auto separated = [&](double sigma) {
    return envelope_deviation(sigma, params) < 0.5 * hyperbola_deviation(sigma, params);
  };
  constexpr double lo = -50.0;
  constexpr double hi = -2.0;
  constexpr double step = 0.01;
  if (!separated(lo)) {
    throw DomainError("envelope and hyperbola are not separated anywhere in [-50, -2]");
  }
  double good = lo;
  double bad = hi;
  bool failed = false;
  for (int i = 1; lo + i * step <= hi; ++i) {
    const double sigma = lo + i * step;
    if (!separated(sigma)) {
      bad = sigma;
      failed = true;
      break;
    }
    good = sigma;
  }
  if (!failed) {
    return hi;
  }
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (good + bad);
    (separated(mid) ? good : bad) = mid;
  }
  return good;
}

}  // namespace ptwell
