#pragma once

// The coupling constraint 2st = Z expressed in the rotated (sigma, tau) plane.

#include "ptwell/model.hpp"

namespace ptwell {

enum class BranchOrientation { xi_branch, upsilon_branch, reflected_branch };

struct HyperbolaBranch {
  ModelParams params;
  BranchOrientation orientation;
};

/// 4Z / (sin 2phi cos^2 phi) = 2Z (1 + omega^2)^2 / omega. Signed; omega != 0.
double hyperbola_x2(const ModelParams& params);

/// tau^2 + 2 tau sigma cot(2phi) - sigma^2 - X^2; zero iff 2st = Z. DomainError at omega = 0.
double quadratic_residual(const RotatedPoint& r, const ModelParams& params);

/// Branch tau = Xi(sigma) with tau > 0, for omega > 0 and Z > 0.
double xi_branch(double sigma, const ModelParams& params);

/// Branch sigma = Upsilon(tau) with sigma > 0, for omega < 0 and Z > 0.
double upsilon_branch(double tau, const ModelParams& params);

/// Mirror image sigma = Sigma(tau) = -Upsilon(tau) of the omega < 0 branch, drawn
/// against the Theta curves of |omega|.
double reflected_branch(double tau, const ModelParams& params);

/// Point on a branch for a given free coordinate (sigma for xi_branch, tau otherwise).
RotatedPoint branch_point(const HyperbolaBranch& branch, double coordinate);

/// Large-tau arm of the hyperbola as tau(sigma) in the |omega| picture, i.e. the
/// arm that approaches the diagonal tau = -sigma/|omega|. For omega > 0 this is
/// xi_branch; for omega < 0 it is the inverse of reflected_branch on its tau > 0
/// arm. Requires sigma^2 >= 8|omega|Z when omega < 0.
double diagonal_branch_tau(double sigma, const ModelParams& params);

/// -sigma/|omega| -+ |X^2| / ((|omega| + 1/|omega|) sigma), upper sign for omega > 0.
/// Requires sigma < -2 and omega != 0.
double hyperbola_asymptote(double sigma, const ModelParams& params);

/// Distance above the diagonal tau = -sigma/|omega| of the outer (upper) xi = 0
/// envelope, which bounds every matching solution with sigma < -asinh(1/|omega|).
double envelope_deviation(double sigma, const ModelParams& params);

/// Distance of the diagonal arm of the hyperbola from tau = -sigma/|omega|.
double hyperbola_deviation(double sigma, const ModelParams& params);

/// Separation point sigma*: for every sigma in [-50, sigma*], the envelope
/// deviation is below half the hyperbola deviation, so no real intersection
/// exists there. Located by a scan from -50 followed by bisection.
/// Throws DomainError for omega = 0 or Z = 0.
double separation_sigma(const ModelParams& params);

}  // namespace ptwell
