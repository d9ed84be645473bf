#pragma once

// Sampled (sigma, tau) data for re-plotting the Theta curves, the solution
// loci and the hyperbola externally. No rendering happens here.

#include <string>
#include <vector>

#include "ptwell/model.hpp"

namespace ptwell {

/// A labelled point series. Polylines are split at vertical asymptotes, so
/// consecutive points of one series are always joined by a continuous arc.
/// Locus series are unordered point clouds.
struct CurveSeries {
  std::string label;
  std::vector<RotatedPoint> points;
};

/// Theta_{(p,xi)} for every requested (p, xi), sigma in [-sigma_max, sigma_max].
std::vector<CurveSeries> theta_family(double omega, const std::vector<int>& ps,
                                      const std::vector<double>& xis, double sigma_max = 4.0);

/// Locus on stripe k (p = +1, both q), the hyperbola across the stripe and
/// the |Omega| = 1 bounding parabola.
std::vector<CurveSeries> oval_family(const ModelParams& params, long stripe);

/// Loci on stripes 0..k_max, the hyperbola branch, the diagonal and the two
/// envelope asymptotes, and the envelope/hyperbola deviations versus sigma
/// (stored as (sigma, deviation) pairs).
std::vector<CurveSeries> intersection_family(const ModelParams& params, long k_max);

}  // namespace ptwell
