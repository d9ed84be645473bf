#include <cmath>
#include <string>

#include "log.hpp"
#include "ptwell/errors.hpp"
#include "ptwell/spectrum.hpp"

namespace ptwell {

namespace {

constexpr double kStartCoupling = 1e-3;
constexpr double kCoarseStep = 0.25;
constexpr double kWidth = 1e-4;

std::vector<double> critical_couplings_with_margin(double omega, int n_pairs, int margin) {
  // Cut halfway (in t) between the pairs (2M-2, 2M-1) and (2M, 2M+1) of the
  // Hermitian ladder, M = n_pairs + margin; that gap widens as Z grows.
  const double edge = (2.0 * (n_pairs + margin) + 0.5) * kPi / 2.0;
  const double e_cut = edge * edge;
  auto count = [&](double Z) { return count_real(ModelParams(Z, omega), e_cut); };

  const long n0 = count(kStartCoupling);
  if (n0 < 2L * n_pairs) {
    throw WindowTooSmallError("tracking window holds " + std::to_string(n0) + " levels, fewer than " +
                              std::to_string(2 * n_pairs));
  }
  const double z_limit = 20.0 + 15.0 * n_pairs;

  std::vector<double> out;
  double za = kStartCoupling;
  long ca = n0;
  while (static_cast<int>(out.size()) < n_pairs) {
    if (za > z_limit) {
      throw WindowTooSmallError("no pair merger found below Z = " + std::to_string(z_limit));
    }
    const double zb = za + kCoarseStep;
    const long cb = count(zb);
    if (cb == ca) {
      za = zb;
      continue;
    }
    if (cb > ca || (ca - cb) % 2 != 0) {
      throw WindowTooSmallError("level count changed from " + std::to_string(ca) + " to " +
                                std::to_string(cb) + " near Z = " + std::to_string(zb) +
                                "; a level crossed the tracking window");
    }
    // Isolate the first merger in (za, zb]: smallest Z with count <= ca - 2.
    double lo = za;
    double hi = zb;
    while (hi - lo > kWidth) {
      const double mid = 0.5 * (lo + hi);
      const long cm = count(mid);
      if (cm > ca || (ca - cm) % 2 != 0) {
        throw WindowTooSmallError("odd level-count change near Z = " + std::to_string(mid));
      }
      (cm <= ca - 2 ? hi : lo) = mid;
    }
    const double z_crit = 0.5 * (lo + hi);
    detail::log(detail::LogLevel::debug, "pair merger at Z = " + std::to_string(z_crit));
    out.push_back(z_crit);
    za = hi;
    ca = count(hi);
  }
  return out;
}

}  // namespace

std::vector<double> critical_couplings(double omega, int n_pairs) {
  if (n_pairs < 1) {
    throw DomainError("critical_couplings needs n_pairs >= 1");
  }
  // Wide windows first; away from omega = 0 high-lying pairs can merge before
  // the low ones, so fall back to tighter cuts.
  for (int margin = 3;; --margin) {
    try {
      return critical_couplings_with_margin(omega, n_pairs, margin);
    } catch (const WindowTooSmallError& e) {
      if (margin == 0) {
        throw;
      }
      detail::log(detail::LogLevel::info, std::string(e.what()) + "; retrying with a tighter window");
    }
  }
}

}  // namespace ptwell
