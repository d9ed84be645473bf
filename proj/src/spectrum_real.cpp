#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "log.hpp"
#include "ptwell/errors.hpp"
#include "ptwell/matching.hpp"
#include "ptwell/spectrum.hpp"

namespace ptwell {

namespace {

// Beyond |sigma| = 50 the sinh term outweighs t by > 1e20 for any s >= 1e-6,
// so the residual has the sign of sigma and cannot vanish.
constexpr double kSigmaCutoff = 50.0;

struct HyperbolaScan {
  const ModelParams& params;

  WaveVector at(double s) const { return {s, params.Z() / (2.0 * s)}; }
  double sign_function(double s) const { return residual_real_scaled(at(s), params); }
  double value(double s) const { return residual_real(at(s), params); }

  double slope(double s) const {
    const WaveVector w = at(s);
    const Gradient g = residual_real_gradient(w, params);
    return g.d_ds - g.d_dt * w.t / s;
  }

  double sigma(double s) const { return 2.0 * s - params.omega() * params.Z() / s; }
  double tau(double s) const { return 2.0 * s * params.omega() + params.Z() / s; }

  // Step that advances tau by at most pi/4 and keeps sigma moving by at most 1/4.
  double step(double s) const {
    const double Z = params.Z();
    const double omega = params.omega();
    const double dtau = std::abs(2.0 * omega - Z / (s * s));
    const double dsigma = std::abs(2.0 + omega * Z / (s * s));
    double h = 0.05;
    if (dtau > 0.0) {
      h = std::min(h, (kPi / 4.0) / dtau);
    }
    return std::min(h, 0.25 / dsigma);
  }
};

template <class F>
double bisect(const F& f, double a, double b, double fa) {
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

// Smallest s at which |sigma(s)| <= cutoff can hold.
double first_admissible_s(const ModelParams& params, double s_min) {
  const double wz = params.omega() * params.Z();
  const double c = kSigmaCutoff;
  double s0 = s_min;
  if (wz > 0.0) {
    // sigma = 2s - wz/s increases through -c at 2s^2 + c s - wz = 0.
    s0 = std::max(s0, (-c + std::sqrt(c * c + 8.0 * wz)) / 4.0);
  } else if (wz < 0.0 && c * c + 8.0 * wz >= 0.0) {
    // sigma = 2s + |wz|/s decreases through +c at 2s^2 - c s + |wz| = 0.
    s0 = std::max(s0, (c - std::sqrt(c * c + 8.0 * wz)) / 4.0);
  }
  return s0;
}

}  // namespace

BracketScan bracket_scan(const ModelParams& params, double s_max, double s_min) {
  if (!(params.Z() > 0.0)) {
    throw DomainError("bracketing needs Z > 0; Z = 0 is the Hermitian spectrum");
  }
  if (!(s_min > 0.0) || !(s_max > s_min)) {
    throw DomainError("bracketing needs 0 < s_min < s_max");
  }
  const HyperbolaScan scan{params};
  BracketScan out;
  const double s_start = first_admissible_s(params, s_min);
  out.t_max = params.Z() / (2.0 * s_start);
  out.t_min = params.Z() / (2.0 * s_max);
  if (s_start >= s_max) {
    return out;
  }

  std::vector<double> roots;
  auto add_root = [&](double s) {
    roots.push_back(s);
    out.max_residual = std::max(out.max_residual, std::abs(scan.value(s)));
  };

  double a = s_start;
  double ha = scan.sign_function(a);
  double da = scan.slope(a);
  if (ha == 0.0) {
    add_root(a);
  }
  while (a < s_max) {
    const double b = std::min(s_max, a + scan.step(a));
    const double hb = scan.sign_function(b);
    const double db = scan.slope(b);
    if (std::abs(scan.tau(b) - scan.tau(a)) > kPi) {
      ++out.coarse_steps;
    }
    const bool live = std::abs(scan.sigma(a)) <= kSigmaCutoff || std::abs(scan.sigma(b)) <= kSigmaCutoff;
    if (live) {
      // Split at an interior extremum so that each piece is monotone.
      std::vector<double> nodes{a};
      if (std::isfinite(da) && std::isfinite(db) && (da < 0.0) != (db < 0.0) && da != 0.0 && db != 0.0) {
        nodes.push_back(bisect([&](double s) { return scan.slope(s); }, a, b, da));
      }
      nodes.push_back(b);
      double h_left = ha;
      for (std::size_t i = 1; i < nodes.size(); ++i) {
        const double h_right = i + 1 == nodes.size() ? hb : scan.sign_function(nodes[i]);
        if (h_right == 0.0) {
          add_root(nodes[i]);
        } else if (h_left != 0.0 && (h_left < 0.0) != (h_right < 0.0)) {
          add_root(bisect([&](double s) { return scan.sign_function(s); }, nodes[i - 1], nodes[i], h_left));
        }
        h_left = h_right;
      }
    }
    a = b;
    ha = hb;
    da = db;
  }
  if (out.coarse_steps > 0) {
    detail::log(detail::LogLevel::info, "bracketing grid exceeded half an oscillation period in " +
                                            std::to_string(out.coarse_steps) + " steps");
  }

  out.levels.reserve(roots.size());
  for (double s : roots) {
    out.levels.push_back(make_real_state(scan.at(s), params));
  }
  std::sort(out.levels.begin(), out.levels.end(),
            [](const BoundState& x, const BoundState& y) { return x.energy.real() < y.energy.real(); });
  return out;
}

std::vector<BoundState> real_spectrum_bracket(const ModelParams& params, double s_max, double s_min) {
  return bracket_scan(params, s_max, s_min).levels;
}

std::vector<BoundState> hermitian_spectrum(const ModelParams& params, double e_max) {
  if (params.Z() != 0.0) {
    throw DomainError("the Hermitian spectrum applies at Z = 0 only");
  }
  std::vector<BoundState> levels;
  for (long n = 0;; ++n) {
    const double t = (n + 1) * kPi / 2.0;
    if (t * t > e_max) {
      break;
    }
    levels.push_back(make_real_state({0.0, t}, params));
  }
  return levels;
}

std::vector<BoundState> real_levels_below(const ModelParams& params, double e_max) {
  if (params.Z() == 0.0) {
    return hermitian_spectrum(params, e_max);
  }
  // Levels with E <= e_max sit at s >= s(e_max) on the hyperbola.
  const double s_edge = st_from_energy(e_max, params.Z()).s;
  // Follows e_max, below kDefaultSMin too when Z is tiny.
  const double s_min = 0.999 * s_edge;
  const double s_max = std::max(kDefaultSMax, 2.0 * s_min);
  std::vector<BoundState> levels = real_spectrum_bracket(params, s_max, s_min);
  std::erase_if(levels, [&](const BoundState& b) { return b.energy.real() > e_max; });
  return levels;
}

long count_real(const ModelParams& params, double e_max) {
  return static_cast<long>(real_levels_below(params, e_max).size());
}

std::vector<SweepRow> sweep(const std::vector<ModelParams>& grid, double e_max,
                            const std::optional<EnergyWindow>& window, int jobs) {
  std::vector<SweepRow> rows(grid.size());
  std::vector<std::exception_ptr> errors(grid.size());
  auto work = [&](std::size_t begin, std::size_t stride) {
    for (std::size_t i = begin; i < grid.size(); i += stride) {
      try {
        rows[i].params = grid[i];
        rows[i].n_real = count_real(grid[i], e_max);
        if (window) {
          rows[i].n_pairs = static_cast<long>(complex_spectrum(grid[i], *window).complex_pairs.size());
        }
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const auto n_threads = static_cast<std::size_t>(std::max(1, jobs));
  if (n_threads == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t j = 0; j < n_threads; ++j) {
      pool.emplace_back(work, j, n_threads);
    }
    for (auto& th : pool) {
      th.join();
    }
  }
  for (const auto& e : errors) {
    if (e) {
      std::rethrow_exception(e);
    }
  }
  return rows;
}

}  // namespace ptwell
