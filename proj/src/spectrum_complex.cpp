#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "log.hpp"
#include "ptwell/constraint.hpp"
#include "ptwell/errors.hpp"
#include "ptwell/matching.hpp"
#include "ptwell/report.hpp"
#include "ptwell/spectrum.hpp"

namespace ptwell {

void EnergyWindow::validate() const {
  const bool finite = std::isfinite(re_min) && std::isfinite(re_max) && std::isfinite(im_min) &&
                      std::isfinite(im_max);
  if (!finite || !(re_min < re_max) || !(im_min < im_max)) {
    throw DomainError("energy window needs re_min < re_max and im_min < im_max");
  }
}

namespace {

constexpr double kEdgeGap = 1e-9;
constexpr double kRealTolerance = 1e-8;
constexpr double kPairTolerance = 1e-8;

// Split fractions tried in turn; none is 1/2, so a symmetric window is never
// cut along the real axis where the real levels live.
constexpr double kSplitFractions[] = {0.5371, 0.4629, 0.5813, 0.4187, 0.6127};

struct Cell {
  cplx lo;  // lower-left corner
  cplx hi;  // upper-right corner

  double width() const { return hi.real() - lo.real(); }
  double height() const { return hi.imag() - lo.imag(); }
  cplx center() const { return 0.5 * (lo + hi); }
  bool contains(cplx z, double margin) const {
    return z.real() >= lo.real() - margin && z.real() <= hi.real() + margin &&
           z.imag() >= lo.imag() - margin && z.imag() <= hi.imag() + margin;
  }
};

class ZeroFinder {
 public:
  ZeroFinder(const ModelParams& params, double scale) : params_(params), scale_(scale) {}

  cplx f(cplx E) const { return quantization_function(E, params_); }

  // Zeros inside the cell counted by the change of arg F along its boundary.
  long winding(const Cell& cell) const {
    const cplx corners[] = {cell.lo, {cell.hi.real(), cell.lo.imag()}, cell.hi,
                            {cell.lo.real(), cell.hi.imag()}};
    double total = 0.0;
    for (int i = 0; i < 4; ++i) {
      total += edge_phase(corners[i], corners[(i + 1) % 4]);
    }
    const double turns = total / (2.0 * kPi);
    const double rounded = std::round(turns);
    if (std::abs(turns - rounded) > 0.05) {
      throw BoundaryCrossingError("argument principle did not close to an integer winding number");
    }
    return static_cast<long>(rounded);
  }

  struct NewtonResult {
    cplx root;
    bool converged = false;
  };

  NewtonResult newton(cplx E, double multiplicity, const Cell& cell) const {
    const double reach = 2.0 * std::max(cell.width(), cell.height());
    const cplx start = E;
    for (int it = 0; it < 80; ++it) {
      const cplx value = f(E);
      cplx slope = quantization_derivative(E, params_);
      if (std::abs(slope) < 1e-14) {
        const double h = 1e-6 * std::max(1.0, std::abs(E));
        slope = (f(E + h) - f(E - h)) / (2.0 * h);
      }
      if (slope == 0.0 || !std::isfinite(std::abs(slope))) {
        return {E, false};
      }
      const cplx step = multiplicity * value / slope;
      E -= step;
      if (std::abs(E - start) > reach) {
        return {E, false};
      }
      if (std::abs(step) <= 1e-13 * std::max(1.0, std::abs(E))) {
        return {E, true};
      }
    }
    return {E, false};
  }

  void search(const Cell& cell, long count, int depth, std::vector<cplx>& roots) {
    if (count == 0) {
      return;
    }
    const double margin = kEdgeGap * scale_;
    if (count == 1) {
      const NewtonResult r = newton(cell.center(), 1.0, cell);
      if (r.converged && cell.contains(r.root, margin)) {
        roots.push_back(r.root);
        return;
      }
    }
    if (std::max(cell.width(), cell.height()) < 1e-7 * scale_ || depth > 60) {
      // A cluster that no longer separates: a multiple zero (exceptional point).
      const NewtonResult r = newton(cell.center(), static_cast<double>(count), cell);
      detail::log(detail::LogLevel::info, "unresolved cluster of " + std::to_string(count) + " zeros");
      for (long i = 0; i < count; ++i) {
        roots.push_back(r.root);
      }
      return;
    }
    const bool vertical_cut = cell.width() >= cell.height();
    for (double fraction : kSplitFractions) {
      Cell first = cell;
      Cell second = cell;
      if (vertical_cut) {
        const double x = cell.lo.real() + fraction * cell.width();
        first.hi = {x, cell.hi.imag()};
        second.lo = {x, cell.lo.imag()};
      } else {
        const double y = cell.lo.imag() + fraction * cell.height();
        first.hi = {cell.hi.real(), y};
        second.lo = {cell.lo.real(), y};
      }
      try {
        const long n1 = winding(first);
        const long n2 = winding(second);
        if (n1 + n2 != count || n1 < 0 || n2 < 0) {
          continue;
        }
        search(first, n1, depth + 1, roots);
        search(second, n2, depth + 1, roots);
        return;
      } catch (const BoundaryCrossingError&) {
        ++jitters;
      }
    }
    throw CountMismatchError("could not subdivide a cell holding " + std::to_string(count) + " zeros");
  }

  long jitters = 0;

 private:
  // Total change of arg F from a to b, sampled finely enough that no sample
  // step turns the phase by more than pi/4.
  double edge_phase(cplx a, cplx b) const {
    const double length = std::abs(b - a);
    const double mid_mag = std::max(1.0, std::abs(0.5 * (a + b)));
    const double h0 = 0.25 * std::sqrt(mid_mag);
    const int pieces = std::max(16, static_cast<int>(std::ceil(length / h0)));
    double total = 0.0;
    cplx za = a;
    cplx fa = f(a);
    for (int i = 1; i <= pieces; ++i) {
      const cplx zb = a + (b - a) * (static_cast<double>(i) / pieces);
      const cplx fb = f(zb);
      total += refine(za, zb, fa, fb, 0);
      za = zb;
      fa = fb;
    }
    return total;
  }

  double refine(cplx za, cplx zb, cplx fa, cplx fb, int depth) const {
    if (fa == 0.0 || fb == 0.0) {
      throw BoundaryCrossingError("zero of the quantization function on a cell edge");
    }
    const double dphase = std::arg(fb / fa);
    const double dmag = std::abs(std::log(std::abs(fb) / std::abs(fa)));
    if (std::abs(dphase) <= kPi / 4.0 && dmag <= 1.0) {
      return dphase;
    }
    const double gap = kEdgeGap * std::max(1.0, std::max(std::abs(za), std::abs(zb)));
    if (std::abs(zb - za) < gap || depth > 64) {
      throw BoundaryCrossingError("zero of the quantization function within 1e-9 of a cell edge");
    }
    const cplx zm = 0.5 * (za + zb);
    const cplx fm = f(zm);
    return refine(za, zm, fa, fm, depth + 1) + refine(zm, zb, fm, fb, depth + 1);
  }

  const ModelParams& params_;
  double scale_;
};

}  // namespace

SpectrumReport complex_spectrum(const ModelParams& params, const EnergyWindow& window) {
  window.validate();
  const double span = window.im_max - window.im_min;
  if (std::abs(window.im_max + window.im_min) > 1e-12 * span) {
    throw DomainError("complex search window must be symmetric about the real axis");
  }
  const double scale = std::max({1.0, std::abs(window.re_min), std::abs(window.re_max), window.im_max});
  ZeroFinder finder(params, scale);

  SpectrumReport report;
  report.params = params;
  report.diagnostics.method = "argument-principle";

  // Nudge the outer boundary outwards if a zero sits on it.
  EnergyWindow used = window;
  long count = 0;
  for (int attempt = 0;; ++attempt) {
    try {
      count = finder.winding({{used.re_min, used.im_min}, {used.re_max, used.im_max}});
      break;
    } catch (const BoundaryCrossingError&) {
      if (attempt >= 4) {
        throw;
      }
      const double nudge = 1e-6 * scale * (attempt + 1);
      used.re_min -= nudge;
      used.re_max += nudge;
      used.im_min -= nudge;
      used.im_max += nudge;
      report.diagnostics.notes.push_back("window boundary nudged by " + std::to_string(nudge));
    }
  }
  report.window = used;
  report.diagnostics.argument_count = count;

  std::vector<cplx> roots;
  finder.search({{used.re_min, used.im_min}, {used.re_max, used.im_max}}, count, 0, roots);
  if (static_cast<long>(roots.size()) != count) {
    throw CountMismatchError("argument principle counted " + std::to_string(count) + " zeros but " +
                             std::to_string(roots.size()) + " were refined");
  }
  if (finder.jitters > 0) {
    report.diagnostics.notes.push_back("cell cuts jittered " + std::to_string(finder.jitters) + " times");
  }

  std::vector<cplx> upper;
  std::vector<cplx> lower;
  for (const cplx& root : roots) {
    detail::log(detail::LogLevel::debug,
                "zero at " + format_number(root.real()) + " + " + format_number(root.imag()) + "i");
    report.diagnostics.max_residual =
        std::max(report.diagnostics.max_residual, std::abs(quantization_function(root, params)));
    if (std::abs(root.imag()) < kRealTolerance) {
      report.real_levels.push_back(make_real_state(st_from_energy(root.real(), params.Z()), params));
    } else if (root.imag() > 0.0) {
      upper.push_back(root);
    } else {
      lower.push_back(root);
    }
  }
  for (const cplx& z : upper) {
    auto partner = std::find_if(lower.begin(), lower.end(),
                                [&](const cplx& y) { return std::abs(y - std::conj(z)) < kPairTolerance; });
    if (partner == lower.end()) {
      throw CountMismatchError("complex zero without its conjugate partner");
    }
    lower.erase(partner);
    report.complex_pairs.push_back(z);
  }
  if (!lower.empty()) {
    throw CountMismatchError("complex zero without its conjugate partner");
  }
  std::sort(report.real_levels.begin(), report.real_levels.end(),
            [](const BoundState& a, const BoundState& b) { return a.energy.real() < b.energy.real(); });
  std::sort(report.complex_pairs.begin(), report.complex_pairs.end(),
            [](const cplx& a, const cplx& b) { return a.real() < b.real(); });
  if (params.omega() != 0.0 && params.Z() != 0.0) {
    report.diagnostics.separation_sigma = separation_sigma(params);
  }
  return report;
}

}  // namespace ptwell
