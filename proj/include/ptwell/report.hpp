#pragma once

// Deterministic JSON / CSV serialization of solver output.

#include <string>

#include "ptwell/spectrum.hpp"

namespace ptwell {

/// 12 significant digits with trailing zeros trimmed; scientific notation for
/// |x| >= 1e6 and for nonzero |x| < 1e-6. Non-finite values become "null".
std::string format_number(double x);

/// {params, real_levels[{n, s, t, E, A}], complex_pairs[{re, im}], window, diagnostics}
/// with fixed key order and two-space indentation.
std::string report_to_json(const SpectrumReport& report);

/// Inverse of report_to_json. Amplitudes R_minus/R_plus are not serialized
/// and come back empty. Throws DomainError on malformed input.
SpectrumReport report_from_json(const std::string& text);

/// One row per level: kind,n,re,im,s,t,A.
std::string report_to_csv(const SpectrumReport& report);

}  // namespace ptwell
