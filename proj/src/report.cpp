#include "ptwell/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "json_writer.hpp"
#include "ptwell/errors.hpp"

namespace ptwell {

namespace {

using nlohmann::ordered_json;

void trim_zeros(std::string& mantissa) {
  if (mantissa.find('.') == std::string::npos) {
    return;
  }
  while (mantissa.back() == '0') {
    mantissa.pop_back();
  }
  if (mantissa.back() == '.') {
    mantissa.pop_back();
  }
}

void write(std::ostringstream& out, const ordered_json& v, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (v.type()) {
    case ordered_json::value_t::object: {
      if (v.empty()) {
        out << "{}";
        return;
      }
      out << "{\n";
      std::size_t i = 0;
      for (const auto& [key, item] : v.items()) {
        out << inner << ordered_json(key).dump() << ": ";
        write(out, item, indent + 1);
        out << (++i < v.size() ? ",\n" : "\n");
      }
      out << pad << '}';
      return;
    }
    case ordered_json::value_t::array: {
      if (v.empty()) {
        out << "[]";
        return;
      }
      out << "[\n";
      for (std::size_t i = 0; i < v.size(); ++i) {
        out << inner;
        write(out, v[i], indent + 1);
        out << (i + 1 < v.size() ? ",\n" : "\n");
      }
      out << pad << ']';
      return;
    }
    case ordered_json::value_t::number_float:
      out << format_number(v.get<double>());
      return;
    default:
      out << v.dump();
      return;
  }
}

ordered_json number_or_null(const std::optional<double>& x) {
  if (!x || !std::isfinite(*x)) {
    return nullptr;
  }
  return *x;
}

ordered_json finite_or_null(double x) {
  return std::isfinite(x) ? ordered_json(x) : ordered_json(nullptr);
}

std::optional<double> optional_number(const ordered_json& v) {
  if (v.is_null()) {
    return std::nullopt;
  }
  return v.get<double>();
}

}  // namespace

std::string format_number(double x) {
  if (!std::isfinite(x)) {
    return "null";
  }
  if (x == 0.0) {
    return "0";
  }
  const double ax = std::abs(x);
  char buf[64];
  if (ax >= 1e6 || ax < 1e-6) {
    std::snprintf(buf, sizeof buf, "%.11e", x);
    std::string text(buf);
    const auto e = text.find('e');
    std::string mantissa = text.substr(0, e);
    trim_zeros(mantissa);
    return mantissa + text.substr(e);
  }
  const int digits = std::max(0, 11 - static_cast<int>(std::floor(std::log10(ax))));
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  std::string text(buf);
  trim_zeros(text);
  return text == "-0" ? "0" : text;
}

namespace detail {

std::string dump_json(const ordered_json& value) {
  std::ostringstream out;
  write(out, value, 0);
  out << '\n';
  return out.str();
}

}  // namespace detail

std::string report_to_json(const SpectrumReport& report) {
  ordered_json root;
  root["params"] = {{"Z", report.params.Z()}, {"omega", report.params.omega()}};
  ordered_json levels = ordered_json::array();
  for (std::size_t n = 0; n < report.real_levels.size(); ++n) {
    const BoundState& b = report.real_levels[n];
    ordered_json row;
    row["n"] = n;
    row["s"] = b.wave.s;
    row["t"] = b.wave.t;
    row["E"] = b.energy.real();
    row["A"] = number_or_null(b.A);
    levels.push_back(row);
  }
  root["real_levels"] = levels;
  ordered_json pairs = ordered_json::array();
  for (const cplx& z : report.complex_pairs) {
    pairs.push_back({{"re", z.real()}, {"im", z.imag()}});
  }
  root["complex_pairs"] = pairs;
  if (report.window) {
    const EnergyWindow& w = *report.window;
    root["window"] = {{"re_min", w.re_min}, {"re_max", w.re_max}, {"im_min", w.im_min}, {"im_max", w.im_max}};
  } else {
    root["window"] = nullptr;
  }
  const Diagnostics& d = report.diagnostics;
  ordered_json diag;
  diag["method"] = d.method;
  diag["max_residual"] = finite_or_null(d.max_residual);
  diag["argument_count"] = d.argument_count ? ordered_json(*d.argument_count) : ordered_json(nullptr);
  diag["separation_sigma"] = number_or_null(d.separation_sigma);
  diag["t_min"] = number_or_null(d.t_min);
  diag["t_max"] = number_or_null(d.t_max);
  diag["notes"] = d.notes;
  root["diagnostics"] = diag;
  return detail::dump_json(root);
}

SpectrumReport report_from_json(const std::string& text) {
  try {
    const ordered_json root = ordered_json::parse(text);
    SpectrumReport report;
    report.params = ModelParams(root.at("params").at("Z").get<double>(), root.at("params").at("omega").get<double>());
    for (const auto& row : root.at("real_levels")) {
      BoundState b;
      b.kind = StateKind::real;
      b.wave = {row.at("s").get<double>(), row.at("t").get<double>()};
      b.energy = row.at("E").get<double>();
      b.A = optional_number(row.at("A"));
      report.real_levels.push_back(b);
    }
    for (const auto& pair : root.at("complex_pairs")) {
      report.complex_pairs.emplace_back(pair.at("re").get<double>(), pair.at("im").get<double>());
    }
    const auto& w = root.at("window");
    if (!w.is_null()) {
      report.window = EnergyWindow{w.at("re_min").get<double>(), w.at("re_max").get<double>(),
                                   w.at("im_min").get<double>(), w.at("im_max").get<double>()};
    }
    const auto& d = root.at("diagnostics");
    report.diagnostics.method = d.at("method").get<std::string>();
    report.diagnostics.max_residual = optional_number(d.at("max_residual")).value_or(0.0);
    if (!d.at("argument_count").is_null()) {
      report.diagnostics.argument_count = d.at("argument_count").get<long>();
    }
    report.diagnostics.separation_sigma = optional_number(d.at("separation_sigma"));
    report.diagnostics.t_min = optional_number(d.at("t_min"));
    report.diagnostics.t_max = optional_number(d.at("t_max"));
    report.diagnostics.notes = d.at("notes").get<std::vector<std::string>>();
    return report;
  } catch (const ordered_json::exception& e) {
    throw DomainError(std::string("malformed spectrum report: ") + e.what());
  }
}

std::string report_to_csv(const SpectrumReport& report) {
  std::ostringstream out;
  out << "kind,n,re,im,s,t,A\n";
  for (std::size_t n = 0; n < report.real_levels.size(); ++n) {
    const BoundState& b = report.real_levels[n];
    out << "real," << n << ',' << format_number(b.energy.real()) << ",0," << format_number(b.wave.s) << ','
        << format_number(b.wave.t) << ',' << (b.A ? format_number(*b.A) : "") << '\n';
  }
  for (std::size_t n = 0; n < report.complex_pairs.size(); ++n) {
    const cplx& z = report.complex_pairs[n];
    out << "complex," << n << ',' << format_number(z.real()) << ',' << format_number(z.imag()) << ",,,\n";
  }
  return out.str();
}

}  // namespace ptwell
