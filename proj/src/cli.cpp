#include "ptwell/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "json_writer.hpp"
#include "log.hpp"
#include "ptwell/constraint.hpp"
#include "ptwell/curves.hpp"
#include "ptwell/errors.hpp"
#include "ptwell/matching.hpp"
#include "ptwell/report.hpp"

namespace ptwell {

namespace {

using nlohmann::ordered_json;

void require_finite(double x, const char* name) {
  if (!std::isfinite(x)) {
    throw DomainError(std::string("--") + name + " must be finite");
  }
}

SpectrumReport spectrum_report(const RunConfig& config) {
  const ModelParams params(config.Z, config.omega);
  SpectrumReport report;
  report.params = params;
  if (params.Z() == 0.0) {
    report.real_levels = hermitian_spectrum(params, config.e_max);
    report.diagnostics.method = "closed-form";
    return report;
  }
  if (config.k_max) {
    LatticeSpectrum lattice = real_spectrum_lattice(params, *config.k_max);
    report.diagnostics.method = "lattice";
    for (BoundState& b : lattice.levels) {
      if (b.energy.real() <= config.e_max) {
        report.diagnostics.max_residual =
            std::max(report.diagnostics.max_residual, std::abs(residual_real(b.wave, params)));
        report.real_levels.push_back(std::move(b));
      }
    }
    report.diagnostics.notes.push_back("stripes scanned: " + std::to_string(lattice.stripes_scanned));
    for (const LatticeFailure& f : lattice.failures) {
      report.diagnostics.notes.push_back("lattice start k=" + std::to_string(f.index.k) + " not polished: " +
                                         f.reason);
    }
  } else {
    const double s_edge = st_from_energy(config.e_max, params.Z()).s;
    const double s_min = std::max(kDefaultSMin, 0.999 * s_edge);
    const BracketScan scan = bracket_scan(params, std::max(config.s_max, 2.0 * s_min), s_min);
    report.diagnostics.method = "bracketing";
    report.diagnostics.max_residual = scan.max_residual;
    report.diagnostics.t_min = scan.t_min;
    report.diagnostics.t_max = scan.t_max;
    for (const BoundState& b : scan.levels) {
      if (b.energy.real() <= config.e_max) {
        report.real_levels.push_back(b);
      }
    }
    if (scan.coarse_steps > 0) {
      report.diagnostics.notes.push_back("coarse grid steps: " + std::to_string(scan.coarse_steps));
    }
  }
  if (params.omega() != 0.0) {
    report.diagnostics.separation_sigma = separation_sigma(params);
  }
  return report;
}

ordered_json params_json(const RunConfig& config) {
  return {{"Z", config.Z}, {"omega", config.omega}};
}

std::string csv_label(const std::string& label) { return '"' + label + '"'; }

std::string render_curves(const RunConfig& config) {
  std::vector<CurveSeries> series;
  std::string family;
  switch (config.family) {
    case CurveFamily::theta:
      family = "theta";
      series = theta_family(config.omega, config.p, config.xi);
      break;
    case CurveFamily::oval:
      family = "oval";
      series = oval_family(ModelParams(config.Z, config.omega), config.stripe);
      break;
    case CurveFamily::intersection:
      family = "intersection";
      series = intersection_family(ModelParams(config.Z, config.omega), config.k_max.value_or(12));
      break;
  }
  if (config.format == OutputFormat::csv) {
    std::ostringstream out;
    out << "label,sigma,tau\n";
    for (const CurveSeries& s : series) {
      for (const RotatedPoint& r : s.points) {
        out << csv_label(s.label) << ',' << format_number(r.sigma) << ',' << format_number(r.tau) << '\n';
      }
    }
    return out.str();
  }
  ordered_json root;
  root["family"] = family;
  root["params"] = params_json(config);
  ordered_json list = ordered_json::array();
  for (const CurveSeries& s : series) {
    ordered_json points = ordered_json::array();
    for (const RotatedPoint& r : s.points) {
      points.push_back(ordered_json::array({r.sigma, r.tau}));
    }
    list.push_back({{"label", s.label}, {"points", points}});
  }
  root["series"] = list;
  return detail::dump_json(root);
}

std::string render_sweep(const RunConfig& config) {
  const std::vector<double> zs = config.Z_list.empty() ? std::vector<double>{config.Z} : config.Z_list;
  const std::vector<double> ws = config.omega_list.empty() ? std::vector<double>{config.omega} : config.omega_list;
  std::vector<ModelParams> grid;
  for (double z : zs) {
    for (double w : ws) {
      grid.emplace_back(z, w);
    }
  }
  const std::vector<SweepRow> rows = sweep(grid, config.e_max, config.window, config.jobs);
  if (config.format == OutputFormat::csv) {
    std::ostringstream out;
    out << "Z,omega,n_real,n_pairs\n";
    for (const SweepRow& r : rows) {
      out << format_number(r.params.Z()) << ',' << format_number(r.params.omega()) << ',' << r.n_real << ','
          << (r.n_pairs ? std::to_string(*r.n_pairs) : "") << '\n';
    }
    return out.str();
  }
  ordered_json root;
  root["e_max"] = config.e_max;
  ordered_json list = ordered_json::array();
  for (const SweepRow& r : rows) {
    list.push_back({{"Z", r.params.Z()},
                    {"omega", r.params.omega()},
                    {"n_real", r.n_real},
                    {"n_pairs", r.n_pairs ? ordered_json(*r.n_pairs) : ordered_json(nullptr)}});
  }
  root["rows"] = list;
  return detail::dump_json(root);
}

}  // namespace

void validate(const RunConfig& c) {
  require_finite(c.Z, "Z");
  require_finite(c.omega, "omega");
  require_finite(c.e_max, "emax");
  require_finite(c.s_max, "smax");
  if (c.Z < 0.0) {
    throw DomainError("--Z must be >= 0");
  }
  if (!(c.s_max > 0.0)) {
    throw DomainError("--smax must be > 0");
  }
  if (c.k_max && *c.k_max < 1) {
    throw DomainError("--kmax must be >= 1");
  }
  if (c.window) {
    for (double x : {c.window->re_min, c.window->re_max, c.window->im_min, c.window->im_max}) {
      require_finite(x, "window");
    }
    c.window->validate();
  }
  if (c.n_pairs < 1) {
    throw DomainError("--n must be >= 1");
  }
  for (double xi : c.xi) {
    if (!(xi >= 0.0 && xi < 1.0)) {
      throw DomainError("--xi values must lie in [0, 1)");
    }
  }
  for (int p : c.p) {
    if (p != 1 && p != -1) {
      throw DomainError("--p values must be +1 or -1");
    }
  }
  for (double z : c.Z_list) {
    require_finite(z, "Zs");
    if (z < 0.0) {
      throw DomainError("--Zs values must be >= 0");
    }
  }
  for (double w : c.omega_list) {
    require_finite(w, "omegas");
  }
  if (c.jobs < 1) {
    throw DomainError("--jobs must be >= 1");
  }
}

std::string render(const RunConfig& config) {
  validate(config);
  switch (config.command) {
    case Command::spectrum: {
      const SpectrumReport report = spectrum_report(config);
      return config.format == OutputFormat::json ? report_to_json(report) : report_to_csv(report);
    }
    case Command::complex: {
      const SpectrumReport report =
          complex_spectrum(ModelParams(config.Z, config.omega), config.window.value_or(EnergyWindow{}));
      return config.format == OutputFormat::json ? report_to_json(report) : report_to_csv(report);
    }
    case Command::count: {
      const long n = count_real(ModelParams(config.Z, config.omega), config.e_max);
      if (config.format == OutputFormat::csv) {
        return "Z,omega,e_max,count\n" + format_number(config.Z) + ',' + format_number(config.omega) + ',' +
               format_number(config.e_max) + ',' + std::to_string(n) + '\n';
      }
      ordered_json root;
      root["params"] = params_json(config);
      root["e_max"] = config.e_max;
      root["count"] = n;
      return detail::dump_json(root);
    }
    case Command::critical: {
      const std::vector<double> zs = critical_couplings(config.omega, config.n_pairs);
      if (config.format == OutputFormat::csv) {
        std::string out = "N,Z\n";
        for (std::size_t i = 0; i < zs.size(); ++i) {
          out += std::to_string(i + 1) + ',' + format_number(zs[i]) + '\n';
        }
        return out;
      }
      ordered_json root;
      root["omega"] = config.omega;
      root["n_pairs"] = config.n_pairs;
      root["critical_couplings"] = zs;
      return detail::dump_json(root);
    }
    case Command::curves:
      return render_curves(config);
    case Command::sweep:
      return render_sweep(config);
  }
  throw DomainError("unknown command");
}

int run(const RunConfig& config, std::ostream& err) {
  std::string text;
  try {
    text = render(config);
  } catch (const DomainError& e) {
    err << "ptwell: invalid input: " << e.what() << '\n';
    return kExitInvalidFlag;
  } catch (const Error& e) {
    err << "ptwell: solver error: " << e.what() << '\n';
    return kExitSolverError;
  }
  try {
    if (config.output.empty()) {
      std::cout << text << std::flush;
    } else {
      std::ofstream file(config.output, std::ios::binary);
      if (!file) {
        throw IoError("cannot open " + config.output + " for writing");
      }
      file << text;
      file.close();
      if (!file) {
        throw IoError("failed writing " + config.output);
      }
      detail::log(detail::LogLevel::info, "wrote " + config.output);
    }
  } catch (const IoError& e) {
    err << "ptwell: io error: " << e.what() << '\n';
    return kExitIoError;
  }
  return kExitOk;
}

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"Spectra of the PT-symmetric square well on a complex contour", "ptwell"};
  app.fallthrough();
  app.require_subcommand(1, 1);
  app.set_config("--config", "", "key=value file; command-line flags override its entries");

  RunConfig config;
  std::string window_text;
  std::string format = "json";
  std::string family = "theta";
  long k_max = 0;

  app.add_option("--Z", config.Z, "Coupling Z >= 0");
  app.add_option("--omega", config.omega, "Matching-point shift omega");
  app.add_option("--emax", config.e_max, "Energy ceiling for real levels");
  app.add_option("--smax", config.s_max, "Upper end of the s sweep");
  auto* kmax_opt = app.add_option("--kmax", k_max, "Stripe count (spectrum: lattice method; curves: loci)");
  auto* window_opt = app.add_option("--window", window_text, "re_min,re_max,im_min,im_max");
  app.add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("-o,--output", config.output, "Output file (default: stdout)");
  app.add_option("--n", config.n_pairs, "Number of critical couplings");
  app.add_option("--family", family, "theta, oval or intersection")
      ->check(CLI::IsMember({"theta", "oval", "intersection"}));
  app.add_option("--xi", config.xi, "Comma-separated xi values")->delimiter(',');
  app.add_option("--p", config.p, "Comma-separated p values (+1/-1)")->delimiter(',');
  app.add_option("--stripe", config.stripe, "Stripe index k for the oval family");
  app.add_option("--Zs", config.Z_list, "Sweep: comma-separated Z values")->delimiter(',');
  app.add_option("--omegas", config.omega_list, "Sweep: comma-separated omega values")->delimiter(',');
  app.add_option("--jobs", config.jobs, "Sweep worker threads");

  const std::map<std::string, Command> commands{
      {"spectrum", Command::spectrum}, {"count", Command::count},   {"complex", Command::complex},
      {"critical", Command::critical}, {"curves", Command::curves}, {"sweep", Command::sweep}};
  for (const auto& [name, cmd] : commands) {
    app.add_subcommand(name, "Run the " + name + " command");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::FileError& e) {
    std::cerr << "ptwell: io error: " << e.what() << '\n';
    return kExitIoError;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalidFlag;
  }

  config.command = commands.at(app.get_subcommands().front()->get_name());
  config.format = format == "csv" ? OutputFormat::csv : OutputFormat::json;
  config.family = family == "oval"           ? CurveFamily::oval
                  : family == "intersection" ? CurveFamily::intersection
                                             : CurveFamily::theta;
  if (kmax_opt->count() > 0) {
    config.k_max = k_max;
  }
  if (window_opt->count() > 0) {
    std::vector<double> v;
    std::stringstream in(window_text);
    std::string item;
    try {
      while (std::getline(in, item, ',')) {
        std::size_t used = 0;
        v.push_back(std::stod(item, &used));
        if (used != item.size()) {
          throw std::invalid_argument(item);
        }
      }
    } catch (const std::exception&) {
      v.clear();
    }
    if (v.size() != 4) {
      std::cerr << "ptwell: invalid input: --window needs four numbers re_min,re_max,im_min,im_max\n";
      return kExitInvalidFlag;
    }
    config.window = EnergyWindow{v[0], v[1], v[2], v[3]};
  }
  detail::log(detail::LogLevel::debug, "running " + app.get_subcommands().front()->get_name());
  return run(config, std::cerr);
}

}  // namespace ptwell
