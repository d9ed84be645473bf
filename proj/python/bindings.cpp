#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "ptwell/cli.hpp"
#include "ptwell/constraint.hpp"
#include "ptwell/errors.hpp"
#include "ptwell/matching.hpp"
#include "ptwell/report.hpp"
#include "ptwell/spectrum.hpp"

namespace py = pybind11;
using namespace ptwell;

namespace {

py::dict level_dict(const BoundState& b) {
  py::dict d;
  d["s"] = b.wave.s;
  d["t"] = b.wave.t;
  d["E"] = b.energy.real();
  d["A"] = b.A ? py::cast(*b.A) : py::none();
  return d;
}

py::list level_list(const std::vector<BoundState>& levels) {
  py::list out;
  for (const BoundState& b : levels) {
    out.append(level_dict(b));
  }
  return out;
}

EnergyWindow window_from(const std::vector<double>& w) {
  if (w.size() != 4) {
    throw DomainError("window needs four numbers re_min, re_max, im_min, im_max");
  }
  return {w[0], w[1], w[2], w[3]};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Spectrum of the PT-symmetric square well on a broken-line contour";

  // Translators run newest first, so the base class goes in before DomainError.
  py::register_exception<Error>(m, "SolverError", PyExc_RuntimeError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);

  m.def("real_levels", [](double Z, double omega, double e_max) {
    return level_list(real_levels_below(ModelParams(Z, omega), e_max));
  }, py::arg("Z"), py::arg("omega"), py::arg("e_max") = 1000.0,
        "Real levels with E <= e_max as dicts {s, t, E, A}.");

  m.def("lattice_levels", [](double Z, double omega, long k_max) {
    return level_list(real_spectrum_lattice(ModelParams(Z, omega), k_max).levels);
  }, py::arg("Z"), py::arg("omega"), py::arg("k_max"));

  m.def("count_real", [](double Z, double omega, double e_max) { return count_real(ModelParams(Z, omega), e_max); },
        py::arg("Z"), py::arg("omega"), py::arg("e_max"));

  m.def("complex_spectrum", [](double Z, double omega, std::vector<double> window) {
    const SpectrumReport r = complex_spectrum(ModelParams(Z, omega), window_from(window));
    py::dict d;
    d["real_levels"] = level_list(r.real_levels);
    d["complex_pairs"] = r.complex_pairs;
    d["argument_count"] = *r.diagnostics.argument_count;
    d["json"] = report_to_json(r);
    return d;
  }, py::arg("Z"), py::arg("omega"), py::arg("window") = std::vector<double>{0, 2000, -200, 200});

  m.def("critical_couplings", &critical_couplings, py::arg("omega"), py::arg("n_pairs"));
  m.def("separation_sigma", [](double Z, double omega) { return separation_sigma(ModelParams(Z, omega)); },
        py::arg("Z"), py::arg("omega"));

  m.def("quantization_function", [](cplx E, double Z, double omega) {
    return quantization_function(E, ModelParams(Z, omega));
  }, py::arg("E"), py::arg("Z"), py::arg("omega"));
  m.def("residual_real", [](double s, double t, double omega) {
    return residual_real({s, t}, ModelParams(2 * s * t, omega));
  }, py::arg("s"), py::arg("t"), py::arg("omega"));

  m.def("format_number", &format_number);

  m.def("cli", [](const std::vector<std::string>& args) {
    std::vector<const char*> argv{"ptwell"};
    for (const std::string& a : args) {
      argv.push_back(a.c_str());
    }
    return cli_main(static_cast<int>(argv.size()), argv.data());
  }, py::arg("args"), "Runs the command-line front end in-process and returns its exit status.");
}
