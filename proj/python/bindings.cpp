#include "rissec/config_io.hpp"
#include "rissec/errors.hpp"
#include "rissec/experiments.hpp"
#include "rissec/montecarlo.hpp"
#include "rissec/secrecy.hpp"
#include "rissec/specfun.hpp"
#include "rissec/analytic.hpp"

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace rissec;

namespace {

secrecy::SecrecyResult sop_by(const SystemConfig& cfg, const std::string& method) {
  if (method == "closed_form" || method == "analytic") return secrecy::sop_closed_form(cfg);
  if (method == "quadrature") return secrecy::sop_quadrature(cfg);
  if (method == "asymptotic") return secrecy::sop_asymptotic(cfg);
  if (method == "free_space") return secrecy::sop_free_space(cfg);
  if (method == "bessel") return secrecy::sop_bessel_a2_4(cfg);
  throw ConfigError("unknown sop method: " + method);
}

double esc_by(const SystemConfig& cfg, const std::string& method) {
  if (method == "closed_form" || method == "analytic") return secrecy::esc(cfg).value;
  if (method == "quadrature") return std::max(0.0, secrecy::rd_quadrature(cfg) - secrecy::re_quadrature(cfg));
  if (method == "asymptotic") return secrecy::esc_asymptotic(cfg).value;
  if (method == "free_space") return secrecy::esc_a2_2(cfg).value;
  if (method == "bessel") return secrecy::esc_a2_4(cfg).value;
  throw ConfigError("unknown esc method: " + method);
}

py::dict summary_dict(const mc::EmpiricalSummary& s) {
  py::dict d;
  d["sop"] = s.sop;
  d["sop_stderr"] = s.sop_stderr;
  d["esc_bits"] = s.esc_bits;
  d["esc_stderr"] = s.esc_stderr;
  d["esc_diff_clamp_bits"] = s.esc_diff_clamp_bits;
  d["esc_diff_clamp_stderr"] = s.esc_diff_clamp_stderr;
  d["rd_bits"] = s.rd_bits;
  d["re_bits"] = s.re_bits;
  d["mean_gamma_d"] = s.mean_gamma_d;
  d["mean_eves"] = s.mean_eves;
  d["trials"] = s.trials;
  d["seed"] = s.seed;
  if (!s.ecdf_d.empty()) {
    d["gamma_d"] = s.ecdf_d;
    d["gamma_e"] = s.ecdf_e;
  }
  return d;
}

py::dict row_dict(const exp::CsvRow& r) {
  py::dict d;
  d["preset"] = r.preset;
  d["axis"] = r.axis;
  d["axis_value"] = r.axis_value;
  d["metric"] = r.metric;
  d["method"] = r.method;
  d["value"] = r.value;
  d["stderr"] = r.stderr_ ? py::cast(*r.stderr_) : py::none();
  d["trials"] = r.trials ? py::cast(*r.trials) : py::none();
  d["seed"] = r.seed ? py::cast(*r.seed) : py::none();
  d["config_sha256"] = r.config_sha256;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Secrecy outage and ergodic secrecy capacity of RIS-assisted links";

  auto base_error = py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<UnsupportedPath>(m, "UnsupportedPath", PyExc_RuntimeError);
  py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_ArithmeticError);
  (void)base_error;

  py::class_<SystemConfig>(m, "SystemConfig")
      .def(py::init<>())
      .def_static("from_json", [](const std::string& text) { return config_from_json(nlohmann::json::parse(text)); },
                  py::arg("text"))
      .def("to_json", [](const SystemConfig& c) { return normalized_json(c); })
      .def("sha256", [](const SystemConfig& c) { return config_sha256(c); })
      .def("validate", [](const SystemConfig& c) { validate(c); })
      .def("copy", [](const SystemConfig& c) { return c; })
      .def_readwrite("K", &SystemConfig::K)
      .def_readwrite("N", &SystemConfig::N)
      .def_readwrite("epsilon", &SystemConfig::epsilon)
      .def_readwrite("epsilon1", &SystemConfig::epsilon1)
      .def_readwrite("alpha1", &SystemConfig::alpha1)
      .def_readwrite("alpha2", &SystemConfig::alpha2)
      .def_readwrite("beta0", &SystemConfig::beta0)
      .def_readwrite("d_SR", &SystemConfig::d_SR)
      .def_readwrite("d_RD", &SystemConfig::d_RD)
      .def_readwrite("r_e", &SystemConfig::r_e)
      .def_readwrite("lambda_e", &SystemConfig::lambda_e)
      .def_readwrite("rho_d_dB", &SystemConfig::rho_d_dB)
      .def_readwrite("rho_e_dB", &SystemConfig::rho_e_dB)
      .def_readwrite("C_th", &SystemConfig::C_th)
      .def_readwrite("element_spacing_ratio", &SystemConfig::element_spacing_ratio)
      .def_readwrite("h_RIS", &SystemConfig::h_RIS)
      .def("__repr__", [](const SystemConfig& c) { return "SystemConfig(" + normalized_json(c) + ")"; });

  auto sf = m.def_submodule("specfun", "Special functions");
  sf.def("laguerre_half", &specfun::laguerre_half, py::arg("eps"));
  sf.def("bessel_k", &specfun::bessel_k, py::arg("order"), py::arg("x"));
  sf.def("log_bessel_k", &specfun::log_bessel_k, py::arg("order"), py::arg("x"));
  sf.def("bessel_i", &specfun::bessel_i, py::arg("order"), py::arg("x"));
  sf.def("gamma_p", &specfun::gamma_p, py::arg("k"), py::arg("x"));
  sf.def("gamma_q", &specfun::gamma_q, py::arg("k"), py::arg("x"));
  sf.def("log_gamma", &specfun::log_gamma, py::arg("z"));
  sf.def("marcum_q1", &specfun::marcum_q1, py::arg("a"), py::arg("b"));
  sf.def("marcum_q1_exp_approx", &specfun::marcum_q1_exp_approx, py::arg("varpi"), py::arg("z"));
  sf.def(
      "meijer_g_m0_0m",
      [](std::vector<double> orders, double x) { return specfun::meijer_g_m0_0m({std::move(orders), x}); },
      py::arg("orders"), py::arg("x"));
  sf.def(
      "shi_chi", [](double x) { const auto r = specfun::shi_chi(x); return py::make_tuple(r.shi, r.chi); },
      py::arg("x"));
  sf.def("exp_scaled_shi_minus_chi", &specfun::exp_scaled_shi_minus_chi, py::arg("x"));

  m.def(
      "gamma_fit", [](const SystemConfig& c) { const auto g = analytic::gamma_fit(c); return py::make_tuple(g.k, g.theta); },
      py::arg("cfg"), "(shape, scale) of the Gamma fit to the cascaded user amplitude");
  m.def("cdf_gamma_d", &analytic::cdf_gamma_d, py::arg("x"), py::arg("cfg"));
  m.def("pdf_gamma_d", &analytic::pdf_gamma_d, py::arg("x"), py::arg("cfg"));
  m.def("mean_gamma_d", &analytic::mean_gamma_d, py::arg("cfg"));
  m.def(
      "cdf_gamma_e",
      [](double x, const SystemConfig& c, const std::string& form) {
        if (form == "closed") return analytic::cdf_gamma_e_closed(x, c);
        if (form == "asymptotic") return analytic::cdf_gamma_e_asymptotic(x, c);
        if (form == "quadrature") return analytic::cdf_gamma_e(x, c, analytic::MarcumKernel::approximate);
        if (form == "exact") return analytic::cdf_gamma_e(x, c, analytic::MarcumKernel::exact);
        throw ConfigError("unknown form: " + form);
      },
      py::arg("x"), py::arg("cfg"), py::arg("form") = "closed",
      "CDF of the strongest eavesdropper SNR; form is closed, asymptotic, quadrature or exact");

  m.def(
      "sop", [](const SystemConfig& c, const std::string& method) { return sop_by(c, method).value; }, py::arg("cfg"),
      py::arg("method") = "closed_form",
      "Secrecy outage probability; method is closed_form, quadrature, asymptotic, free_space or bessel");
  m.def("esc", &esc_by, py::arg("cfg"), py::arg("method") = "closed_form",
        "Ergodic secrecy capacity in bits/s/Hz; same method names as sop");
  m.def("rd_closed_form", &secrecy::rd_closed_form, py::arg("cfg"));
  m.def("rd_quadrature", &secrecy::rd_quadrature, py::arg("cfg"));
  m.def("re_quadrature", &secrecy::re_quadrature, py::arg("cfg"));
  m.def("rd_upper_bound", &secrecy::rd_upper_bound, py::arg("cfg"));
  m.def(
      "diversity_order",
      [](const SystemConfig& c, double lo, double hi) {
        const auto d = secrecy::secrecy_diversity_order(c, lo, hi);
        return py::make_tuple(d.analytic, d.fitted);
      },
      py::arg("cfg"), py::arg("lo_dB") = 100.0, py::arg("hi_dB") = 120.0);

  m.def(
      "simulate",
      [](const SystemConfig& c, std::size_t trials, std::uint64_t seed, unsigned workers, bool keep_samples) {
        mc::EmpiricalSummary s;
        {
          py::gil_scoped_release release;
          s = mc::run_trials(c, trials, seed, {workers, keep_samples});
        }
        return summary_dict(s);
      },
      py::arg("cfg"), py::arg("trials") = 100000, py::arg("seed") = 42, py::arg("workers") = 0,
      py::arg("keep_samples") = false);
  m.def(
      "sweep",
      [](const SystemConfig& c, const std::string& axis, const std::vector<double>& values, std::size_t trials,
         std::uint64_t seed, unsigned workers) {
        mc::MetricSeries s;
        {
          py::gil_scoped_release release;
          s = mc::sweep(c, axis, values, trials, seed, {workers, false});
        }
        py::list out;
        for (std::size_t i = 0; i < s.points.size(); ++i) {
          auto d = summary_dict(s.points[i]);
          d["axis"] = s.axis;
          d["axis_value"] = s.values[i];
          d["config_sha256"] = s.config_sha256[i];
          out.append(d);
        }
        return out;
      },
      py::arg("cfg"), py::arg("axis"), py::arg("values"), py::arg("trials") = 100000, py::arg("seed") = 42,
      py::arg("workers") = 0);

  m.def("presets", [] {
    std::vector<std::string> ids;
    for (const auto& p : exp::presets()) ids.push_back(p.id);
    return ids;
  });
  m.def(
      "preset_config", [](const std::string& id) { return exp::find_preset(id).base; }, py::arg("id"));
  m.def(
      "run_preset",
      [](const std::string& id, const std::vector<std::string>& methods, std::size_t trials, std::uint64_t seed,
         unsigned workers) {
        exp::RunSettings s;
        s.methods = methods;
        s.trials = trials;
        s.seed = seed;
        s.workers = workers;
        std::vector<exp::CsvRow> rows;
        {
          py::gil_scoped_release release;
          rows = exp::run_preset(exp::find_preset(id), s);
        }
        py::list out;
        for (const auto& r : rows) out.append(row_dict(r));
        return out;
      },
      py::arg("id"), py::arg("methods") = std::vector<std::string>{"analytic"}, py::arg("trials") = 100000,
      py::arg("seed") = 42, py::arg("workers") = 0);
  m.def(
      "cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = exp::cli_run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Run the command-line interface in-process; returns (exit_code, stdout, stderr)");
}
