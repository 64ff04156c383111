#include "rissec/experiments.hpp"

#include "rissec/analytic.hpp"
#include "rissec/config_io.hpp"
#include "rissec/errors.hpp"
#include "rissec/montecarlo.hpp"
#include "rissec/secrecy.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <ostream>
#include <sstream>

namespace rissec::exp {

namespace {

std::vector<double> range(double lo, double hi, double step) {
  std::vector<double> v;
  const int n = static_cast<int>(std::floor((hi - lo) / step + 1e-9));
  for (int i = 0; i <= n; ++i) v.push_back(lo + step * i);
  return v;
}

std::vector<std::string> methods_for(const std::string& metric) {
  if (metric == "sop") return {"analytic", "quadrature", "special_case", "asymptotic", "monte_carlo"};
  if (metric == "esc") return {"analytic", "quadrature", "special_case", "asymptotic", "monte_carlo"};
  if (metric == "cdf") return {"analytic", "quadrature", "asymptotic", "monte_carlo"};
  throw ConfigError("unknown metric: " + metric);
}

std::vector<ExperimentPreset> build_presets() {
  std::vector<ExperimentPreset> out;
  const std::vector<std::string> sop_methods{"analytic", "asymptotic", "monte_carlo"};
  const std::vector<std::string> esc_methods{"analytic", "asymptotic", "monte_carlo"};
  auto preset = [&](std::string id, std::string metric, auto tweak, std::string axis, std::vector<double> grid,
                    std::vector<Curve> curves, std::vector<std::string> methods) {
    ExperimentPreset p;
    p.id = std::move(id);
    p.metric = std::move(metric);
    tweak(p.base);
    validate(p.base);
    p.axis = std::move(axis);
    p.grid = std::move(grid);
    p.curves = std::move(curves);
    p.methods = std::move(methods);
    out.push_back(std::move(p));
  };
  auto sweep_of = [](const std::string& field, std::vector<double> values) {
    std::vector<Curve> c;
    for (double v : values) {
      std::ostringstream label;
      label << field << '=' << v;
      c.push_back({label.str(), {{field, v}}});
    }
    return c;
  };
  auto nk = [](std::vector<std::pair<int, int>> pairs) {
    std::vector<Curve> c;
    for (auto [n, k] : pairs)
      c.push_back({"N=" + std::to_string(n) + ";K=" + std::to_string(k), {{"N", n}, {"K", k}}});
    return c;
  };

  preset("fig2", "cdf", [](SystemConfig& c) { c.K = 16, c.N = 36; }, "x_dB", range(-20, 100, 5), {},
         {"analytic", "quadrature", "asymptotic", "monte_carlo"});
  preset("fig3", "sop", [](SystemConfig& c) { c.K = 16, c.rho_e_dB = 30; }, "rho_d_dB", range(5, 50, 5),
         sweep_of("N", {16, 36, 64}), sop_methods);
  preset("fig4", "sop", [](SystemConfig& c) { c.N = 16, c.rho_e_dB = 30; }, "rho_d_dB", range(5, 50, 5),
         sweep_of("K", {4, 16, 64}), sop_methods);
  preset("fig5", "sop", [](SystemConfig& c) { c.K = 16, c.N = 36, c.rho_d_dB = 20, c.rho_e_dB = 30; },
         "epsilon", range(0, 10, 1), sweep_of("lambda_e", {5e-4, 1e-3, 2e-3}), sop_methods);
  preset("fig6", "sop", [](SystemConfig& c) { c.K = 16, c.N = 16; }, "rho_d_dB", range(5, 60, 5),
         sweep_of("rho_e_dB", {10, 20, 30}), sop_methods);
  {
    std::vector<Curve> alphas;
    for (auto [a1, a2] : std::vector<std::pair<double, double>>{{2, 2}, {2, 3}, {3, 3}, {2, 4}}) {
      std::ostringstream label;
      label << "alpha1=" << a1 << ";alpha2=" << a2;
      alphas.push_back({label.str(), {{"alpha1", a1}, {"alpha2", a2}}});
    }
    preset("fig7", "sop", [](SystemConfig& c) { c.K = 16, c.N = 16, c.rho_e_dB = 60; }, "rho_d_dB",
           range(60, 120, 5), alphas, sop_methods);
  }
  preset("fig8", "esc", [](SystemConfig& c) { c.rho_e_dB = 50; }, "rho_d_dB", range(30, 80, 5),
         nk({{16, 4}, {16, 16}, {64, 16}}), esc_methods);
  preset("fig9", "esc", [](SystemConfig& c) { c.K = 16, c.N = 16; }, "rho_d_dB", range(30, 80, 5),
         sweep_of("rho_e_dB", {30, 40, 50}), esc_methods);
  preset("fig10", "esc", [](SystemConfig& c) { c.K = 16, c.N = 16, c.rho_d_dB = 50, c.rho_e_dB = 50; },
         "d_SR", range(10, 100, 10), sweep_of("d_RD", {20, 40, 80}), esc_methods);
  {
    std::vector<double> lambdas;
    for (int e = -14; e <= -6; ++e) lambdas.push_back(std::ldexp(1.0, e));
    preset("fig11", "esc", [](SystemConfig& c) { c.K = 16, c.N = 16, c.rho_d_dB = 50, c.rho_e_dB = 50; },
           "lambda_e", lambdas, sweep_of("epsilon", {1, 2, 5}), esc_methods);
  }
  auto dual = [](SystemConfig& c) {
    c.epsilon1 = 2.0;
    c.epsilon = 2.0;
    c.r_e = 50.0;
    c.lambda_e = 1e-2;
  };
  preset("fig12", "sop", [&](SystemConfig& c) { dual(c), c.rho_e_dB = 30; }, "rho_d_dB", range(5, 50, 5),
         nk({{16, 4}, {16, 16}, {64, 16}}), sop_methods);
  preset("fig13", "esc", [&](SystemConfig& c) { dual(c), c.rho_e_dB = 50; }, "rho_d_dB", range(30, 80, 5),
         nk({{16, 4}, {16, 16}, {64, 16}}), esc_methods);
  return out;
}

using Evaluator = std::function<double(const SystemConfig&)>;

Evaluator sop_method(const std::string& m) {
  if (m == "analytic") return [](const SystemConfig& c) { return secrecy::sop_closed_form(c).value; };
  if (m == "quadrature") return [](const SystemConfig& c) { return secrecy::sop_quadrature(c).value; };
  if (m == "asymptotic") return [](const SystemConfig& c) { return secrecy::sop_asymptotic(c).value; };
  if (m == "special_case")
    return [](const SystemConfig& c) {
      if (c.alpha2 == 2.0) return secrecy::sop_free_space(c).value;
      if (c.alpha2 == 4.0) return secrecy::sop_bessel_a2_4(c).value;
      throw UnsupportedPath("special-case SOP needs alpha2 = 2 or 4");
    };
  throw ConfigError("method " + m + " not available for sop");
}

Evaluator esc_method(const std::string& m) {
  if (m == "analytic") return [](const SystemConfig& c) { return secrecy::esc(c).value; };
  if (m == "quadrature")
    return [](const SystemConfig& c) {
      return std::max(0.0, secrecy::rd_quadrature(c) - secrecy::re_quadrature(c));
    };
  if (m == "asymptotic") return [](const SystemConfig& c) { return secrecy::esc_asymptotic(c).value; };
  if (m == "special_case")
    return [](const SystemConfig& c) {
      if (c.alpha2 == 2.0) return secrecy::esc_a2_2(c).value;
      if (c.alpha2 == 4.0) return secrecy::esc_a2_4(c).value;
      throw UnsupportedPath("special-case ESC needs alpha2 = 2 or 4");
    };
  throw ConfigError("method " + m + " not available for esc");
}

void note(const RunSettings& s, const std::string& msg) {
  if (s.warnings) s.warnings->push_back(msg);
}

// Runs one evaluator, skipping the row on UnsupportedPath unless strict.
bool try_eval(const Evaluator& f, const SystemConfig& cfg, const RunSettings& s, const std::string& where,
              double& value) {
  try {
    value = f(cfg);
    return true;
  } catch (const UnsupportedPath& e) {
    if (s.strict) throw;
    note(s, where + ": " + e.what());
    return false;
  }
}

double empirical_cdf(const std::vector<double>& sorted, double x) {
  const auto it = std::upper_bound(sorted.begin(), sorted.end(), x);
  return static_cast<double>(it - sorted.begin()) / static_cast<double>(sorted.size());
}

std::vector<CsvRow> run_cdf(const std::string& label, const SystemConfig& cfg, const std::string& axis,
                            const std::vector<double>& grid, const std::vector<std::string>& methods,
                            const RunSettings& s) {
  std::vector<CsvRow> rows;
  const std::string sha = config_sha256(cfg);
  mc::EmpiricalSummary sim;
  const bool with_mc = std::find(methods.begin(), methods.end(), "monte_carlo") != methods.end();
  if (with_mc && !grid.empty()) sim = mc::run_trials(cfg, s.trials, s.seed, {s.workers, true});
  for (double x_dB : grid) {
    const double x = db_to_linear(x_dB);
    auto row = [&](const std::string& metric, const std::string& method, double v) {
      CsvRow r{label, axis, x_dB, metric, method, v, std::nullopt, std::nullopt, std::nullopt, sha};
      rows.push_back(r);
      return &rows.back();
    };
    for (const auto& m : methods) {
      if (m == "analytic") {
        row("cdf_gamma_d", m, analytic::cdf_gamma_d(x, cfg));
        row("cdf_gamma_e", m, analytic::cdf_gamma_e_closed(x, cfg));
      } else if (m == "quadrature") {
        row("cdf_gamma_e", m, analytic::cdf_gamma_e(x, cfg, analytic::MarcumKernel::exact));
      } else if (m == "asymptotic") {
        row("cdf_gamma_e", m, analytic::cdf_gamma_e_asymptotic(x, cfg));
      } else if (m == "monte_carlo") {
        const std::size_t n = sim.trials;
        for (const auto& [metric, samples] : {std::pair{"cdf_gamma_d", &sim.ecdf_d}, {"cdf_gamma_e", &sim.ecdf_e}}) {
          const double p = empirical_cdf(*samples, x);
          auto* r = row(metric, m, p);
          r->stderr_ = std::sqrt(p * (1.0 - p) / static_cast<double>(n));
          r->trials = n;
          r->seed = s.seed;
        }
      } else if (s.strict) {
        throw UnsupportedPath("method " + m + " not available for cdf");
      } else if (x_dB == grid.front()) {
        note(s, label + " " + m + ": not available for cdf");
      }
    }
  }
  return rows;
}

}  // namespace

const std::vector<ExperimentPreset>& presets() {
  static const std::vector<ExperimentPreset> all = build_presets();
  return all;
}

const ExperimentPreset& find_preset(const std::string& id) {
  const std::string key = id.rfind("fig", 0) == 0 ? id : "fig" + id;
  for (const auto& p : presets())
    if (p.id == key) return p;
  throw ConfigError("unknown preset: " + id);
}

SystemConfig apply_curve(const SystemConfig& base, const Curve& curve) {
  SystemConfig c = base;
  for (const auto& [field, value] : curve.settings) mc::set_axis(c, field, value);
  return c;
}

std::string csv_header() { return "preset,axis,axis_value,metric,method,value,stderr,trials,seed,config_sha256"; }

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

void emit_csv(const std::vector<CsvRow>& rows, std::ostream& sink) {
  sink << csv_header() << '\n';
  for (const auto& r : rows) {
    sink << r.preset << ',' << r.axis << ',' << format_number(r.axis_value) << ',' << r.metric << ','
         << r.method << ',' << format_number(r.value) << ',';
    if (r.stderr_) sink << format_number(*r.stderr_);
    sink << ',';
    if (r.trials) sink << *r.trials;
    sink << ',';
    if (r.seed) sink << *r.seed;
    sink << ',' << r.config_sha256 << '\n';
  }
}

std::vector<std::string> parse_methods(const std::string& list) {
  static const std::vector<std::string> known{"analytic", "quadrature", "special_case", "asymptotic",
                                              "monte_carlo"};
  std::vector<std::string> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (item.empty()) continue;
    if (item == "closed_form") item = "analytic";
    if (std::find(known.begin(), known.end(), item) == known.end()) throw ConfigError("unknown method: " + item);
    if (std::find(out.begin(), out.end(), item) == out.end()) out.push_back(item);
  }
  if (out.empty()) throw ConfigError("no methods given");
  return out;
}

std::vector<CsvRow> run_series(const std::string& label, const SystemConfig& cfg, const std::string& metric,
                               const std::string& axis, const std::vector<double>& grid,
                               const RunSettings& settings) {
  validate(cfg);
  const auto methods = settings.methods.empty() ? methods_for(metric) : settings.methods;
  if (metric == "cdf") return run_cdf(label, cfg, axis, grid, methods, settings);
  if (metric != "sop" && metric != "esc") throw ConfigError("unknown metric: " + metric);

  std::vector<std::pair<std::string, Evaluator>> evaluators;
  bool with_mc = false;
  for (const auto& m : methods) {
    if (m == "monte_carlo") {
      with_mc = true;
      continue;
    }
    evaluators.emplace_back(m, metric == "sop" ? sop_method(m) : esc_method(m));
  }
  mc::MetricSeries sim;
  if (with_mc) sim = mc::sweep(cfg, axis, grid, settings.trials, settings.seed, {settings.workers, false});

  std::vector<CsvRow> rows;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    SystemConfig point = cfg;
    mc::set_axis(point, axis, grid[i]);
    const std::string sha = config_sha256(point);
    for (const auto& m : methods) {
      CsvRow r{label, axis, grid[i], metric, m, 0.0, std::nullopt, std::nullopt, std::nullopt, sha};
      if (m == "monte_carlo") {
        const auto& p = sim.points[i];
        r.trials = p.trials;
        r.seed = p.seed;
        if (metric == "sop") {
          r.value = p.sop;
          r.stderr_ = p.sop_stderr;
          rows.push_back(r);
        } else {
          r.value = p.esc_bits;
          r.stderr_ = p.esc_stderr;
          rows.push_back(r);
          r.method = "monte_carlo_diff_clamp";
          r.value = p.esc_diff_clamp_bits;
          r.stderr_ = p.esc_diff_clamp_stderr;
          rows.push_back(r);
        }
        continue;
      }
      const auto it = std::find_if(evaluators.begin(), evaluators.end(), [&](const auto& e) { return e.first == m; });
      std::ostringstream where;
      where << label << ' ' << axis << '=' << grid[i] << ' ' << m;
      if (try_eval(it->second, point, settings, where.str(), r.value)) rows.push_back(r);
    }
  }
  return rows;
}

std::vector<CsvRow> run_preset(const ExperimentPreset& preset, const RunSettings& settings,
                               const std::optional<SystemConfig>& base_override) {
  RunSettings s = settings;
  if (s.methods.empty()) s.methods = preset.methods;
  const SystemConfig& base = base_override ? *base_override : preset.base;
  std::vector<CsvRow> rows;
  if (preset.curves.empty()) return run_series(preset.id, base, preset.metric, preset.axis, preset.grid, s);
  for (const auto& curve : preset.curves) {
    auto part = run_series(preset.id + ":" + curve.label, apply_curve(base, curve), preset.metric, preset.axis,
                           preset.grid, s);
    rows.insert(rows.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  return rows;
}

}  // namespace rissec::exp
