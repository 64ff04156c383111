#include "rissec/config_io.hpp"
#include "rissec/errors.hpp"
#include "rissec/experiments.hpp"
#include "rissec/secrecy.hpp"
#include "rissec/specfun.hpp"

#include <CLI11.hpp>

#include <boost/math/distributions/non_central_chi_squared.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

namespace rissec::exp {

namespace {

struct Common {
  std::string config;
  std::uint64_t seed = 42;
  std::size_t trials = 100000;
  std::string out;
  std::string methods;
  unsigned workers = 0;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--config", c.config, "JSON configuration file");
  cmd->add_option("--seed", c.seed, "Monte-Carlo seed")->capture_default_str();
  cmd->add_option("--trials", c.trials, "Monte-Carlo trials per point")->capture_default_str()->check(
      CLI::PositiveNumber);
  cmd->add_option("--out", c.out, "CSV output path (default stdout)");
  cmd->add_option("--methods", c.methods, "analytic,quadrature,special_case,asymptotic,monte_carlo");
  cmd->add_option("--workers", c.workers, "Monte-Carlo threads (0: all cores)")->capture_default_str();
}

SystemConfig config_of(const Common& c) {
  SystemConfig cfg = c.config.empty() ? SystemConfig{} : load_config(c.config);
  validate(cfg);
  return cfg;
}

RunSettings settings_of(const Common& c, std::vector<std::string>& warnings) {
  RunSettings s;
  s.trials = c.trials;
  s.seed = c.seed;
  s.workers = c.workers;
  if (!c.methods.empty()) s.methods = parse_methods(c.methods);
  s.warnings = &warnings;
  return s;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    std::size_t used = 0;
    double x;
    try {
      x = std::stod(item, &used);
    } catch (const std::exception&) {
      throw ConfigError("not a number: " + item);
    }
    if (item.find_first_not_of(" \t", used) != std::string::npos) throw ConfigError("not a number: " + item);
    v.push_back(x);
  }
  return v;
}

void write_rows(const std::vector<CsvRow>& rows, const Common& c, std::ostream& out) {
  if (c.out.empty()) {
    emit_csv(rows, out);
    return;
  }
  std::ofstream file(c.out, std::ios::binary);
  if (!file) throw ConfigError("cannot open output file: " + c.out);
  emit_csv(rows, file);
}

struct Check {
  std::string name;
  std::function<double()> error;  // measured deviation
  double tolerance;
};

int selftest(std::ostream& out) {
  SystemConfig base;
  base.rho_d_dB = 30;
  auto with_alpha2 = [&](double a) {
    SystemConfig c = base;
    c.alpha2 = a;
    return c;
  };
  const std::vector<Check> checks{
      {"meijer_g_1001_is_exp",
       [] {
         double worst = 0;
         for (double x : {1e-3, 0.5, 2.0, 10.0, 40.0}) {
           const double g = specfun::meijer_g_m0_0m({{0.0}, x});
           worst = std::max(worst, std::fabs(g - std::exp(-x)) / std::exp(-x));
         }
         return worst;
       },
       1e-12},
      {"marcum_vs_noncentral_chi2",
       [] {
         double worst = 0;
         for (auto [a, b] : {std::pair{0.5, 1.0}, {2.0, 1.5}, {3.0, 5.0}, {8.0, 7.0}}) {
           boost::math::non_central_chi_squared d(2.0, a * a);
           worst = std::max(worst, std::fabs(specfun::marcum_q1(a, b) - boost::math::cdf(complement(d, b * b))));
         }
         return worst;
       },
       1e-12},
      {"sop_free_space_identity",
       [&] {
         const auto c = with_alpha2(2.0);
         return std::fabs(secrecy::sop_closed_form(c).value - secrecy::sop_free_space(c).value);
       },
       1e-10},
      {"sop_bessel_identity",
       [&] {
         const auto c = with_alpha2(4.0);
         return std::fabs(secrecy::sop_closed_form(c).value - secrecy::sop_bessel_a2_4(c).value);
       },
       1e-8},
      {"sop_closed_vs_quadrature",
       [&] { return std::fabs(secrecy::sop_closed_form(base).value - secrecy::sop_quadrature(base).value); },
       1e-3},
      {"rd_two_paths",
       [&] {
         const double q = secrecy::rd_quadrature(base);
         return std::fabs(secrecy::rd_closed_form(base) - q) / std::max(1.0, q);
       },
       1e-6},
      {"re_free_space_vs_quadrature",
       [&] { return std::fabs(secrecy::re_a2_2(base) - secrecy::re_quadrature(base)); }, 1e-4},
  };
  int failed = 0;
  for (const auto& c : checks) {
    const double e = c.error();
    const bool ok = e <= c.tolerance;
    failed += !ok;
    out << (ok ? "PASS " : "FAIL ") << c.name << " error=" << format_number(e)
        << " tol=" << format_number(c.tolerance) << '\n';
  }
  if (failed) throw ConvergenceError(std::to_string(failed) + " selftest check(s) failed", failed, 0);
  return 0;
}

}  // namespace

int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Secrecy outage and ergodic secrecy capacity experiments for RIS-assisted links"};
  app.require_subcommand(1);

  Common common;
  std::string fig_id;
  bool dump_config = false;
  auto* fig = app.add_subcommand("fig", "Run a figure preset (fig2..fig13, or 'list')");
  fig->add_option("id", fig_id, "Preset id")->required();
  fig->add_flag("--dump-config", dump_config, "Write the preset's first-curve configuration as JSON");
  add_common(fig, common);

  auto* sop = app.add_subcommand("sop", "Secrecy outage probability at one configuration");
  add_common(sop, common);
  auto* esc = app.add_subcommand("esc", "Ergodic secrecy capacity at one configuration");
  add_common(esc, common);

  std::string x_db = "0,10,20,30,40,50,60,70,80";
  auto* cdf = app.add_subcommand("cdf", "SNR CDFs at the user and the strongest eavesdropper");
  cdf->add_option("--x-db", x_db, "Comma-separated SNR thresholds in dB")->capture_default_str();
  add_common(cdf, common);

  std::string axis, values, metric = "sop";
  auto* sweep = app.add_subcommand("sweep", "Sweep one configuration field");
  sweep->add_option("--axis", axis, "Field name, e.g. rho_d_dB")->required();
  sweep->add_option("--values", values, "Comma-separated axis values")->required();
  sweep->add_option("--metric", metric, "sop or esc")->check(CLI::IsMember({"sop", "esc"}))->capture_default_str();
  add_common(sweep, common);

  auto* validate_cmd = app.add_subcommand("validate", "Check a configuration and print its normalized form");
  validate_cmd->add_option("--config", common.config, "JSON configuration file")->required();

  auto* selftest_cmd = app.add_subcommand("selftest", "Run the built-in oracle checks");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "E2: " << e.what() << '\n';
    return 2;
  }

  std::vector<std::string> warnings;
  auto flush_warnings = [&] {
    for (const auto& w : warnings) err << "W3: " << w << '\n';
  };
  try {
    if (fig->parsed()) {
      if (fig_id == "list") {
        for (const auto& p : presets()) out << p.id << ' ' << p.metric << ' ' << p.axis << '\n';
        return 0;
      }
      const auto& preset = find_preset(fig_id);
      std::optional<SystemConfig> base;
      if (!common.config.empty()) base = config_of(common);
      if (dump_config) {
        SystemConfig c = base.value_or(preset.base);
        if (!preset.curves.empty()) c = apply_curve(c, preset.curves.front());
        const std::string text = normalized_json(c) + "\n";
        if (common.out.empty()) {
          out << text;
        } else {
          std::ofstream file(common.out, std::ios::binary);
          if (!file) throw ConfigError("cannot open output file: " + common.out);
          file << text;
        }
        return 0;
      }
      write_rows(run_preset(preset, settings_of(common, warnings), base), common, out);
    } else if (sop->parsed() || esc->parsed()) {
      const auto cfg = config_of(common);
      auto s = settings_of(common, warnings);
      s.strict = true;
      if (s.methods.empty()) s.methods = {"analytic"};
      write_rows(run_series("adhoc", cfg, sop->parsed() ? "sop" : "esc", "rho_d_dB", {cfg.rho_d_dB}, s), common,
                 out);
    } else if (cdf->parsed()) {
      const auto cfg = config_of(common);
      write_rows(run_series("adhoc", cfg, "cdf", "x_dB", parse_list(x_db), settings_of(common, warnings)),
                 common, out);
    } else if (sweep->parsed()) {
      const auto cfg = config_of(common);
      write_rows(run_series("sweep", cfg, metric, axis, parse_list(values), settings_of(common, warnings)),
                 common, out);
    } else if (validate_cmd->parsed()) {
      const auto cfg = config_of(common);
      out << normalized_json(cfg) << '\n' << "sha256 " << config_sha256(cfg) << '\n';
    } else if (selftest_cmd->parsed()) {
      return selftest(out);
    }
  } catch (const ConfigError& e) {
    flush_warnings();
    err << "E2: " << e.what() << '\n';
    return 2;
  } catch (const nlohmann::json::exception& e) {
    flush_warnings();
    err << "E2: " << e.what() << '\n';
    return 2;
  } catch (const UnsupportedPath& e) {
    flush_warnings();
    err << "E3: " << e.what() << '\n';
    return 3;
  } catch (const std::domain_error& e) {
    flush_warnings();
    err << "E2: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    // ConvergenceError and any other numerical failure
    flush_warnings();
    err << "E4: " << e.what() << '\n';
    return 4;
  }
  flush_warnings();
  return 0;
}

}  // namespace rissec::exp
