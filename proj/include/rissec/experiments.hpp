#pragma once

#include "rissec/sysmodel.hpp"

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace rissec::exp {

// One curve of a figure: named field overrides applied on top of the base configuration.
struct Curve {
  std::string label;
  std::vector<std::pair<std::string, double>> settings;
};

struct ExperimentPreset {
  std::string id;      // "fig2" ... "fig13"
  std::string metric;  // "sop", "esc" or "cdf"
  SystemConfig base;
  std::string axis;
  std::vector<double> grid;
  std::vector<Curve> curves;
  std::vector<std::string> methods;
};

const std::vector<ExperimentPreset>& presets();
// Accepts "fig3" or "3"; throws ConfigError for unknown ids.
const ExperimentPreset& find_preset(const std::string& id);
SystemConfig apply_curve(const SystemConfig& base, const Curve& curve);

struct CsvRow {
  std::string preset;
  std::string axis;
  double axis_value = 0.0;
  std::string metric;
  std::string method;
  double value = 0.0;
  std::optional<double> stderr_;
  std::optional<std::size_t> trials;
  std::optional<std::uint64_t> seed;
  std::string config_sha256;
};

std::string csv_header();
// Shortest decimal that parses back to the same double.
std::string format_number(double x);
void emit_csv(const std::vector<CsvRow>& rows, std::ostream& sink);

// analytic, quadrature, special_case, asymptotic, monte_carlo; "closed_form" is an alias of analytic.
std::vector<std::string> parse_methods(const std::string& list);

struct RunSettings {
  std::size_t trials = 100000;
  std::uint64_t seed = 42;
  std::vector<std::string> methods;  // empty: the preset's (or all) methods
  unsigned workers = 0;
  bool strict = false;  // rethrow UnsupportedPath instead of skipping the row
  std::vector<std::string>* warnings = nullptr;
};

// One labelled series over an axis. For metric "cdf" the axis is the SNR threshold in dB ("x_dB").
std::vector<CsvRow> run_series(const std::string& label, const SystemConfig& cfg, const std::string& metric,
                               const std::string& axis, const std::vector<double>& grid,
                               const RunSettings& settings);
std::vector<CsvRow> run_preset(const ExperimentPreset& preset, const RunSettings& settings,
                               const std::optional<SystemConfig>& base_override = std::nullopt);

// Command-line entry point; args exclude the program name. Errors go to err as "E<code>: message"
// and map to exit codes 2 (configuration), 3 (unsupported numerical path), 4 (convergence).
int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rissec::exp
