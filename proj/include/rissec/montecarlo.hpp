#pragma once

#include "rissec/sysmodel.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace rissec::mc {

struct TrialOutcome {
  double gamma_d;
  double gamma_e_max;
  double secrecy_rate_nats;
  std::size_t n_eves;
};

// Per-trial SNRs at unit transmit SNR; every SNR-only quantity is a rescaling of these.
struct TrialGains {
  double gain_d;
  double gain_e_max;
  std::size_t n_eves;
};

struct EmpiricalSummary {
  double sop = 0.0;
  double sop_stderr = 0.0;
  double esc_bits = 0.0;             // mean of per-sample [log2(1+gD) - log2(1+gE)]^+
  double esc_stderr = 0.0;
  double esc_diff_clamp_bits = 0.0;  // [mean log2(1+gD) - mean log2(1+gE)]^+
  double esc_diff_clamp_stderr = 0.0;
  double rd_bits = 0.0;
  double re_bits = 0.0;
  double mean_gamma_d = 0.0;
  double mean_eves = 0.0;
  std::vector<double> ecdf_d;  // sorted gamma_D samples
  std::vector<double> ecdf_e;  // sorted max gamma_E samples
  std::size_t trials = 0;
  std::uint64_t seed = 0;
};

struct RunOptions {
  unsigned workers = 0;  // 0: hardware concurrency
  bool keep_samples = true;
};

TrialGains simulate_trial(const ChannelSampler& sampler, std::uint64_t seed, std::uint64_t trial,
                          ChannelRealization& scratch);
std::vector<TrialGains> simulate_gains(const SystemConfig& cfg, std::size_t trials, std::uint64_t seed,
                                       unsigned workers = 0);
TrialOutcome evaluate_trial(const TrialGains& g, double rho_d, double rho_e);
EmpiricalSummary summarize(const SystemConfig& cfg, const std::vector<TrialGains>& gains, std::uint64_t seed,
                           bool keep_samples = true);

EmpiricalSummary run_trials(const SystemConfig& cfg, std::size_t trials, std::uint64_t seed,
                            const RunOptions& opts = {});

struct MetricSeries {
  std::string axis;
  std::vector<double> values;
  std::vector<EmpiricalSummary> points;
  std::vector<std::string> config_sha256;
};

// Axes that only rescale SNRs (rho_d_dB, rho_e_dB, C_th) reuse one set of draws;
// other axes resample with the same seed at every point (common random numbers).
MetricSeries sweep(const SystemConfig& cfg, const std::string& axis, const std::vector<double>& values,
                   std::size_t trials, std::uint64_t seed, const RunOptions& opts = {});

// Sets a numeric SystemConfig field by name; throws ConfigError for unknown names.
void set_axis(SystemConfig& cfg, const std::string& axis, double value);

double pairwise_sum(const double* x, std::size_t n);

}  // namespace rissec::mc
