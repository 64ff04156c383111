#include "rissec/montecarlo.hpp"

#include "rissec/beamform.hpp"
#include "rissec/config_io.hpp"
#include "rissec/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <exception>
#include <thread>

namespace rissec::mc {

namespace {

struct Moments {
  double mean;
  double stderr_;
};

Moments moments(const std::vector<double>& x) {
  const std::size_t n = x.size();
  const double mean = pairwise_sum(x.data(), n) / static_cast<double>(n);
  std::vector<double> dev(n);
  for (std::size_t i = 0; i < n; ++i) dev[i] = (x[i] - mean) * (x[i] - mean);
  const double var = n > 1 ? pairwise_sum(dev.data(), n) / static_cast<double>(n - 1) : 0.0;
  return {mean, std::sqrt(var / static_cast<double>(n))};
}

bool rescales_only(const std::string& axis) {
  return axis == "rho_d_dB" || axis == "rho_e_dB" || axis == "C_th";
}

}  // namespace

double pairwise_sum(const double* x, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(x, half) + pairwise_sum(x + half, n - half);
}

TrialGains simulate_trial(const ChannelSampler& sampler, std::uint64_t seed, std::uint64_t trial,
                          ChannelRealization& scratch) {
  RngStream rng(seed, trial);
  sampler.sample(rng, scratch);
  const auto st = design_beamforming(scratch);
  TrialGains g{legitimate_gain(st), 0.0, scratch.eaves.size()};
  for (std::size_t m = 0; m < scratch.eaves.size(); ++m)
    g.gain_e_max = std::max(g.gain_e_max, eavesdropper_gain(scratch, st, m));
  return g;
}

std::vector<TrialGains> simulate_gains(const SystemConfig& cfg, std::size_t trials, std::uint64_t seed,
                                       unsigned workers) {
  if (trials == 0) throw ConfigError("trials must be >= 1");
  const ChannelSampler sampler(cfg);
  std::vector<TrialGains> out(trials);
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, trials));
  auto run = [&](std::size_t lo, std::size_t hi) {
    ChannelRealization scratch;
    for (std::size_t t = lo; t < hi; ++t) out[t] = simulate_trial(sampler, seed, t, scratch);
  };
  if (workers == 1) {
    run(0, trials);
    return out;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (unsigned w = 0; w < workers; ++w) {
    const std::size_t lo = trials * w / workers, hi = trials * (w + 1) / workers;
    pool.emplace_back([&, w, lo, hi] {
      try {
        run(lo, hi);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

TrialOutcome evaluate_trial(const TrialGains& g, double rho_d, double rho_e) {
  TrialOutcome o;
  o.gamma_d = rho_d * g.gain_d;
  o.gamma_e_max = g.n_eves ? rho_e * g.gain_e_max : 0.0;
  o.secrecy_rate_nats = std::log1p(o.gamma_d) - std::log1p(o.gamma_e_max);
  o.n_eves = g.n_eves;
  return o;
}

EmpiricalSummary summarize(const SystemConfig& cfg, const std::vector<TrialGains>& gains, std::uint64_t seed,
                           bool keep_samples) {
  const std::size_t n = gains.size();
  EmpiricalSummary s;
  s.trials = n;
  s.seed = seed;
  if (n == 0) return s;
  const double rho_d = cfg.rho_d(), rho_e = cfg.rho_e();
  std::vector<double> rd(n), re(n), diff(n), clamped(n), gd(n), ge(n), eves(n);
  std::size_t outages = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto o = evaluate_trial(gains[i], rho_d, rho_e);
    if (o.secrecy_rate_nats < cfg.C_th) ++outages;
    rd[i] = std::log1p(o.gamma_d) / std::numbers::ln2;
    re[i] = std::log1p(o.gamma_e_max) / std::numbers::ln2;
    diff[i] = rd[i] - re[i];
    clamped[i] = std::max(0.0, diff[i]);
    gd[i] = o.gamma_d;
    ge[i] = o.gamma_e_max;
    eves[i] = static_cast<double>(o.n_eves);
  }
  s.sop = static_cast<double>(outages) / static_cast<double>(n);
  s.sop_stderr = std::sqrt(s.sop * (1.0 - s.sop) / static_cast<double>(n));
  const auto c = moments(clamped);
  s.esc_bits = c.mean;
  s.esc_stderr = c.stderr_;
  const auto d = moments(diff);
  s.esc_diff_clamp_bits = std::max(0.0, d.mean);
  s.esc_diff_clamp_stderr = d.stderr_;
  s.rd_bits = pairwise_sum(rd.data(), n) / static_cast<double>(n);
  s.re_bits = pairwise_sum(re.data(), n) / static_cast<double>(n);
  s.mean_gamma_d = pairwise_sum(gd.data(), n) / static_cast<double>(n);
  s.mean_eves = pairwise_sum(eves.data(), n) / static_cast<double>(n);
  if (keep_samples) {
    std::sort(gd.begin(), gd.end());
    std::sort(ge.begin(), ge.end());
    s.ecdf_d = std::move(gd);
    s.ecdf_e = std::move(ge);
  }
  return s;
}

EmpiricalSummary run_trials(const SystemConfig& cfg, std::size_t trials, std::uint64_t seed,
                            const RunOptions& opts) {
  return summarize(cfg, simulate_gains(cfg, trials, seed, opts.workers), seed, opts.keep_samples);
}

void set_axis(SystemConfig& cfg, const std::string& axis, double value) {
  auto as_int = [&](const std::string& name) {
    if (value != std::floor(value)) throw ConfigError(name + " must be an integer");
    return static_cast<int>(value);
  };
  if (axis == "K") cfg.K = as_int("K");
  else if (axis == "N") cfg.N = as_int("N");
  else if (axis == "epsilon") cfg.epsilon = value;
  else if (axis == "epsilon1") cfg.epsilon1 = value;
  else if (axis == "alpha1") cfg.alpha1 = value;
  else if (axis == "alpha2") cfg.alpha2 = value;
  else if (axis == "alpha") cfg.alpha1 = cfg.alpha2 = value;
  else if (axis == "beta0") cfg.beta0 = value;
  else if (axis == "d_SR") cfg.d_SR = value;
  else if (axis == "d_RD") cfg.d_RD = value;
  else if (axis == "r_e") cfg.r_e = value;
  else if (axis == "lambda_e") cfg.lambda_e = value;
  else if (axis == "rho_d_dB") cfg.rho_d_dB = value;
  else if (axis == "rho_e_dB") cfg.rho_e_dB = value;
  else if (axis == "C_th") cfg.C_th = value;
  else if (axis == "element_spacing_ratio") cfg.element_spacing_ratio = value;
  else if (axis == "h_RIS") cfg.h_RIS = value;
  else throw ConfigError("unknown sweep axis: " + axis);
  validate(cfg);
}

MetricSeries sweep(const SystemConfig& cfg, const std::string& axis, const std::vector<double>& values,
                   std::size_t trials, std::uint64_t seed, const RunOptions& opts) {
  MetricSeries series;
  series.axis = axis;
  {
    SystemConfig probe = cfg;
    set_axis(probe, axis, values.empty() ? (axis == "K" || axis == "N" ? cfg.N : cfg.rho_d_dB) : values.front());
  }
  if (values.empty()) return series;
  std::vector<TrialGains> shared;
  if (rescales_only(axis)) shared = simulate_gains(cfg, trials, seed, opts.workers);
  for (double v : values) {
    SystemConfig point = cfg;
    set_axis(point, axis, v);
    series.values.push_back(v);
    series.config_sha256.push_back(config_sha256(point));
    if (rescales_only(axis))
      series.points.push_back(summarize(point, shared, seed, opts.keep_samples));
    else
      series.points.push_back(run_trials(point, trials, seed, opts));
  }
  return series;
}

}  // namespace rissec::mc
