#include "rissec/sysmodel.hpp"

#include "rissec/errors.hpp"

#include <cmath>
#include <string>

namespace rissec {

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

bool finite_direction(const Direction& d) {
  return std::isfinite(d.azimuth) && std::isfinite(d.elevation);
}

}  // namespace

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double path_loss(double beta0, double d, double alpha) {
  if (!(d > 0) || !std::isfinite(d)) throw ConfigError("path_loss: distance must be > 0");
  return beta0 * std::pow(d, -alpha);
}

double SystemConfig::nu() const { return path_loss(beta0, d_SR, alpha1); }
double SystemConfig::mu_D() const { return path_loss(beta0, d_RD, alpha2); }
double SystemConfig::mu_at(double r) const { return path_loss(beta0, r, alpha2); }
double SystemConfig::rho_d() const { return db_to_linear(rho_d_dB); }
double SystemConfig::rho_e() const { return db_to_linear(rho_e_dB); }
double SystemConfig::phi() const { return std::exp(C_th); }

int square_side(int Z) {
  if (Z < 1) throw ConfigError("array size must be a positive perfect square");
  const int s = static_cast<int>(std::lround(std::sqrt(static_cast<double>(Z))));
  if (s * s != Z) throw ConfigError("array size must be a positive perfect square");
  return s;
}

void validate(const SystemConfig& c) {
  auto square = [](int z) {
    if (z < 1) return false;
    const int s = static_cast<int>(std::lround(std::sqrt(static_cast<double>(z))));
    return s * s == z;
  };
  require(square(c.K), "K must be a positive perfect square");
  require(square(c.N), "N must be a positive perfect square");
  require(std::isfinite(c.epsilon) && c.epsilon >= 0, "epsilon must be >= 0");
  if (c.epsilon1)
    require(std::isfinite(*c.epsilon1) && *c.epsilon1 >= 0, "epsilon1 must be >= 0");
  require(std::isfinite(c.alpha1) && c.alpha1 >= 2, "alpha1 must be >= 2");
  require(std::isfinite(c.alpha2) && c.alpha2 >= 2, "alpha2 must be >= 2");
  require(std::isfinite(c.beta0) && c.beta0 > 0, "beta0 must be > 0");
  require(std::isfinite(c.d_SR) && c.d_SR > 0, "d_SR must be > 0");
  require(std::isfinite(c.d_RD) && c.d_RD > 0, "d_RD must be > 0");
  require(std::isfinite(c.r_e) && c.r_e > 0, "r_e must be > 0");
  require(std::isfinite(c.lambda_e) && c.lambda_e > 0, "lambda_e must be > 0");
  require(std::isfinite(c.rho_d_dB), "rho_d_dB must be finite");
  require(std::isfinite(c.rho_e_dB), "rho_e_dB must be finite");
  require(std::isfinite(c.C_th) && c.C_th >= 0, "C_th must be >= 0");
  require(std::isfinite(c.element_spacing_ratio) && c.element_spacing_ratio > 0,
          "element_spacing_ratio must be > 0");
  require(std::isfinite(c.h_RIS) && c.h_RIS > 0, "h_RIS must be > 0");
  require(finite_direction(c.bs_departure) && finite_direction(c.ris_arrival) &&
              finite_direction(c.user) && finite_direction(c.eve_reference),
          "angles must be finite");
}

std::optional<Rational> rationalize(double alpha, long max_q, long max_p, double tol) {
  if (!std::isfinite(alpha) || alpha <= 0) return std::nullopt;
  long h_prev = 1, h_prev2 = 0, k_prev = 0, k_prev2 = 1;
  double x = alpha;
  for (int iter = 0; iter < 64; ++iter) {
    const double a = std::floor(x);
    const long ai = static_cast<long>(a);
    const long h = ai * h_prev + h_prev2;
    const long k = ai * k_prev + k_prev2;
    if (k > max_q || h > max_p) break;
    if (std::fabs(alpha - static_cast<double>(h) / static_cast<double>(k)) <= tol)
      return Rational{h, k};
    h_prev2 = h_prev;
    h_prev = h;
    k_prev2 = k_prev;
    k_prev = k;
    const double frac = x - a;
    if (frac < 1e-15) break;
    x = 1.0 / frac;
  }
  return std::nullopt;
}

std::vector<cplx> array_response(int Z, double azimuth, double elevation, double spacing_ratio) {
  const int side = square_side(Z);
  const double u = std::sin(azimuth) * std::sin(elevation);
  const double v = std::cos(elevation);
  const double w = 2.0 * std::numbers::pi * spacing_ratio;
  std::vector<cplx> a(Z);
  for (int n = 0; n < Z; ++n) {
    const int x = n / side, y = n % side;
    a[n] = std::polar(1.0, w * (x * u + y * v));
  }
  return a;
}

ChannelSampler::ChannelSampler(const SystemConfig& cfg) : cfg_(cfg) {
  validate(cfg_);
  nu_ = cfg_.nu();
  mu_d_ = cfg_.mu_D();
  const double c = cfg_.element_spacing_ratio;
  a_n_sr_ = array_response(cfg_.N, cfg_.ris_arrival.azimuth, cfg_.ris_arrival.elevation, c);
  a_k_sr_ = array_response(cfg_.K, cfg_.bs_departure.azimuth, cfg_.bs_departure.elevation, c);
  a_rd_ = array_response(cfg_.N, cfg_.user.azimuth, cfg_.user.elevation, c);
  a_ref_ = array_response(cfg_.N, cfg_.eve_reference.azimuth, cfg_.eve_reference.elevation, c);
}

void ChannelSampler::sample(RngStream& rng, ChannelRealization& out) const {
  const int N = cfg_.N, K = cfg_.K;
  out.N = N;
  out.K = K;
  out.nu = nu_;
  out.seed = rng.seed();
  out.trial = rng.stream();
  out.a_N_SR = a_n_sr_;
  out.a_K_SR = a_k_sr_;

  const double eps = cfg_.epsilon;
  const double los = std::sqrt(eps / (eps + 1.0));
  const double nlos = std::sqrt(1.0 / (eps + 1.0));

  out.h_RD.resize(N);
  const double amp_d = std::sqrt(mu_d_);
  for (int n = 0; n < N; ++n) out.h_RD[n] = amp_d * (los * a_rd_[n] + nlos * rng.complex_normal());

  out.H_SR.resize(static_cast<std::size_t>(N) * K);
  const double amp_sr = std::sqrt(nu_);
  if (cfg_.epsilon1) {
    const double e1 = *cfg_.epsilon1;
    const double los1 = std::sqrt(e1 / (e1 + 1.0));
    const double nlos1 = std::sqrt(1.0 / (e1 + 1.0));
    for (int n = 0; n < N; ++n)
      for (int k = 0; k < K; ++k)
        out.H_SR[n * K + k] =
            amp_sr * (los1 * a_n_sr_[n] * std::conj(a_k_sr_[k]) + nlos1 * rng.complex_normal());
  } else {
    for (int n = 0; n < N; ++n)
      for (int k = 0; k < K; ++k) out.H_SR[n * K + k] = amp_sr * a_n_sr_[n] * std::conj(a_k_sr_[k]);
  }

  const std::size_t M = rng.poisson(cfg_.lambda_e * std::numbers::pi * cfg_.r_e * cfg_.r_e);
  out.eaves.resize(M);
  out.h_RE.resize(M * static_cast<std::size_t>(N));
  std::vector<cplx> geometric;
  for (std::size_t m = 0; m < M; ++m) {
    const double r = cfg_.r_e * std::sqrt(rng.uniform());
    const double ang = 2.0 * std::numbers::pi * rng.uniform();
    out.eaves[m] = {r, ang};
    const std::vector<cplx>* steer = &a_ref_;
    if (cfg_.eve_angle_mode == EveAngleMode::geometric) {
      geometric = array_response(N, ang, std::atan2(cfg_.h_RIS, r), cfg_.element_spacing_ratio);
      steer = &geometric;
    }
    const double amp = std::sqrt(cfg_.mu_at(r));
    cplx* h = out.h_RE.data() + m * N;
    for (int n = 0; n < N; ++n) h[n] = amp * (los * (*steer)[n] + nlos * rng.complex_normal());
  }
}

ChannelRealization sample_channels(const SystemConfig& cfg, RngStream& rng) {
  ChannelRealization out;
  ChannelSampler(cfg).sample(rng, out);
  return out;
}

}  // namespace rissec
