#pragma once

#include "rissec/rng.hpp"

#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace rissec {

using cplx = std::complex<double>;

struct Direction {
  double azimuth = 0.0;
  double elevation = 0.0;
};

enum class EveAngleMode { reference, geometric };

struct SystemConfig {
  int K = 16;
  int N = 36;
  double epsilon = 2.0;                 // RIS-to-ground Rician factor
  std::optional<double> epsilon1;       // BS-to-RIS Rician factor; empty means pure LoS
  double alpha1 = 2.0;
  double alpha2 = 2.0;
  double beta0 = 10.0;
  double d_SR = 30.0;
  double d_RD = 40.0;
  double r_e = 200.0;
  double lambda_e = 1e-3;
  double rho_d_dB = 60.0;
  double rho_e_dB = 30.0;
  double C_th = 0.05;                   // nats
  double element_spacing_ratio = 0.5;
  Direction bs_departure{std::numbers::pi / 6, std::numbers::pi / 3};
  Direction ris_arrival{std::numbers::pi / 3, std::numbers::pi / 4};
  Direction user{std::numbers::pi / 4, std::numbers::pi / 3};
  Direction eve_reference{std::numbers::pi / 4 + std::numbers::pi / 3,
                          std::numbers::pi / 3 + std::numbers::pi / 6};
  EveAngleMode eve_angle_mode = EveAngleMode::reference;
  double h_RIS = 10.0;

  double nu() const;
  double mu_D() const;
  double mu_at(double r) const;
  double rho_d() const;
  double rho_e() const;
  double phi() const;
  bool dual_rician() const { return epsilon1.has_value(); }
};

// Throws ConfigError naming the first offending field.
void validate(const SystemConfig& cfg);

double db_to_linear(double db);
double path_loss(double beta0, double d, double alpha);

struct Rational {
  long p;
  long q;
};
// Continued-fraction p/q with q <= max_q and |alpha - p/q| <= tol.
std::optional<Rational> rationalize(double alpha, long max_q = 16, long max_p = 64, double tol = 1e-9);

int square_side(int Z);  // throws ConfigError unless Z is a positive perfect square

// Planar-array response; element n sits at (x, y) = (n / side, n % side).
std::vector<cplx> array_response(int Z, double azimuth, double elevation, double spacing_ratio);

struct EavesdropperPosition {
  double radius;
  double angle;
};

struct ChannelRealization {
  int N = 0;
  int K = 0;
  double nu = 0.0;
  std::vector<cplx> H_SR;  // N x K, row-major
  std::vector<cplx> h_RD;
  std::vector<EavesdropperPosition> eaves;
  std::vector<cplx> h_RE;  // eaves.size() x N, row-major
  std::vector<cplx> a_N_SR;
  std::vector<cplx> a_K_SR;
  std::uint64_t seed = 0;
  std::uint64_t trial = 0;

  std::span<const cplx> eve_channel(std::size_t m) const {
    return {h_RE.data() + m * static_cast<std::size_t>(N), static_cast<std::size_t>(N)};
  }
};

// Geometry cached once per configuration; sample() fills a reusable realization.
class ChannelSampler {
 public:
  explicit ChannelSampler(const SystemConfig& cfg);
  void sample(RngStream& rng, ChannelRealization& out) const;
  const SystemConfig& config() const { return cfg_; }

 private:
  SystemConfig cfg_;
  double nu_, mu_d_;
  std::vector<cplx> a_n_sr_, a_k_sr_, a_rd_, a_ref_;
};

ChannelRealization sample_channels(const SystemConfig& cfg, RngStream& rng);

}  // namespace rissec
