#include "rissec/analytic.hpp"

#include "rissec/specfun.hpp"

#include "../quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rissec::analytic {

namespace {

constexpr double kPi = std::numbers::pi;

double gain_ratio(double eps, double L) {  // eps^2 / ((pi/4)(eps+1) L^2)
  return eps * eps / (0.25 * kPi * (eps + 1.0) * L * L);
}

struct Deltas {
  double d1, d2;
};

Deltas deltas(const Direction& user, const Direction& eve) {
  return {std::sin(user.azimuth) * std::sin(user.elevation) - std::sin(eve.azimuth) * std::sin(eve.elevation),
          std::cos(user.elevation) - std::cos(eve.elevation)};
}

double lower_gamma_scaled(double t1, double u, double x, double t4) {  // gamma(t1, u) x^{-t4}
  if (u < 1e-8) return std::exp(t1 * std::log(u) - std::log(t1) - t4 * std::log(x)) * (1.0 - t1 * u / (t1 + 1.0));
  return specfun::lower_incomplete_gamma(t1, u) * std::pow(x, -t4);
}

}  // namespace

GammaFit gamma_fit(const SystemConfig& cfg) {
  const double eps = cfg.epsilon;
  if (!(eps >= 0)) throw std::domain_error("gamma_fit: epsilon must be >= 0");
  const double L = specfun::laguerre_half(eps);
  const double c = 0.25 * kPi * L * L;
  const double spread = 1.0 + eps - c;
  GammaFit g;
  g.k = cfg.N * c / spread;
  g.theta = std::sqrt(static_cast<double>(cfg.K)) * std::sqrt(cfg.mu_D() * cfg.nu() / (eps + 1.0)) * spread /
            (0.5 * std::sqrt(kPi) * L);
  return g;
}

double cdf_gamma_d(double x, const SystemConfig& cfg) {
  if (!(x >= 0)) throw std::domain_error("cdf_gamma_d: x must be >= 0");
  if (x == 0) return 0.0;
  if (std::isinf(x)) return 1.0;
  const auto g = gamma_fit(cfg);
  return specfun::gamma_p(g.k, std::sqrt(x / cfg.rho_d()) / g.theta);
}

double pdf_gamma_d(double x, const SystemConfig& cfg) {
  if (!(x >= 0)) throw std::domain_error("pdf_gamma_d: x must be >= 0");
  if (x == 0 || std::isinf(x)) return 0.0;
  const auto g = gamma_fit(cfg);
  const double y = std::sqrt(x / cfg.rho_d()) / g.theta;
  return std::exp(-y + g.k * std::log(y) - std::lgamma(g.k) - std::log(2.0 * x));
}

double mean_gamma_d(const SystemConfig& cfg) {
  const double L = specfun::laguerre_half(cfg.epsilon);
  const double n = cfg.N;
  return kPi * L * L / (4.0 * (cfg.epsilon + 1.0)) * cfg.rho_d() * cfg.mu_D() * cfg.nu() * cfg.K * n * n;
}

double array_factor(int N, double spacing_ratio, double delta) {
  const double s = std::sqrt(static_cast<double>(N));
  const double a = kPi * spacing_ratio * delta;
  const double den = std::sin(a);
  if (std::fabs(den) < 1e-8) return s * std::cos(s * a) / std::cos(a);
  return std::sin(s * a) / den;
}

double phase_moment(double eps, PhaseMoment kind) {
  if (eps == 0) return 0.0;
  if (kind == PhaseMoment::paper) return std::sqrt(eps) / (0.5 * std::sqrt(kPi) * specfun::laguerre_half(eps));
  const double h = 0.5 * eps;
  return 0.5 * std::sqrt(kPi * eps) * (specfun::bessel_i_scaled(0, h) + specfun::bessel_i_scaled(1, h));
}

EveGaussFit eve_gauss_fit(const SystemConfig& cfg, double radius, const Direction& eve, PhaseMoment kind) {
  if (!(radius > 0)) throw std::domain_error("eve_gauss_fit: radius must be > 0");
  const double eps = cfg.epsilon;
  const double mu_e = cfg.mu_at(radius);
  const double rho = phase_moment(eps, kind);
  const auto d = deltas(cfg.user, eve);
  const double c = cfg.element_spacing_ratio;
  const double s = std::sqrt(static_cast<double>(cfg.N));
  const double r1 = array_factor(cfg.N, c, d.d1), r2 = array_factor(cfg.N, c, d.d2);
  const double amp = std::sqrt(mu_e * eps / (eps + 1.0)) * rho;
  EveGaussFit fit;
  fit.mean = amp * r1 * r2 * std::polar(1.0, kPi * c * (s - 1.0) * (d.d1 + d.d2));
  fit.variance = cfg.N * mu_e * (1.0 - eps * rho * rho / (eps + 1.0));
  if (!(fit.variance > 0)) throw std::logic_error("eve_gauss_fit: non-positive variance");
  return fit;
}

EveTailParams varpi_xi(const SystemConfig& cfg, const Direction& reference) {
  const double eps = cfg.epsilon;
  const double L = specfun::laguerre_half(eps);
  const double q = gain_ratio(eps, L);
  const auto d = deltas(cfg.user, reference);
  const double c = cfg.element_spacing_ratio;
  const double r12 = std::fabs(array_factor(cfg.N, c, d.d1) * array_factor(cfg.N, c, d.d2));
  const double n = cfg.N;
  const double a2 = cfg.alpha2;
  const double unit = cfg.rho_e() * cfg.K * cfg.nu() * cfg.beta0;

  EveTailParams tp;
  tp.varpi = std::numbers::sqrt2 * r12 * eps / std::sqrt(n * (0.25 * kPi * (eps + 1.0) * L * L - eps * eps));
  tp.Xi = std::numbers::sqrt2 / std::sqrt(n * unit * (1.0 - q));
  tp.v = specfun::marcum_fit_v(tp.varpi);
  tp.mu = specfun::marcum_fit_mu(tp.varpi);
  tp.t1 = 4.0 / (a2 * tp.mu);
  tp.t3 = 0.5 * tp.mu;
  tp.t4 = 2.0 / a2;
  tp.t2 = std::exp(tp.v) * std::pow(tp.Xi, tp.mu) * std::pow(cfg.r_e, 0.5 * a2 * tp.mu);
  tp.t0 = 2.0 * kPi * cfg.lambda_e /
          (0.5 * a2 * tp.mu * std::exp(4.0 * tp.v / (a2 * tp.mu)) * std::pow(tp.Xi, 4.0 / a2));
  tp.s = std::sqrt(unit * q) * r12;
  tp.sigma2 = 0.5 * unit * n * (1.0 - q);
  return tp;
}

EveTailParams varpi_xi(const SystemConfig& cfg) { return varpi_xi(cfg, cfg.eve_reference); }

double cdf_gamma_e_single(double x, const SystemConfig& cfg, double radius, const Direction& eve) {
  if (!(x >= 0)) throw std::domain_error("cdf_gamma_e_single: x must be >= 0");
  if (!(radius > 0)) throw std::domain_error("cdf_gamma_e_single: radius must be > 0");
  const auto fit = eve_gauss_fit(cfg, radius, eve);
  const double scale = cfg.rho_e() * cfg.K * cfg.nu();
  const double s = std::sqrt(scale) * std::abs(fit.mean);
  const double sigma = std::sqrt(0.5 * scale * fit.variance);
  return 1.0 - specfun::marcum_q1(s / sigma, std::sqrt(x) / sigma);
}

double cdf_gamma_e(double x, const SystemConfig& cfg, MarcumKernel kernel) {
  if (!(x >= 0)) throw std::domain_error("cdf_gamma_e: x must be >= 0");
  if (std::isinf(x)) return 1.0;
  const auto tp = varpi_xi(cfg);
  const double a2 = cfg.alpha2;
  const double scale = tp.Xi * std::sqrt(x);
  auto q = [&](double r) {
    const double z = scale * std::pow(r, 0.5 * a2);
    const double tail = kernel == MarcumKernel::exact ? specfun::marcum_q1(tp.varpi, z)
                                                      : specfun::marcum_q1_exp_approx(tp.varpi, z);
    return tail * r;
  };
  std::vector<double> breaks{0.0};
  if (scale > 0) {
    const double r_star = std::pow((tp.varpi + 1.0) / scale, 2.0 / a2);
    for (double f : {0.125, 0.25, 0.5, 1.0, 1.5, 2.0, 4.0, 8.0})
      if (f * r_star < cfg.r_e) breaks.push_back(f * r_star);
  }
  breaks.push_back(cfg.r_e);
  // absolute target: the tail pieces hold denormal-sized values a relative target cannot settle
  const double coarse = detail::integrate_pieces(q, breaks, 1e-6, 3).value;
  double integral = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
    integral += detail::integrate_absolute(q, breaks[i], breaks[i + 1], 1e-13 * coarse / breaks.size(), 1e-11).value;
  return std::exp(-2.0 * kPi * cfg.lambda_e * integral);
}

double eve_cdf_exponent(double x, const EveTailParams& tp) {
  if (!(x >= 0)) throw std::domain_error("eve_cdf_exponent: x must be >= 0");
  if (std::isinf(x)) return 0.0;
  if (x == 0) return tp.t0 * std::pow(tp.t2, tp.t1) / tp.t1;
  const double u = tp.t2 * std::pow(x, tp.t3);
  return tp.t0 * lower_gamma_scaled(tp.t1, u, x, tp.t4);
}

double cdf_gamma_e_closed(double x, const EveTailParams& tp) {
  if (!(x >= 0)) throw std::domain_error("cdf_gamma_e_closed: x must be >= 0");
  return std::exp(-eve_cdf_exponent(x, tp));
}

double cdf_gamma_e_closed(double x, const SystemConfig& cfg) { return cdf_gamma_e_closed(x, varpi_xi(cfg)); }

double pdf_gamma_e_closed(double x, const EveTailParams& tp) {
  if (!(x >= 0)) throw std::domain_error("pdf_gamma_e_closed: x must be >= 0");
  if (x == 0 || std::isinf(x)) return 0.0;
  const double u = tp.t2 * std::pow(x, tp.t3);
  const double lx = std::log(x);
  const double a = tp.t4 * lower_gamma_scaled(tp.t1, u, x, tp.t4) / x;
  const double b = tp.t3 * std::exp(tp.t1 * std::log(u) - u - (tp.t4 + 1.0) * lx);
  return cdf_gamma_e_closed(x, tp) * tp.t0 * std::max(0.0, a - b);
}

double pdf_gamma_e_closed(double x, const SystemConfig& cfg) { return pdf_gamma_e_closed(x, varpi_xi(cfg)); }

double cdf_gamma_e_asymptotic(double x, const SystemConfig& cfg) {
  if (!(x >= 0)) throw std::domain_error("cdf_gamma_e_asymptotic: x must be >= 0");
  if (x == 0) return 0.0;
  const auto tp = varpi_xi(cfg);
  return std::exp(-tp.t0 * std::tgamma(tp.t1) * std::pow(x, -tp.t4));
}

}  // namespace rissec::analytic
