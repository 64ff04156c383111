#include "rissec/secrecy.hpp"

#include "rissec/analytic.hpp"
#include "rissec/errors.hpp"
#include "rissec/specfun.hpp"

#include "../quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace rissec::secrecy {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLn2 = std::numbers::ln2;

double ln_rho(double db) { return db * std::numbers::ln10 / 10.0; }

// Smallest y with Q(k, y) below 1e-17.
double gamma_upper_edge(double k) {
  double y = k + 10.0 * std::sqrt(k) + 40.0;
  while (specfun::gamma_q(k, y) > 1e-17) y += 5.0 * std::sqrt(k) + 10.0;
  return y;
}

bool near_integer(double d) { return std::fabs(d - std::nearbyint(d)) < 1e-9; }

bool orders_collide(const std::vector<double>& d) {
  for (std::size_t j = 1; j < d.size(); ++j)
    for (std::size_t i = 0; i < j; ++i)
      if (near_integer(d[j] - d[i])) return true;
  return false;
}

double tail_argument(const SystemConfig& cfg, const analytic::EveTailParams& tp, const analytic::GammaFit& g) {
  const double y_lo = std::max(1e-3, g.k - 3.0 * std::sqrt(g.k));
  const double x = cfg.rho_d() * g.theta * g.theta * y_lo * y_lo / cfg.phi();
  return tp.t2 * std::pow(x, tp.t3);
}

void note_tail(Diagnostics& d, const SystemConfig& cfg, const analytic::EveTailParams& tp,
               const analytic::GammaFit& g) {
  d.tail_argument = tail_argument(cfg, tp, g);
  if (d.tail_argument < 50.0) {
    std::ostringstream os;
    os << "t2*x^t3 = " << d.tail_argument << " < 50: r_e may be too small for the large-r_e form";
    d.warnings.push_back(os.str());
  }
}

Rational require_rational(double alpha2) {
  const auto r = rationalize(alpha2);
  if (!r) {
    std::ostringstream os;
    os << "alpha2 = " << alpha2 << " has no rational form p/q with q <= 16; use the quadrature path";
    throw UnsupportedPath(os.str());
  }
  return *r;
}

void require_alpha(const SystemConfig& cfg, double alpha, const char* what) {
  if (std::fabs(cfg.alpha2 - alpha) > 1e-12) {
    std::ostringstream os;
    os << what << " requires alpha2 = " << alpha;
    throw UnsupportedPath(os.str());
  }
}

}  // namespace

std::string to_string(Method m) {
  switch (m) {
    case Method::quadrature: return "quadrature";
    case Method::closed_form: return "closed_form";
    case Method::special_case_a2_2: return "special_case_a2_2";
    case Method::special_case_a2_4: return "special_case_a2_4";
    case Method::asymptotic: return "asymptotic";
  }
  return "unknown";
}

double log_outage_scale(const SystemConfig& cfg) {
  validate(cfg);
  const auto tp = analytic::varpi_xi(cfg);
  const auto g = analytic::gamma_fit(cfg);
  return std::log(tp.t0) + std::lgamma(tp.t1) + tp.t4 * (cfg.C_th - ln_rho(cfg.rho_d_dB) - 2.0 * std::log(g.theta));
}

std::vector<double> sop_meijer_orders(long p, long q, double k) {
  std::vector<double> d;
  for (long j = 0; j < p; ++j) d.push_back(static_cast<double>(j) / p);
  for (long j = 0; j < 4 * q; ++j) d.push_back((k + j) / (4.0 * q));
  std::sort(d.begin(), d.end());
  return d;
}

double sop_meijer_log_prefactor(long p, long q, double k) {
  const double half = 0.5 * (p + 4.0 * q);
  return 0.5 * std::log(static_cast<double>(p)) + (k - 0.5) * std::log(static_cast<double>(q)) -
         (half - 2.0 * k) * kLn2 - (half - 1.0) * std::log(kPi) - std::lgamma(k);
}

SecrecyResult sop_quadrature(const SystemConfig& cfg) {
  validate(cfg);
  const auto tp = analytic::varpi_xi(cfg);
  const auto g = analytic::gamma_fit(cfg);
  const double phi = cfg.phi();
  const double rho_d = cfg.rho_d();
  auto cdf_d = [&](double z) { return z <= 0 ? 0.0 : specfun::gamma_p(g.k, std::sqrt(z / rho_d) / g.theta); };
  const double f0 = analytic::cdf_gamma_e_closed(0.0, tp);

  const double y_hi = gamma_upper_edge(g.k);
  const double x_hi = std::max(((g.theta * y_hi) * (g.theta * y_hi) * rho_d + 1.0) / phi - 1.0, 1e-300);
  double w_hi = std::log(x_hi);
  double w_lo = w_hi;
  while (w_lo > -700.0 && analytic::cdf_gamma_e_closed(std::exp(w_lo), tp) - f0 > 1e-18) w_lo -= 1.0;

  auto integrand = [&](double w) {
    const double x = std::exp(w);
    return analytic::pdf_gamma_e_closed(x, tp) * x * cdf_d((1.0 + x) * phi - 1.0);
  };
  const int pieces = std::max(16, static_cast<int>(std::ceil(2.0 * (w_hi - w_lo))));
  // a probability needs only absolute accuracy; a relative target stalls when the eavesdropper
  // density is so low that the whole body is tiny
  const auto breaks = detail::linspace(w_lo, w_hi, pieces);
  detail::Quadrature body;
  for (int i = 0; i < pieces; ++i) {
    const auto piece = detail::integrate_absolute(integrand, breaks[i], breaks[i + 1], 1e-14 / pieces, 1e-12);
    body.value += piece.value;
    body.error += piece.error;
  }
  const double tail = -std::expm1(-analytic::eve_cdf_exponent(x_hi, tp));

  SecrecyResult r;
  r.method = Method::quadrature;
  r.value = std::clamp(f0 * cdf_d(phi - 1.0) + body.value + tail, 0.0, 1.0);
  r.diagnostics.quad_error = body.error;
  return r;
}

SecrecyResult sop_closed_form(const SystemConfig& cfg) {
  validate(cfg);
  const auto pq = require_rational(cfg.alpha2);
  const auto g = analytic::gamma_fit(cfg);
  const auto tp = analytic::varpi_xi(cfg);
  SecrecyResult r;
  r.method = Method::closed_form;
  double k = g.k;
  auto orders = sop_meijer_orders(pq.p, pq.q, k);
  if (orders_collide(orders)) {
    k += 1e-9 * (1.0 + std::fabs(k));
    orders = sop_meijer_orders(pq.p, pq.q, k);
    r.diagnostics.perturbed = true;
  }
  const double p = static_cast<double>(pq.p), q4 = 4.0 * pq.q;
  const double log_x = p * log_outage_scale(cfg) - p * std::log(p) - q4 * std::log(q4);
  const auto ev = specfun::meijer_g_m0_0m_complement({orders, std::exp(log_x)});
  r.value = std::clamp(ev.value, 0.0, 1.0);
  r.diagnostics.series_terms = ev.terms;
  r.diagnostics.precision_bits = ev.precision_bits;
  r.diagnostics.perturbed = r.diagnostics.perturbed || ev.perturbed;
  note_tail(r.diagnostics, cfg, tp, g);
  return r;
}

SecrecyResult sop_free_space(const SystemConfig& cfg) {
  validate(cfg);
  require_alpha(cfg, 2.0, "sop_free_space");
  const auto g = analytic::gamma_fit(cfg);
  SecrecyResult r;
  r.method = Method::special_case_a2_2;
  double k = g.k;
  if (orders_collide({0.0, 0.5 * k, 0.5 * (k + 1.0)})) {
    k += 1e-9 * (1.0 + std::fabs(k));
    r.diagnostics.perturbed = true;
  }
  const double x = std::exp(log_outage_scale(cfg)) / 4.0;
  const auto ev = specfun::meijer_g_m0_0m_complement({{0.0, 0.5 * k, 0.5 * (k + 1.0)}, x});
  r.value = std::clamp(ev.value, 0.0, 1.0);
  r.diagnostics.series_terms = ev.terms;
  r.diagnostics.precision_bits = ev.precision_bits;
  note_tail(r.diagnostics, cfg, analytic::varpi_xi(cfg), g);
  return r;
}

SecrecyResult sop_bessel_a2_4(const SystemConfig& cfg) {
  validate(cfg);
  require_alpha(cfg, 4.0, "sop_bessel_a2_4");
  const auto g = analytic::gamma_fit(cfg);
  const double log_c = log_outage_scale(cfg);
  const double c = std::exp(log_c);
  const double log_term = kLn2 - std::lgamma(g.k) + 0.5 * g.k * log_c + specfun::log_bessel_k(g.k, 2.0 * std::sqrt(c));
  SecrecyResult r;
  r.method = Method::special_case_a2_4;
  r.value = std::clamp(-std::expm1(log_term), 0.0, 1.0);
  note_tail(r.diagnostics, cfg, analytic::varpi_xi(cfg), g);
  return r;
}

SecrecyResult sop_asymptotic(const SystemConfig& cfg) {
  validate(cfg);
  const auto g = analytic::gamma_fit(cfg);
  const double shift = 4.0 / cfg.alpha2;
  if (!(g.k > shift)) {
    std::ostringstream os;
    os << "asymptotic SOP requires k > 4/alpha2 (k = " << g.k << ", 4/alpha2 = " << shift << ")";
    throw UnsupportedPath(os.str());
  }
  SecrecyResult r;
  r.method = Method::asymptotic;
  r.value = std::min(1.0, std::exp(log_outage_scale(cfg) + std::lgamma(g.k - shift) - std::lgamma(g.k)));
  return r;
}

DiversityOrder secrecy_diversity_order(const SystemConfig& cfg, double lo_dB, double hi_dB) {
  SystemConfig lo = cfg, hi = cfg;
  lo.rho_d_dB = lo_dB;
  hi.rho_d_dB = hi_dB;
  const double s_lo = sop_closed_form(lo).value, s_hi = sop_closed_form(hi).value;
  return {2.0 / cfg.alpha2, -(std::log(s_hi) - std::log(s_lo)) / (ln_rho(hi_dB) - ln_rho(lo_dB))};
}

double rd_quadrature(const SystemConfig& cfg) {
  validate(cfg);
  const auto g = analytic::gamma_fit(cfg);
  const double a = cfg.rho_d() * g.theta * g.theta;
  const double y_hi = gamma_upper_edge(g.k);
  // int_0^inf Q(k,y) d ln(1 + a y^2); the positive form keeps relative accuracy when a is tiny
  auto integrand = [&](double y) { return specfun::gamma_q(g.k, y) * 2.0 * a * y / (1.0 + a * y * y); };
  std::vector<double> breaks{0.0};
  const double sk = std::sqrt(g.k);
  for (double f : {-8.0, -4.0, -2.0, -1.0, 0.0, 1.0, 2.0, 4.0, 8.0}) {
    const double y = g.k + f * sk;
    if (y > breaks.back() && y < y_hi) breaks.push_back(y);
  }
  breaks.push_back(y_hi);
  const auto body = detail::integrate_pieces(integrand, breaks, 1e-13);
  return body.value / kLn2;
}

double rd_closed_form(const SystemConfig& cfg) {
  validate(cfg);
  const auto g = analytic::gamma_fit(cfg);
  const double z = 1.0 / (4.0 * cfg.rho_d() * g.theta * g.theta);
  const double log_scale = (g.k - 0.5) * kLn2 - 0.5 * std::log(2.0 * kPi) - std::lgamma(g.k);
  specfun::MeijerContour spec{{0.0, 1.0}, {0.0, 0.0, 0.5 * g.k, 0.5 * (g.k + 1.0)}, 4, 1, -0.5};
  return specfun::meijer_g_contour(spec, z, log_scale) / kLn2;
}

double re_quadrature(const SystemConfig& cfg) {
  validate(cfg);
  const auto tp = analytic::varpi_xi(cfg);
  const double c = tp.t0 * std::tgamma(tp.t1);
  // beyond x_star the exponent is below 1e-12 and 1 - F_E ~ t0 Gamma(t1) x^{-t4}
  const double x_star = std::pow(c / 1e-12, 1.0 / tp.t4);
  const double w_lo = -40.0, w_hi = std::log(x_star);
  auto integrand = [&](double w) {
    const double x = std::exp(w);
    return -std::expm1(-analytic::eve_cdf_exponent(x, tp)) * x / (1.0 + x);
  };
  const int pieces = std::max(16, static_cast<int>(std::ceil(w_hi - w_lo)));
  const auto body = detail::integrate_pieces(integrand, detail::linspace(w_lo, w_hi, pieces), 1e-12);
  const double head = -std::expm1(-analytic::eve_cdf_exponent(0.0, tp)) * std::log1p(std::exp(w_lo));
  const double tail = c * std::pow(x_star, -tp.t4) / tp.t4;
  return (head + body.value + tail) / kLn2;
}

double re_a2_2(const SystemConfig& cfg) {
  validate(cfg);
  require_alpha(cfg, 2.0, "re_a2_2");
  const auto tp = analytic::varpi_xi(cfg);
  const double c = tp.t0 * std::tgamma(tp.t1);
  return (specfun::kEulerGamma + std::log(c) + specfun::exp_scaled_shi_minus_chi(c)) / kLn2;
}

double re_a2_4(const SystemConfig& cfg) {
  validate(cfg);
  require_alpha(cfg, 4.0, "re_a2_4");
  const auto tp = analytic::varpi_xi(cfg);
  const double c = tp.t0 * std::tgamma(tp.t1);
  specfun::MeijerContour spec{{1.0, 1.0}, {0.5, 1.0, 1.0, 0.0}, 3, 2, 0.25};
  return specfun::meijer_g_contour(spec, 0.25 * c * c) / (std::sqrt(kPi) * kLn2);
}

namespace {

SecrecyResult esc_with(const SystemConfig& cfg, Method method, double re) {
  SecrecyResult r;
  r.method = method;
  r.diagnostics.rd_closed = rd_closed_form(cfg);
  r.diagnostics.rd_quadrature = rd_quadrature(cfg);
  r.diagnostics.re = re;
  const double gap = std::fabs(r.diagnostics.rd_closed - r.diagnostics.rd_quadrature);
  if (gap > 1e-6 * std::max(1.0, std::fabs(r.diagnostics.rd_quadrature)))
    throw ConvergenceError("R_D closed form and quadrature disagree", r.diagnostics.rd_quadrature, gap);
  r.value = std::max(0.0, r.diagnostics.rd_closed - re);
  return r;
}

}  // namespace

SecrecyResult esc(const SystemConfig& cfg) { return esc_with(cfg, Method::quadrature, re_quadrature(cfg)); }

SecrecyResult esc_a2_2(const SystemConfig& cfg) {
  auto r = esc_with(cfg, Method::special_case_a2_2, re_a2_2(cfg));
  note_tail(r.diagnostics, cfg, analytic::varpi_xi(cfg), analytic::gamma_fit(cfg));
  return r;
}

SecrecyResult esc_a2_4(const SystemConfig& cfg) {
  auto r = esc_with(cfg, Method::special_case_a2_4, re_a2_4(cfg));
  note_tail(r.diagnostics, cfg, analytic::varpi_xi(cfg), analytic::gamma_fit(cfg));
  return r;
}

double rd_upper_bound(const SystemConfig& cfg) {
  validate(cfg);
  const double eps = cfg.epsilon;
  const double L = specfun::laguerre_half(eps);
  const double n = cfg.N;
  const double gain = 1.0 + 0.25 * kPi * (n - 1.0) * L * L / (eps + 1.0);
  return std::log1p(cfg.rho_d() * cfg.K * n * cfg.nu() * cfg.mu_D() * gain) / kLn2;
}

SecrecyResult esc_asymptotic(const SystemConfig& cfg) {
  validate(cfg);
  const auto tp = analytic::varpi_xi(cfg);
  const double eps = cfg.epsilon;
  const double L = specfun::laguerre_half(eps);
  const double n = cfg.N;
  const double q = eps * eps / (0.25 * kPi * (eps + 1.0) * L * L);
  const double fit_const = std::log2(tp.mu * std::exp(2.0 * tp.v / tp.mu) / std::tgamma(2.0 / tp.mu));
  const double snr_ratio = (cfg.rho_d_dB - cfg.rho_e_dB) * std::log2(10.0) / 10.0;
  const double geometry = -2.0 * std::log2(cfg.d_RD) - std::log2(kPi) - std::log2(cfg.lambda_e);
  const double array = std::log2((1.0 + (n - 1.0) * 0.25 * kPi * L * L / (eps + 1.0)) / (1.0 - q));
  SecrecyResult r;
  r.method = Method::asymptotic;
  r.value = std::max(0.0, snr_ratio + geometry - specfun::kEulerGamma / kLn2 + fit_const + array);
  if (std::fabs(cfg.alpha2 - 2.0) > 1e-12)
    r.diagnostics.warnings.push_back("high-SNR ESC expression is derived for alpha2 = 2");
  return r;
}

}  // namespace rissec::secrecy
