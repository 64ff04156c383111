#include "rissec/specfun.hpp"

#include <boost/math/special_functions/bessel.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace rissec::specfun {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) throw std::domain_error(std::string(what) + ": non-finite argument");
}

// 1/Gamma(z) = sum c[k] z^k, k >= 1 (Abramowitz & Stegun 6.1.34).
constexpr double kInvGamma[] = {0.0,
                                1.0,
                                0.5772156649015329,
                                -0.6558780715202538,
                                -0.0420026350340952,
                                0.1665386113822915,
                                -0.0421977345555443,
                                -0.0096219715278770,
                                0.0072189432466630,
                                -0.0011651675918591,
                                -0.0002152416741149,
                                0.0001280502823882,
                                -0.0000201348547807};

struct TemmeGammas {
  double gam1, gam2, gampl, gammi;
};

TemmeGammas temme_gammas(double mu) {
  TemmeGammas g;
  g.gampl = 1.0 / std::tgamma(1.0 + mu);
  g.gammi = 1.0 / std::tgamma(1.0 - mu);
  g.gam2 = 0.5 * (g.gammi + g.gampl);
  if (std::fabs(mu) <= 0.1) {
    double s = 0.0, p = 1.0;
    for (int k = 2; k <= 12; k += 2) {
      s += kInvGamma[k] * p;
      p *= mu * mu;
    }
    g.gam1 = -s;
  } else {
    g.gam1 = (g.gammi - g.gampl) / (2.0 * mu);
  }
  return g;
}

// K_mu and K_{mu+1} for |mu| <= 1/2, returned as (value, value, log scale).
struct KPair {
  double kmu, k1, log_scale;
};

KPair k_pair_temme(double mu, double x) {
  const double x2 = 0.5 * x;
  const double pimu = std::numbers::pi * mu;
  const double fact = std::fabs(pimu) < kEps ? 1.0 : pimu / std::sin(pimu);
  double d = -std::log(x2);
  double e = mu * d;
  const double fact2 = std::fabs(e) < kEps ? 1.0 : std::sinh(e) / e;
  const auto g = temme_gammas(mu);
  double ff = fact * (g.gam1 * std::cosh(e) + g.gam2 * fact2 * d);
  double sum = ff;
  e = std::exp(e);
  double p = 0.5 * e / g.gampl;
  double q = 0.5 / (e * g.gammi);
  double c = 1.0;
  d = x2 * x2;
  double sum1 = p;
  for (int i = 1; i < 10000; ++i) {
    ff = (i * ff + p + q) / (i * static_cast<double>(i) - mu * mu);
    c *= d / i;
    p /= i - mu;
    q /= i + mu;
    const double del = c * ff;
    sum += del;
    sum1 += c * (p - i * ff);
    if (std::fabs(del) < std::fabs(sum) * kEps) break;
  }
  return {sum, sum1 * 2.0 / x, 0.0};
}

KPair k_pair_steed(double mu, double x) {
  double b = 2.0 * (1.0 + x);
  double d = 1.0 / b;
  double h = d, delh = d;
  double q1 = 0.0, q2 = 1.0;
  const double a1 = 0.25 - mu * mu;
  double q = a1, c = a1;
  double a = -a1;
  double s = 1.0 + q * delh;
  for (int i = 2; i < 100000; ++i) {
    a -= 2.0 * (i - 1);
    c = -a * c / i;
    const double qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0;
    d = 1.0 / (b + a * d);
    delh = (b * d - 1.0) * delh;
    h += delh;
    const double dels = q * delh;
    s += dels;
    if (std::fabs(dels / s) < kEps) break;
  }
  h *= a1;
  // K_mu = sqrt(pi/2x) e^{-x} / s, carried in log scale.
  const double log_scale = 0.5 * std::log(std::numbers::pi / (2.0 * x)) - x - std::log(s);
  const double kmu = 1.0;
  const double k1 = kmu * (mu + x + 0.5 - h) / x;
  return {kmu, k1, log_scale};
}

}  // namespace

double bessel_i_scaled(int order, double x) {
  if (order != 0 && order != 1) throw std::domain_error("bessel_i: order must be 0 or 1");
  require_finite(x, "bessel_i");
  if (x < 0) throw std::domain_error("bessel_i: x must be >= 0");
  if (x < 700.0) return boost::math::cyl_bessel_i(order, x) * std::exp(-x);
  const double mu = 4.0 * order * order;
  double term = 1.0, sum = 1.0;
  for (int k = 1; k < 40; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= -(mu - odd * odd) / (k * 8.0 * x);
    sum += term;
    if (std::fabs(term) < 1e-17 * std::fabs(sum)) break;
  }
  return sum / std::sqrt(2.0 * std::numbers::pi * x);
}

double bessel_i(int order, double x) {
  if (order != 0 && order != 1) throw std::domain_error("bessel_i: order must be 0 or 1");
  require_finite(x, "bessel_i");
  if (x < 0) throw std::domain_error("bessel_i: x must be >= 0");
  return boost::math::cyl_bessel_i(order, x);
}

double laguerre_half(double eps) {
  require_finite(eps, "laguerre_half");
  if (eps < 0) throw std::domain_error("laguerre_half: argument must be >= 0");
  const double h = 0.5 * eps;
  return (1.0 + eps) * bessel_i_scaled(0, h) + eps * bessel_i_scaled(1, h);
}

double log_bessel_k(double order, double x) {
  require_finite(order, "bessel_k");
  require_finite(x, "bessel_k");
  if (!(x > 0)) throw std::domain_error("bessel_k: x must be > 0");
  const double nu = std::fabs(order);
  const int nl = static_cast<int>(nu + 0.5);
  const double mu = nu - nl;
  KPair kp = x < 2.0 ? k_pair_temme(mu, x) : k_pair_steed(mu, x);
  double kmu = kp.kmu, k1 = kp.k1, log_scale = kp.log_scale;
  const double xi2 = 2.0 / x;
  for (int i = 1; i <= nl; ++i) {
    const double next = (mu + i) * xi2 * k1 + kmu;
    kmu = k1;
    k1 = next;
    if (std::fabs(k1) > 1e250) {
      kmu *= 1e-250;
      k1 *= 1e-250;
      log_scale += 250.0 * std::numbers::ln10;
    }
  }
  return std::log(kmu) + log_scale;
}

double bessel_k(double order, double x) {
  const double lk = log_bessel_k(order, x);
  if (lk > std::log(std::numeric_limits<double>::max()))
    throw std::overflow_error("bessel_k: result overflows");
  return std::exp(lk);
}

}  // namespace rissec::specfun
