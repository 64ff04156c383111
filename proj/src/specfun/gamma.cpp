#include "rissec/specfun.hpp"

#include <boost/math/special_functions/expint.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace rissec::specfun {

namespace {

void check_gamma_args(double k, double x, const char* what) {
  if (!std::isfinite(k) || !std::isfinite(x) || !(k > 0) || !(x >= 0))
    throw std::domain_error(std::string(what) + ": requires k > 0 and x >= 0");
}

// Stirling series tail coefficients B_{2n} / (2n (2n-1)).
constexpr double kStirling[] = {1.0 / 12.0,      -1.0 / 360.0,   1.0 / 1260.0,
                                -1.0 / 1680.0,   1.0 / 1188.0,   -691.0 / 360360.0,
                                1.0 / 156.0,     -3617.0 / 122400.0};

}  // namespace

double lower_incomplete_gamma(double k, double x) {
  check_gamma_args(k, x, "lower_incomplete_gamma");
  if (x == 0) return 0.0;
  return boost::math::tgamma_lower(k, x);
}

double upper_incomplete_gamma(double k, double x) {
  check_gamma_args(k, x, "upper_incomplete_gamma");
  return boost::math::tgamma(k, x);
}

double gamma_p(double k, double x) {
  check_gamma_args(k, x, "gamma_p");
  if (x == 0) return 0.0;
  return boost::math::gamma_p(k, x);
}

double gamma_q(double k, double x) {
  check_gamma_args(k, x, "gamma_q");
  if (x == 0) return 1.0;
  return boost::math::gamma_q(k, x);
}

std::complex<double> log_gamma(std::complex<double> z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw std::domain_error("log_gamma: non-finite argument");
  if (z.imag() == 0 && z.real() <= 0 && z.real() == std::floor(z.real()))
    throw std::domain_error("log_gamma: pole");
  std::complex<double> shift = 0.0;
  while (z.real() < 12.0) {
    shift += std::log(z);
    z += 1.0;
  }
  const std::complex<double> inv = 1.0 / z;
  const std::complex<double> inv2 = inv * inv;
  std::complex<double> series = 0.0;
  std::complex<double> p = inv;
  for (double c : kStirling) {
    series += c * p;
    p *= inv2;
  }
  return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * std::numbers::pi) + series - shift;
}

ShiChi shi_chi(double x) {
  if (!std::isfinite(x) || !(x > 0)) throw std::domain_error("shi_chi: x must be > 0");
  if (x <= 40.0) {
    double shi = 0.0, chi = 0.0;
    double t = x;  // x^{2n+1}/(2n+1)!
    for (int n = 0; n < 500; ++n) {
      const double odd = 2.0 * n + 1.0;
      shi += t / odd;
      const double even_t = t * x / (odd + 1.0);  // x^{2n+2}/(2n+2)!
      chi += even_t / (odd + 1.0);
      t = even_t * x / (odd + 2.0);
      if (t < std::numeric_limits<double>::epsilon() * 1e-2 * shi) break;
    }
    return {shi, kEulerGamma + std::log(x) + chi};
  }
  const double ei = boost::math::expint(x);
  const double e1 = boost::math::expint(1, x);
  return {0.5 * (ei + e1), 0.5 * (ei - e1)};
}

double exp_scaled_shi_minus_chi(double x) {
  if (!std::isfinite(x) || !(x > 0))
    throw std::domain_error("exp_scaled_shi_minus_chi: x must be > 0");
  if (x <= 1.0) return std::exp(x) * boost::math::expint(1, x);
  constexpr double tiny = 1e-300;
  double b = x + 1.0;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 100000; ++i) {
    const double an = -static_cast<double>(i) * i;
    b += 2.0;
    d = 1.0 / (an * d + b);
    c = b + an / c;
    const double del = c * d;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-16) break;
  }
  return h;
}

}  // namespace rissec::specfun
