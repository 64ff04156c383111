#pragma once

// Independent reference evaluations shared by the unit tests and the acceptance runner.

#include <boost/math/distributions/non_central_chi_squared.hpp>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/hypergeometric_1F1.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

namespace oracle {

// sup |F_n - F| for sorted samples, with ties handled as a single jump.
inline double ks_distance(const std::vector<double>& sorted, const std::function<double(double)>& cdf) {
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  std::size_t i = 0;
  while (i < sorted.size()) {
    std::size_t j = i;
    while (j + 1 < sorted.size() && sorted[j + 1] == sorted[i]) ++j;
    const double f = cdf(sorted[i]);
    d = std::max({d, std::fabs(f - static_cast<double>(i) / n), std::fabs(f - static_cast<double>(j + 1) / n)});
    i = j + 1;
  }
  return d;
}

// K_nu(x) = int_0^inf exp(-x cosh t) cosh(nu t) dt
inline double bessel_k(double nu, double x) {
  boost::math::quadrature::exp_sinh<double> q;
  return q.integrate([&](double t) {
    const double e = -x * std::cosh(t) + nu * t;
    return e < -745.0 ? 0.0 : 0.5 * (std::exp(e) + std::exp(-x * std::cosh(t) - nu * t));
  }, 1e-15);
}

// exp(-x) I_n(x) = (1/pi) int_0^pi exp(x (cos t - 1)) cos(n t) dt
inline double bessel_i_scaled(int n, double x) {
  using boost::math::quadrature::gauss_kronrod;
  return gauss_kronrod<double, 61>::integrate(
             [&](double t) { return std::exp(x * (std::cos(t) - 1.0)) * std::cos(n * t); }, 0.0,
             std::numbers::pi, 15, 1e-14) /
         std::numbers::pi;
}

// P(k, x) = int_0^x t^{k-1} e^{-t} dt / Gamma(k)
inline double gamma_p(double k, double x) {
  boost::math::quadrature::tanh_sinh<double> q;
  const double lg = std::lgamma(k);
  return q.integrate([&](double t) { return t <= 0 ? 0.0 : std::exp((k - 1.0) * std::log(t) - t - lg); }, 0.0, x);
}

// Q1(a, b) from the noncentral chi-square survival function with 2 degrees of freedom.
inline double marcum_q1(double a, double b) {
  boost::math::non_central_chi_squared d(2.0, a * a);
  return boost::math::cdf(boost::math::complement(d, b * b));
}

// Gamma(z) = int_0^inf t^{z-1} e^{-t} dt, Re z > 0
inline std::complex<double> gamma(std::complex<double> z) {
  // split at 1: tanh-sinh takes the t^{z-1} endpoint, exp-sinh the exponential tail
  auto integrand = [&](double t, bool imag) {
    if (t <= 0) return 0.0;
    const auto v = std::exp((z - 1.0) * std::log(t) - t);
    return imag ? v.imag() : v.real();
  };
  boost::math::quadrature::tanh_sinh<double> head;
  boost::math::quadrature::exp_sinh<double> tail;
  auto part = [&](bool imag) {
    return head.integrate([&](double t) { return integrand(t, imag); }, 0.0, 1.0) +
           tail.integrate([&](double u) { return integrand(1.0 + u, imag); });
  };
  return {part(false), part(true)};
}

// Shi(x) = int_0^x sinh(t)/t dt, Chi(x) = gamma + ln x + int_0^x (cosh t - 1)/t dt
inline double shi(double x) {
  using boost::math::quadrature::gauss_kronrod;
  return gauss_kronrod<double, 61>::integrate(
      [](double t) { return t == 0 ? 1.0 : std::sinh(t) / t; }, 0.0, x, 15, 1e-14);
}
inline double chi(double x) {
  using boost::math::quadrature::gauss_kronrod;
  const double body = gauss_kronrod<double, 61>::integrate(
      [](double t) { return t < 1e-8 ? 0.5 * t : (std::cosh(t) - 1.0) / t; }, 0.0, x, 15, 1e-14);
  return 0.57721566490153286061 + std::log(x) + body;
}

// exp(x) E1(x) = int_0^inf e^{-u} / (u + x) du
inline double exp_e1(double x) {
  boost::math::quadrature::exp_sinh<double> q;
  return q.integrate([&](double u) { return std::exp(-u) / (u + x); }, 1e-15);
}

// L_{1/2}(-eps) = 1F1(-1/2; 1; -eps)
inline double laguerre_half(double eps) { return boost::math::hypergeometric_1F1(-0.5, 1.0, -eps); }

// G^{m,0}_{0,m}(x | b) through the Mellin-Barnes integral on Re s = c < min b:
// (1/pi) int_0^inf Re[prod Gamma(b_j - s) x^s] dt, s = c + i t.
inline double meijer_m0_0m(const std::vector<double>& b, double x,
                           const std::function<std::complex<double>(std::complex<double>)>& log_gamma) {
  const double c = *std::min_element(b.begin(), b.end()) - 0.5;
  auto f = [&](double t) {
    const std::complex<double> s(c, t);
    std::complex<double> acc = s * std::log(x);
    for (double bj : b) acc += log_gamma(bj - s);
    return std::exp(acc).real();
  };
  using boost::math::quadrature::gauss_kronrod;
  double total = 0.0;
  for (double lo = 0.0; lo < 60.0; lo += 2.0) total += gauss_kronrod<double, 61>::integrate(f, lo, lo + 2.0, 12, 1e-13);
  return total / std::numbers::pi;
}

}  // namespace oracle
