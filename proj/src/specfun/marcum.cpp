#include "rissec/specfun.hpp"

#include "../quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace rissec::specfun {

namespace {

// exp(-x) I_k(x) for k = 0..kmax by Miller's backward recurrence.
std::vector<double> scaled_bessel_sequence(double x, int kmax) {
  const int start = kmax + 30 + static_cast<int>(std::sqrt(40.0 * (kmax + 1)));
  std::vector<double> out(kmax + 1, 0.0);
  double next = 0.0, cur = 1e-300;
  for (int j = start; j > 0; --j) {
    const double prev = next + (2.0 * j / x) * cur;  // I_{j-1}
    next = cur;
    cur = prev;
    if (std::fabs(cur) > 1e250) {
      cur *= 1e-250;
      next *= 1e-250;
      for (auto& v : out) v *= 1e-250;
    }
    if (j - 1 <= kmax) out[j - 1] = cur;
  }
  const double norm = bessel_i_scaled(0, x) / out[0];
  for (auto& v : out) v *= norm;
  return out;
}

double marcum_series(double a, double b) {
  const double x = a * b;
  const double gauss = std::exp(-0.5 * (a - b) * (a - b));
  const int kmax = static_cast<int>(2.0 * x) + 80;
  const auto ik = scaled_bessel_sequence(x, kmax);
  if (a < b) {
    const double r = a / b;
    double sum = 0.0, p = 1.0;
    for (int k = 0; k <= kmax; ++k) {
      const double term = p * ik[k];
      sum += term;
      if (k > x && term < 1e-18 * sum) break;
      p *= r;
    }
    return std::clamp(gauss * sum, 0.0, 1.0);
  }
  const double r = b / a;
  double sum = 0.0, p = r;
  for (int k = 1; k <= kmax; ++k) {
    const double term = p * ik[k];
    sum += term;
    if (k > x && term < 1e-18 * sum) break;
    p *= r;
  }
  return std::clamp(1.0 - gauss * sum, 0.0, 1.0);
}

double marcum_quadrature(double a, double b) {
  auto integrand = [a](double t) {
    return t * std::exp(-0.5 * (t - a) * (t - a)) * bessel_i_scaled(0, a * t);
  };
  if (b >= a) {
    const double hi = b + 40.0;
    auto q = detail::integrate(integrand, b, hi, 1e-14);
    return std::clamp(q.value, 0.0, 1.0);
  }
  const double lo = std::max(0.0, a - 40.0);
  auto q = detail::integrate(integrand, lo, b, 1e-14);
  return std::clamp(1.0 - q.value, 0.0, 1.0);
}

}  // namespace

double marcum_q1(double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b) || a < 0 || b < 0)
    throw std::domain_error("marcum_q1: arguments must be finite and >= 0");
  if (b == 0) return 1.0;
  if (a == 0) return std::exp(-0.5 * b * b);
  // Q1(a, b) <= exp(-(b - a)^2 / 2) for b >= a; past underflow the quadrature only sees denormals
  if (b > a && 0.5 * (b - a) * (b - a) > 745.0) return 0.0;
  if (a * b < 30.0) return marcum_series(a, b);
  return marcum_quadrature(a, b);
}

double marcum_fit_v(double w) {
  return -0.840 + w * (0.327 + w * (-0.740 + w * (0.083 + w * -0.004)));
}

double marcum_fit_mu(double w) {
  return 2.174 + w * (-0.592 + w * (0.593 + w * (-0.092 + w * 0.005)));
}

double marcum_q1_exp_approx(double varpi, double z) {
  if (!std::isfinite(varpi) || !std::isfinite(z) || varpi < 0 || z < 0)
    throw std::domain_error("marcum_q1_exp_approx: arguments must be finite and >= 0");
  if (z == 0) return 1.0;
  return std::exp(-std::exp(marcum_fit_v(varpi)) * std::pow(z, marcum_fit_mu(varpi)));
}

}  // namespace rissec::specfun
