#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

namespace rissec::detail {

struct Quadrature {
  double value = 0.0;
  double error = 0.0;
};

template <class F>
Quadrature integrate(F&& f, double a, double b, double tol = 1e-12, unsigned depth = 18) {
  Quadrature q;
  if (!(b > a)) return q;
  double l1 = 0.0;
  q.value = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, depth, tol,
                                                                          &q.error, &l1);
  return q;
}

// Sum of adaptive integrals over consecutive breakpoints.
template <class F>
Quadrature integrate_pieces(F&& f, const std::vector<double>& breaks, double tol = 1e-12,
                            unsigned depth = 18) {
  Quadrature total;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    auto piece = integrate(f, breaks[i], breaks[i + 1], tol, depth);
    total.value += piece.value;
    total.error += piece.error;
  }
  return total;
}

// Adaptive bisection against an absolute error target; suited to oscillatory integrands whose
// value is far below their L1 norm, where a relative target is unreachable. A panel is also
// accepted once its error reaches noise_floor times its own L1 norm.
template <class F>
Quadrature integrate_absolute(F&& f, double a, double b, double abs_tol, double noise_floor = 1e-13,
                              unsigned depth = 16) {
  Quadrature q;
  if (!(b > a)) return q;
  double l1 = 0.0;
  q.value = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 0, 0.0, &q.error, &l1);
  if (q.error <= std::max(abs_tol, noise_floor * l1) || depth == 0) return q;
  const double mid = 0.5 * (a + b);
  const auto left = integrate_absolute(f, a, mid, 0.5 * abs_tol, noise_floor, depth - 1);
  const auto right = integrate_absolute(f, mid, b, 0.5 * abs_tol, noise_floor, depth - 1);
  return {left.value + right.value, left.error + right.error};
}

inline std::vector<double> linspace(double a, double b, int pieces) {
  std::vector<double> v(pieces + 1);
  for (int i = 0; i <= pieces; ++i) v[i] = a + (b - a) * i / pieces;
  v.back() = b;
  return v;
}

}  // namespace rissec::detail
