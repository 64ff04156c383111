#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace rissec::specfun {

inline constexpr double kEulerGamma = 0.57721566490153286061;

// L_{1/2}(-eps), the Laguerre function that sets the mean of a Rice envelope.
double laguerre_half(double eps);

// Modified Bessel functions of the first kind, orders 0 and 1.
double bessel_i(int order, double x);
// exp(-x) * I_order(x); finite for any x >= 0.
double bessel_i_scaled(int order, double x);

// Modified Bessel function of the second kind for real order.
// Throws std::overflow_error when the result is not representable.
double bessel_k(double order, double x);
double log_bessel_k(double order, double x);

double lower_incomplete_gamma(double k, double x);
double upper_incomplete_gamma(double k, double x);
double gamma_p(double k, double x);
double gamma_q(double k, double x);

// Principal-branch-free log Gamma for complex argument: exp(log_gamma(z)) == Gamma(z).
std::complex<double> log_gamma(std::complex<double> z);

// First-order Marcum Q function.
double marcum_q1(double a, double b);

// Polynomial fit exp[-e^{v(w)} z^{mu(w)}] to Q1(w, z).
double marcum_fit_v(double varpi);
double marcum_fit_mu(double varpi);
double marcum_q1_exp_approx(double varpi, double z);

struct MeijerParams {
  std::vector<double> orders;  // pole locations, ascending
  double argument = 0.0;
};

struct MeijerEvaluation {
  double value = 0.0;
  double log_value = 0.0;
  std::size_t terms = 0;
  long precision_bits = 0;
  bool perturbed = false;
};

// G^{m,0}_{0,m}(x | -; orders) by the residue series.
MeijerEvaluation meijer_g_m0_0m_eval(const MeijerParams& params);
double meijer_g_m0_0m(const MeijerParams& params);
double log_meijer_g_m0_0m(const MeijerParams& params);

// 1 - G(x)/G(0+) for orders[0] == 0 < orders[1..]; G(0+) = prod Gamma(orders[j]).
MeijerEvaluation meijer_g_m0_0m_complement(const MeijerParams& params);

// Generic G^{m,n}_{p,q}(z) by quadrature along Re(s) = contour.
// The contour must separate the poles of Gamma(b_j - s), j <= m, from those of
// Gamma(1 - a_j + s), j <= n. The result is multiplied by exp(log_scale).
struct MeijerContour {
  std::vector<double> a;
  std::vector<double> b;
  std::size_t m = 0;
  std::size_t n = 0;
  double contour = 0.0;
};
double meijer_g_contour(const MeijerContour& spec, double z, double log_scale = 0.0);

struct ShiChi {
  double shi;
  double chi;
};
ShiChi shi_chi(double x);
// exp(x) * (Shi(x) - Chi(x)) = exp(x) * E1(x), stable for all x > 0.
double exp_scaled_shi_minus_chi(double x);

}  // namespace rissec::specfun
