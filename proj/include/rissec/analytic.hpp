#pragma once

#include "rissec/sysmodel.hpp"

#include <complex>

namespace rissec::analytic {

struct GammaFit {
  double k;      // shape
  double theta;  // scale
};

// |A| = sqrt(K nu) sum_n |h_RD(n)| ~ Gamma(k, theta).
GammaFit gamma_fit(const SystemConfig& cfg);
double cdf_gamma_d(double x, const SystemConfig& cfg);
double pdf_gamma_d(double x, const SystemConfig& cfg);
double mean_gamma_d(const SystemConfig& cfg);

// Sinc-ratio factor sin(pi c sqrt(N) delta) / sin(pi c delta), with its limit at the zeros.
double array_factor(int N, double spacing_ratio, double delta);

enum class PhaseMoment {
  paper,  // E[exp(j arg h)] ~ sqrt(eps) / ((sqrt(pi)/2) L)
  exact,  // sqrt(pi eps)/2 e^{-eps/2} [I0(eps/2) + I1(eps/2)]
};
double phase_moment(double eps, PhaseMoment kind);

struct EveGaussFit {
  std::complex<double> mean;
  double variance;
};
// Moments of Z = sum_n conj(h_RE(n)) exp(j arg h_RD(n)) for an eavesdropper at the given radius.
EveGaussFit eve_gauss_fit(const SystemConfig& cfg, double radius, const Direction& eve,
                          PhaseMoment kind = PhaseMoment::paper);

struct EveTailParams {
  double varpi;
  double Xi;
  double v;   // Marcum fit exponent offset at varpi
  double mu;  // Marcum fit power at varpi
  double t0, t1, t2, t3, t4;
  double s;       // non-centrality amplitude at unit radius
  double sigma2;  // per-component variance at unit radius
};
EveTailParams varpi_xi(const SystemConfig& cfg, const Direction& reference);
EveTailParams varpi_xi(const SystemConfig& cfg);

// Single eavesdropper at a given radius: 1 - Q1(s/sigma, sqrt(x)/sigma).
double cdf_gamma_e_single(double x, const SystemConfig& cfg, double radius, const Direction& eve);

enum class MarcumKernel { approximate, exact };
// PGFL form exp[-2 pi lambda int_0^{r_e} Q1(varpi, Xi sqrt(x) r^{alpha2/2}) r dr].
double cdf_gamma_e(double x, const SystemConfig& cfg, MarcumKernel kernel = MarcumKernel::approximate);

// Closed form with the approximated kernel and finite r_e; includes the atom exp(-lambda pi r_e^2) at 0.
double cdf_gamma_e_closed(double x, const SystemConfig& cfg);
double cdf_gamma_e_closed(double x, const EveTailParams& tp);
// -ln of the closed-form CDF: t0 gamma(t1, t2 x^t3) x^{-t4}.
double eve_cdf_exponent(double x, const EveTailParams& tp);
double pdf_gamma_e_closed(double x, const SystemConfig& cfg);
double pdf_gamma_e_closed(double x, const EveTailParams& tp);
// Large-r_e limit exp[-t0 Gamma(t1) x^{-t4}].
double cdf_gamma_e_asymptotic(double x, const SystemConfig& cfg);

}  // namespace rissec::analytic
