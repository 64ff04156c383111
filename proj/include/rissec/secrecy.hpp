#pragma once

#include "rissec/sysmodel.hpp"

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

namespace rissec::secrecy {

enum class Method { quadrature, closed_form, special_case_a2_2, special_case_a2_4, asymptotic };
std::string to_string(Method m);

struct Diagnostics {
  std::size_t series_terms = 0;
  double quad_error = 0.0;
  long precision_bits = 0;
  bool perturbed = false;
  // Smallest t2 x^t3 over the bulk of the user's SNR; large values justify the r_e -> inf forms.
  double tail_argument = std::numeric_limits<double>::quiet_NaN();
  double rd_closed = std::numeric_limits<double>::quiet_NaN();
  double rd_quadrature = std::numeric_limits<double>::quiet_NaN();
  double re = std::numeric_limits<double>::quiet_NaN();
  std::vector<std::string> warnings;
};

struct SecrecyResult {
  double value = 0.0;
  Method method = Method::quadrature;
  Diagnostics diagnostics;
};

// SOP = F_E(0) F_D(phi - 1) + int F_D((1+x) phi - 1) f_E(x) dx with finite r_e.
SecrecyResult sop_quadrature(const SystemConfig& cfg);
// 1 - E[exp(-beta Y^{-4/alpha2})], Y ~ Gamma(k, 1), through G^{p+4q,0}_{0,p+4q}.
SecrecyResult sop_closed_form(const SystemConfig& cfg);
// alpha2 = 2 through G^{3,0}_{0,3}(beta/4 | 0, k/2, (k+1)/2).
SecrecyResult sop_free_space(const SystemConfig& cfg);
// alpha2 = 4: 1 - (2/Gamma(k)) c^{k/2} K_k(2 sqrt(c)).
SecrecyResult sop_bessel_a2_4(const SystemConfig& cfg);
SecrecyResult sop_asymptotic(const SystemConfig& cfg);

struct DiversityOrder {
  double analytic;
  double fitted;
};
DiversityOrder secrecy_diversity_order(const SystemConfig& cfg, double lo_dB = 100.0, double hi_dB = 120.0);

// beta = t0 Gamma(t1) (phi / (rho_d theta^2))^{t4}, returned as ln(beta).
double log_outage_scale(const SystemConfig& cfg);
std::vector<double> sop_meijer_orders(long p, long q, double k);
// ln of sqrt(p) q^{k-1/2} / (2^{(p+4q)/2-2k} pi^{(p+4q)/2-1} Gamma(k)).
double sop_meijer_log_prefactor(long p, long q, double k);

// Rates in bits/s/Hz.
double rd_quadrature(const SystemConfig& cfg);
double rd_closed_form(const SystemConfig& cfg);
double re_quadrature(const SystemConfig& cfg);
double re_a2_2(const SystemConfig& cfg);
double re_a2_4(const SystemConfig& cfg);

SecrecyResult esc(const SystemConfig& cfg);
SecrecyResult esc_a2_2(const SystemConfig& cfg);
SecrecyResult esc_a2_4(const SystemConfig& cfg);
double rd_upper_bound(const SystemConfig& cfg);
SecrecyResult esc_asymptotic(const SystemConfig& cfg);

}  // namespace rissec::secrecy
