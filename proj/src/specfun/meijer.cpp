#include "rissec/errors.hpp"
#include "rissec/specfun.hpp"

#include "../quadrature.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace rissec::specfun {

namespace {

constexpr std::size_t kMaxTerms = 100000;
constexpr long kMaxBits = 1L << 20;
constexpr double kCollisionTol = 1e-9;

class Mp {
 public:
  explicit Mp(mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_ui(v_, 0, MPFR_RNDN);
  }
  Mp(mpfr_prec_t prec, double x) {
    mpfr_init2(v_, prec);
    mpfr_set_d(v_, x, MPFR_RNDN);
  }
  Mp(const Mp&) = delete;
  Mp& operator=(const Mp&) = delete;
  ~Mp() { mpfr_clear(v_); }
  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

 private:
  mpfr_t v_;
};

bool near_integer(double d) { return std::fabs(d - std::nearbyint(d)) < kCollisionTol; }

// Shift entries whose difference with an earlier entry is (nearly) an integer.
bool separate_poles(std::vector<double>& d) {
  bool changed = false;
  for (int pass = 0; pass < 16; ++pass) {
    bool clean = true;
    for (std::size_t j = 1; j < d.size(); ++j) {
      for (std::size_t i = 0; i < j; ++i) {
        if (near_integer(d[j] - d[i])) {
          d[j] += kCollisionTol * (1.0 + std::fabs(d[j])) * static_cast<double>(j + 1);
          clean = false;
          changed = true;
        }
      }
    }
    if (clean) return changed;
  }
  throw std::domain_error("meijer_g: could not separate colliding orders");
}

double log_abs_gamma(double y) {
  int sign = 0;
  return boost::math::lgamma(y, &sign);
}

struct SeriesPlan {
  double peak_log = -std::numeric_limits<double>::infinity();
  double ref_log = -std::numeric_limits<double>::infinity();
};

// Double-precision magnitude scan used to pick the working precision.
SeriesPlan plan_series(const std::vector<double>& d, double x, bool complement) {
  const std::size_t m = d.size();
  const double lx = std::log(x);
  SeriesPlan plan;
  double log_g0 = 0.0;
  for (std::size_t j = 1; j < m; ++j) log_g0 += log_abs_gamma(d[j]);
  for (std::size_t h = 0; h < m; ++h) {
    double pre = d[h] * lx;
    for (std::size_t j = 0; j < m; ++j)
      if (j != h) pre += log_abs_gamma(d[j] - d[h]);
    plan.ref_log = std::max(plan.ref_log, pre);
    double lt = 0.0;
    for (std::size_t n = 0; n < kMaxTerms; ++n) {
      plan.peak_log = std::max(plan.peak_log, pre + lt);
      double step = lx - std::log(n + 1.0);
      bool positive = true;
      for (std::size_t j = 0; j < m; ++j) {
        if (j == h) continue;
        const double f = n + 1.0 + d[h] - d[j];
        positive = positive && f > 0;
        step -= std::log(std::fabs(f));
      }
      lt += step;
      if (positive && step < 0 && pre + lt < plan.peak_log - 60.0) break;
    }
  }
  if (complement) plan.ref_log = log_g0;
  return plan;
}

struct SeriesValue {
  double value = 0.0;
  double log_value = -std::numeric_limits<double>::infinity();
  std::size_t terms = 0;
};

SeriesValue sum_series(const std::vector<double>& d, double x, long bits, bool complement) {
  const std::size_t m = d.size();
  const mpfr_prec_t prec = bits;
  Mp lx(prec, x), xs(prec, x), total(prec), term(prec), tmp(prec), tmp2(prec), pre(prec), g0(prec, 1.0);
  mpfr_log(lx.get(), lx.get(), MPFR_RNDN);
  if (m % 2 == 1) mpfr_neg(xs.get(), xs.get(), MPFR_RNDN);
  if (complement) {
    for (std::size_t j = 1; j < m; ++j) {
      mpfr_set_d(tmp.get(), d[j], MPFR_RNDN);
      mpfr_gamma(tmp.get(), tmp.get(), MPFR_RNDN);
      mpfr_mul(g0.get(), g0.get(), tmp.get(), MPFR_RNDN);
    }
  }
  SeriesValue out;
  mpfr_exp_t peak_exp = std::numeric_limits<mpfr_exp_t>::min();
  std::vector<mpfr_exp_t> stop_hint(m);
  for (std::size_t h = 0; h < m; ++h) {
    // pre = prod_{j != h} Gamma(d_j - d_h) * x^{d_h} (divided by G(0+) for the complement)
    mpfr_set_ui(pre.get(), 1, MPFR_RNDN);
    for (std::size_t j = 0; j < m; ++j) {
      if (j == h) continue;
      mpfr_set_d(tmp.get(), d[j], MPFR_RNDN);
      mpfr_sub_d(tmp.get(), tmp.get(), d[h], MPFR_RNDN);
      mpfr_gamma(tmp.get(), tmp.get(), MPFR_RNDN);
      mpfr_mul(pre.get(), pre.get(), tmp.get(), MPFR_RNDN);
    }
    mpfr_mul_d(tmp.get(), lx.get(), d[h], MPFR_RNDN);
    mpfr_exp(tmp.get(), tmp.get(), MPFR_RNDN);
    mpfr_mul(pre.get(), pre.get(), tmp.get(), MPFR_RNDN);
    if (complement) mpfr_div(pre.get(), pre.get(), g0.get(), MPFR_RNDN);
    mpfr_set(term.get(), pre.get(), MPFR_RNDN);
    for (std::size_t n = 0;; ++n) {
      if (n >= kMaxTerms)
        throw ConvergenceError("meijer_g: series did not converge within 1e5 terms",
                               mpfr_get_d(total.get(), MPFR_RNDN), std::fabs(mpfr_get_d(term.get(), MPFR_RNDN)));
      const bool skip = complement && h == 0 && n == 0;
      if (!skip) {
        mpfr_add(total.get(), total.get(), term.get(), MPFR_RNDN);
        ++out.terms;
      }
      if (!mpfr_zero_p(term.get())) peak_exp = std::max(peak_exp, mpfr_get_exp(term.get()));
      // next term ratio: (-1)^m x / ((n+1) prod_{j != h} (n+1+d_h-d_j))
      mpfr_set_d(tmp2.get(), n + 1.0, MPFR_RNDN);
      bool positive = true;
      double log_ratio = std::log(x) - std::log(n + 1.0);
      for (std::size_t j = 0; j < m; ++j) {
        if (j == h) continue;
        const double f = n + 1.0 + d[h] - d[j];
        positive = positive && f > 0;
        log_ratio -= std::log(std::fabs(f));
        mpfr_set_d(tmp.get(), d[h], MPFR_RNDN);
        mpfr_sub_d(tmp.get(), tmp.get(), d[j], MPFR_RNDN);
        mpfr_add_d(tmp.get(), tmp.get(), n + 1.0, MPFR_RNDN);
        mpfr_mul(tmp2.get(), tmp2.get(), tmp.get(), MPFR_RNDN);
      }
      mpfr_mul(term.get(), term.get(), xs.get(), MPFR_RNDN);
      mpfr_div(term.get(), term.get(), tmp2.get(), MPFR_RNDN);
      if (positive && log_ratio < 0 &&
          (mpfr_zero_p(term.get()) || mpfr_get_exp(term.get()) < peak_exp - bits - 8))
        break;
    }
  }
  if (complement) mpfr_neg(total.get(), total.get(), MPFR_RNDN);
  out.value = mpfr_get_d(total.get(), MPFR_RNDN);
  if (mpfr_sgn(total.get()) > 0) {
    mpfr_log(tmp.get(), total.get(), MPFR_RNDN);
    out.log_value = mpfr_get_d(tmp.get(), MPFR_RNDN);
  }
  return out;
}

MeijerEvaluation sum_converged(const std::vector<double>& d, double x, bool complement) {
  const auto plan = plan_series(d, x, complement);
  long bits = 64 + 32 +
              static_cast<long>(std::ceil(std::max(0.0, plan.peak_log - plan.ref_log) / std::numbers::ln2));
  SeriesValue lo, hi;
  while (true) {
    lo = sum_series(d, x, bits, complement);
    hi = sum_series(d, x, bits + 64, complement);
    const bool ok = hi.value > 0 && lo.value > 0 && std::isfinite(hi.log_value) &&
                    std::fabs(hi.log_value - lo.log_value) <= 1e-15 * std::max(1.0, std::fabs(hi.log_value));
    if (ok) break;
    bits *= 2;
    if (bits > kMaxBits)
      throw ConvergenceError("meijer_g: working precision limit reached", hi.value,
                             std::fabs(hi.value - lo.value));
  }
  MeijerEvaluation ev;
  ev.value = hi.value;
  ev.log_value = hi.log_value;
  ev.terms = hi.terms;
  ev.precision_bits = bits + 64;
  return ev;
}

MeijerEvaluation evaluate(const MeijerParams& params, bool complement) {
  if (params.orders.empty()) throw std::domain_error("meijer_g: orders must be non-empty");
  for (double v : params.orders)
    if (!std::isfinite(v)) throw std::domain_error("meijer_g: orders must be finite");
  const double x = params.argument;
  if (!std::isfinite(x) || !(x > 0)) throw std::domain_error("meijer_g: argument must be > 0");
  std::vector<double> d = params.orders;
  if (complement) {
    if (d[0] != 0.0) throw std::domain_error("meijer_g complement: first order must be 0");
    for (std::size_t j = 1; j < d.size(); ++j)
      if (!(d[j] > 0)) throw std::domain_error("meijer_g complement: orders must be positive");
  }
  MeijerEvaluation ev;
  const std::vector<double> original = d;
  ev.perturbed = separate_poles(d);
  if (!ev.perturbed) return sum_converged(d, x, complement);
  // The shift moves the result at first order; averaging +shift and -shift cancels that term.
  std::vector<double> mirror(d.size());
  for (std::size_t j = 0; j < d.size(); ++j) mirror[j] = 2.0 * original[j] - d[j];
  bool mirror_ok = true;
  for (std::size_t j = 1; j < mirror.size(); ++j) {
    if (complement && !(mirror[j] > 0)) mirror_ok = false;
    for (std::size_t i = 0; i < j; ++i) mirror_ok = mirror_ok && !near_integer(mirror[j] - mirror[i]);
  }
  ev = sum_converged(d, x, complement);
  ev.perturbed = true;
  if (!mirror_ok) return ev;
  const auto other = sum_converged(mirror, x, complement);
  const double top = std::max(ev.log_value, other.log_value);
  ev.log_value = top + std::log(0.5 * (std::exp(ev.log_value - top) + std::exp(other.log_value - top)));
  ev.value = 0.5 * (ev.value + other.value);
  ev.terms = std::max(ev.terms, other.terms);
  ev.precision_bits = std::max(ev.precision_bits, other.precision_bits);
  return ev;
}

}  // namespace

MeijerEvaluation meijer_g_m0_0m_eval(const MeijerParams& params) { return evaluate(params, false); }

double log_meijer_g_m0_0m(const MeijerParams& params) { return evaluate(params, false).log_value; }

double meijer_g_m0_0m(const MeijerParams& params) {
  const auto ev = evaluate(params, false);
  if (ev.log_value > std::log(std::numeric_limits<double>::max()))
    throw std::overflow_error("meijer_g: result overflows double");
  return ev.value;
}

MeijerEvaluation meijer_g_m0_0m_complement(const MeijerParams& params) {
  return evaluate(params, true);
}

double meijer_g_contour(const MeijerContour& spec, double z, double log_scale) {
  const std::size_t p = spec.a.size(), q = spec.b.size();
  if (spec.m > q || spec.n > p) throw std::domain_error("meijer_g_contour: need m <= q and n <= p");
  if (!(2.0 * (spec.m + spec.n) > static_cast<double>(p + q)))
    throw std::domain_error("meijer_g_contour: integrand does not decay along the contour");
  if (!std::isfinite(z) || !(z > 0)) throw std::domain_error("meijer_g_contour: z must be > 0");
  const double lz = std::log(z);
  auto log_integrand = [&](double t) {
    const std::complex<double> s(spec.contour, t);
    std::complex<double> acc = s * lz + log_scale;
    for (std::size_t j = 0; j < q; ++j)
      acc += j < spec.m ? log_gamma(spec.b[j] - s) : -log_gamma(1.0 - spec.b[j] + s);
    for (std::size_t j = 0; j < p; ++j)
      acc += j < spec.n ? log_gamma(1.0 - spec.a[j] + s) : -log_gamma(spec.a[j] - s);
    return acc;
  };
  // Sum of the absolute sizes of the log terms, which sets the rounding noise of exp(log_integrand).
  auto log_magnitude = [&](double t) {
    const std::complex<double> s(spec.contour, t);
    double acc = std::abs(s * lz) + std::fabs(log_scale);
    for (std::size_t j = 0; j < q; ++j)
      acc += std::abs(log_gamma(j < spec.m ? spec.b[j] - s : 1.0 - spec.b[j] + s));
    for (std::size_t j = 0; j < p; ++j)
      acc += std::abs(log_gamma(j < spec.n ? 1.0 - spec.a[j] + s : spec.a[j] - s));
    return acc;
  };
  double peak = log_integrand(0.0).real();
  double t_end = 1.0;
  while (true) {
    const double here = log_integrand(t_end).real();
    peak = std::max(peak, here);
    if (here < peak - 48.0 || t_end > 4096.0) break;
    t_end *= 1.5;
  }
  auto integrand = [&](double t) { return std::exp(log_integrand(t)).real(); };
  const int pieces = std::max(8, static_cast<int>(std::ceil(t_end)));
  const auto breaks = detail::linspace(0.0, t_end, pieces);
  // Small z or large parameters make the integrand swing far above the result; the target is
  // the roundoff floor of exponentiating large, cancelling log-Gamma sums.
  double l1 = 0.0, swing = 1.0;
  for (int i = 0; i < pieces; ++i) {
    l1 += detail::integrate([&](double t) { return std::exp(log_integrand(t).real()); }, breaks[i],
                            breaks[i + 1], 1e-6, 4).value;
    swing = std::max(swing, log_magnitude(breaks[i]));
  }
  const double floor = 8.0 * std::numeric_limits<double>::epsilon() * swing;
  double value = 0.0;
  for (int i = 0; i < pieces; ++i)
    value += detail::integrate_absolute(integrand, breaks[i], breaks[i + 1], floor * l1 / pieces, floor).value;
  return value / std::numbers::pi;
}

}  // namespace rissec::specfun
