// Acceptance runner: one PASS/FAIL line per criterion; exit status 1 if any fails.

#include "rissec/analytic.hpp"
#include "rissec/errors.hpp"
#include "rissec/experiments.hpp"
#include "rissec/montecarlo.hpp"
#include "rissec/rng.hpp"
#include "rissec/secrecy.hpp"
#include "rissec/specfun.hpp"

#include "support.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

using namespace rissec;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

constexpr std::size_t kMcTrials = 20000;
constexpr std::uint64_t kSeed = 42;

SystemConfig preset_base(const std::string& id) { return exp::find_preset(id).base; }

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

double rel(double a, double b) { return std::fabs(a - b) / std::max(std::fabs(b), 1e-300); }

// 1. SNR distributions of the Fig. 2 configuration against 1e5 simulated trials.
Outcome snr_distribution_fidelity() {
  const auto cfg = preset_base("fig2");
  const auto sim = mc::run_trials(cfg, 100000, kSeed);
  const double ks_d = oracle::ks_distance(sim.ecdf_d, [&](double x) { return analytic::cdf_gamma_d(x, cfg); });
  const auto tp = analytic::varpi_xi(cfg);
  const double ks_e = oracle::ks_distance(sim.ecdf_e, [&](double x) { return analytic::cdf_gamma_e_closed(x, tp); });
  return {ks_d <= 0.02 && ks_e <= 0.03, "KS_D=" + fmt("%.4f", ks_d) + " (<=0.02) KS_E=" + fmt("%.4f", ks_e) +
                                            " (<=0.03) trials=100000"};
}

// 2. SOP closed form against simulation and against the definition quadrature over the Fig. 3 grid.
Outcome sop_cross_validation() {
  const auto& p = exp::find_preset("fig3");
  double worst_mc = 0, worst_quad = 0;
  for (const auto& curve : p.curves) {
    const auto cfg = exp::apply_curve(p.base, curve);
    const auto sim = mc::sweep(cfg, p.axis, p.grid, kMcTrials, kSeed, {0, false});
    for (std::size_t i = 0; i < p.grid.size(); ++i) {
      auto point = cfg;
      point.rho_d_dB = p.grid[i];
      const double closed = secrecy::sop_closed_form(point).value;
      worst_mc = std::max(worst_mc, std::fabs(closed - sim.points[i].sop));
      worst_quad = std::max(worst_quad, std::fabs(closed - secrecy::sop_quadrature(point).value));
    }
  }
  return {worst_mc <= 0.03 && worst_quad <= 1e-3,
          "max|closed-MC|=" + fmt("%.4f", worst_mc) + " (<=0.03, " + std::to_string(kMcTrials) +
              " trials) max|closed-quad|=" + fmt("%.2e", worst_quad) + " (<=1e-3)"};
}

// 3. General Meijer-G SOP against the alpha2 = 2 and alpha2 = 4 reductions.
Outcome special_case_identities() {
  double worst2 = 0, worst4 = 0;
  for (int n : {16, 36, 64})
    for (double rho : {5.0, 15.0, 25.0, 35.0, 50.0, 80.0}) {
      SystemConfig c = preset_base("fig3");
      c.N = n;
      c.rho_d_dB = rho;
      worst2 = std::max(worst2, std::fabs(secrecy::sop_closed_form(c).value - secrecy::sop_free_space(c).value));
      c.alpha2 = 4.0;
      c.rho_e_dB = 10.0;
      worst4 = std::max(worst4, std::fabs(secrecy::sop_closed_form(c).value - secrecy::sop_bessel_a2_4(c).value));
    }
  return {worst2 <= 1e-10 && worst4 <= 1e-8,
          "(2,1): " + fmt("%.2e", worst2) + " (<=1e-10) (4,1): " + fmt("%.2e", worst4) + " (<=1e-8)"};
}

// 4. Log-log slopes at high rho_d.
Outcome diversity_order() {
  bool ok = true;
  std::ostringstream d;
  for (double a2 : {2.0, 3.0, 4.0}) {
    SystemConfig c = preset_base("fig7");
    c.alpha2 = a2;
    SystemConfig lo = c, hi = c;
    lo.rho_d_dB = 100;
    hi.rho_d_dB = 120;
    const double asym_slope =
        (std::log(secrecy::sop_asymptotic(hi).value) - std::log(secrecy::sop_asymptotic(lo).value)) /
        (std::log(hi.rho_d()) - std::log(lo.rho_d()));
    const auto order = secrecy::secrecy_diversity_order(c, 100, 120);
    const double target = -2.0 / a2;
    const bool here = std::fabs(asym_slope - target) <= 1e-9 && std::fabs(-order.fitted - target) <= 0.05;
    ok = ok && here;
    d << "a2=" << a2 << ": asym " << fmt("%.10f", asym_slope) << " fitted " << fmt("%.4f", -order.fitted)
      << " target " << fmt("%.4f", target) << "; ";
  }
  return {ok, d.str()};
}

// 5. Joint +10 dB shift of both transmit SNRs.
Outcome power_invariance() {
  double worst_sop = 0;
  bool esc_bitwise = true;
  const auto& p6 = exp::find_preset("fig6");
  for (const auto& curve : p6.curves)
    for (double rho : p6.grid) {
      auto a = exp::apply_curve(p6.base, curve);
      a.rho_d_dB = rho;
      auto b = a;
      b.rho_d_dB += 10;
      b.rho_e_dB += 10;
      worst_sop = std::max(worst_sop, rel(secrecy::sop_closed_form(b).value, secrecy::sop_closed_form(a).value));
    }
  const auto& p9 = exp::find_preset("fig9");
  for (const auto& curve : p9.curves)
    for (double rho : p9.grid) {
      auto a = exp::apply_curve(p9.base, curve);
      a.rho_d_dB = rho;
      auto b = a;
      b.rho_d_dB += 10;
      b.rho_e_dB += 10;
      esc_bitwise = esc_bitwise && secrecy::esc_asymptotic(a).value == secrecy::esc_asymptotic(b).value;
    }
  return {worst_sop <= 1e-12 && esc_bitwise, "SOP max rel change " + fmt("%.2e", worst_sop) +
                                                 " (<=1e-12); asymptotic ESC bitwise equal: " +
                                                 (esc_bitwise ? "yes" : "no")};
}

// 6. Transmit-antenna count K in {4, 16, 64}.
Outcome k_independence() {
  const auto& p = exp::find_preset("fig4");
  double worst_sop = 0, worst_esc = 0, worst_z = 0;
  std::vector<double> mc_grid{15, 20, 25, 30};
  std::vector<mc::MetricSeries> sims;
  for (const auto& curve : p.curves) {
    const auto cfg = exp::apply_curve(p.base, curve);
    sims.push_back(mc::sweep(cfg, "rho_d_dB", mc_grid, kMcTrials, kSeed, {0, false}));
  }
  for (double rho : p.grid) {
    std::vector<double> sop, esc;
    for (int k : {4, 16, 64}) {
      SystemConfig c = p.base;
      c.K = k;
      c.rho_d_dB = rho;
      sop.push_back(secrecy::sop_closed_form(c).value);
      esc.push_back(secrecy::esc_asymptotic(c).value);
    }
    for (std::size_t i = 1; i < sop.size(); ++i) {
      worst_sop = std::max(worst_sop, rel(sop[i], sop[0]));
      worst_esc = std::max(worst_esc, std::fabs(esc[i] - esc[0]) / std::max(1.0, std::fabs(esc[0])));
    }
  }
  for (std::size_t g = 0; g < mc_grid.size(); ++g)
    for (std::size_t i = 0; i < sims.size(); ++i)
      for (std::size_t j = i + 1; j < sims.size(); ++j) {
        const auto& a = sims[i].points[g];
        const auto& b = sims[j].points[g];
        const double se = std::hypot(a.sop_stderr, b.sop_stderr);
        const double diff = std::fabs(a.sop - b.sop);
        worst_z = std::max(worst_z, se > 0 ? diff / se : (diff > 0 ? INFINITY : 0.0));
      }
  return {worst_sop <= 1e-12 && worst_esc <= 1e-12 && worst_z <= 3.0,
          "SOP rel spread " + fmt("%.2e", worst_sop) + ", asym ESC spread " + fmt("%.2e", worst_esc) +
              " (<=1e-12); MC SOP max pairwise gap " + fmt("%.2f", worst_z) + " SE (<=3)"};
}

// 7. Structure of the high-SNR ESC.
Outcome esc_structure() {
  SystemConfig c = preset_base("fig8");
  c.K = 16;
  c.rho_d_dB = 80;
  auto at = [](SystemConfig x) { return secrecy::esc_asymptotic(x).value; };
  SystemConfig n16 = c, n64 = c;
  n16.N = 16;
  n64.N = 64;
  const double gain_n = at(n64) - at(n16);
  SystemConfig lam = n16;
  lam.lambda_e *= 2;
  const double d_lambda = at(lam) - at(n16);
  SystemConfig drd = n16;
  drd.d_RD *= 0.5;
  const double d_rd = at(drd) - at(n16);
  bool dsr_same = true;
  for (double dsr = 10; dsr <= 100; dsr += 10) {
    SystemConfig s = n16;
    s.d_SR = dsr;
    dsr_same = dsr_same && at(s) == at(n16);
  }
  const bool ok = std::fabs(gain_n - 2.0) <= 0.2 && std::fabs(d_lambda + 1.0) <= 1e-12 &&
                  std::fabs(d_rd - 2.0) <= 1e-12 && dsr_same;
  return {ok, "N16->64 " + fmt("%+.4f", gain_n) + " (2+-0.2); 2*lambda " + fmt("%+.15f", d_lambda) + "; d_RD/2 " +
                  fmt("%+.15f", d_rd) + "; d_SR sweep bitwise constant: " + (dsr_same ? "yes" : "no")};
}

// 8. Analytic ESC against the simulated difference-clamp estimator on the Fig. 8 configuration.
Outcome esc_cross_validation() {
  const auto& p = exp::find_preset("fig8");
  std::vector<double> grid;
  for (double r : p.grid)
    if (r >= 40) grid.push_back(r);
  double worst_mc = 0, asym_gap = 0;
  for (const auto& curve : p.curves) {
    const auto cfg = exp::apply_curve(p.base, curve);
    const auto sim = mc::sweep(cfg, "rho_d_dB", grid, kMcTrials, kSeed, {0, false});
    for (std::size_t i = 0; i < grid.size(); ++i) {
      auto point = cfg;
      point.rho_d_dB = grid[i];
      const double esc = secrecy::esc(point).value;
      worst_mc = std::max(worst_mc, std::fabs(esc - sim.points[i].esc_diff_clamp_bits));
      if (grid[i] == 80) asym_gap = std::max(asym_gap, std::fabs(secrecy::esc_asymptotic(point).value - esc));
    }
  }
  return {worst_mc <= 0.15 && asym_gap <= 0.2,
          "max|ESC-MC diff-clamp|=" + fmt("%.4f", worst_mc) + " (<=0.15, rho_d>=40 dB) |asym-ESC| at 80 dB " +
              fmt("%.4f", asym_gap) + " (<=0.2)"};
}

// 9. Jensen upper bound on R_D over randomized configurations.
Outcome jensen_bound() {
  RngStream rng(2024, 9);
  int violations = 0;
  double min_gap = INFINITY;
  for (int i = 0; i < 100; ++i) {
    SystemConfig c;
    const int side = 1 + static_cast<int>(rng.uniform() * 16);
    c.N = side * side;
    const int kside = 1 + static_cast<int>(rng.uniform() * 8);
    c.K = kside * kside;
    c.epsilon = 10.0 * rng.uniform();
    c.alpha1 = 2.0 + 2.0 * rng.uniform();
    c.alpha2 = 2.0 + 2.0 * rng.uniform();
    c.d_SR = 5.0 + 95.0 * rng.uniform();
    c.d_RD = 5.0 + 95.0 * rng.uniform();
    c.rho_d_dB = -10.0 + 110.0 * rng.uniform();
    const double gap = secrecy::rd_upper_bound(c) - secrecy::rd_quadrature(c);
    min_gap = std::min(min_gap, gap);
    violations += gap < 0;
  }
  return {violations == 0, std::to_string(violations) + " violations in 100 configs; min gap " + fmt("%.3e", min_gap)};
}

// 10. Special functions against independent quadrature and contour oracles, 1e3 random points each.
Outcome specfun_oracles() {
  RngStream rng(7, 10);
  auto u = [&](double lo, double hi) { return lo + (hi - lo) * rng.uniform(); };
  struct Row {
    const char* name;
    double tol;
    double worst = 0;
  };
  std::vector<Row> rows{{"bessel_k", 1e-10},       {"bessel_i_scaled", 1e-12}, {"gamma_p", 1e-10},
                        {"marcum_q1", 1e-10},     {"log_gamma", 1e-10},       {"meijer_m0_0m", 1e-8},
                        {"meijer_1001_exp", 1e-12}, {"shi_chi", 1e-10},       {"exp_e1", 1e-10},
                        {"laguerre_half", 1e-12}, {"meijer_contour", 1e-10}};
  auto bump = [&](std::size_t i, double e) { rows[i].worst = std::max(rows[i].worst, e); };
  for (int i = 0; i < 1000; ++i) {
    const double nu = u(0, 20), x = u(0.05, 50);
    bump(0, rel(specfun::bessel_k(nu, x), oracle::bessel_k(nu, x)));
    const int order = i % 2;
    const double xi = u(0, 60);
    bump(1, std::fabs(specfun::bessel_i_scaled(order, xi) - oracle::bessel_i_scaled(order, xi)));
    const double k = u(0.2, 60), xg = u(0, 2.0 * k + 5.0);
    bump(2, std::fabs(specfun::gamma_p(k, xg) - oracle::gamma_p(k, xg)));
    const double a = u(0, 12), b = u(0, 15);
    bump(3, std::fabs(specfun::marcum_q1(a, b) - oracle::marcum_q1(a, b)));
    const std::complex<double> z(u(0.5, 10), u(-5, 5));
    bump(4, std::abs(std::exp(specfun::log_gamma(z)) - oracle::gamma(z)) / std::abs(oracle::gamma(z)));
    const double xm = u(0.05, 20);
    const std::vector<double> orders{u(0, 2), u(0, 3), u(0, 4)};
    std::vector<double> sorted = orders;
    std::sort(sorted.begin(), sorted.end());
    bump(5, rel(specfun::meijer_g_m0_0m({sorted, xm}), oracle::meijer_m0_0m(orders, xm, specfun::log_gamma)));
    const double x1 = u(0, 700);
    bump(6, rel(specfun::meijer_g_m0_0m({{0.0}, x1}), std::exp(-x1)));
    const double xs = u(0.01, 30);
    const auto sc = specfun::shi_chi(xs);
    bump(7, std::max(rel(sc.shi, oracle::shi(xs)), std::fabs(sc.chi - oracle::chi(xs)) / std::max(1.0, std::fabs(sc.chi))));
    const double xe = u(0.01, 100);
    bump(8, rel(specfun::exp_scaled_shi_minus_chi(xe), oracle::exp_e1(xe)));
    const double eps = u(0, 50);
    bump(9, rel(specfun::laguerre_half(eps), oracle::laguerre_half(eps)));
    // G^{2,0}_{0,2}(x | p, q) = 2 x^{(p+q)/2} K_{p-q}(2 sqrt x) through the generic contour evaluator
    const double p = u(0, 3), q = p + u(0, 3), xc = u(0.05, 20);
    const double via_contour = specfun::meijer_g_contour({{}, {p, q}, 2, 0, p - 0.5}, xc);
    const double via_bessel = 2.0 * std::pow(xc, 0.5 * (p + q)) * oracle::bessel_k(q - p, 2.0 * std::sqrt(xc));
    bump(10, rel(via_contour, via_bessel));
  }
  bool ok = true;
  std::ostringstream d;
  for (const auto& r : rows) {
    ok = ok && r.worst <= r.tol;
    d << r.name << ' ' << fmt("%.1e", r.worst) << (r.worst <= r.tol ? "" : "!") << "; ";
  }
  return {ok, d.str()};
}

// 11. Dual-Rician links with a small eavesdropper disc.
Outcome small_disc_robustness() {
  const auto base = preset_base("fig12");
  // the informative part of the curve; below ~20 dB every N saturates at SOP = 1
  const std::vector<double> grid{25, 30, 35};
  auto run = [&](int n, int k) {
    SystemConfig c = base;
    c.N = n;
    c.K = k;
    return mc::sweep(c, "rho_d_dB", grid, kMcTrials, kSeed, {0, false});
  };
  const auto n16 = run(16, 16), n36 = run(36, 16), n64 = run(64, 16);
  const auto k4 = run(16, 4), k64 = run(16, 64);
  bool ordered = true;
  double worst_z = 0, n_effect = 0, k_effect = 0;
  std::ostringstream d;
  for (std::size_t g = 0; g < grid.size(); ++g) {
    const double a = n16.points[g].sop, b = n36.points[g].sop, c = n64.points[g].sop;
    ordered = ordered && a > b && b > c;
    d << grid[g] << "dB N16/36/64 " << fmt("%.4f", a) << '/' << fmt("%.4f", b) << '/' << fmt("%.4f", c) << "; ";
    for (const auto* other : {&k4, &k64}) {
      const auto& x = other->points[g];
      const auto& y = n16.points[g];
      const double se = std::hypot(x.sop_stderr, y.sop_stderr);
      worst_z = std::max(worst_z, se > 0 ? std::fabs(x.sop - y.sop) / se : 0.0);
      k_effect = std::max(k_effect, std::fabs(x.sop - y.sop));
    }
    n_effect = std::max(n_effect, a - c);
  }
  d << "K spread " << fmt("%.2f", worst_z) << " SE (<=3); largest SOP change N16->64 " << fmt("%.4f", n_effect)
    << ", K4/64 vs 16 " << fmt("%.4f", k_effect);
  return {ordered && worst_z <= 3.0, d.str()};
}

}  // namespace

int main(int argc, char** argv) {
  // optional arguments select criteria by number, e.g. `acceptance 9 10`
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 snr-distribution-fidelity", snr_distribution_fidelity},
      {"2 sop-cross-validation", sop_cross_validation},
      {"3 special-case-identities", special_case_identities},
      {"4 diversity-order", diversity_order},
      {"5 transmit-power-invariance", power_invariance},
      {"6 antenna-count-independence", k_independence},
      {"7 esc-structure", esc_structure},
      {"8 esc-cross-validation", esc_cross_validation},
      {"9 jensen-bound", jensen_bound},
      {"10 special-function-oracles", specfun_oracles},
      {"11 small-disc-dual-rician", small_disc_robustness},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    if (argc > 1 && std::none_of(argv + 1, argv + argc, [&](const char* a) { return name.substr(0, name.find(' ')) == a; }))
      continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failed += !o.pass;
    std::printf("%s %s | %s | %.1fs\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failed ? 1 : 0;
}
