#include "rissec/analytic.hpp"
#include "rissec/errors.hpp"
#include "rissec/montecarlo.hpp"

#include <doctest.h>

#include <cmath>
#include <cstring>

using namespace rissec;
using namespace rissec::mc;
using doctest::Approx;

namespace {
SystemConfig small() {
  SystemConfig c;
  c.N = 16;
  c.K = 4;
  c.rho_d_dB = 25;
  return c;
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }
}  // namespace

TEST_CASE("one trial is reproducible") {
  const auto c = small();
  ChannelSampler sampler(c);
  ChannelRealization s1, s2;
  const auto a = simulate_trial(sampler, 99, 3, s1);
  const auto b = simulate_trial(sampler, 99, 3, s2);
  CHECK(same_bits(a.gain_d, b.gain_d));
  CHECK(same_bits(a.gain_e_max, b.gain_e_max));
  CHECK(a.n_eves == b.n_eves);
  const auto r1 = run_trials(c, 1, 5, {1, true});
  const auto r2 = run_trials(c, 1, 5, {1, true});
  CHECK(same_bits(r1.esc_bits, r2.esc_bits));
  CHECK(same_bits(r1.ecdf_d[0], r2.ecdf_d[0]));
}

TEST_CASE("results do not depend on the worker count") {
  const auto c = small();
  const auto one = run_trials(c, 3000, 17, {1, true});
  for (unsigned w : {4u, 16u}) {
    const auto many = run_trials(c, 3000, 17, {w, true});
    CHECK(same_bits(one.sop, many.sop));
    CHECK(same_bits(one.esc_bits, many.esc_bits));
    CHECK(same_bits(one.esc_diff_clamp_bits, many.esc_diff_clamp_bits));
    CHECK(same_bits(one.rd_bits, many.rd_bits));
    CHECK(one.ecdf_e == many.ecdf_e);
  }
}

TEST_CASE("trial outcome invariants") {
  const TrialGains none{2.0, 0.0, 0};
  const auto o = evaluate_trial(none, 10.0, 10.0);
  CHECK(o.gamma_e_max == 0.0);
  CHECK(o.secrecy_rate_nats == Approx(std::log1p(20.0)));
  const TrialGains g{2.0, 3.0, 2};
  const auto p = evaluate_trial(g, 10.0, 10.0);
  CHECK(p.secrecy_rate_nats <= std::log1p(p.gamma_d));
  CHECK(p.secrecy_rate_nats < 0);
}

TEST_CASE("summary statistics") {
  const auto c = small();
  for (std::size_t n : {10u, 1000u}) {
    const auto s = run_trials(c, n, 1, {0, false});
    CHECK(s.sop_stderr <= std::sqrt(0.25 / static_cast<double>(n)) + 1e-15);
    CHECK(s.trials == n);
    CHECK(s.ecdf_d.empty());
    CHECK(s.esc_bits >= s.esc_diff_clamp_bits - 1e-12);
  }
  CHECK_THROWS_AS(run_trials(c, 0, 1), ConfigError);
  const double xs[] = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11};
  CHECK(pairwise_sum(xs, 11) == 66.0);
  CHECK(pairwise_sum(xs, 0) == 0.0);
}

TEST_CASE("empirical mean SNR matches the closed-form average") {
  SystemConfig c;
  c.K = 16;
  c.N = 36;
  const auto s = run_trials(c, 20000, 3, {0, false});
  CHECK(s.mean_gamma_d == Approx(analytic::mean_gamma_d(c)).epsilon(0.03));
  CHECK(s.mean_eves == Approx(c.lambda_e * 3.141592653589793 * c.r_e * c.r_e).epsilon(0.03));
}

TEST_CASE("sweeps") {
  const auto c = small();
  const auto empty = sweep(c, "rho_d_dB", {}, 100, 1);
  CHECK(empty.values.empty());
  CHECK(empty.points.empty());
  CHECK_THROWS_AS(sweep(c, "no_such_axis", {}, 100, 1), ConfigError);
  CHECK_THROWS_AS(sweep(c, "N", {15}, 100, 1), ConfigError);
  const auto s = sweep(c, "rho_d_dB", {10, 20, 30}, 2000, 4, {0, false});
  REQUIRE(s.points.size() == 3);
  CHECK(s.points[0].sop >= s.points[1].sop);
  CHECK(s.points[1].sop >= s.points[2].sop);
  CHECK(s.config_sha256[0] != s.config_sha256[1]);
  const auto lam = sweep(c, "lambda_e", {1e-3, 2e-3}, 1000, 4, {0, false});
  CHECK(lam.points[0].mean_eves < lam.points[1].mean_eves);
  SystemConfig d = c;
  set_axis(d, "alpha", 3.0);
  CHECK(d.alpha1 == 3.0);
  CHECK(d.alpha2 == 3.0);
}

TEST_CASE("joint transmit-power shift leaves the empirical SOP in place") {
  SystemConfig c;
  c.K = 16;
  c.N = 16;
  c.rho_d_dB = 30;
  c.rho_e_dB = 20;
  const auto a = run_trials(c, 5000, 8, {0, false});
  c.rho_d_dB += 10;
  c.rho_e_dB += 10;
  const auto b = run_trials(c, 5000, 8, {0, false});
  CHECK(std::fabs(a.sop - b.sop) <= 3 * std::hypot(a.sop_stderr, b.sop_stderr) + 1e-12);
}

TEST_CASE("dual-Rician mode reduces to LoS for a huge BS-RIS Rician factor") {
  auto c = small();
  c.rho_d_dB = 30;
  c.rho_e_dB = 30;
  const auto los = run_trials(c, 4000, 12, {0, false});
  c.epsilon1 = 1e6;
  const auto dual = run_trials(c, 4000, 12, {0, false});
  CHECK(std::fabs(los.sop - dual.sop) <= 2 * std::hypot(los.sop_stderr, dual.sop_stderr) + 1e-12);
  CHECK(std::fabs(los.esc_bits - dual.esc_bits) <= 2 * std::hypot(los.esc_stderr, dual.esc_stderr) + 1e-12);
}
