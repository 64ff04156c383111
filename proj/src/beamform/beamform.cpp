#include "rissec/beamform.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rissec {

namespace {

double wrap_phase(double x) {
  double r = std::fmod(x, 2.0 * std::numbers::pi);
  if (r < 0) r += 2.0 * std::numbers::pi;
  if (r >= 2.0 * std::numbers::pi) r = 0.0;
  return r;
}

double phase_of(cplx z) { return z == cplx(0.0, 0.0) ? 0.0 : std::arg(z); }

}  // namespace

std::vector<double> optimal_phases(std::span<const cplx> h_RD, std::span<const cplx> a_NSR) {
  if (h_RD.size() != a_NSR.size()) throw std::invalid_argument("optimal_phases: length mismatch");
  std::vector<double> theta(h_RD.size());
  for (std::size_t n = 0; n < h_RD.size(); ++n)
    theta[n] = wrap_phase(-phase_of(std::conj(h_RD[n]) * a_NSR[n]));
  return theta;
}

BeamformingState design_beamforming(const ChannelRealization& real) {
  const int N = real.N, K = real.K;
  BeamformingState st;
  st.theta = optimal_phases(real.h_RD, real.a_N_SR);
  std::vector<cplx> row(N);  // conj(h_RD[n]) e^{j theta_n}
  for (int n = 0; n < N; ++n) row[n] = std::conj(real.h_RD[n]) * std::polar(1.0, st.theta[n]);
  st.cascaded_D.assign(K, 0.0);
  for (int n = 0; n < N; ++n)
    for (int k = 0; k < K; ++k) st.cascaded_D[k] += row[n] * real.H_SR[n * K + k];
  double norm2 = 0.0;
  for (const auto& g : st.cascaded_D) norm2 += std::norm(g);
  const double norm = std::sqrt(norm2);
  st.f.resize(K);
  for (int k = 0; k < K; ++k) st.f[k] = norm > 0 ? std::conj(st.cascaded_D[k]) / norm : cplx(k == 0 ? 1.0 : 0.0);
  st.reflected.assign(N, 0.0);
  for (int n = 0; n < N; ++n) {
    cplx acc = 0.0;
    for (int k = 0; k < K; ++k) acc += real.H_SR[n * K + k] * st.f[k];
    st.reflected[n] = std::polar(1.0, st.theta[n]) * acc;
  }
  return st;
}

double legitimate_gain(const BeamformingState& state) {
  cplx acc = 0.0;
  for (std::size_t k = 0; k < state.f.size(); ++k) acc += state.cascaded_D[k] * state.f[k];
  return std::norm(acc);
}

double eavesdropper_gain(const ChannelRealization& real, const BeamformingState& state, std::size_t m) {
  if (m >= real.eaves.size()) throw std::out_of_range("eavesdropper index out of range");
  const auto h = real.eve_channel(m);
  cplx acc = 0.0;
  for (int n = 0; n < real.N; ++n) acc += std::conj(h[n]) * state.reflected[n];
  return std::norm(acc);
}

double snr_legitimate(const ChannelRealization&, const BeamformingState& state, double rho_d) {
  return rho_d * legitimate_gain(state);
}

double snr_eavesdropper(const ChannelRealization& real, const BeamformingState& state, double rho_e,
                        std::size_t m) {
  return rho_e * eavesdropper_gain(real, state, m);
}

double snr_eavesdropper_reduced(const ChannelRealization& real, double rho_e, std::size_t m) {
  if (m >= real.eaves.size()) throw std::out_of_range("eavesdropper index out of range");
  const auto h = real.eve_channel(m);
  cplx acc = 0.0;
  for (int n = 0; n < real.N; ++n) acc += std::conj(h[n]) * std::polar(1.0, phase_of(real.h_RD[n]));
  return rho_e * real.K * real.nu * std::norm(acc);
}

std::vector<double> snr_eavesdroppers(const ChannelRealization& real, const BeamformingState& state,
                                      double rho_e) {
  std::vector<double> out(real.eaves.size());
  for (std::size_t m = 0; m < out.size(); ++m) out[m] = snr_eavesdropper(real, state, rho_e, m);
  return out;
}

double max_eavesdropper_snr(const ChannelRealization& real, const BeamformingState& state, double rho_e) {
  double best = 0.0;
  for (std::size_t m = 0; m < real.eaves.size(); ++m)
    best = std::max(best, snr_eavesdropper(real, state, rho_e, m));
  return best;
}

}  // namespace rissec
