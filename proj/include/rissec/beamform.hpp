#pragma once

#include "rissec/sysmodel.hpp"

#include <span>
#include <vector>

namespace rissec {

struct BeamformingState {
  std::vector<double> theta;      // RIS phases in [0, 2pi)
  std::vector<cplx> f;            // unit-norm transmit beamformer
  std::vector<cplx> cascaded_D;   // g_D^H = h_RD^H Theta H_SR, length K
  std::vector<cplx> reflected;    // Theta H_SR f, length N; shared by every eavesdropper
};

// theta_n = -arg(conj(h_RD[n]) * a_NSR[n]); a zero product maps to phase 0.
std::vector<double> optimal_phases(std::span<const cplx> h_RD, std::span<const cplx> a_NSR);

// Co-phasing RIS phases from the LoS BS-RIS steering vector, then MRT on the cascaded channel.
BeamformingState design_beamforming(const ChannelRealization& real);

// |g_D^H f|^2 and |h_RE^H Theta H_SR f|^2 at unit transmit SNR.
double legitimate_gain(const BeamformingState& state);
double eavesdropper_gain(const ChannelRealization& real, const BeamformingState& state, std::size_t m);

double snr_legitimate(const ChannelRealization& real, const BeamformingState& state, double rho_d);
double snr_eavesdropper(const ChannelRealization& real, const BeamformingState& state, double rho_e,
                        std::size_t m);
// rho_e K nu |sum_n conj(h_RE[n]) exp(j arg h_RD[n])|^2; valid for the LoS BS-RIS link.
double snr_eavesdropper_reduced(const ChannelRealization& real, double rho_e, std::size_t m);
std::vector<double> snr_eavesdroppers(const ChannelRealization& real, const BeamformingState& state,
                                      double rho_e);
double max_eavesdropper_snr(const ChannelRealization& real, const BeamformingState& state, double rho_e);

}  // namespace rissec
