// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

#include <Eigen/Core>

#include "irslink/types.hpp"

namespace irslink {

// sin(x)/x with the removable singularity filled in. Even; equals 1 at 0.
double sinc(double x);

// Draw one realization of all phase errors: RF rotation per AP antenna,
// uniform on [-rf_phase_bound, rf_phase_bound], and one reflection error per
// IRS element, uniform on [-irs_phase_bound, irs_phase_bound]. Deterministic
// in (seed, counts); a zero bound produces exact zeros.
PhaseRealization sample_phases(const ImpairmentConfig& imp, int ap_antennas,
                               int irs_elements, std::uint64_t seed);

// Multiplicative transmit-chain distortion: diagonal matrix with entries
// rf_attenuation * exp(j*rf_phase[m]). The additive distortion noise of the
// chain is not part of this matrix; its variance (distortion_power) enters
// the SNR denominators directly.
Eigen::MatrixXcd rf_distortion_matrix(const ImpairmentConfig& imp,
                                      const PhaseRealization& phases);

}  // namespace irslink
