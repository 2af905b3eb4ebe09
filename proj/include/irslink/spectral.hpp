// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

#include "irslink/types.hpp"

namespace irslink {

// Link SNR evaluated with the full matrix model (cascade times distortion
// matrix times beamformer; distortion noise enters through the norm of the
// effective channel). O(N^2 + N*M) per call. Kept as the reference the fast
// scalar form is checked against.
double snr_exact(const SystemConfig& cfg, const ImpairmentConfig& imp,
                 const PhaseRealization& phases, const BeamformingSolution& bf,
                 double power);

// Same quantity for the designed beamformer, collapsed to two phase sums.
// O(M + N) per call; this is what the Monte Carlo loop evaluates.
double snr_reduced(const SystemConfig& cfg, const ImpairmentConfig& imp,
                   const PhaseRealization& phases, double power);

double se_of_snr(double snr);  // log2(1 + snr), bit/s/Hz

// Average spectral efficiency with the random phase sums replaced by their
// means. Exact in the large-system limit; a very tight approximation already
// at moderate array sizes.
double se_asymptotic(const SystemConfig& cfg, const ImpairmentConfig& imp,
                     double power);

// Ideal hardware: no attenuation, no phase errors, no distortion noise.
double se_ideal(const SystemConfig& cfg, double power);

// High-power limit of the impaired link, where distortion noise dominates
// thermal noise and the surface geometry drops out.
double se_high_snr(const ImpairmentConfig& imp, double power);

// Ceiling of the impaired spectral efficiency over all array sizes. Requires
// nonzero distortion power (the ideal link has no such ceiling); throws
// std::domain_error otherwise.
double se_upper_bound(const ImpairmentConfig& imp, double power);

// Mean spectral efficiency over independent phase realizations. Bit-exact
// reproducible for a given (seed, trials) regardless of thread count: trial
// t always uses child_seed(seed, t), results land in a pre-sized buffer and
// are reduced by pairwise summation.
MonteCarloResult monte_carlo_se(const SystemConfig& cfg,
                                const ImpairmentConfig& imp, double power,
                                long trials, std::uint64_t seed,
                                int threads = 1);

}  // namespace irslink
