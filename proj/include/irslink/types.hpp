// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <numbers>

#include <Eigen/Core>

namespace irslink {

using cxd = std::complex<double>;

// Azimuth/elevation pair, radians.
struct Angles {
    double azimuth = 0.0;
    double elevation = 0.0;
};

// Link geometry and constants. Both arrays are square, so the antenna and
// element counts must be perfect squares. The deterministic LoS path gains
// may be complex; only their product's magnitude enters the SNR.
struct SystemConfig {
    int ap_antennas = 16;
    int irs_elements = 64;
    cxd gain_ap_irs{0.1, 0.0};
    cxd gain_irs_user{0.5, 0.0};
    Angles aoa_irs{std::numbers::pi / 4, std::numbers::pi / 3};
    Angles aod_ap{std::numbers::pi / 6, std::numbers::pi / 4};
    Angles aod_irs{std::numbers::pi / 3, std::numbers::pi / 5};
    double spacing_ratio = 0.5;  // element spacing over wavelength
    double noise_power = 0.1;    // receiver noise variance, watts

    void validate() const;  // throws std::invalid_argument
};

// Transmitter RF impairments and IRS phase errors. Phase rotations are drawn
// uniformly from [-bound, bound]; the additive distortion noise is described
// only by its variance and is handled analytically, never sampled.
struct ImpairmentConfig {
    double rf_attenuation = 0.9;                          // amplitude scaling, (0, 1]
    double rf_phase_bound = std::numbers::pi / 18;        // per-antenna rotation bound
    double distortion_power = 0.1;                        // distortion noise variance
    double irs_phase_bound = std::numbers::pi / 8;        // per-element error bound

    static ImpairmentConfig none();  // ideal hardware
    bool is_ideal() const;
    void validate() const;
};

// Power consumption model: total drain is inefficiency * transmit + static.
struct PowerConfig {
    double amplifier_inefficiency = 1.1;
    double static_power = 10.0;        // watts
    double static_power_ideal = 10.0;  // static drain assumed for ideal-hardware scenarios
    double bandwidth = 1.0;            // hertz

    void validate() const;
};

// One draw of all random phases in the link.
struct PhaseRealization {
    Eigen::VectorXd rf_phase;         // one rotation per AP antenna
    Eigen::VectorXd irs_phase_error;  // one error per IRS element
};

struct BeamformingSolution {
    Eigen::VectorXcd weights;    // unit norm, first entry real and nonnegative
    Eigen::VectorXd irs_phases;  // designed reflection phases
};

struct MonteCarloResult {
    double mean = 0.0;
    double std_error = 0.0;
    long trials = 0;
};

struct OptimalPowerResult {
    double power = 0.0;                  // EE-maximizing transmit power, watts
    double energy_efficiency = 0.0;      // bit/joule at that power
    double rate_constant = 0.0;          // ln(SNR) - ln(P), nats
    double stationarity_residual = 0.0;  // relative to static power
};

}  // namespace irslink
