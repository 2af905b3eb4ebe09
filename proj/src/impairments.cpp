// SPDX-License-Identifier: Apache-2.0

#include "irslink/impairments.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "irslink/rng.hpp"

namespace irslink {

double sinc(double x) {
    if (x == 0.0) return 1.0;
    return std::sin(x) / x;
}

PhaseRealization sample_phases(const ImpairmentConfig& imp, int ap_antennas,
                               int irs_elements, std::uint64_t seed) {
    imp.validate();
    if (ap_antennas <= 0 || irs_elements <= 0) {
        throw std::invalid_argument("sample_phases: counts must be positive");
    }
    // Separate streams per vector so the IRS draw does not move when the
    // antenna count changes.
    Rng rf(child_seed(seed, 0));
    Rng irs(child_seed(seed, 1));

    PhaseRealization out;
    out.rf_phase.resize(ap_antennas);
    for (int m = 0; m < ap_antennas; ++m) {
        out.rf_phase[m] = rf.symmetric(imp.rf_phase_bound);
    }
    out.irs_phase_error.resize(irs_elements);
    for (int n = 0; n < irs_elements; ++n) {
        out.irs_phase_error[n] = irs.symmetric(imp.irs_phase_bound);
    }
    return out;
}

Eigen::MatrixXcd rf_distortion_matrix(const ImpairmentConfig& imp,
                                      const PhaseRealization& phases) {
    const Eigen::Index m = phases.rf_phase.size();
    Eigen::MatrixXcd chi = Eigen::MatrixXcd::Zero(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
        chi(i, i) = std::polar(imp.rf_attenuation, phases.rf_phase[i]);
    }
    return chi;
}

ImpairmentConfig ImpairmentConfig::none() {
    ImpairmentConfig imp;
    imp.rf_attenuation = 1.0;
    imp.rf_phase_bound = 0.0;
    imp.distortion_power = 0.0;
    imp.irs_phase_bound = 0.0;
    return imp;
}

bool ImpairmentConfig::is_ideal() const {
    return rf_attenuation == 1.0 && rf_phase_bound == 0.0 &&
           distortion_power == 0.0 && irs_phase_bound == 0.0;
}

void ImpairmentConfig::validate() const {
    if (!(rf_attenuation > 0.0) || rf_attenuation > 1.0) {
        throw std::invalid_argument("rf_attenuation must be in (0, 1]");
    }
    // The bound must stay below pi: at pi the mean phasor sin(x)/x crosses
    // zero and the closed forms lose meaning.
    if (!(rf_phase_bound >= 0.0) || rf_phase_bound >= std::numbers::pi) {
        throw std::invalid_argument("rf_phase_bound must be in [0, pi)");
    }
    if (!(irs_phase_bound >= 0.0) || irs_phase_bound > std::numbers::pi) {
        throw std::invalid_argument("irs_phase_bound must be in [0, pi]");
    }
    if (!(distortion_power >= 0.0)) {
        throw std::invalid_argument("distortion_power must be nonnegative");
    }
}

}  // namespace irslink
