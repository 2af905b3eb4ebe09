// SPDX-License-Identifier: Apache-2.0

#include "irslink/beamforming.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "irslink/channel.hpp"

namespace irslink {

Eigen::VectorXd optimal_irs_phases(const SystemConfig& cfg) {
    cfg.validate();
    const int n = cfg.irs_elements;
    const int side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));

    // Per-element phase of the cascade is 2*pi*spacing*(x*p + y*q), where p
    // and q collect the direction terms of the arriving and departing waves
    // at the surface. Negating it aligns every element.
    const double p = std::sin(cfg.aoa_irs.azimuth) * std::sin(cfg.aoa_irs.elevation) -
                     std::sin(cfg.aod_irs.azimuth) * std::sin(cfg.aod_irs.elevation);
    const double q = std::cos(cfg.aoa_irs.elevation) - std::cos(cfg.aod_irs.elevation);
    const double k = 2.0 * std::numbers::pi * cfg.spacing_ratio;

    Eigen::VectorXd phases(n);
    for (int i = 0; i < n; ++i) {
        const int x = i / side;
        const int y = i % side;
        phases[i] = -k * (x * p + y * q);
    }
    return phases;
}

Eigen::VectorXcd mrt_beamformer(const SystemConfig& cfg,
                                const Eigen::VectorXd& irs_phases) {
    if (irs_phases.size() != cfg.irs_elements) {
        throw std::invalid_argument("mrt_beamformer: phase vector size mismatch");
    }
    const LosChannels ch = build_channels(cfg);

    Eigen::VectorXcd reflect(cfg.irs_elements);
    for (int i = 0; i < cfg.irs_elements; ++i) {
        reflect[i] = std::polar(1.0, irs_phases[i]);
    }
    // Cascade row vector seen by the user; MRT matches its conjugate.
    const Eigen::RowVectorXcd cascade =
        ch.irs_to_user * reflect.asDiagonal() * ch.ap_to_irs;

    Eigen::VectorXcd w = cascade.adjoint();
    const double norm = w.norm();
    if (!(norm > 0.0)) {
        throw std::domain_error("mrt_beamformer: cascade channel vanishes for these IRS phases");
    }
    w /= norm;

    // Fix the global phase: rotate so the first entry is real, >= 0.
    const double head = std::abs(w[0]);
    if (head > 0.0) {
        w *= std::conj(w[0]) / head;
        w[0] = cxd(head, 0.0);  // clear rounding in the imaginary part
    }
    return w;
}

BeamformingSolution design_beamforming(const SystemConfig& cfg) {
    BeamformingSolution sol;
    sol.irs_phases = optimal_irs_phases(cfg);
    sol.weights = mrt_beamformer(cfg, sol.irs_phases);
    return sol;
}

}  // namespace irslink
