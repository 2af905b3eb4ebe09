// SPDX-License-Identifier: Apache-2.0

#include "irslink/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace irslink {

namespace {

// Side length of a square array, or -1 if count is not a perfect square.
int square_side(int count) {
    if (count <= 0) return -1;
    const int side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(count))));
    return side * side == count ? side : -1;
}

}  // namespace

Eigen::VectorXcd array_response(int count, const Angles& direction,
                                double spacing_ratio) {
    const int side = square_side(count);
    if (side < 0) {
        throw std::invalid_argument("array_response: element count " +
                                    std::to_string(count) +
                                    " is not a positive perfect square");
    }
    const double u = std::sin(direction.azimuth) * std::sin(direction.elevation);
    const double v = std::cos(direction.elevation);
    const double k = 2.0 * std::numbers::pi * spacing_ratio;

    Eigen::VectorXcd a(count);
    for (int n = 0; n < count; ++n) {
        const int x = n / side;
        const int y = n % side;
        a[n] = std::polar(1.0, k * (x * u + y * v));
    }
    return a;
}

LosChannels build_channels(const SystemConfig& cfg) {
    cfg.validate();
    const Eigen::VectorXcd arrive_irs =
        array_response(cfg.irs_elements, cfg.aoa_irs, cfg.spacing_ratio);
    const Eigen::VectorXcd depart_ap =
        array_response(cfg.ap_antennas, cfg.aod_ap, cfg.spacing_ratio);
    const Eigen::VectorXcd depart_irs =
        array_response(cfg.irs_elements, cfg.aod_irs, cfg.spacing_ratio);

    LosChannels ch;
    ch.ap_to_irs = cfg.gain_ap_irs * (arrive_irs * depart_ap.adjoint());
    ch.irs_to_user = cfg.gain_irs_user * depart_irs.adjoint();
    return ch;
}

void SystemConfig::validate() const {
    auto square = [](int n) {
        if (n <= 0) return false;
        const int s = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
        return s * s == n;
    };
    if (!square(ap_antennas)) {
        throw std::invalid_argument("ap_antennas must be a positive perfect square, got " +
                                    std::to_string(ap_antennas));
    }
    if (!square(irs_elements)) {
        throw std::invalid_argument("irs_elements must be a positive perfect square, got " +
                                    std::to_string(irs_elements));
    }
    if (!(spacing_ratio > 0.0)) {
        throw std::invalid_argument("spacing_ratio must be positive");
    }
    if (!(noise_power > 0.0)) {
        throw std::invalid_argument("noise_power must be positive");
    }
    if (std::abs(gain_ap_irs) == 0.0 || std::abs(gain_irs_user) == 0.0) {
        throw std::invalid_argument("path gains must be nonzero");
    }
}

}  // namespace irslink
