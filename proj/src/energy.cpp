// SPDX-License-Identifier: Apache-2.0

#include "irslink/energy.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "irslink/impairments.hpp"
#include "irslink/spectral.hpp"

namespace irslink {

double total_power(const PowerConfig& pc, double transmit_power) {
    pc.validate();
    if (!(transmit_power > 0.0)) {
        throw std::domain_error("total_power: transmit power must be positive");
    }
    return pc.amplifier_inefficiency * transmit_power + pc.static_power;
}

double energy_efficiency(double se, const PowerConfig& pc,
                         double transmit_power) {
    return pc.bandwidth * se / total_power(pc, transmit_power);
}

double lambert_w0(double x) {
    constexpr double inv_e = 0.36787944117144232160;
    if (!(x >= -inv_e)) {
        // Absorb rounding right at the branch point, reject anything beyond.
        if (x >= -inv_e - 1e-12) {
            x = -inv_e;
        } else {
            throw std::domain_error("lambert_w0: argument below -1/e");
        }
    }
    if (x == 0.0) return 0.0;

    // Series in p = sqrt(2(ex+1)) around the branch point; returned directly
    // very close to -1/e where Halley's denominator degenerates.
    double w;
    if (x < -0.3) {
        const double p = std::sqrt(2.0 * (std::numbers::e * x + 1.0));
        w = -1.0 + p - p * p / 3.0 + 11.0 * p * p * p / 72.0;
        if (p < 1e-4) return w;
    } else if (x < std::numbers::e) {
        w = std::log1p(x);
    } else {
        // Asymptotic start: ln x - ln ln x.
        w = std::log(x);
        w -= std::log(w);
    }

    for (int it = 0; it < 64; ++it) {
        const double ew = std::exp(w);
        const double f = w * ew - x;
        const double denom =
            ew * (w + 1.0) - (w + 2.0) * f / (2.0 * w + 2.0);
        const double step = f / denom;
        w -= step;
        if (std::abs(step) <= 1e-16 * (1.0 + std::abs(w))) break;
    }
    return w;
}

double hardware_rate_constant(const ImpairmentConfig& imp) {
    imp.validate();
    if (!(imp.distortion_power > 0.0)) {
        throw std::domain_error(
            "hardware_rate_constant: needs nonzero distortion power");
    }
    const double rf_mean = sinc(imp.rf_phase_bound);
    return 2.0 * std::log(imp.rf_attenuation) + 2.0 * std::log(rf_mean) -
           std::log(imp.distortion_power);
}

double ideal_rate_constant(const SystemConfig& cfg) {
    cfg.validate();
    const double m = static_cast<double>(cfg.ap_antennas);
    const double n = static_cast<double>(cfg.irs_elements);
    const double gain2 = std::norm(cfg.gain_ap_irs * cfg.gain_irs_user);
    return std::log(m * n * n * gain2 / cfg.noise_power);
}

double stationarity_residual(double power, double rate_constant,
                             double amplifier_inefficiency,
                             double static_power) {
    if (!(power > 0.0)) {
        throw std::domain_error("stationarity_residual: power must be positive");
    }
    const double lhs = amplifier_inefficiency * power *
                       (std::log(power) + rate_constant - 1.0);
    return std::abs(lhs - static_power) / static_power;
}

std::pair<ClosedFormCandidate, ClosedFormCandidate>
closed_form_candidates(double rate_constant, double amplifier_inefficiency,
                       double static_power) {
    if (!(amplifier_inefficiency >= 1.0) || !(static_power > 0.0)) {
        throw std::domain_error("closed_form_candidates: bad power model");
    }
    const double z = std::exp(rate_constant - 1.0) * static_power /
                     amplifier_inefficiency;
    const double w = lambert_w0(z);

    ClosedFormCandidate ratio;
    ratio.power = static_power / (amplifier_inefficiency * w);
    ratio.residual = stationarity_residual(ratio.power, rate_constant,
                                           amplifier_inefficiency, static_power);

    ClosedFormCandidate product;
    product.power = amplifier_inefficiency * w / static_power;
    product.residual = stationarity_residual(
        product.power, rate_constant, amplifier_inefficiency, static_power);

    return {ratio, product};
}

namespace {

OptimalPowerResult solve_for_constant(double rate_constant,
                                      double amplifier_inefficiency,
                                      double static_power, double bandwidth) {
    const auto [ratio, product] = closed_form_candidates(
        rate_constant, amplifier_inefficiency, static_power);
    const ClosedFormCandidate& best =
        ratio.residual <= product.residual ? ratio : product;
    if (!(best.residual <= 1e-8)) {
        throw std::domain_error(
            "optimal_power: no closed-form candidate satisfies stationarity");
    }

    OptimalPowerResult res;
    res.power = best.power;
    res.rate_constant = rate_constant;
    res.stationarity_residual = best.residual;
    const double se =
        (std::log(res.power) + rate_constant) / std::numbers::ln2;
    res.energy_efficiency =
        bandwidth * se /
        (amplifier_inefficiency * res.power + static_power);
    return res;
}

}  // namespace

OptimalPowerResult optimal_power(const ImpairmentConfig& imp,
                                 const PowerConfig& pc) {
    pc.validate();
    return solve_for_constant(hardware_rate_constant(imp),
                              pc.amplifier_inefficiency, pc.static_power,
                              pc.bandwidth);
}

OptimalPowerResult optimal_power_ideal(const SystemConfig& cfg,
                                       const PowerConfig& pc) {
    pc.validate();
    return solve_for_constant(ideal_rate_constant(cfg),
                              pc.amplifier_inefficiency, pc.static_power_ideal,
                              pc.bandwidth);
}

void PowerConfig::validate() const {
    if (!(amplifier_inefficiency >= 1.0)) {
        throw std::invalid_argument("amplifier_inefficiency must be >= 1");
    }
    if (!(static_power > 0.0) || !(static_power_ideal > 0.0)) {
        throw std::invalid_argument("static power must be positive");
    }
    if (!(bandwidth > 0.0)) {
        throw std::invalid_argument("bandwidth must be positive");
    }
}

}  // namespace irslink
