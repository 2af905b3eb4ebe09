// SPDX-License-Identifier: Apache-2.0

#include "irslink/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <thread>
#include <vector>

#include <Eigen/Dense>

#include "irslink/beamforming.hpp"
#include "irslink/channel.hpp"
#include "irslink/impairments.hpp"
#include "irslink/rng.hpp"

namespace irslink {

namespace {

// Deterministic pairwise reduction, down to single elements. The summation
// tree depends only on n, never on how the buffer was filled, which is what
// makes multi-threaded Monte Carlo output bit-identical to the serial run.
double pairwise_sum(const double* x, long n) {
    if (n == 1) return x[0];
    if (n == 2) return x[0] + x[1];
    const long half = n / 2;
    return pairwise_sum(x, half) + pairwise_sum(x + half, n - half);
}

void check_power(double power) {
    if (!(power > 0.0)) {
        throw std::domain_error("transmit power must be positive");
    }
}

}  // namespace

double snr_exact(const SystemConfig& cfg, const ImpairmentConfig& imp,
                 const PhaseRealization& phases, const BeamformingSolution& bf,
                 double power) {
    check_power(power);
    if (phases.rf_phase.size() != cfg.ap_antennas ||
        phases.irs_phase_error.size() != cfg.irs_elements) {
        throw std::invalid_argument("snr_exact: realization size mismatch");
    }
    if (bf.weights.size() != cfg.ap_antennas ||
        bf.irs_phases.size() != cfg.irs_elements) {
        throw std::invalid_argument("snr_exact: beamforming size mismatch");
    }
    const LosChannels ch = build_channels(cfg);

    // Reflection matrix with the per-element phase errors baked in.
    Eigen::MatrixXcd reflect =
        Eigen::MatrixXcd::Zero(cfg.irs_elements, cfg.irs_elements);
    for (int n = 0; n < cfg.irs_elements; ++n) {
        reflect(n, n) =
            std::polar(1.0, bf.irs_phases[n] + phases.irs_phase_error[n]);
    }
    const Eigen::MatrixXcd chi = rf_distortion_matrix(imp, phases);

    // Effective channel after the surface; the distortion noise passes
    // through the same cascade, so its power rides on this row's norm.
    const Eigen::RowVectorXcd through = ch.irs_to_user * reflect * ch.ap_to_irs;
    const cxd signal = (through * chi * bf.weights)(0);

    const double num = power * std::norm(signal);
    const double den =
        imp.distortion_power * through.squaredNorm() + cfg.noise_power;
    return num / den;
}

double snr_reduced(const SystemConfig& cfg, const ImpairmentConfig& imp,
                   const PhaseRealization& phases, double power) {
    check_power(power);
    if (phases.rf_phase.size() != cfg.ap_antennas ||
        phases.irs_phase_error.size() != cfg.irs_elements) {
        throw std::invalid_argument("snr_reduced: realization size mismatch");
    }
    // With the designed beamformer the whole link collapses to the two
    // phasor sums below; array geometry and spacing drop out.
    cxd rf_sum(0.0, 0.0);
    for (Eigen::Index m = 0; m < phases.rf_phase.size(); ++m) {
        rf_sum += std::polar(1.0, phases.rf_phase[m]);
    }
    cxd irs_sum(0.0, 0.0);
    for (Eigen::Index n = 0; n < phases.irs_phase_error.size(); ++n) {
        irs_sum += std::polar(1.0, phases.irs_phase_error[n]);
    }

    const double m = static_cast<double>(cfg.ap_antennas);
    const double gain2 = std::norm(cfg.gain_ap_irs * cfg.gain_irs_user);
    const double eta2 = imp.rf_attenuation * imp.rf_attenuation;

    const double num =
        power * eta2 * gain2 * std::norm(rf_sum) * std::norm(irs_sum) / m;
    const double den = m * gain2 * std::norm(irs_sum) * imp.distortion_power +
                       cfg.noise_power;
    return num / den;
}

double se_of_snr(double snr) {
    if (!(snr >= 0.0)) {
        throw std::domain_error("se_of_snr: negative SNR");
    }
    return std::log1p(snr) / std::numbers::ln2;
}

double se_asymptotic(const SystemConfig& cfg, const ImpairmentConfig& imp,
                     double power) {
    check_power(power);
    cfg.validate();
    imp.validate();
    const double m = static_cast<double>(cfg.ap_antennas);
    const double n = static_cast<double>(cfg.irs_elements);
    const double gain2 = std::norm(cfg.gain_ap_irs * cfg.gain_irs_user);
    const double eta2 = imp.rf_attenuation * imp.rf_attenuation;
    const double rf_mean = sinc(imp.rf_phase_bound);
    const double irs_mean = sinc(imp.irs_phase_bound);

    const double num = power * eta2 * gain2 * m * n * n * rf_mean * rf_mean *
                       irs_mean * irs_mean;
    const double den = m * n * n * gain2 * irs_mean * irs_mean *
                           imp.distortion_power +
                       cfg.noise_power;
    return se_of_snr(num / den);
}

double se_ideal(const SystemConfig& cfg, double power) {
    check_power(power);
    cfg.validate();
    const double m = static_cast<double>(cfg.ap_antennas);
    const double n = static_cast<double>(cfg.irs_elements);
    const double gain2 = std::norm(cfg.gain_ap_irs * cfg.gain_irs_user);
    return se_of_snr(power / cfg.noise_power * m * n * n * gain2);
}

double se_high_snr(const ImpairmentConfig& imp, double power) {
    check_power(power);
    imp.validate();
    if (!(imp.distortion_power > 0.0)) {
        throw std::domain_error(
            "se_high_snr: needs nonzero distortion power (the ideal link has no "
            "distortion-limited regime)");
    }
    const double eta2 = imp.rf_attenuation * imp.rf_attenuation;
    const double rf_mean = sinc(imp.rf_phase_bound);
    return std::log2(power * eta2 * rf_mean * rf_mean / imp.distortion_power);
}

double se_upper_bound(const ImpairmentConfig& imp, double power) {
    check_power(power);
    imp.validate();
    if (!(imp.distortion_power > 0.0)) {
        throw std::domain_error(
            "se_upper_bound: no finite ceiling without distortion power");
    }
    const double eta2 = imp.rf_attenuation * imp.rf_attenuation;
    const double rf_mean = sinc(imp.rf_phase_bound);
    return se_of_snr(power * eta2 * rf_mean * rf_mean / imp.distortion_power);
}

MonteCarloResult monte_carlo_se(const SystemConfig& cfg,
                                const ImpairmentConfig& imp, double power,
                                long trials, std::uint64_t seed, int threads) {
    check_power(power);
    cfg.validate();
    imp.validate();
    if (trials <= 0) {
        throw std::invalid_argument("monte_carlo_se: trials must be positive");
    }
    threads = std::clamp<long>(threads, 1, trials);

    std::vector<double> se(static_cast<std::size_t>(trials));
    auto worker = [&](long begin, long end) {
        for (long t = begin; t < end; ++t) {
            const PhaseRealization ph = sample_phases(
                imp, cfg.ap_antennas, cfg.irs_elements, child_seed(seed, t));
            se[static_cast<std::size_t>(t)] =
                se_of_snr(snr_reduced(cfg, imp, ph, power));
        }
    };

    if (threads == 1) {
        worker(0, trials);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (int i = 0; i < threads; ++i) {
            const long begin = trials * i / threads;
            const long end = trials * (i + 1) / threads;
            pool.emplace_back(worker, begin, end);
        }
        for (auto& th : pool) th.join();
    }

    MonteCarloResult res;
    res.trials = trials;
    res.mean = pairwise_sum(se.data(), trials) / static_cast<double>(trials);
    if (trials > 1) {
        std::vector<double> dev2(se.size());
        for (std::size_t i = 0; i < se.size(); ++i) {
            const double d = se[i] - res.mean;
            dev2[i] = d * d;
        }
        const double ss = pairwise_sum(dev2.data(), trials);
        res.std_error = std::sqrt(ss / (static_cast<double>(trials) - 1.0) /
                                  static_cast<double>(trials));
    }
    return res;
}

}  // namespace irslink
