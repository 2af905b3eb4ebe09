#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "irslink/beamforming.hpp"
#include "irslink/impairments.hpp"
#include "irslink/rng.hpp"
#include "irslink/spectral.hpp"

using namespace irslink;

namespace {

double rel(double a, double b) {
    double scale = std::max({std::abs(a), std::abs(b), 1e-300});
    return std::abs(a - b) / scale;
}

constexpr double pi = std::numbers::pi;

// Random but valid link setups for property checks.
SystemConfig random_system(Rng& rng) {
    static const int sizes[] = {1, 4, 16, 64};
    SystemConfig cfg;
    cfg.ap_antennas = sizes[rng.next() % 4];
    cfg.irs_elements = sizes[rng.next() % 4];
    cfg.gain_ap_irs = cxd(rng.symmetric(1.0), rng.symmetric(1.0));
    if (std::abs(cfg.gain_ap_irs) < 1e-3) cfg.gain_ap_irs = cxd(0.3, 0.0);
    cfg.gain_irs_user = cxd(rng.symmetric(1.0), rng.symmetric(1.0));
    if (std::abs(cfg.gain_irs_user) < 1e-3) cfg.gain_irs_user = cxd(0.4, 0.0);
    cfg.aoa_irs = {rng.uniform() * 2.0 * pi, rng.uniform() * pi};
    cfg.aod_ap = {rng.uniform() * 2.0 * pi, rng.uniform() * pi};
    cfg.aod_irs = {rng.uniform() * 2.0 * pi, rng.uniform() * pi};
    cfg.spacing_ratio = 0.1 + 0.9 * rng.uniform();
    cfg.noise_power = 0.01 + 0.99 * rng.uniform();
    return cfg;
}

ImpairmentConfig random_impairments(Rng& rng) {
    ImpairmentConfig imp;
    imp.rf_attenuation = 0.5 + 0.5 * rng.uniform();
    imp.rf_phase_bound = 2.0 * rng.uniform();
    imp.irs_phase_bound = 2.0 * rng.uniform();
    imp.distortion_power = 0.5 * rng.uniform();
    return imp;
}

}  // namespace

TEST_CASE("closed forms reproduce reference values at the default setup") {
    SystemConfig cfg;
    ImpairmentConfig imp;
    // References from a 30-digit reimplementation of the same formulas.
    CHECK(rel(se_ideal(cfg, 1.0), 10.678952187671456855) < 1e-14);
    CHECK(rel(se_asymptotic(cfg, imp, 1.0), 3.1646064176010493104) < 1e-14);
    CHECK(rel(se_high_snr(imp, 1.0), 3.0032580033298289167) < 1e-14);
    CHECK(rel(se_upper_bound(imp, 1.0), 3.1728213675213592638) < 1e-14);
}

TEST_CASE("spectral efficiency of zero SNR is zero") {
    CHECK(se_of_snr(0.0) == 0.0);
    CHECK_THROWS_AS(se_of_snr(-0.5), std::domain_error);
}

TEST_CASE("matrix and scalar SNR forms agree for the designed beamformer") {
    Rng rng(child_seed(101, 0));
    for (int i = 0; i < 100; ++i) {
        SystemConfig cfg = random_system(rng);
        ImpairmentConfig imp = random_impairments(rng);
        double power = std::exp(rng.symmetric(std::log(10.0)));
        PhaseRealization ph = sample_phases(imp, cfg.ap_antennas,
                                            cfg.irs_elements, rng.next());
        double exact = snr_exact(cfg, imp, ph, design_beamforming(cfg), power);
        double reduced = snr_reduced(cfg, imp, ph, power);
        CHECK(rel(exact, reduced) < 1e-9);
    }
}

TEST_CASE("ideal hardware collapses every form to the ideal rate") {
    Rng rng(child_seed(102, 0));
    ImpairmentConfig ideal = ImpairmentConfig::none();
    for (int i = 0; i < 20; ++i) {
        SystemConfig cfg = random_system(rng);
        double power = 0.1 + 10.0 * rng.uniform();
        PhaseRealization ph = sample_phases(ideal, cfg.ap_antennas,
                                            cfg.irs_elements, rng.next());
        double se = se_of_snr(snr_reduced(cfg, ideal, ph, power));
        CHECK(rel(se, se_ideal(cfg, power)) < 1e-12);
        CHECK(rel(se_asymptotic(cfg, ideal, power), se_ideal(cfg, power)) <
              1e-12);
    }
}

TEST_CASE("upper bound needs distortion power") {
    ImpairmentConfig imp;
    imp.distortion_power = 0.0;
    CHECK_THROWS_AS(se_upper_bound(imp, 1.0), std::domain_error);
    CHECK_THROWS_AS(se_high_snr(imp, 1.0), std::domain_error);
}

TEST_CASE("average rate stays below the size-independent ceiling") {
    SystemConfig cfg;
    ImpairmentConfig imp;
    for (double power : {0.1, 1.0, 10.0, 1000.0}) {
        double ceiling = se_upper_bound(imp, power);
        double prev_gap = -1.0;
        for (int side : {2, 4, 8, 16, 32, 64}) {
            cfg.irs_elements = side * side;
            double se = se_asymptotic(cfg, imp, power);
            CHECK(se <= ceiling + 1e-12);
            double gap = ceiling - se;
            if (prev_gap >= 0.0) CHECK(gap < prev_gap);
            prev_gap = gap;
        }
    }
}

TEST_CASE("nonpositive power is rejected everywhere") {
    SystemConfig cfg;
    ImpairmentConfig imp;
    CHECK_THROWS_AS(se_asymptotic(cfg, imp, 0.0), std::domain_error);
    CHECK_THROWS_AS(se_ideal(cfg, -1.0), std::domain_error);
    CHECK_THROWS_AS(se_high_snr(imp, 0.0), std::domain_error);
    CHECK_THROWS_AS(monte_carlo_se(cfg, imp, 0.0, 10, 1), std::domain_error);
}

TEST_CASE("monte carlo is bit-identical across thread counts") {
    SystemConfig cfg;
    ImpairmentConfig imp;
    // Odd trial count on purpose: the chunking must not matter.
    MonteCarloResult serial = monte_carlo_se(cfg, imp, 1.0, 999, 42, 1);
    for (int threads : {2, 3, 8}) {
        MonteCarloResult parallel =
            monte_carlo_se(cfg, imp, 1.0, 999, 42, threads);
        CHECK(parallel.mean == serial.mean);
        CHECK(parallel.std_error == serial.std_error);
        CHECK(parallel.trials == serial.trials);
    }
}

TEST_CASE("monte carlo with ideal hardware has exactly zero spread") {
    SystemConfig cfg;
    // Power-of-two trials make the pairwise tree sum identical values
    // without any rounding, so the variance comes out exactly zero.
    MonteCarloResult res =
        monte_carlo_se(cfg, ImpairmentConfig::none(), 1.0, 256, 7, 4);
    CHECK(res.std_error == 0.0);
    CHECK(rel(res.mean, se_ideal(cfg, 1.0)) < 1e-12);
}

TEST_CASE("monte carlo mean approaches the deterministic equivalent") {
    SystemConfig cfg;
    ImpairmentConfig imp;
    MonteCarloResult res = monte_carlo_se(cfg, imp, 1.0, 2000, 11, 4);
    CHECK(std::abs(res.mean - se_asymptotic(cfg, imp, 1.0)) < 0.005);
    CHECK(res.std_error > 0.0);
    CHECK(res.std_error < 0.01);
}

TEST_CASE("monte carlo rejects nonpositive trial counts") {
    SystemConfig cfg;
    ImpairmentConfig imp;
    CHECK_THROWS_AS(monte_carlo_se(cfg, imp, 1.0, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(monte_carlo_se(cfg, imp, 1.0, -5, 1),
                    std::invalid_argument);
}
