// SPDX-License-Identifier: Apache-2.0

#include "irslink/validate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "irslink/beamforming.hpp"
#include "irslink/energy.hpp"
#include "irslink/impairments.hpp"
#include "irslink/rng.hpp"
#include "irslink/spectral.hpp"
#include "irslink/types.hpp"

namespace irslink {

namespace {

struct Knobs {
    long identity_pairs;
    long lambert_points;
    long mc_trials;
    int impairment_grid;
};

Knobs knobs_for(Intensity intensity) {
    switch (intensity) {
        case Intensity::Quick: return {100, 2000, 2000, 3};
        case Intensity::Standard: return {400, 20000, 10000, 5};
        case Intensity::Full: return {2000, 100000, 40000, 7};
    }
    return {400, 20000, 10000, 5};
}

std::string fmt3(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

struct Collector {
    long checks = 0;
    bool ok = true;
    std::string first_fail;

    void expect(bool cond, const std::string& what) {
        ++checks;
        if (!cond && ok) {
            ok = false;
            first_fail = what;
        }
    }

    SuiteResult result(const std::string& name, const std::string& summary) const {
        SuiteResult r;
        r.name = name;
        r.passed = ok;
        r.checks = checks;
        r.detail = ok ? summary : first_fail;
        return r;
    }
};

SystemConfig random_system(Rng& rng) {
    static const int sizes[] = {1, 4, 16, 64};
    SystemConfig cfg;
    cfg.ap_antennas = sizes[rng.next() % 4];
    cfg.irs_elements = sizes[rng.next() % 4];
    cfg.gain_ap_irs = {rng.symmetric(1.0), rng.symmetric(1.0)};
    cfg.gain_irs_user = {rng.symmetric(1.0), rng.symmetric(1.0)};
    if (std::abs(cfg.gain_ap_irs) == 0.0) cfg.gain_ap_irs = {0.1, 0.0};
    if (std::abs(cfg.gain_irs_user) == 0.0) cfg.gain_irs_user = {0.5, 0.0};
    const double two_pi = 2.0 * std::numbers::pi;
    cfg.aoa_irs = {rng.uniform() * two_pi, rng.uniform() * std::numbers::pi};
    cfg.aod_ap = {rng.uniform() * two_pi, rng.uniform() * std::numbers::pi};
    cfg.aod_irs = {rng.uniform() * two_pi, rng.uniform() * std::numbers::pi};
    cfg.spacing_ratio = 0.1 + 0.9 * rng.uniform();
    cfg.noise_power = 0.01 + 0.99 * rng.uniform();
    return cfg;
}

ImpairmentConfig random_impairments(Rng& rng) {
    ImpairmentConfig imp;
    imp.rf_attenuation = 0.5 + 0.5 * rng.uniform();
    imp.rf_phase_bound = 2.0 * rng.uniform();
    imp.distortion_power = 0.5 * rng.uniform();
    imp.irs_phase_bound = 2.0 * rng.uniform();
    return imp;
}

double log_uniform(Rng& rng, double lo, double hi) {
    return std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * rng.uniform());
}

SuiteResult suite_identity(std::uint64_t seed, const Knobs& k,
                           const std::function<double(double)>& sinc_ref) {
    Collector c;
    Rng rng(child_seed(seed, 1));
    double worst_pair = 0.0;
    double worst_closed = 0.0;

    for (long i = 0; i < k.identity_pairs; ++i) {
        const SystemConfig cfg = random_system(rng);
        const ImpairmentConfig imp = random_impairments(rng);
        const double power = log_uniform(rng, 0.01, 100.0);
        const PhaseRealization ph = sample_phases(
            imp, cfg.ap_antennas, cfg.irs_elements, rng.next());
        const BeamformingSolution bf = design_beamforming(cfg);

        const double exact = snr_exact(cfg, imp, ph, bf, power);
        const double reduced = snr_reduced(cfg, imp, ph, power);
        const double rel = std::abs(exact - reduced) / reduced;
        worst_pair = std::max(worst_pair, rel);
        c.expect(rel <= 1e-9, "exact vs reduced SNR rel dev " + fmt3(rel));

        // Recompute the closed form from scratch with the injected sinc, so
        // a wrong kernel in either place shows up as a mismatch.
        const double m = cfg.ap_antennas;
        const double n = cfg.irs_elements;
        const double gain2 = std::norm(cfg.gain_ap_irs * cfg.gain_irs_user);
        const double sp = sinc_ref(imp.rf_phase_bound);
        const double st = sinc_ref(imp.irs_phase_bound);
        const double num = power * imp.rf_attenuation * imp.rf_attenuation *
                           gain2 * m * n * n * sp * sp * st * st;
        const double den =
            m * n * n * gain2 * st * st * imp.distortion_power + cfg.noise_power;
        const double expected = std::log1p(num / den) / std::numbers::ln2;
        const double got = se_asymptotic(cfg, imp, power);
        const double rel_closed =
            std::abs(expected - got) / std::max(std::abs(expected), 1e-300);
        worst_closed = std::max(worst_closed, rel_closed);
        c.expect(rel_closed <= 1e-12,
                 "closed-form recomputation rel dev " + fmt3(rel_closed));

        // With no impairments the closed form must collapse to the ideal SE.
        const double ideal_a = se_asymptotic(cfg, ImpairmentConfig::none(), power);
        const double ideal_b = se_ideal(cfg, power);
        const double rel_ideal =
            std::abs(ideal_a - ideal_b) / std::max(ideal_b, 1e-300);
        c.expect(rel_ideal <= 1e-12, "ideal collapse rel dev " + fmt3(rel_ideal));
    }
    return c.result("identity", "max rel dev exact/reduced " + fmt3(worst_pair) +
                                    ", closed " + fmt3(worst_closed));
}

SuiteResult suite_bound(const Knobs&) {
    Collector c;
    const SystemConfig base;
    const ImpairmentConfig imp;
    static const int sides[] = {2, 4, 8, 16, 32, 64};
    static const double powers[] = {0.01, 0.1, 1.0, 10.0, 100.0};

    for (double power : powers) {
        const double ceiling = se_upper_bound(imp, power);
        double prev_se = -1.0;
        double prev_gap = 1e300;
        for (int side : sides) {
            SystemConfig cfg = base;
            cfg.irs_elements = side * side;
            const double se = se_asymptotic(cfg, imp, power);
            c.expect(se <= ceiling + 1e-12, "SE exceeds ceiling at N=" +
                                                std::to_string(side * side));
            c.expect(se > prev_se, "SE not increasing in N");
            const double gap = ceiling - se;
            c.expect(gap < prev_gap, "gap to ceiling not shrinking in N");
            prev_se = se;
            prev_gap = gap;
        }
    }
    return c.result("bound", "ceiling respected and approached");
}

SuiteResult suite_monotonicity(const Knobs& k) {
    Collector c;
    const SystemConfig cfg;
    const double power = 1.0;

    // Spectral efficiency directions, one axis at a time off the defaults.
    {
        double prev = -1.0;
        for (double eta : {0.5, 0.6, 0.7, 0.8, 0.9, 1.0}) {
            ImpairmentConfig imp;
            imp.rf_attenuation = eta;
            const double se = se_asymptotic(cfg, imp, power);
            c.expect(se > prev, "SE not increasing in rf_attenuation");
            prev = se;
        }
    }
    {
        double prev = 1e300;
        for (double bound : {0.0, 0.2, 0.4, 0.8, 1.2}) {
            ImpairmentConfig imp;
            imp.rf_phase_bound = bound;
            const double se = se_asymptotic(cfg, imp, power);
            c.expect(se < prev, "SE not decreasing in rf_phase_bound");
            prev = se;
        }
    }
    {
        double prev = 1e300;
        for (double dp : {0.01, 0.05, 0.1, 0.2, 0.4, 0.8}) {
            ImpairmentConfig imp;
            imp.distortion_power = dp;
            const double se = se_asymptotic(cfg, imp, power);
            c.expect(se < prev, "SE not decreasing in distortion_power");
            prev = se;
        }
    }
    {
        double prev = 1e300;
        for (double bound : {0.0, 0.5, 1.0, 2.0, std::numbers::pi}) {
            ImpairmentConfig imp;
            imp.irs_phase_bound = bound;
            const double se = se_asymptotic(cfg, imp, power);
            c.expect(se < prev, "SE not decreasing in irs_phase_bound");
            prev = se;
        }
    }

    // Optimal power and the efficiency at it, over a full impairment grid.
    // Worse hardware -> larger optimal power, lower peak efficiency.
    const PowerConfig pc;
    const int g = k.impairment_grid;
    std::vector<double> etas(g), sigmas(g), bounds(g);
    for (int i = 0; i < g; ++i) {
        etas[i] = 0.6 + 0.4 * i / (g - 1);
        sigmas[i] = 0.05 * std::pow(16.0, static_cast<double>(i) / (g - 1));
        bounds[i] = (std::numbers::pi / 4) * i / (g - 1);
    }
    auto solve = [&](double eta, double sigma2, double bound) {
        ImpairmentConfig imp;
        imp.rf_attenuation = eta;
        imp.distortion_power = sigma2;
        imp.rf_phase_bound = bound;
        return optimal_power(imp, pc);
    };
    for (int a = 0; a < g; ++a) {
        for (int b = 0; b < g; ++b) {
            for (int d = 0; d + 1 < g; ++d) {
                const auto lo = solve(etas[d], sigmas[a], bounds[b]);
                const auto hi = solve(etas[d + 1], sigmas[a], bounds[b]);
                c.expect(hi.power < lo.power, "P* not decreasing in rf_attenuation");
                c.expect(hi.energy_efficiency > lo.energy_efficiency,
                         "EE* not increasing in rf_attenuation");

                const auto slo = solve(etas[a], sigmas[d], bounds[b]);
                const auto shi = solve(etas[a], sigmas[d + 1], bounds[b]);
                c.expect(shi.power > slo.power,
                         "P* not increasing in distortion_power");
                c.expect(shi.energy_efficiency < slo.energy_efficiency,
                         "EE* not decreasing in distortion_power");

                const auto blo = solve(etas[a], sigmas[b], bounds[d]);
                const auto bhi = solve(etas[a], sigmas[b], bounds[d + 1]);
                c.expect(bhi.power > blo.power,
                         "P* not increasing in rf_phase_bound");
                c.expect(bhi.energy_efficiency < blo.energy_efficiency,
                         "EE* not decreasing in rf_phase_bound");
            }
        }
    }
    return c.result("monotonicity", "all impairment directions hold");
}

SuiteResult suite_lambert(std::uint64_t seed, const Knobs& k) {
    Collector c;
    (void)seed;
    constexpr double inv_e = 0.36787944117144232160;
    double worst = 0.0;

    auto residual = [](double x) {
        const double w = lambert_w0(x);
        return std::abs(w * std::exp(w) - x) / std::max(1.0, std::abs(x));
    };
    auto bisect = [](double x) {
        double lo = -1.0;
        double hi = x > std::numbers::e ? std::log(x) : 1.0;
        for (int i = 0; i < 200; ++i) {
            const double mid = 0.5 * (lo + hi);
            (mid * std::exp(mid) < x ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
    };

    const long n = k.lambert_points;
    for (long i = 0; i < n; ++i) {
        // Positive leg, log spaced over 18 decades.
        const double t = static_cast<double>(i) / (n - 1);
        const double x = std::exp(std::log(1e-8) + t * (std::log(1e10) - std::log(1e-8)));
        const double r = residual(x);
        worst = std::max(worst, r);
        c.expect(r <= 1e-12, "inverse residual " + fmt3(r) + " at x=" + fmt3(x));
        if (i % 16 == 0) {
            const double wb = bisect(x);
            const double w = lambert_w0(x);
            c.expect(std::abs(w - wb) <= 1e-10 * std::max(1.0, std::abs(w)),
                     "bisection disagreement at x=" + fmt3(x));
        }
        // Negative leg, linear over (-1/e, 0).
        const double xn = -inv_e * (1.0 - t) - 1e-12 * t;
        if (xn < 0.0 && xn >= -inv_e) {
            const double rn = residual(xn);
            worst = std::max(worst, rn);
            c.expect(rn <= 1e-12, "inverse residual " + fmt3(rn) + " at x=" + fmt3(xn));
        }
    }

    c.expect(lambert_w0(0.0) == 0.0, "W(0) != 0");
    c.expect(std::abs(lambert_w0(std::numbers::e) - 1.0) <= 1e-14, "W(e) != 1");
    c.expect(std::abs(lambert_w0(1.0) - 0.56714329040978387) <= 1e-14,
             "W(1) off the omega constant");
    c.expect(std::abs(lambert_w0(-inv_e) + 1.0) <= 1e-6, "W(-1/e) != -1");
    bool threw = false;
    try {
        lambert_w0(-0.5);
    } catch (const std::domain_error&) {
        threw = true;
    }
    c.expect(threw, "no domain error below -1/e");

    return c.result("lambert", "max inverse residual " + fmt3(worst));
}

SuiteResult suite_convergence(std::uint64_t seed, const Knobs& k) {
    Collector c;
    const ImpairmentConfig imp;
    const double power = 1.0;

    auto gap_at = [&](int m, int n, std::uint64_t s) {
        SystemConfig cfg;
        cfg.ap_antennas = m;
        cfg.irs_elements = n;
        const MonteCarloResult mc = monte_carlo_se(cfg, imp, power, k.mc_trials, s);
        return std::abs(mc.mean - se_asymptotic(cfg, imp, power));
    };

    const double small = gap_at(16, 64, child_seed(seed, 50));
    const double large = gap_at(64, 256, child_seed(seed, 51));
    c.expect(small <= 0.02, "gap at (16,64) is " + fmt3(small));
    c.expect(large <= 0.02, "gap at (64,256) is " + fmt3(large));
    c.expect(large < small, "gap did not shrink with array size: " + fmt3(small) +
                                " -> " + fmt3(large));
    return c.result("convergence",
                    "gap " + fmt3(small) + " -> " + fmt3(large));
}

}  // namespace

ValidationReport run_validation(const ValidateOptions& options) {
    const Knobs k = knobs_for(options.intensity);
    const std::function<double(double)> sinc_ref =
        options.sinc_fn ? options.sinc_fn
                        : std::function<double(double)>([](double x) { return sinc(x); });

    ValidationReport report;
    report.suites.push_back(suite_identity(options.seed, k, sinc_ref));
    report.suites.push_back(suite_bound(k));
    report.suites.push_back(suite_monotonicity(k));
    report.suites.push_back(suite_lambert(options.seed, k));
    report.suites.push_back(suite_convergence(options.seed, k));
    report.all_passed = true;
    for (const SuiteResult& s : report.suites) {
        report.all_passed = report.all_passed && s.passed;
    }
    return report;
}

std::string render_report(const ValidationReport& report,
                          const ValidateOptions& options) {
    const char* intensity = options.intensity == Intensity::Quick ? "quick"
                            : options.intensity == Intensity::Standard
                                ? "standard"
                                : "full";
    std::ostringstream os;
    os << "irslink validate (seed " << options.seed << ", intensity "
       << intensity << ")\n";
    for (const SuiteResult& s : report.suites) {
        os << (s.passed ? "[ OK ] " : "[FAIL] ") << s.name;
        for (std::size_t pad = s.name.size(); pad < 14; ++pad) os << ' ';
        os << "checks=" << s.checks << "  " << s.detail << "\n";
    }
    os << "result: " << (report.all_passed ? "PASSED" : "FAILED") << "\n";
    return os.str();
}

}  // namespace irslink
