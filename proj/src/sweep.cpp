// SPDX-License-Identifier: Apache-2.0

#include "irslink/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <ctime>
#include <set>
#include <sstream>

#include <json.hpp>

#include "irslink/energy.hpp"
#include "irslink/rng.hpp"
#include "irslink/spectral.hpp"
#include "irslink/version.hpp"

namespace irslink {

namespace {

using nlohmann::json;

// 17 significant digits round-trip any double; fixed format keeps re-runs
// byte-comparable.
std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double power_at(const SweepSpec& spec, const SystemConfig& sys,
                const ImpairmentConfig& imp, double point) {
    switch (spec.variable) {
        case SweepVariable::TransmitPowerDb: {
            const double ref = spec.db_reference == DbReference::Noise
                                   ? sys.noise_power
                                   : imp.distortion_power;
            if (!(ref > 0.0)) {
                throw std::domain_error(
                    "dB sweep reference power is zero; pick the other "
                    "db_reference or set a nonzero value");
            }
            return ref * std::pow(10.0, point / 10.0);
        }
        case SweepVariable::TransmitPower:
            return point;
        case SweepVariable::IrsElements:
            return spec.transmit_power;
    }
    return 0.0;
}

}  // namespace

std::vector<double> sweep_points(const SweepSpec& spec) {
    std::vector<double> points;
    points.reserve(spec.steps);
    if (spec.steps == 1) {
        points.push_back(spec.start);
        return points;
    }
    if (spec.variable == SweepVariable::IrsElements) {
        // Geometric spacing, snapped to perfect squares: the flattening of
        // the rate in the element count lives on a log axis.
        const double la = std::log(spec.start);
        const double lb = std::log(spec.stop);
        for (int i = 0; i < spec.steps; ++i) {
            const double t = la + (lb - la) * i / (spec.steps - 1);
            const double side = std::round(std::sqrt(std::exp(t)));
            points.push_back(side * side);
        }
    } else {
        for (int i = 0; i < spec.steps; ++i) {
            points.push_back(spec.start +
                             (spec.stop - spec.start) * i / (spec.steps - 1));
        }
    }
    return points;
}

std::vector<SweepRow> run_sweep(const LoadedConfig& cfg,
                                const SweepOptions& options) {
    if (!cfg.sweep) {
        throw ConfigError("run_sweep: config has no [sweep] section");
    }
    if (options.trials <= 0) {
        throw std::invalid_argument("run_sweep: trials must be positive");
    }
    const SweepSpec& spec = *cfg.sweep;
    const std::vector<double> points = sweep_points(spec);

    std::vector<SweepRow> rows;
    rows.reserve(points.size() * spec.scenarios.size());

    for (std::size_t i = 0; i < points.size(); ++i) {
        SystemConfig sys = cfg.system;
        if (spec.variable == SweepVariable::IrsElements) {
            sys.irs_elements = static_cast<int>(points[i]);
        }
        const double power = power_at(spec, sys, cfg.impairments, points[i]);

        for (Scenario scenario : spec.scenarios) {
            SweepRow row;
            row.sweep_value = points[i];
            row.scenario = scenario;
            row.metric = spec.metric;

            double se = 0.0;
            switch (scenario) {
                case Scenario::NonidealMc: {
                    const MonteCarloResult mc = monte_carlo_se(
                        sys, cfg.impairments, power, options.trials,
                        child_seed(options.seed, i), options.threads);
                    se = mc.mean;
                    row.has_mc_stats = true;
                    row.std_error = mc.std_error;
                    row.trials = mc.trials;
                    break;
                }
                case Scenario::NonidealClosed:
                    se = se_asymptotic(sys, cfg.impairments, power);
                    break;
                case Scenario::Ideal:
                    se = se_ideal(sys, power);
                    break;
                case Scenario::HighSnr:
                    se = se_high_snr(cfg.impairments, power);
                    break;
                case Scenario::UpperBound:
                    se = se_upper_bound(cfg.impairments, power);
                    break;
            }

            if (spec.metric == Metric::SpectralEfficiency) {
                row.value = se;
            } else {
                PowerConfig pc = cfg.power;
                if (scenario == Scenario::Ideal) {
                    pc.static_power = pc.static_power_ideal;
                }
                row.value = energy_efficiency(se, pc, power);
                if (row.has_mc_stats) {
                    // EE is a linear map of SE at fixed power.
                    row.std_error =
                        pc.bandwidth * row.std_error / total_power(pc, power);
                }
            }
            rows.push_back(row);
        }
    }
    return rows;
}

std::string render_csv(const std::vector<SweepRow>& rows) {
    std::string out = "sweep_value,scenario,metric,value,std_error,trials\n";
    for (const SweepRow& r : rows) {
        out += fmt(r.sweep_value);
        out += ',';
        out += scenario_name(r.scenario);
        out += ',';
        out += metric_name(r.metric);
        out += ',';
        out += fmt(r.value);
        out += ',';
        if (r.has_mc_stats) {
            out += fmt(r.std_error);
            out += ',';
            out += std::to_string(r.trials);
        } else {
            out += ',';
        }
        out += '\n';
    }
    return out;
}

std::string render_gnuplot(const std::string& csv_filename,
                           const LoadedConfig& cfg) {
    if (!cfg.sweep) {
        throw ConfigError("render_gnuplot: config has no [sweep] section");
    }
    const SweepSpec& spec = *cfg.sweep;

    std::string xlabel;
    switch (spec.variable) {
        case SweepVariable::TransmitPowerDb:
            xlabel = std::string("transmit power over ") +
                     db_reference_name(spec.db_reference) + " power (dB)";
            break;
        case SweepVariable::TransmitPower:
            xlabel = "transmit power (W)";
            break;
        case SweepVariable::IrsElements:
            xlabel = "IRS elements";
            break;
    }
    const std::string ylabel = spec.metric == Metric::SpectralEfficiency
                                   ? "spectral efficiency (bit/s/Hz)"
                                   : "energy efficiency (bit/J)";

    std::string base = csv_filename;
    if (const auto dot = base.rfind(".csv"); dot != std::string::npos) {
        base.erase(dot);
    }

    std::ostringstream os;
    os << "# generated by irslink " << version << "\n";
    os << "set datafile separator ','\n";
    os << "set grid\n";
    os << "set key top left\n";
    os << "set xlabel '" << xlabel << "'\n";
    os << "set ylabel '" << ylabel << "'\n";
    if (spec.variable == SweepVariable::IrsElements) {
        os << "set logscale x 2\n";
    }
    os << "set term pngcairo size 960,640\n";
    os << "set output '" << base << ".png'\n";
    os << "plot \\\n";
    for (std::size_t i = 0; i < spec.scenarios.size(); ++i) {
        const char* name = scenario_name(spec.scenarios[i]);
        os << "  '" << csv_filename << "' every ::1 using (strcol(2) eq '"
           << name << "' ? column(1) : NaN):4 with "
           << (spec.scenarios[i] == Scenario::NonidealMc ? "points pt 7"
                                                         : "linespoints")
           << " title '" << name << "'";
        os << (i + 1 < spec.scenarios.size() ? ", \\\n" : "\n");
    }
    return os.str();
}

namespace {

json system_to_json(const SystemConfig& s) {
    return json{{"ap_antennas", s.ap_antennas},
                {"irs_elements", s.irs_elements},
                {"gain_ap_irs", {s.gain_ap_irs.real(), s.gain_ap_irs.imag()}},
                {"gain_irs_user", {s.gain_irs_user.real(), s.gain_irs_user.imag()}},
                {"spacing_ratio", s.spacing_ratio},
                {"noise_power", s.noise_power},
                {"aoa_irs_azimuth_rad", s.aoa_irs.azimuth},
                {"aoa_irs_elevation_rad", s.aoa_irs.elevation},
                {"aod_ap_azimuth_rad", s.aod_ap.azimuth},
                {"aod_ap_elevation_rad", s.aod_ap.elevation},
                {"aod_irs_azimuth_rad", s.aod_irs.azimuth},
                {"aod_irs_elevation_rad", s.aod_irs.elevation}};
}

json impairments_to_json(const ImpairmentConfig& i) {
    return json{{"rf_attenuation", i.rf_attenuation},
                {"rf_phase_bound_rad", i.rf_phase_bound},
                {"distortion_power", i.distortion_power},
                {"irs_phase_bound_rad", i.irs_phase_bound}};
}

json power_to_json(const PowerConfig& p) {
    return json{{"amplifier_inefficiency", p.amplifier_inefficiency},
                {"static_power", p.static_power},
                {"static_power_ideal", p.static_power_ideal},
                {"bandwidth", p.bandwidth}};
}

json sweep_to_json(const SweepSpec& s) {
    json scenarios = json::array();
    for (Scenario sc : s.scenarios) scenarios.push_back(scenario_name(sc));
    json j{{"variable", sweep_variable_name(s.variable)},
           {"start", s.start},
           {"stop", s.stop},
           {"steps", s.steps},
           {"scenarios", scenarios},
           {"metric", metric_name(s.metric)}};
    if (s.variable == SweepVariable::TransmitPowerDb) {
        j["db_reference"] = db_reference_name(s.db_reference);
    }
    if (s.variable == SweepVariable::IrsElements) {
        j["transmit_power"] = s.transmit_power;
    }
    return j;
}

// Keys whose defaults are artifact choices rather than externally specified
// values. The manifest flags whichever of them the user did not override.
const std::set<std::string>& artifact_chosen_keys() {
    static const std::set<std::string> keys = {
        "system.spacing_ratio",      "system.noise_power",
        "system.aoa_irs_azimuth",    "system.aoa_irs_elevation",
        "system.aod_ap_azimuth",     "system.aod_ap_elevation",
        "system.aod_irs_azimuth",    "system.aod_irs_elevation",
        "power.static_power",        "power.static_power_ideal",
        "power.bandwidth",
    };
    return keys;
}

}  // namespace

std::string make_manifest(const LoadedConfig& cfg, const SweepOptions& options,
                          const std::string& csv_filename) {
    json manifest;
    manifest["tool"] = "irslink";
    manifest["version"] = version;
    manifest["command"] = "sweep";

    char stamp[32];
    const std::time_t now = std::time(nullptr);
    std::tm utc{};
    gmtime_r(&now, &utc);
    std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", &utc);
    manifest["created_utc"] = stamp;

    manifest["seed"] = options.seed;
    manifest["trials"] = options.trials;
    manifest["threads"] = options.threads;
    manifest["csv"] = csv_filename;

    manifest["config"]["system"] = system_to_json(cfg.system);
    manifest["config"]["impairments"] = impairments_to_json(cfg.impairments);
    manifest["config"]["power"] = power_to_json(cfg.power);
    if (cfg.sweep) {
        manifest["config"]["sweep"] = sweep_to_json(*cfg.sweep);
    }

    json flagged = json::array();
    for (const std::string& key : artifact_chosen_keys()) {
        bool overridden = false;
        for (const std::string& set_key : cfg.overridden_keys) {
            if (set_key == key) {
                overridden = true;
                break;
            }
        }
        if (!overridden) flagged.push_back(key);
    }
    manifest["artifact_chosen_defaults"] = flagged;
    manifest["overridden_keys"] = cfg.overridden_keys;

    return manifest.dump(2) + "\n";
}

std::pair<LoadedConfig, SweepOptions> from_manifest(
    const std::string& manifest_text) {
    json manifest;
    try {
        manifest = json::parse(manifest_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("manifest is not valid JSON: ") + e.what());
    }

    try {
        LoadedConfig cfg;
        const json& sys = manifest.at("config").at("system");
        cfg.system.ap_antennas = sys.at("ap_antennas").get<int>();
        cfg.system.irs_elements = sys.at("irs_elements").get<int>();
        const auto& g1 = sys.at("gain_ap_irs");
        cfg.system.gain_ap_irs = {g1.at(0).get<double>(), g1.at(1).get<double>()};
        const auto& g2 = sys.at("gain_irs_user");
        cfg.system.gain_irs_user = {g2.at(0).get<double>(), g2.at(1).get<double>()};
        cfg.system.spacing_ratio = sys.at("spacing_ratio").get<double>();
        cfg.system.noise_power = sys.at("noise_power").get<double>();
        cfg.system.aoa_irs = {sys.at("aoa_irs_azimuth_rad").get<double>(),
                              sys.at("aoa_irs_elevation_rad").get<double>()};
        cfg.system.aod_ap = {sys.at("aod_ap_azimuth_rad").get<double>(),
                             sys.at("aod_ap_elevation_rad").get<double>()};
        cfg.system.aod_irs = {sys.at("aod_irs_azimuth_rad").get<double>(),
                              sys.at("aod_irs_elevation_rad").get<double>()};

        const json& imp = manifest.at("config").at("impairments");
        cfg.impairments.rf_attenuation = imp.at("rf_attenuation").get<double>();
        cfg.impairments.rf_phase_bound = imp.at("rf_phase_bound_rad").get<double>();
        cfg.impairments.distortion_power = imp.at("distortion_power").get<double>();
        cfg.impairments.irs_phase_bound = imp.at("irs_phase_bound_rad").get<double>();

        const json& pow = manifest.at("config").at("power");
        cfg.power.amplifier_inefficiency =
            pow.at("amplifier_inefficiency").get<double>();
        cfg.power.static_power = pow.at("static_power").get<double>();
        cfg.power.static_power_ideal = pow.at("static_power_ideal").get<double>();
        cfg.power.bandwidth = pow.at("bandwidth").get<double>();

        if (manifest.at("config").contains("sweep")) {
            const json& sw = manifest.at("config").at("sweep");
            SweepSpec spec;
            const std::string var = sw.at("variable").get<std::string>();
            if (var == "transmit_power_db") {
                spec.variable = SweepVariable::TransmitPowerDb;
            } else if (var == "transmit_power") {
                spec.variable = SweepVariable::TransmitPower;
            } else if (var == "irs_elements") {
                spec.variable = SweepVariable::IrsElements;
            } else {
                throw ConfigError("manifest: unknown sweep variable '" + var + "'");
            }
            spec.start = sw.at("start").get<double>();
            spec.stop = sw.at("stop").get<double>();
            spec.steps = sw.at("steps").get<int>();
            if (sw.contains("db_reference")) {
                const std::string ref = sw.at("db_reference").get<std::string>();
                spec.db_reference =
                    ref == "noise" ? DbReference::Noise : DbReference::Distortion;
            }
            spec.scenarios.clear();
            for (const auto& name : sw.at("scenarios")) {
                const std::string tok = name.get<std::string>();
                bool found = false;
                for (Scenario s :
                     {Scenario::NonidealMc, Scenario::NonidealClosed,
                      Scenario::Ideal, Scenario::HighSnr, Scenario::UpperBound}) {
                    if (tok == scenario_name(s)) {
                        spec.scenarios.push_back(s);
                        found = true;
                        break;
                    }
                }
                if (!found) {
                    throw ConfigError("manifest: unknown scenario '" + tok + "'");
                }
            }
            spec.metric = sw.at("metric").get<std::string>() == "ee"
                              ? Metric::EnergyEfficiency
                              : Metric::SpectralEfficiency;
            if (sw.contains("transmit_power")) {
                spec.transmit_power = sw.at("transmit_power").get<double>();
            }
            cfg.sweep = spec;
        }

        if (manifest.contains("overridden_keys")) {
            for (const auto& k : manifest.at("overridden_keys")) {
                cfg.overridden_keys.push_back(k.get<std::string>());
            }
        }

        SweepOptions options;
        options.seed = manifest.at("seed").get<std::uint64_t>();
        options.trials = manifest.at("trials").get<long>();
        options.threads = manifest.at("threads").get<int>();

        cfg.system.validate();
        cfg.impairments.validate();
        cfg.power.validate();
        return {cfg, options};
    } catch (const json::exception& e) {
        throw ConfigError(std::string("manifest missing or malformed field: ") +
                          e.what());
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("manifest config invalid: ") + e.what());
    }
}

}  // namespace irslink
