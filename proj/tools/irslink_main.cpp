// SPDX-License-Identifier: Apache-2.0

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "irslink/config.hpp"
#include "irslink/energy.hpp"
#include "irslink/impairments.hpp"
#include "irslink/sweep.hpp"
#include "irslink/validate.hpp"
#include "irslink/version.hpp"

namespace {

namespace fs = std::filesystem;
using namespace irslink;

// 0 ok, 1 validation failure, 2 configuration error, 3 numeric domain error
constexpr int exit_ok = 0;
constexpr int exit_validation = 1;
constexpr int exit_config = 2;
constexpr int exit_domain = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << content;
}

std::string sibling_path(const std::string& csv_path, const char* suffix) {
    fs::path p(csv_path);
    p.replace_extension(suffix);
    return p.string();
}

void print_warnings(const LoadedConfig& cfg, bool quiet) {
    if (quiet) return;
    for (const std::string& w : cfg.warnings) {
        std::cerr << "warning: " << w << "\n";
    }
}

struct SweepArgs {
    std::string config_path;
    std::string manifest_path;
    std::string out_path;
    std::uint64_t seed = 1;
    long trials = 10000;
    int threads = 1;
    bool seed_set = false;
    bool trials_set = false;
    bool threads_set = false;
};

int cmd_sweep(const SweepArgs& args, bool quiet) {
    LoadedConfig cfg;
    SweepOptions options;
    if (!args.manifest_path.empty()) {
        std::tie(cfg, options) = from_manifest(read_file(args.manifest_path));
        // Explicit flags win over the recorded run parameters.
        if (args.seed_set) options.seed = args.seed;
        if (args.trials_set) options.trials = args.trials;
        if (args.threads_set) options.threads = args.threads;
    } else {
        cfg = load_config(args.config_path);
        options.seed = args.seed;
        options.trials = args.trials;
        options.threads = args.threads;
    }
    print_warnings(cfg, quiet);
    if (!cfg.sweep) {
        throw ConfigError("config has no [sweep] section; nothing to sweep");
    }

    const std::vector<SweepRow> rows = run_sweep(cfg, options);
    write_file(args.out_path, render_csv(rows));

    const std::string manifest_out = sibling_path(args.out_path, ".manifest.json");
    write_file(manifest_out, make_manifest(cfg, options, fs::path(args.out_path).filename().string()));
    const std::string plot_out = sibling_path(args.out_path, ".gnuplot");
    write_file(plot_out, render_gnuplot(fs::path(args.out_path).filename().string(), cfg));

    if (!quiet) {
        std::cerr << "wrote " << rows.size() << " rows to " << args.out_path
                  << "\nwrote " << manifest_out << "\nwrote " << plot_out << "\n";
    }
    return exit_ok;
}

int cmd_optimal_power(const std::string& config_path, bool ideal, bool quiet) {
    LoadedConfig cfg;
    if (!config_path.empty()) {
        cfg = load_config(config_path);
    }
    print_warnings(cfg, quiet);

    const double inefficiency = cfg.power.amplifier_inefficiency;
    const double static_power =
        ideal ? cfg.power.static_power_ideal : cfg.power.static_power;
    const double constant = ideal ? ideal_rate_constant(cfg.system)
                                  : hardware_rate_constant(cfg.impairments);

    const OptimalPowerResult res =
        ideal ? optimal_power_ideal(cfg.system, cfg.power)
              : optimal_power(cfg.impairments, cfg.power);
    const auto [ratio, product] =
        closed_form_candidates(constant, inefficiency, static_power);

    std::printf("mode:                        %s\n", ideal ? "ideal" : "impaired");
    std::printf("rate constant (nats):        %.17g\n", res.rate_constant);
    std::printf("optimal transmit power (W):  %.17g\n", res.power);
    std::printf("spectral efficiency (b/s/Hz): %.17g\n",
                (std::log(res.power) + res.rate_constant) / std::numbers::ln2);
    std::printf("energy efficiency (bit/J):   %.17g\n", res.energy_efficiency);
    std::printf("stationarity residual:       %.3g\n", res.stationarity_residual);
    std::printf("candidate ratio form (W):    %.17g  residual %.3g\n",
                ratio.power, ratio.residual);
    std::printf("candidate product form (W):  %.17g  residual %.3g\n",
                product.power, product.residual);
    return exit_ok;
}

int cmd_validate(std::uint64_t seed, const std::string& intensity_name,
                 const std::string& out_path, bool bias_sinc, bool quiet) {
    ValidateOptions options;
    options.seed = seed;
    if (intensity_name == "quick") {
        options.intensity = Intensity::Quick;
    } else if (intensity_name == "standard") {
        options.intensity = Intensity::Standard;
    } else if (intensity_name == "full") {
        options.intensity = Intensity::Full;
    } else {
        throw ConfigError("intensity must be quick, standard or full");
    }
    if (bias_sinc) {
        // Deliberately wrong reference kernel; the identity suite must fail.
        options.sinc_fn = [](double x) { return sinc(x) * (1.0 + 1e-4); };
    }

    const auto t0 = std::chrono::steady_clock::now();
    const ValidationReport report = run_validation(options);
    const auto t1 = std::chrono::steady_clock::now();

    const std::string text = render_report(report, options);
    std::fputs(text.c_str(), stdout);
    if (!out_path.empty()) write_file(out_path, text);
    if (!quiet) {
        const double secs =
            std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count() /
            1000.0;
        std::fprintf(stderr, "validation took %.1f s\n", secs);
    }
    return report.all_passed ? exit_ok : exit_validation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"IRS-assisted MISO link simulator"};
    app.set_version_flag("--version", std::string("irslink ") + version);
    bool quiet = false;
    app.add_flag("-q,--quiet", quiet, "suppress informational output");
    app.require_subcommand(1);

    SweepArgs sweep_args;
    CLI::App* sweep = app.add_subcommand(
        "sweep", "evaluate metrics over a parameter sweep, write CSV");
    sweep->fallthrough();
    CLI::Option* opt_config =
        sweep->add_option("--config", sweep_args.config_path,
                          "INI config with a [sweep] section");
    CLI::Option* opt_manifest =
        sweep->add_option("--from-manifest", sweep_args.manifest_path,
                          "reproduce a previous run from its manifest");
    opt_config->excludes(opt_manifest);
    sweep->add_option("--out", sweep_args.out_path, "output CSV path")->required();
    CLI::Option* opt_seed =
        sweep->add_option("--seed", sweep_args.seed, "master seed (default 1)");
    CLI::Option* opt_trials = sweep
        ->add_option("--trials", sweep_args.trials,
                     "Monte Carlo trials per point (default 10000)")
        ->check(CLI::Range(1, 1000000000));
    CLI::Option* opt_threads = sweep
        ->add_option("--threads", sweep_args.threads,
                     "worker threads; output is thread-count independent")
        ->check(CLI::Range(1, 256));

    std::string op_config;
    bool op_ideal = false;
    CLI::App* optimal = app.add_subcommand(
        "optimal-power", "closed-form EE-optimal transmit power");
    optimal->fallthrough();
    optimal->add_option("--config", op_config,
                        "INI config (defaults used when omitted)");
    optimal->add_flag("--ideal", op_ideal,
                      "optimize for ideal hardware instead");

    std::uint64_t val_seed = 1;
    std::string val_intensity = "standard";
    std::string val_out;
    bool bias_sinc = false;
    CLI::App* validate = app.add_subcommand(
        "validate", "run the self-check suites");
    validate->fallthrough();
    validate->add_option("--seed", val_seed, "suite seed (default 1)");
    validate->add_option("--intensity", val_intensity,
                         "quick, standard or full (default standard)")
        ->check(CLI::IsMember({"quick", "standard", "full"}));
    validate->add_option("--out", val_out, "also write the report here");
    validate->add_flag("--bias-sinc", bias_sinc)->group("");  // test hook

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_config;
    }

    try {
        if (sweep->parsed()) {
            if (sweep_args.config_path.empty() && sweep_args.manifest_path.empty()) {
                throw ConfigError("sweep needs --config or --from-manifest");
            }
            sweep_args.seed_set = opt_seed->count() > 0;
            sweep_args.trials_set = opt_trials->count() > 0;
            sweep_args.threads_set = opt_threads->count() > 0;
            return cmd_sweep(sweep_args, quiet);
        }
        if (optimal->parsed()) {
            return cmd_optimal_power(op_config, op_ideal, quiet);
        }
        if (validate->parsed()) {
            return cmd_validate(val_seed, val_intensity, val_out, bias_sinc, quiet);
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return exit_config;
    } catch (const std::domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return exit_domain;
    } catch (const std::invalid_argument& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return exit_domain;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_domain;
    }
    return exit_ok;
}
