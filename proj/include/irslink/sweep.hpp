// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "irslink/config.hpp"

namespace irslink {

struct SweepOptions {
    std::uint64_t seed = 1;
    long trials = 10000;
    int threads = 1;
};

struct SweepRow {
    double sweep_value = 0.0;
    Scenario scenario = Scenario::NonidealClosed;
    Metric metric = Metric::SpectralEfficiency;
    double value = 0.0;
    bool has_mc_stats = false;  // std_error/trials are only set for Monte Carlo rows
    double std_error = 0.0;
    long trials = 0;
};

// The grid of sweep-variable values. Power-dB and linear-power sweeps are
// evenly spaced; element-count sweeps are geometrically spaced with every
// point rounded to the nearest perfect square (square surface).
std::vector<double> sweep_points(const SweepSpec& spec);

// Evaluate every (point, scenario) pair, in config order. Point i derives
// its Monte Carlo seed as child_seed(options.seed, i), so the output is
// independent of the thread count.
std::vector<SweepRow> run_sweep(const LoadedConfig& cfg,
                                const SweepOptions& options);

// CSV with the fixed header
//   sweep_value,scenario,metric,value,std_error,trials
// Doubles are printed with 17 significant digits so re-runs compare equal
// byte for byte. std_error and trials are empty for closed-form rows.
std::string render_csv(const std::vector<SweepRow>& rows);

// gnuplot script plotting the CSV, one series per scenario.
std::string render_gnuplot(const std::string& csv_filename,
                           const LoadedConfig& cfg);

// JSON manifest with everything needed to reproduce a sweep: resolved
// config, seed, trials, threads, tool version, creation time, plus the list
// of config keys that are artifact choices (no externally specified value)
// and were left at their defaults.
std::string make_manifest(const LoadedConfig& cfg, const SweepOptions& options,
                          const std::string& csv_filename);

// Rebuild the inputs of a run from its manifest text. Re-running the
// returned (config, options) yields the same CSV bytes.
std::pair<LoadedConfig, SweepOptions> from_manifest(const std::string& manifest_text);

}  // namespace irslink
