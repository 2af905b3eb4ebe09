// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "irslink/types.hpp"

namespace irslink {

// Malformed or inconsistent configuration input. Messages carry the file
// (or other origin) and line where applicable.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class SweepVariable { TransmitPowerDb, TransmitPower, IrsElements };
enum class Scenario { NonidealMc, NonidealClosed, Ideal, HighSnr, UpperBound };
enum class Metric { SpectralEfficiency, EnergyEfficiency };
enum class DbReference { Noise, Distortion };

const char* scenario_name(Scenario s);
const char* metric_name(Metric m);
const char* sweep_variable_name(SweepVariable v);
const char* db_reference_name(DbReference r);

struct SweepSpec {
    SweepVariable variable = SweepVariable::TransmitPowerDb;
    double start = 0.0;
    double stop = 30.0;
    int steps = 31;
    // Required for dB sweeps: what 0 dB refers to. Transmit power at a dB
    // point v is reference * 10^(v/10).
    DbReference db_reference = DbReference::Noise;
    std::vector<Scenario> scenarios;
    Metric metric = Metric::SpectralEfficiency;
    // Fixed transmit power for element-count sweeps, watts.
    double transmit_power = 1.0;
};

struct LoadedConfig {
    SystemConfig system;
    ImpairmentConfig impairments;
    PowerConfig power;
    std::optional<SweepSpec> sweep;
    std::vector<std::string> warnings;         // non-fatal, e.g. odd angle ranges
    std::vector<std::string> overridden_keys;  // "section.key" set by the file
};

// Parse INI text. Sections [system], [impairments], [power], [sweep]; '#'
// and ';' start comments. Unknown sections or keys are errors. Angle-valued
// keys must spell their unit as a _deg or _rad suffix; a bare angle key is
// rejected. origin is used in error messages (a filename, usually).
LoadedConfig parse_config(const std::string& text, const std::string& origin);

LoadedConfig load_config(const std::string& path);

}  // namespace irslink
