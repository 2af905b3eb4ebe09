// SPDX-License-Identifier: Apache-2.0

#include "irslink/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

namespace irslink {

const char* scenario_name(Scenario s) {
    switch (s) {
        case Scenario::NonidealMc: return "nonideal_mc";
        case Scenario::NonidealClosed: return "nonideal_closed";
        case Scenario::Ideal: return "ideal";
        case Scenario::HighSnr: return "high_snr";
        case Scenario::UpperBound: return "upper_bound";
    }
    return "?";
}

const char* metric_name(Metric m) {
    return m == Metric::SpectralEfficiency ? "se" : "ee";
}

const char* sweep_variable_name(SweepVariable v) {
    switch (v) {
        case SweepVariable::TransmitPowerDb: return "transmit_power_db";
        case SweepVariable::TransmitPower: return "transmit_power";
        case SweepVariable::IrsElements: return "irs_elements";
    }
    return "?";
}

const char* db_reference_name(DbReference r) {
    return r == DbReference::Noise ? "noise" : "distortion";
}

namespace {

struct Entry {
    std::string value;
    int line = 0;
    bool used = false;
};

using Section = std::map<std::string, Entry>;

struct Document {
    std::string origin;
    std::map<std::string, Section> sections;
};

[[noreturn]] void fail(const std::string& origin, int line,
                       const std::string& what) {
    std::ostringstream os;
    os << origin;
    if (line > 0) os << ":" << line;
    os << ": " << what;
    throw ConfigError(os.str());
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

Document tokenize(const std::string& text, const std::string& origin) {
    Document doc;
    doc.origin = origin;
    std::istringstream in(text);
    std::string raw;
    std::string section;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const auto cut = raw.find_first_of("#;");
        if (cut != std::string::npos) raw.erase(cut);
        const std::string s = trim(raw);
        if (s.empty()) continue;
        if (s.front() == '[') {
            if (s.back() != ']' || s.size() < 3) {
                fail(origin, line, "malformed section header '" + s + "'");
            }
            section = trim(s.substr(1, s.size() - 2));
            if (section != "system" && section != "impairments" &&
                section != "power" && section != "sweep") {
                fail(origin, line, "unknown section [" + section + "]");
            }
            doc.sections[section];  // allow empty sections
            continue;
        }
        const auto eq = s.find('=');
        if (eq == std::string::npos) {
            fail(origin, line, "expected 'key = value', got '" + s + "'");
        }
        if (section.empty()) {
            fail(origin, line, "key outside of any section");
        }
        const std::string key = trim(s.substr(0, eq));
        const std::string value = trim(s.substr(eq + 1));
        if (key.empty()) fail(origin, line, "empty key");
        if (value.empty()) fail(origin, line, "empty value for '" + key + "'");
        auto [it, inserted] = doc.sections[section].emplace(key, Entry{value, line});
        if (!inserted) {
            fail(origin, line,
                 "duplicate key '" + key + "' (first set on line " +
                     std::to_string(it->second.line) + ")");
        }
    }
    return doc;
}

double parse_double(const Document& doc, const std::string& key, Entry& e) {
    const char* begin = e.value.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0' || !std::isfinite(v)) {
        fail(doc.origin, e.line, "'" + key + "' is not a number: '" + e.value + "'");
    }
    return v;
}

long parse_long(const Document& doc, const std::string& key, Entry& e) {
    const char* begin = e.value.c_str();
    char* end = nullptr;
    const long v = std::strtol(begin, &end, 10);
    if (end == begin || *end != '\0') {
        fail(doc.origin, e.line, "'" + key + "' is not an integer: '" + e.value + "'");
    }
    return v;
}

cxd parse_complex(const Document& doc, const std::string& key, Entry& e) {
    // "re" or "re,im"
    const auto comma = e.value.find(',');
    Entry re{comma == std::string::npos ? e.value : trim(e.value.substr(0, comma)),
             e.line};
    double real = parse_double(doc, key, re);
    double imag = 0.0;
    if (comma != std::string::npos) {
        Entry im{trim(e.value.substr(comma + 1)), e.line};
        imag = parse_double(doc, key, im);
    }
    return {real, imag};
}

// Access helper: marks entries used so leftovers can be reported as unknown.
class Reader {
  public:
    Reader(Document& doc, const std::string& section, LoadedConfig& out)
        : doc_(doc), section_(section), out_(out) {}

    bool has() const { return doc_.sections.count(section_) > 0; }

    Entry* find(const std::string& key) {
        auto sec = doc_.sections.find(section_);
        if (sec == doc_.sections.end()) return nullptr;
        auto it = sec->second.find(key);
        if (it == sec->second.end()) return nullptr;
        it->second.used = true;
        return &it->second;
    }

    void number(const std::string& key, double& target) {
        if (Entry* e = find(key)) {
            target = parse_double(doc_, key, *e);
            note(key);
        }
    }

    void integer(const std::string& key, int& target) {
        if (Entry* e = find(key)) {
            const long v = parse_long(doc_, key, *e);
            target = static_cast<int>(v);
            if (target != v) fail(doc_.origin, e->line, "'" + key + "' out of range");
            note(key);
        }
    }

    void complex_gain(const std::string& key, cxd& target) {
        if (Entry* e = find(key)) {
            target = parse_complex(doc_, key, *e);
            note(key);
        }
    }

    void text(const std::string& key, std::string& target) {
        if (Entry* e = find(key)) {
            target = e->value;
            note(key);
        }
    }

    // Angle keys demand an explicit unit suffix; both at once is ambiguous.
    bool angle(const std::string& base, double& target_rad) {
        if (Entry* bare = find(base)) {
            fail(doc_.origin, bare->line,
                 "angle key '" + base + "' needs a unit suffix: use '" + base +
                     "_deg' or '" + base + "_rad'");
        }
        Entry* deg = find(base + "_deg");
        Entry* rad = find(base + "_rad");
        if (deg && rad) {
            fail(doc_.origin, std::max(deg->line, rad->line),
                 "both '" + base + "_deg' and '" + base + "_rad' given");
        }
        if (!deg && !rad) return false;
        const double value = deg ? parse_double(doc_, base + "_deg", *deg) *
                                       std::numbers::pi / 180.0
                                 : parse_double(doc_, base + "_rad", *rad);
        target_rad = value;
        note(base);
        if (value < 0.0 || value >= 2.0 * std::numbers::pi) {
            std::ostringstream os;
            os << section_ << "." << base << " = " << value
               << " rad is outside [0, 2*pi) (line "
               << (deg ? deg->line : rad->line) << ")";
            out_.warnings.push_back(os.str());
        }
        return true;
    }

    void finish() {
        auto sec = doc_.sections.find(section_);
        if (sec == doc_.sections.end()) return;
        for (auto& [key, entry] : sec->second) {
            if (!entry.used) {
                fail(doc_.origin, entry.line,
                     "unknown key '" + key + "' in section [" + section_ + "]");
            }
        }
    }

  private:
    void note(const std::string& key) {
        out_.overridden_keys.push_back(section_ + "." + key);
    }

    Document& doc_;
    std::string section_;
    LoadedConfig& out_;
};

Scenario parse_scenario(const Document& doc, int line, const std::string& tok) {
    for (Scenario s : {Scenario::NonidealMc, Scenario::NonidealClosed,
                       Scenario::Ideal, Scenario::HighSnr, Scenario::UpperBound}) {
        if (tok == scenario_name(s)) return s;
    }
    fail(doc.origin, line,
         "unknown scenario '" + tok +
             "' (expected nonideal_mc, nonideal_closed, ideal, high_snr or "
             "upper_bound)");
}

bool is_perfect_square(double v) {
    if (!(v > 0.0) || v != std::floor(v)) return false;
    const double side = std::round(std::sqrt(v));
    return side * side == v;
}

void read_sweep(Document& doc, LoadedConfig& out) {
    Reader r(doc, "sweep", out);
    if (!r.has()) return;

    SweepSpec spec;
    spec.scenarios.clear();

    std::string variable;
    r.text("variable", variable);
    Entry* var_entry = nullptr;
    if (auto sec = doc.sections.find("sweep"); sec != doc.sections.end()) {
        auto it = sec->second.find("variable");
        if (it != sec->second.end()) var_entry = &it->second;
    }
    const int var_line = var_entry ? var_entry->line : 0;
    if (variable.empty()) fail(doc.origin, 0, "[sweep] requires 'variable'");
    if (variable == "transmit_power_db") {
        spec.variable = SweepVariable::TransmitPowerDb;
    } else if (variable == "transmit_power") {
        spec.variable = SweepVariable::TransmitPower;
    } else if (variable == "irs_elements") {
        spec.variable = SweepVariable::IrsElements;
    } else {
        fail(doc.origin, var_line,
             "unknown sweep variable '" + variable +
                 "' (expected transmit_power_db, transmit_power or irs_elements)");
    }

    r.number("start", spec.start);
    r.number("stop", spec.stop);
    int steps = spec.steps;
    r.integer("steps", steps);
    spec.steps = steps;
    if (spec.steps < 1) fail(doc.origin, 0, "steps must be >= 1");
    if (spec.steps == 1 && spec.start != spec.stop) {
        fail(doc.origin, 0, "steps = 1 requires start == stop");
    }

    std::string reference;
    r.text("db_reference", reference);
    if (spec.variable == SweepVariable::TransmitPowerDb) {
        if (reference.empty()) {
            fail(doc.origin, 0,
                 "dB sweeps require 'db_reference' (noise or distortion): the "
                 "axis is ambiguous without it");
        }
        if (reference == "noise") {
            spec.db_reference = DbReference::Noise;
        } else if (reference == "distortion") {
            spec.db_reference = DbReference::Distortion;
        } else {
            fail(doc.origin, 0,
                 "db_reference must be 'noise' or 'distortion', got '" +
                     reference + "'");
        }
    } else if (!reference.empty()) {
        fail(doc.origin, 0,
             "db_reference only applies to transmit_power_db sweeps");
    }

    std::string scenarios;
    r.text("scenarios", scenarios);
    if (scenarios.empty()) fail(doc.origin, 0, "[sweep] requires 'scenarios'");
    std::istringstream list(scenarios);
    std::string tok;
    while (std::getline(list, tok, ',')) {
        tok = trim(tok);
        if (tok.empty()) continue;
        const Scenario s = parse_scenario(doc, 0, tok);
        if (std::find(spec.scenarios.begin(), spec.scenarios.end(), s) !=
            spec.scenarios.end()) {
            fail(doc.origin, 0, "scenario '" + tok + "' listed twice");
        }
        spec.scenarios.push_back(s);
    }
    if (spec.scenarios.empty()) fail(doc.origin, 0, "empty scenario list");

    std::string metric;
    r.text("metric", metric);
    if (!metric.empty()) {
        if (metric == "se") {
            spec.metric = Metric::SpectralEfficiency;
        } else if (metric == "ee") {
            spec.metric = Metric::EnergyEfficiency;
        } else {
            fail(doc.origin, 0, "metric must be 'se' or 'ee', got '" + metric + "'");
        }
    }

    const bool fixed_power_given =
        doc.sections["sweep"].count("transmit_power") > 0;
    r.number("transmit_power", spec.transmit_power);
    if (spec.variable == SweepVariable::IrsElements) {
        if (!(spec.transmit_power > 0.0)) {
            fail(doc.origin, 0, "transmit_power must be positive");
        }
        if (!is_perfect_square(spec.start) || !is_perfect_square(spec.stop)) {
            fail(doc.origin, 0,
                 "element sweeps need perfect-square start/stop (square surface)");
        }
        if (spec.start > spec.stop) {
            fail(doc.origin, 0, "element sweeps need start <= stop");
        }
    } else {
        if (fixed_power_given) {
            fail(doc.origin, 0,
                 "'transmit_power' only applies to irs_elements sweeps");
        }
        if (spec.variable == SweepVariable::TransmitPower &&
            !(spec.start > 0.0)) {
            fail(doc.origin, 0, "transmit_power sweeps need start > 0");
        }
    }

    r.finish();
    out.sweep = spec;
}

}  // namespace

LoadedConfig parse_config(const std::string& text, const std::string& origin) {
    Document doc = tokenize(text, origin);
    LoadedConfig out;

    {
        Reader r(doc, "system", out);
        r.integer("ap_antennas", out.system.ap_antennas);
        r.integer("irs_elements", out.system.irs_elements);
        r.complex_gain("gain_ap_irs", out.system.gain_ap_irs);
        r.complex_gain("gain_irs_user", out.system.gain_irs_user);
        r.number("spacing_ratio", out.system.spacing_ratio);
        r.number("noise_power", out.system.noise_power);
        r.angle("aoa_irs_azimuth", out.system.aoa_irs.azimuth);
        r.angle("aoa_irs_elevation", out.system.aoa_irs.elevation);
        r.angle("aod_ap_azimuth", out.system.aod_ap.azimuth);
        r.angle("aod_ap_elevation", out.system.aod_ap.elevation);
        r.angle("aod_irs_azimuth", out.system.aod_irs.azimuth);
        r.angle("aod_irs_elevation", out.system.aod_irs.elevation);
        r.finish();
    }
    {
        Reader r(doc, "impairments", out);
        r.number("rf_attenuation", out.impairments.rf_attenuation);
        r.angle("rf_phase_bound", out.impairments.rf_phase_bound);
        r.number("distortion_power", out.impairments.distortion_power);
        r.angle("irs_phase_bound", out.impairments.irs_phase_bound);
        r.finish();
    }
    {
        Reader r(doc, "power", out);
        r.number("amplifier_inefficiency", out.power.amplifier_inefficiency);
        r.number("static_power", out.power.static_power);
        const bool ideal_given =
            doc.sections.count("power") > 0 &&
            doc.sections["power"].count("static_power_ideal") > 0;
        r.number("static_power_ideal", out.power.static_power_ideal);
        if (!ideal_given) {
            // Ideal scenarios drain the same static power unless said otherwise.
            out.power.static_power_ideal = out.power.static_power;
        }
        r.number("bandwidth", out.power.bandwidth);
        r.finish();
    }
    read_sweep(doc, out);

    try {
        out.system.validate();
        out.impairments.validate();
        out.power.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(origin + ": " + e.what());
    }
    return out;
}

LoadedConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), path);
}

}  // namespace irslink
