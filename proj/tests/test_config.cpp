#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "irslink/config.hpp"

using namespace irslink;

namespace {

double rel(double a, double b) {
    double scale = std::max({std::abs(a), std::abs(b), 1e-300});
    return std::abs(a - b) / scale;
}

bool lists(const std::vector<std::string>& v, const std::string& s) {
    return std::find(v.begin(), v.end(), s) != v.end();
}

}  // namespace

TEST_CASE("empty input yields the default configuration") {
    LoadedConfig cfg = parse_config("", "test");
    CHECK(cfg.system.ap_antennas == 16);
    CHECK(cfg.system.irs_elements == 64);
    CHECK(cfg.impairments.rf_attenuation == 0.9);
    CHECK(cfg.power.static_power == 10.0);
    CHECK(!cfg.sweep.has_value());
    CHECK(cfg.warnings.empty());
    CHECK(cfg.overridden_keys.empty());
}

TEST_CASE("a full file parses with unit conversion") {
    const std::string text = R"(
# link geometry
[system]
ap_antennas = 4
irs_elements = 16            ; inline comment
gain_ap_irs = 0.25,-0.1
gain_irs_user = 0.4
aoa_irs_azimuth_deg = 45
aoa_irs_elevation_rad = 0.5
noise_power = 0.2

[impairments]
rf_attenuation = 0.8
rf_phase_bound_deg = 10
distortion_power = 0.05

[power]
static_power = 12
bandwidth = 2.0

[sweep]
variable = transmit_power_db
start = 0
stop = 20
steps = 5
db_reference = noise
scenarios = nonideal_mc, nonideal_closed, ideal
metric = se
)";
    LoadedConfig cfg = parse_config(text, "test");
    CHECK(cfg.system.ap_antennas == 4);
    CHECK(cfg.system.irs_elements == 16);
    CHECK(cfg.system.gain_ap_irs == cxd(0.25, -0.1));
    CHECK(cfg.system.gain_irs_user == cxd(0.4, 0.0));
    CHECK(rel(cfg.system.aoa_irs.azimuth, std::numbers::pi / 4) < 1e-15);
    CHECK(cfg.system.aoa_irs.elevation == 0.5);
    CHECK(cfg.impairments.rf_attenuation == 0.8);
    CHECK(rel(cfg.impairments.rf_phase_bound, std::numbers::pi / 18) < 1e-15);
    CHECK(cfg.power.static_power == 12.0);
    // Falls back to the non-ideal figure when not given.
    CHECK(cfg.power.static_power_ideal == 12.0);
    CHECK(cfg.power.bandwidth == 2.0);

    REQUIRE(cfg.sweep.has_value());
    const SweepSpec& sw = *cfg.sweep;
    CHECK(sw.variable == SweepVariable::TransmitPowerDb);
    CHECK(sw.steps == 5);
    CHECK(sw.db_reference == DbReference::Noise);
    REQUIRE(sw.scenarios.size() == 3);
    CHECK(sw.scenarios[0] == Scenario::NonidealMc);
    CHECK(sw.scenarios[2] == Scenario::Ideal);
    CHECK(sw.metric == Metric::SpectralEfficiency);

    CHECK(lists(cfg.overridden_keys, "system.ap_antennas"));
    CHECK(lists(cfg.overridden_keys, "system.aoa_irs_azimuth"));
    CHECK(lists(cfg.overridden_keys, "power.static_power"));
    CHECK(!lists(cfg.overridden_keys, "power.amplifier_inefficiency"));
    CHECK(cfg.warnings.empty());
}

TEST_CASE("explicit ideal static power is kept") {
    LoadedConfig cfg = parse_config(
        "[power]\nstatic_power = 12\nstatic_power_ideal = 8\n", "test");
    CHECK(cfg.power.static_power == 12.0);
    CHECK(cfg.power.static_power_ideal == 8.0);
}

TEST_CASE("angle keys must name their unit") {
    CHECK_THROWS_AS(parse_config("[system]\naoa_irs_azimuth = 0.5\n", "test"),
                    ConfigError);
    CHECK_THROWS_WITH_AS(
        parse_config("[system]\naoa_irs_azimuth = 0.5\n", "test"),
        doctest::Contains("_deg"), ConfigError);
    // Both units at once is just as ambiguous as none.
    CHECK_THROWS_AS(
        parse_config("[system]\naoa_irs_azimuth_deg = 45\n"
                     "aoa_irs_azimuth_rad = 0.785\n",
                     "test"),
        ConfigError);
}

TEST_CASE("unknown names are rejected") {
    CHECK_THROWS_AS(parse_config("[system]\nantennas = 4\n", "test"),
                    ConfigError);
    CHECK_THROWS_AS(parse_config("[link]\nap_antennas = 4\n", "test"),
                    ConfigError);
    CHECK_THROWS_AS(
        parse_config("[system]\nap_antennas = 4\nap_antennas = 16\n", "test"),
        ConfigError);
}

TEST_CASE("malformed lines are rejected") {
    CHECK_THROWS_AS(parse_config("[system]\nap_antennas\n", "test"),
                    ConfigError);
    CHECK_THROWS_AS(parse_config("[system]\nap_antennas =\n", "test"),
                    ConfigError);
    CHECK_THROWS_AS(parse_config("[system]\nap_antennas = four\n", "test"),
                    ConfigError);
    CHECK_THROWS_AS(parse_config("ap_antennas = 4\n", "test"), ConfigError);
}

TEST_CASE("struct-level validation surfaces as a config error") {
    CHECK_THROWS_AS(parse_config("[system]\nap_antennas = 5\n", "test"),
                    ConfigError);
    CHECK_THROWS_AS(parse_config("[impairments]\nrf_attenuation = 1.5\n",
                                 "test"),
                    ConfigError);
}

TEST_CASE("angles far outside one turn draw a warning, not an error") {
    LoadedConfig cfg =
        parse_config("[system]\naoa_irs_azimuth_deg = 400\n", "test");
    REQUIRE(!cfg.warnings.empty());
    CHECK(cfg.warnings[0].find("aoa_irs_azimuth") != std::string::npos);
}

TEST_CASE("db sweeps demand a reference and linear sweeps reject one") {
    const std::string base =
        "[sweep]\nvariable = transmit_power_db\nstart = 0\nstop = 10\n"
        "steps = 2\nscenarios = ideal\n";
    CHECK_THROWS_WITH_AS(parse_config(base, "test"),
                         doctest::Contains("db_reference"), ConfigError);
    CHECK_NOTHROW(parse_config(base + "db_reference = noise\n", "test"));
    CHECK_NOTHROW(parse_config(base + "db_reference = distortion\n", "test"));
    CHECK_THROWS_AS(parse_config(base + "db_reference = carrier\n", "test"),
                    ConfigError);

    const std::string linear =
        "[sweep]\nvariable = transmit_power\nstart = 1\nstop = 10\n"
        "steps = 2\nscenarios = ideal\ndb_reference = noise\n";
    CHECK_THROWS_AS(parse_config(linear, "test"), ConfigError);
}

TEST_CASE("scenario lists are validated") {
    const std::string head =
        "[sweep]\nvariable = transmit_power\nstart = 1\nstop = 10\nsteps = 2\n";
    CHECK_THROWS_AS(parse_config(head, "test"), ConfigError);
    CHECK_THROWS_AS(parse_config(head + "scenarios = idea\n", "test"),
                    ConfigError);
    CHECK_THROWS_AS(
        parse_config(head + "scenarios = ideal, ideal\n", "test"),
        ConfigError);
    CHECK_THROWS_AS(parse_config(head + "scenarios = ideal\nmetric = rate\n",
                                 "test"),
                    ConfigError);
}

TEST_CASE("step counts and ranges are checked") {
    CHECK_THROWS_AS(
        parse_config("[sweep]\nvariable = transmit_power\nstart = 1\n"
                     "stop = 10\nsteps = 0\nscenarios = ideal\n",
                     "test"),
        ConfigError);
    CHECK_THROWS_AS(
        parse_config("[sweep]\nvariable = transmit_power\nstart = 1\n"
                     "stop = 10\nsteps = 1\nscenarios = ideal\n",
                     "test"),
        ConfigError);
    CHECK_NOTHROW(
        parse_config("[sweep]\nvariable = transmit_power\nstart = 2\n"
                     "stop = 2\nsteps = 1\nscenarios = ideal\n",
                     "test"));
    CHECK_THROWS_AS(
        parse_config("[sweep]\nvariable = transmit_power\nstart = 0\n"
                     "stop = 10\nsteps = 2\nscenarios = ideal\n",
                     "test"),
        ConfigError);
}

TEST_CASE("element sweeps require square counts and accept a fixed power") {
    const std::string good =
        "[sweep]\nvariable = irs_elements\nstart = 16\nstop = 1024\n"
        "steps = 4\nscenarios = nonideal_closed\ntransmit_power = 2\n";
    LoadedConfig cfg = parse_config(good, "test");
    REQUIRE(cfg.sweep.has_value());
    CHECK(cfg.sweep->transmit_power == 2.0);

    CHECK_THROWS_AS(
        parse_config("[sweep]\nvariable = irs_elements\nstart = 20\n"
                     "stop = 1024\nsteps = 4\nscenarios = ideal\n",
                     "test"),
        ConfigError);
    CHECK_THROWS_AS(
        parse_config("[sweep]\nvariable = irs_elements\nstart = 1024\n"
                     "stop = 16\nsteps = 4\nscenarios = ideal\n",
                     "test"),
        ConfigError);
    // A fixed power makes no sense when power is the swept variable.
    CHECK_THROWS_AS(
        parse_config("[sweep]\nvariable = transmit_power\nstart = 1\n"
                     "stop = 10\nsteps = 2\nscenarios = ideal\n"
                     "transmit_power = 2\n",
                     "test"),
        ConfigError);
}

TEST_CASE("unknown sweep variable names the accepted set") {
    CHECK_THROWS_WITH_AS(
        parse_config("[sweep]\nvariable = snr\nstart = 0\nstop = 1\n"
                     "steps = 2\nscenarios = ideal\n",
                     "test"),
        doctest::Contains("irs_elements"), ConfigError);
}

TEST_CASE("loading a missing file fails cleanly") {
    CHECK_THROWS_AS(load_config("/nonexistent/irslink.ini"), ConfigError);
}

TEST_CASE("enum names round-trip") {
    CHECK(std::string(scenario_name(Scenario::NonidealMc)) == "nonideal_mc");
    CHECK(std::string(scenario_name(Scenario::UpperBound)) == "upper_bound");
    CHECK(std::string(metric_name(Metric::EnergyEfficiency)) == "ee");
    CHECK(std::string(sweep_variable_name(SweepVariable::IrsElements)) ==
          "irs_elements");
    CHECK(std::string(db_reference_name(DbReference::Distortion)) ==
          "distortion");
}
