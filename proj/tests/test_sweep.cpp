#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include <json.hpp>

#include "irslink/energy.hpp"
#include "irslink/spectral.hpp"
#include "irslink/sweep.hpp"

using namespace irslink;

namespace {

double rel(double a, double b) {
    double scale = std::max({std::abs(a), std::abs(b), 1e-300});
    return std::abs(a - b) / scale;
}

LoadedConfig small_db_sweep() {
    return parse_config(
        "[sweep]\n"
        "variable = transmit_power_db\n"
        "start = 0\nstop = 10\nsteps = 3\n"
        "db_reference = noise\n"
        "scenarios = nonideal_mc, nonideal_closed, ideal, high_snr\n"
        "metric = se\n",
        "test");
}

}  // namespace

TEST_CASE("sweep grids are spaced as documented") {
    SweepSpec spec;
    spec.variable = SweepVariable::TransmitPowerDb;
    spec.start = 0.0;
    spec.stop = 30.0;
    spec.steps = 31;
    std::vector<double> points = sweep_points(spec);
    REQUIRE(points.size() == 31);
    for (int i = 0; i < 31; ++i) CHECK(rel(points[i] + 1.0, i + 1.0) < 1e-15);

    spec.variable = SweepVariable::IrsElements;
    spec.start = 16;
    spec.stop = 1024;
    spec.steps = 4;
    points = sweep_points(spec);
    REQUIRE(points.size() == 4);
    CHECK(points[0] == 16.0);
    CHECK(points[1] == 64.0);
    CHECK(points[2] == 256.0);
    CHECK(points[3] == 1024.0);

    spec.steps = 1;
    spec.stop = 16;
    points = sweep_points(spec);
    REQUIRE(points.size() == 1);
    CHECK(points[0] == 16.0);
}

TEST_CASE("element grid points are always perfect squares") {
    SweepSpec spec;
    spec.variable = SweepVariable::IrsElements;
    spec.start = 4;
    spec.stop = 4096;
    spec.steps = 9;
    for (double p : sweep_points(spec)) {
        double side = std::round(std::sqrt(p));
        CHECK(side * side == p);
    }
}

TEST_CASE("sweep rows follow point-major order with configured scenarios") {
    LoadedConfig cfg = small_db_sweep();
    SweepOptions opt;
    opt.trials = 64;
    std::vector<SweepRow> rows = run_sweep(cfg, opt);
    REQUIRE(rows.size() == 3 * 4);
    for (int i = 0; i < 3; ++i) {
        CHECK(rows[4 * i].scenario == Scenario::NonidealMc);
        CHECK(rows[4 * i + 1].scenario == Scenario::NonidealClosed);
        CHECK(rows[4 * i + 2].scenario == Scenario::Ideal);
        CHECK(rows[4 * i + 3].scenario == Scenario::HighSnr);
        CHECK(rows[4 * i].sweep_value == 5.0 * i);
        CHECK(rows[4 * i].has_mc_stats);
        CHECK(rows[4 * i].trials == 64);
        CHECK(!rows[4 * i + 1].has_mc_stats);
    }
}

TEST_CASE("db points resolve against the chosen reference power") {
    LoadedConfig cfg = small_db_sweep();
    SweepOptions opt;
    opt.trials = 16;
    std::vector<SweepRow> rows = run_sweep(cfg, opt);
    // 10 dB over a 0.1 W noise floor is 1 W transmit power.
    double p = cfg.system.noise_power * 10.0;
    CHECK(rel(rows[9].value, se_asymptotic(cfg.system, cfg.impairments, p)) <
          1e-15);
    CHECK(rel(rows[10].value, se_ideal(cfg.system, p)) < 1e-15);
    CHECK(rel(rows[11].value, se_high_snr(cfg.impairments, p)) < 1e-15);

    LoadedConfig dist = parse_config(
        "[sweep]\nvariable = transmit_power_db\nstart = 3\nstop = 3\n"
        "steps = 1\ndb_reference = distortion\nscenarios = ideal\n",
        "test");
    rows = run_sweep(dist, opt);
    double want = dist.impairments.distortion_power * std::pow(10.0, 0.3);
    CHECK(rel(rows[0].value, se_ideal(dist.system, want)) < 1e-15);
}

TEST_CASE("efficiency sweeps divide by the right power drain") {
    LoadedConfig cfg = parse_config(
        "[power]\nstatic_power = 10\nstatic_power_ideal = 5\n"
        "[sweep]\nvariable = transmit_power\nstart = 2\nstop = 2\nsteps = 1\n"
        "scenarios = high_snr, ideal\nmetric = ee\n",
        "test");
    SweepOptions opt;
    std::vector<SweepRow> rows = run_sweep(cfg, opt);
    REQUIRE(rows.size() == 2);
    double se_hw = se_high_snr(cfg.impairments, 2.0);
    CHECK(rel(rows[0].value, se_hw / (1.1 * 2.0 + 10.0)) < 1e-15);
    // The ideal scenario books its own static drain.
    double se_id = se_ideal(cfg.system, 2.0);
    CHECK(rel(rows[1].value, se_id / (1.1 * 2.0 + 5.0)) < 1e-15);
}

TEST_CASE("csv output is stable and schema-exact") {
    LoadedConfig cfg = small_db_sweep();
    SweepOptions opt;
    opt.trials = 128;
    opt.threads = 1;
    std::string csv = render_csv(run_sweep(cfg, opt));

    CHECK(csv.rfind("sweep_value,scenario,metric,value,std_error,trials\n",
                    0) == 0);
    // Closed-form rows leave the statistics columns empty.
    CHECK(csv.find(",se,") != std::string::npos);
    CHECK(csv.find(",,\n") != std::string::npos);
    CHECK(csv.find(",128\n") != std::string::npos);

    opt.threads = 3;
    std::string threaded = render_csv(run_sweep(cfg, opt));
    CHECK(csv == threaded);

    std::string again = render_csv(run_sweep(cfg, opt));
    CHECK(threaded == again);
}

TEST_CASE("manifest captures the run and reproduces it") {
    LoadedConfig cfg = small_db_sweep();
    SweepOptions opt;
    opt.seed = 99;
    opt.trials = 128;
    opt.threads = 2;
    std::string csv = render_csv(run_sweep(cfg, opt));
    std::string manifest = make_manifest(cfg, opt, "run.csv");

    auto [cfg2, opt2] = from_manifest(manifest);
    CHECK(opt2.seed == 99);
    CHECK(opt2.trials == 128);
    CHECK(opt2.threads == 2);
    CHECK(render_csv(run_sweep(cfg2, opt2)) == csv);

    nlohmann::json j = nlohmann::json::parse(manifest);
    CHECK(j.at("tool") == "irslink");
    CHECK(j.at("command") == "sweep");
    CHECK(j.at("csv") == "run.csv");
    CHECK(j.at("config").at("system").at("noise_power") == 0.1);
}

TEST_CASE("manifest flags defaulted artifact choices") {
    LoadedConfig plain = small_db_sweep();
    nlohmann::json j =
        nlohmann::json::parse(make_manifest(plain, SweepOptions{}, "a.csv"));
    const auto& flagged = j.at("artifact_chosen_defaults");
    CHECK(std::find(flagged.begin(), flagged.end(), "system.noise_power") !=
          flagged.end());
    CHECK(std::find(flagged.begin(), flagged.end(), "power.static_power") !=
          flagged.end());

    LoadedConfig tuned = parse_config(
        "[system]\nnoise_power = 0.2\n"
        "[sweep]\nvariable = transmit_power\nstart = 1\nstop = 2\nsteps = 2\n"
        "scenarios = ideal\n",
        "test");
    j = nlohmann::json::parse(make_manifest(tuned, SweepOptions{}, "b.csv"));
    const auto& flagged2 = j.at("artifact_chosen_defaults");
    CHECK(std::find(flagged2.begin(), flagged2.end(), "system.noise_power") ==
          flagged2.end());
    CHECK(std::find(j.at("overridden_keys").begin(),
                    j.at("overridden_keys").end(),
                    "system.noise_power") != j.at("overridden_keys").end());
}

TEST_CASE("broken manifests are rejected") {
    CHECK_THROWS_AS(from_manifest("not json"), ConfigError);
    CHECK_THROWS_AS(from_manifest("{}"), ConfigError);
}

TEST_CASE("gnuplot script references the data and its series") {
    LoadedConfig cfg = small_db_sweep();
    std::string plot = render_gnuplot("out.csv", cfg);
    CHECK(plot.find("out.csv") != std::string::npos);
    CHECK(plot.find("nonideal_mc") != std::string::npos);
    CHECK(plot.find("high_snr") != std::string::npos);
    CHECK(plot.find("logscale") == std::string::npos);

    LoadedConfig elems = parse_config(
        "[sweep]\nvariable = irs_elements\nstart = 16\nstop = 256\n"
        "steps = 3\nscenarios = nonideal_closed\n",
        "test");
    plot = render_gnuplot("elems.csv", elems);
    CHECK(plot.find("set logscale x 2") != std::string::npos);
}

TEST_CASE("running a sweep without a sweep section fails") {
    LoadedConfig cfg = parse_config("[system]\nap_antennas = 4\n", "test");
    CHECK_THROWS_AS(run_sweep(cfg, SweepOptions{}), ConfigError);
}
