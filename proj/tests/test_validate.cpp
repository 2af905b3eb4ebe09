#include <doctest.h>

#include <string>

#include "irslink/impairments.hpp"
#include "irslink/validate.hpp"

using namespace irslink;

TEST_CASE("quick validation passes with the real kernels") {
    ValidateOptions opt;
    opt.intensity = Intensity::Quick;
    ValidationReport report = run_validation(opt);
    CHECK(report.all_passed);
    REQUIRE(report.suites.size() == 5);
    CHECK(report.suites[0].name == "identity");
    CHECK(report.suites[1].name == "bound");
    CHECK(report.suites[2].name == "monotonicity");
    CHECK(report.suites[3].name == "lambert");
    CHECK(report.suites[4].name == "convergence");
    for (const SuiteResult& s : report.suites) {
        CHECK(s.passed);
        CHECK(s.checks > 0);
    }
}

TEST_CASE("validation is seed-dependent but deterministic") {
    ValidateOptions opt;
    opt.intensity = Intensity::Quick;
    opt.seed = 7;
    ValidationReport a = run_validation(opt);
    ValidationReport b = run_validation(opt);
    CHECK(a.all_passed);
    CHECK(render_report(a, opt) == render_report(b, opt));
}

TEST_CASE("a biased kernel is caught by the identity suite") {
    ValidateOptions opt;
    opt.intensity = Intensity::Quick;
    opt.sinc_fn = [](double x) { return sinc(x) * (1.0 + 1e-4); };
    ValidationReport report = run_validation(opt);
    CHECK(!report.all_passed);
    CHECK(!report.suites[0].passed);
    // The bias only corrupts the reference recomputation, so the other
    // suites keep passing; a full wipeout would point at a harness bug.
    CHECK(report.suites[1].passed);
    CHECK(report.suites[3].passed);
}

TEST_CASE("the report names the outcome") {
    ValidateOptions opt;
    opt.intensity = Intensity::Quick;
    ValidationReport report = run_validation(opt);
    std::string text = render_report(report, opt);
    CHECK(text.find("result: PASSED") != std::string::npos);
    CHECK(text.find("identity") != std::string::npos);
    CHECK(text.find("convergence") != std::string::npos);
}
