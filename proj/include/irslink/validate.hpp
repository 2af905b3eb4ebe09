// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace irslink {

enum class Intensity { Quick, Standard, Full };

struct ValidateOptions {
    std::uint64_t seed = 1;
    Intensity intensity = Intensity::Standard;
    // Reference sinc used by the identity suite when recomputing expected
    // values independently of the library. Defaults to irslink::sinc; tests
    // inject a biased version to prove the suite can catch a wrong kernel.
    std::function<double(double)> sinc_fn;
};

struct SuiteResult {
    std::string name;
    bool passed = false;
    long checks = 0;
    std::string detail;  // worst deviation or first failure description
};

struct ValidationReport {
    std::vector<SuiteResult> suites;
    bool all_passed = false;
};

// Five suites: identity (exact vs reduced SNR, independent recomputation of
// the closed forms), bound (ceiling respected and approached), monotonicity
// (impairment directions for SE, optimal power and EE), lambert (inverse
// property, branch point, bisection cross-check), convergence (Monte Carlo
// approaches the closed form as arrays grow). Deterministic in (seed,
// intensity).
ValidationReport run_validation(const ValidateOptions& options);

// Plain-text report. Contains no timing or timestamps, so the bytes are a
// pure function of (seed, intensity, outcome).
std::string render_report(const ValidationReport& report,
                          const ValidateOptions& options);

}  // namespace irslink
