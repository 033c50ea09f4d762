#pragma once
#include <cstdint>
#include <string>
#include <vector>

namespace fhb {

// One gated measurement: `value` is the worst quantity the gate applies to,
// `pass` folds in any auxiliary conditions described in `detail`.
struct CheckResult {
    std::string name;
    bool pass = false;
    double value = 0.0;
    double tolerance = 0.0;
    double seconds = 0.0;
    std::string detail;
};

struct SuiteOptions {
    std::uint64_t seed = 42;
    // substring filter on check names; empty runs everything
    std::string only;
    // overrides the alpha grid of the mode-multiplier and soliton-algebra sweeps
    std::vector<double> alpha_sweep;
};

struct SuiteReport {
    std::vector<CheckResult> checks;
    bool all_pass = true;
    double seconds = 0.0;
};

SuiteReport run_acceptance_suite(const SuiteOptions& opt = {});

// Stable key order; timings are excluded so identical configs serialize
// byte-identically.
std::string to_json(const SuiteReport& r);

}  // namespace fhb
