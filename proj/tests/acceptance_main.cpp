// Acceptance gate: runs every suite check at its stated tolerance and prints
// one verdict line per check. Exit status 0 only if everything passes.
#include <cstdio>

#include "fhb/suite.hpp"

int main() {
    const fhb::SuiteReport rep = fhb::run_acceptance_suite();
    for (const fhb::CheckResult& c : rep.checks) {
        std::printf("[%s] %-28s value=%-12.3e tol=%-9.0e %6.2fs  %s\n",
                    c.pass ? "PASS" : "FAIL", c.name.c_str(), c.value, c.tolerance, c.seconds,
                    c.detail.c_str());
    }
    std::printf("%s (%zu checks, %.1fs)\n", rep.all_pass ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL",
                rep.checks.size(), rep.seconds);
    return rep.all_pass ? 0 : 1;
}
