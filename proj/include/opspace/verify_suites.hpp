#pragma once

#include <string>
#include <vector>

#include "opspace/serialization.hpp"
#include "opspace/tolerances.hpp"

namespace opspace {

// Aggregated result of one named check suite. max_residual is the worst
// numeric deviation seen across the suite's checks (exact integer checks
// count violations); details carries one human-readable line per check.
struct SuiteReport {
    std::string suite;
    int n = 0;
    double max_residual = 0.0;
    bool pass = false;
    std::vector<std::string> details;
};

// car, fock, grid, projection, classify, all.
std::vector<std::string> suite_names();

// Runs one suite at size n; k > 0 restricts grid-parameterized checks to
// that single k. Size caps (the grid suite is exhaustive and stops at
// n = 6, car at n = 12) are enforced here with a descriptive error.
SuiteReport run_suite(const std::string& suite, int n, int k = 0,
                      const ToleranceConfig& cfg = {});

json suite_report_to_json(const SuiteReport& report);

} // namespace opspace
