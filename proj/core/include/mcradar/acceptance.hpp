// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace mcradar {

/// Controls for the acceptance suite. scale multiplies Monte Carlo trial
/// counts (smoke runs use scale < 1; stated runtime limits are enforced only
/// at scale == 1). beta_deflation is a mutation hook for testing the suite
/// itself: deflating the kernel supremum must make the bound-validity
/// criterion fail.
struct AcceptanceOptions {
    std::uint64_t seed = 20260811;
    double scale = 1.0;
    double beta_deflation = 1.0;
    bool include_solver = true;
};

struct CriterionResult {
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions &opts = {});

// One "PASS name (t s): detail" line per criterion; returns the failure count.
int print_acceptance(const std::vector<CriterionResult> &results, std::ostream &os);

} // namespace mcradar
