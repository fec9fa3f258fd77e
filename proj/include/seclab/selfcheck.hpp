#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace seclab::selfcheck {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct SuiteConfig {
    std::uint64_t seed = 20260816ULL;
    int workers = 0;
    // Deliberately evaluate the degraded mean with its E1 sign flipped; the
    // suite must then fail, proving the checks have teeth.
    bool canary = false;
};

// Under a minute: identities, definitional-integral cross-checks, small
// Monte Carlo comparisons.
std::vector<CheckResult> run_fast_suite(const SuiteConfig& cfg);

// Fast suite plus million-trial Monte Carlo agreement, joint-histogram
// chi-square tests, and reproducibility checks.
std::vector<CheckResult> run_full_suite(const SuiteConfig& cfg);

}  // namespace seclab::selfcheck
