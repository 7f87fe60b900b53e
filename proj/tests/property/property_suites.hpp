#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace aberrant::oracle {

struct SuiteResult {
    std::string name;
    std::uint64_t checks = 0;
    std::uint64_t failures = 0;
    std::string first_failure;

    bool passed() const { return failures == 0 && checks > 0; }
};

/// Randomised invariant checks; deterministic for a given seed.
std::vector<SuiteResult> run_property_suites(std::uint64_t seed);

}  // namespace aberrant::oracle
