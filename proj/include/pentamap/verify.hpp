#ifndef PENTAMAP_VERIFY_HPP
#define PENTAMAP_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace pentamap {

struct CheckResult {
    std::string name;
    bool passed = false;
    long trials = 0;
    long failures = 0;
    std::string detail;
};

// Suites: "identities" (exact rational identity suite), "cubic" (singular
// sweep + level topology), "escape" (special-orbit dynamics + minor-arc
// lemma), "poncelet", "calibration", or "all".
std::vector<CheckResult> run_verify_suite(const std::string& suite, long trials,
                                          std::uint64_t rng_seed = 20260810);

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace pentamap

#endif
