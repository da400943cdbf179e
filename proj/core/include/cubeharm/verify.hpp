#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cubeharm {

struct CheckResult {
    std::string name;
    bool pass = false;
    double residual = 0.0; // measured residual / margin, check-specific
    double seconds = 0.0;
    std::string detail;
};

struct VerifyOptions {
    int n = 12;
    bool exact = false; // widens the exact-suite ranges (m, λ grids, coefficient depth)
    std::uint64_t seed = 0xC0FFEEULL;
};

// Names of every registered identity/property check, one per invariant the
// library promises, so coverage is auditable without running anything.
std::vector<std::string> verify_check_names();

// Runs the full registry at the given dimension. Checks whose contract pins a
// smaller dimension (e.g. direct-convolution comparisons) cap internally and
// say so in their detail string.
std::vector<CheckResult> run_verify(const VerifyOptions& options);

} // namespace cubeharm
