#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qmdc {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct VerifyOptions {
    long mc_samples = 100000; // Monte Carlo sample count for the F* checks
    long random_trials = 10000;
    std::uint64_t seed = 1;
    double sdp_tol = 1e-6;
    // section toggles
    bool include_algebra = true;
    bool include_hamiltonian = true;
    bool include_sdp = true; // the SDP battery dominates the runtime
    bool include_rounding = true;
    bool include_ratio = true;
};

// Runs the per-module invariant battery and returns one line per check.
std::vector<CheckResult> run_verification_suite(const VerifyOptions& opts = {});

} // namespace qmdc
