#pragma once

#include <cstdint>

#include "qmdc/ratio_analysis.hpp"
#include "qmdc/relaxation.hpp"
#include "qmdc/rounding.hpp"

namespace qmdc {

// K_d end-to-end: solve the basic SDP, confirm its value and the pairwise
// stacked inner products, confirm the exact optimum via the antisymmetric
// state (and eigensolver when the dimension permits), then round and compare
// the Monte Carlo mean against alpha_d.
struct GapReport {
    int d = 0;
    double sdp_objective = 0.0;
    double min_stacked_inner = 0.0;
    double max_stacked_inner = 0.0;
    double antisym_energy = 0.0;
    double eigen_value = 0.0; // lambda_max(H_{K_d}); NaN when over the cap
    EnergyEstimate estimate;
    double closed_form_energy = 0.0; // expectation at the solved inner products
    double alpha = 0.0;
    double gap = 0.0; // estimate.mean / exact value (= 1)
    bool within_4_stderr = false;
};

GapReport gap_experiment(int d, long samples, std::uint64_t seed, double tol = 1e-6);

} // namespace qmdc
