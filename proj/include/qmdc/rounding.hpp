#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <vector>

#include "qmdc/hamiltonian.hpp"

namespace qmdc {

struct RoundingInput {
    enum class Source { BasicSDP, ProductSDP, Synthetic };
    int d = 0;
    std::vector<Eigen::VectorXd> vectors; // one unit vector per vertex, common length
    Source source = Source::Synthetic;
};

struct RoundedAssignment {
    int d = 0;
    std::vector<Eigen::VectorXd> bloch; // InsphereUnit-convention unit Bloch vectors
    std::uint64_t seed = 0;             // seed actually used (bumped on zero-image retry)
};

struct EnergyEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    long count = 0;
    std::uint64_t seed = 0;
};

// Algorithm: draw Z in R^{(d^2-1) x l} with i.i.d. standard Gaussians and
// map each vector to b_u = Z|u> / ||Z|u>||. Deterministic per seed.
RoundedAssignment project_round(const RoundingInput& input, std::uint64_t seed);

// Decode each Bloch vector on the insphere into a density matrix of purity
// exactly 1/(d-1) when |b| = 1.
ProductState assignment_to_states(const RoundedAssignment& ra);

// Exact expectation of the rounded energy:
// (1/2)((d-1)/d) E_(u,v)~E [1 - F*(d^2-1, <u|v>)/(d-1)^2].
double rounded_energy_closed_form(const Instance& g, const RoundingInput& input,
                                  const std::function<double(int, double)>& fstar_fn);

// Monte Carlo mean/stderr of product_state_energy over independent rounds;
// per-sample seeds are derived from the master seed, so the reduction order
// does not matter.
EnergyEstimate estimate_energy(const Instance& g, const RoundingInput& input, long samples,
                               std::uint64_t seed);

// Brute-force oracle for F*: round two unit vectors with inner product gamma
// through k-row Gaussian matrices and average the resulting inner product.
EnergyEstimate mc_fstar(int k, double gamma, long samples, std::uint64_t seed);

} // namespace qmdc
