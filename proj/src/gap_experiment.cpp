#include "qmdc/gap.hpp"

#include <cmath>
#include <limits>

namespace qmdc {

GapReport gap_experiment(int d, long samples, std::uint64_t seed, double tol) {
    if (d < 2) throw std::invalid_argument("gap_experiment requires d >= 2");
    GapReport rep;
    rep.d = d;
    rep.alpha = alpha_ratio(d).alpha;

    const Instance g = complete_graph(d, d);
    const MomentProgram prog = build_program(g, SdpMode::Basic);
    const SDPSolution sol = solve(prog, tol);
    rep.sdp_objective = sol.objective;
    if (std::abs(rep.sdp_objective - 1.0) > std::max(1e-4, 10.0 * tol))
        throw NumericError("basic SDP on K_d did not reach value 1: got " +
                           std::to_string(rep.sdp_objective));

    const StackedVectors sv = stacked_vectors(sol);
    rep.min_stacked_inner = std::numeric_limits<double>::infinity();
    rep.max_stacked_inner = -std::numeric_limits<double>::infinity();
    for (int u = 0; u < d; ++u)
        for (int v = u + 1; v < d; ++v) {
            const double ip = sv.vectors[static_cast<std::size_t>(u)].dot(
                sv.vectors[static_cast<std::size_t>(v)]);
            rep.min_stacked_inner = std::min(rep.min_stacked_inner, ip);
            rep.max_stacked_inner = std::max(rep.max_stacked_inner, ip);
        }

    // exact optimum: antisymmetric state gives 1; eigensolver confirms when
    // d^d fits under the cap
    const StateVector psi = antisymmetric_state(d);
    rep.antisym_energy = state_energy(g, psi);
    rep.eigen_value = std::numeric_limits<double>::quiet_NaN();
    std::size_t dim = 1;
    bool fits = true;
    for (int i = 0; i < d && fits; ++i) {
        dim *= static_cast<std::size_t>(d);
        if (dim > default_dim_cap()) fits = false;
    }
    if (fits) rep.eigen_value = lambda_max(build_hamiltonian(g)).first;

    const RoundingInput input = rounding_input(sol);
    rep.estimate = estimate_energy(g, input, samples, seed);
    rep.closed_form_energy = rounded_energy_closed_form(g, input, fstar);
    rep.gap = rep.estimate.mean / rep.antisym_energy;
    rep.within_4_stderr = std::abs(rep.estimate.mean - rep.alpha) <= 4.0 * rep.estimate.std_error;
    return rep;
}

} // namespace qmdc
