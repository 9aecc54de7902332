"""Quantum Max-d-Cut pipeline: qudit algebra, Hamiltonians, SDP relaxations,
projection rounding, and approximation-ratio analysis.

The heavy lifting lives in the compiled extension ``qmdc._qmdc``; this package
re-exports its surface.
"""

from ._qmdc import (  # noqa: F401
    Edge,
    Instance,
    SDPSolution,
    alpha,
    antisymmetric_state,
    baselines,
    beta,
    bloch_decode,
    bloch_encode,
    build_hamiltonian,
    clique_closed_form,
    complete_graph,
    cycle_graph,
    edge_interaction,
    estimate_energy,
    exact_value,
    fstar,
    gamma_ratio_sq,
    gap_experiment,
    gellmann_matrices,
    gnp_graph,
    heisenberg_interaction,
    hyp2f1_half,
    log_gamma,
    maxdcut_interaction,
    mc_fstar,
    moment,
    path_graph,
    product_state_energy,
    project_round,
    purity,
    ratio_row,
    rounded_energy_closed_form,
    rounded_states,
    solve_sdp,
    star_graph,
    verify_solution,
    weyl_matrices,
    weyl_symmetrize,
)

__all__ = [name for name in dir() if not name.startswith("_")]
