#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qmdc/hamiltonian.hpp"

namespace qmdc {

enum class SdpMode { Basic, NcSos2Only, ProductState };

std::string to_string(SdpMode mode);
SdpMode sdp_mode_from_string(const std::string& s);

struct BuildOptions {
    // Basic mode instantiates a two-body density block for every vertex pair;
    // switching this off restricts to edges (documented deviation, for
    // experiments only).
    bool all_pairs = true;
};

struct ConstraintCounts {
    long gram_diag = 0;   // <L^a_u|L^b_u> = (2/d) d_ab
    long moment_link = 0; // <L^a_u|L^b_v> = tr(rho_uv L^a x L^b)
    long one_body = 0;    // tr(rho_uv L^a x I) = tr(rho_uv I x L^a) = 0
    long trace = 0;       // tr(rho_uv) = 1
    long embedding = 0;   // real-embedding structure of the complex blocks
    long inequality = 0;  // product-SDP pair bounds (via slack blocks)
};

// Block SDP in svec form: minimize c.x st A x = b, x in product PSD cone.
// Block 0 is the Gram matrix; Basic mode appends one real-embedded 2d^2
// block per pair, ProductState mode appends one 1x1 slack per pair.
struct MomentProgram {
    SdpMode mode = SdpMode::Basic;
    Instance instance;
    int d = 0;
    int n = 0;
    int gram_side = 0;
    std::vector<int> block_sides;
    std::vector<long> block_offsets;
    long total_dim = 0;
    std::vector<std::pair<int, int>> pairs; // (u,v) per non-gram block
    Eigen::SparseMatrix<double, Eigen::RowMajor> A;
    Eigen::VectorXd b;
    Eigen::VectorXd c;
    double obj_offset = 0.0;
    ConstraintCounts counts;
};

MomentProgram build_program(const Instance& g, SdpMode mode, BuildOptions opts = {});

struct ResidualReport {
    double max_equality_residual = 0.0;
    double min_block_eigenvalue = 0.0;
    double gap_estimate = 0.0;
    long iterations = 0;
    bool converged = false;
};

struct SDPSolution {
    SdpMode mode = SdpMode::Basic;
    Instance instance;
    int d = 0;
    int n = 0;
    double objective = 0.0;
    Eigen::MatrixXd gram;
    std::vector<std::pair<int, int>> pairs;
    std::vector<Eigen::MatrixXcd> rho_blocks;
    ResidualReport residuals;
    double solve_tol = 1e-6;
};

// Operator-splitting solve: alternating projection onto the affine constraint
// set (prefactorized least squares) and the PSD product cone (per-block
// eigendecompositions), with over-relaxation. Deterministic per input.
SDPSolution solve(const MomentProgram& prog, double tol = 1e-6, long max_iter = 200000);

// M = V^T V with eigenvalues in [-clip_tol, 0) zeroed; columns of V are the
// SDP vectors. Eigenvalues below -clip_tol indicate an inconsistent Gram
// matrix and raise NumericError.
Eigen::MatrixXd extract_vectors(const Eigen::MatrixXd& gram, double clip_tol = 1e-6);

struct StackedVectors {
    int d = 0;
    int n = 0;
    std::vector<Eigen::VectorXd> vectors; // one unit vector per vertex
};

// Per-vertex concatenation of the d^2-1 SDP vectors, scaled by
// 1/sqrt((2/d)(d^2-1)); the residual rescaling to exact unit norm absorbs
// solver-level constraint error and is checked to stay below 1e3 * solve_tol.
StackedVectors stacked_vectors(const SDPSolution& sol);

// Adapter into the rounding stage: stacked vectors for Basic / NcSos2Only
// solutions, normalized extracted columns for ProductState solutions.
struct RoundingInput;
RoundingInput rounding_input(const SDPSolution& sol);

// Appendix closed form on K_n: Gram with per-index simplex blocks
// (diagonal 2/d, off-diagonal -2/(d(n-1))) and the ncSoS level-2 value
// (d-1)(d+n)/(2d(n-1)).
std::pair<Eigen::MatrixXd, double> clique_closed_form(int d, int n);

struct VerifyReport {
    bool ok = true;
    std::vector<std::string> violations;
    double objective = 0.0;
    double max_gram_diag_residual = 0.0; // constraint (gram_diag) violation
    double min_pair_moment_sum = 0.0;    // min over pairs of sum_a <L^a_u|L^a_v>
    double min_rho_eigenvalue = 0.0;
    double max_rho_trace_error = 0.0;
    double max_one_body_moment = 0.0;
    double min_stacked_inner = 0.0;
};

VerifyReport verify_solution(const Instance& g, const SDPSolution& sol, double tol = 1e-6);

nlohmann::json solution_to_json(const SDPSolution& sol);
SDPSolution solution_from_json(const nlohmann::json& j);

} // namespace qmdc
