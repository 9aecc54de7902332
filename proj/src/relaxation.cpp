#include "qmdc/relaxation.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <limits>
#include <unsupported/Eigen/KroneckerProduct>

#include "qmdc/rounding.hpp"

namespace qmdc {

namespace {

long svec_size(int m) { return static_cast<long>(m) * (m + 1) / 2; }

// column-major upper triangle: (i,j) with i <= j at j(j+1)/2 + i
long svec_index(long i, long j) { return j * (j + 1) / 2 + i; }

const double kSqrt2 = std::sqrt(2.0);

void mat_to_svec(const Eigen::MatrixXd& M, Eigen::Ref<Eigen::VectorXd> out) {
    const long m = M.rows();
    long k = 0;
    for (long j = 0; j < m; ++j)
        for (long i = 0; i <= j; ++i) out(k++) = (i == j) ? M(i, j) : kSqrt2 * M(i, j);
}

void svec_to_mat(const Eigen::Ref<const Eigen::VectorXd>& x, Eigen::MatrixXd& M) {
    const long m = M.rows();
    long k = 0;
    for (long j = 0; j < m; ++j)
        for (long i = 0; i <= j; ++i) {
            const double v = (i == j) ? x(k) : x(k) / kSqrt2;
            M(i, j) = v;
            M(j, i) = v;
            ++k;
        }
}

// [[Re H, -Im H], [Im H, Re H]]
Eigen::MatrixXd real_embed(const Eigen::MatrixXcd& H) {
    const long q = H.rows();
    Eigen::MatrixXd R(2 * q, 2 * q);
    R.topLeftCorner(q, q) = H.real();
    R.bottomRightCorner(q, q) = H.real();
    R.topRightCorner(q, q) = -H.imag();
    R.bottomLeftCorner(q, q) = H.imag();
    return R;
}

Eigen::MatrixXcd real_unembed(const Eigen::MatrixXd& R) {
    const long q = R.rows() / 2;
    Eigen::MatrixXcd H =
        0.5 * (R.topLeftCorner(q, q) + R.bottomRightCorner(q, q)) +
        Complex(0.0, 0.5) * (R.bottomLeftCorner(q, q) - R.topRightCorner(q, q));
    return 0.5 * (H + H.adjoint().eval());
}

struct TripletSink {
    std::vector<Eigen::Triplet<double>> trips;
    long row = 0;
    void add(long col, double v) { trips.emplace_back(static_cast<int>(row), static_cast<int>(col), v); }
    void next() { ++row; }
};

// svec coefficients of tr(C X) = sum_ij C_ij X_ij for symmetric C restricted
// to one block at the given offset
void add_sym_coeffs(TripletSink& sink, long offset, const Eigen::MatrixXd& C, double scale) {
    const long m = C.rows();
    for (long j = 0; j < m; ++j)
        for (long i = 0; i <= j; ++i) {
            const double c = C(i, j);
            if (c == 0.0) continue;
            sink.add(offset + svec_index(i, j), scale * (i == j ? c : kSqrt2 * c));
        }
}

} // namespace

std::string to_string(SdpMode mode) {
    switch (mode) {
        case SdpMode::Basic: return "basic";
        case SdpMode::NcSos2Only: return "ncsos2";
        case SdpMode::ProductState: return "product";
    }
    return "?";
}

SdpMode sdp_mode_from_string(const std::string& s) {
    if (s == "basic") return SdpMode::Basic;
    if (s == "ncsos2") return SdpMode::NcSos2Only;
    if (s == "product") return SdpMode::ProductState;
    throw std::invalid_argument("unknown SDP mode: " + s);
}

MomentProgram build_program(const Instance& g, SdpMode mode, BuildOptions opts) {
    if (g.n < 2) throw std::invalid_argument("SDP needs at least two vertices");
    MomentProgram prog;
    prog.mode = mode;
    prog.instance = g;
    prog.d = g.d;
    prog.n = g.n;

    const int K = g.d * g.d - 1;
    const double W = g.total_weight();
    const bool with_rho = (mode == SdpMode::Basic);

    if (mode == SdpMode::ProductState) {
        prog.gram_side = g.n;
    } else {
        prog.gram_side = g.n * K;
    }
    prog.block_sides.push_back(prog.gram_side);

    if (with_rho) {
        if (opts.all_pairs) {
            for (int u = 0; u < g.n; ++u)
                for (int v = u + 1; v < g.n; ++v) prog.pairs.emplace_back(u, v);
        } else {
            for (const Edge& e : g.edges) prog.pairs.emplace_back(e.u, e.v);
        }
        for (std::size_t i = 0; i < prog.pairs.size(); ++i)
            prog.block_sides.push_back(2 * g.d * g.d);
    } else if (mode == SdpMode::ProductState) {
        for (int u = 0; u < g.n; ++u)
            for (int v = u + 1; v < g.n; ++v) prog.pairs.emplace_back(u, v);
        for (std::size_t i = 0; i < prog.pairs.size(); ++i) prog.block_sides.push_back(1);
    }

    prog.block_offsets.resize(prog.block_sides.size());
    long dim = 0;
    for (std::size_t bi = 0; bi < prog.block_sides.size(); ++bi) {
        prog.block_offsets[bi] = dim;
        dim += svec_size(prog.block_sides[bi]);
    }
    prog.total_dim = dim;

    const auto vidx = [K](int u, int a0) { return static_cast<long>(u) * K + a0; };

    TripletSink sink;
    std::vector<double> rhs;
    auto push_rhs = [&](double v) {
        rhs.push_back(v);
        sink.next();
    };

    prog.c = Eigen::VectorXd::Zero(dim);

    if (mode == SdpMode::ProductState) {
        // unit diagonal
        for (int u = 0; u < g.n; ++u) {
            sink.add(svec_index(u, u), 1.0);
            push_rhs(1.0);
            ++prog.counts.gram_diag;
        }
        // <u|v> - s_uv = -1/(d-1)
        for (std::size_t p = 0; p < prog.pairs.size(); ++p) {
            const auto [u, v] = prog.pairs[p];
            sink.add(svec_index(u, v), 1.0 / kSqrt2);
            sink.add(prog.block_offsets[p + 1], -1.0);
            push_rhs(-1.0 / (g.d - 1.0));
            ++prog.counts.inequality;
        }
        // maximize c0 * E[1 - <u|v>]
        const double c0 = 0.5 * (g.d - 1.0) / g.d;
        prog.obj_offset = c0;
        for (const Edge& e : g.edges)
            prog.c(svec_index(e.u, e.v)) -= c0 * (e.w / W) / kSqrt2;
    } else {
        const GellMannBasis basis = gellmann_basis(g.d);
        // gram diagonal blocks: <L^a_u|L^b_u> = (2/d) d_ab
        for (int u = 0; u < g.n; ++u)
            for (int a0 = 0; a0 < K; ++a0)
                for (int b0 = a0; b0 < K; ++b0) {
                    const long i = vidx(u, a0), j = vidx(u, b0);
                    sink.add(svec_index(i, j), a0 == b0 ? 1.0 : 1.0 / kSqrt2);
                    push_rhs(a0 == b0 ? 2.0 / g.d : 0.0);
                    ++prog.counts.gram_diag;
                }

        if (with_rho) {
            const int q = g.d * g.d;
            // cache the embedded coefficient matrices
            std::vector<Eigen::MatrixXd> pair_coeff(static_cast<std::size_t>(K) * K);
            for (int a0 = 0; a0 < K; ++a0)
                for (int b0 = 0; b0 < K; ++b0)
                    pair_coeff[static_cast<std::size_t>(a0) * K + b0] = real_embed(
                        Eigen::kroneckerProduct(basis.op(a0 + 1), basis.op(b0 + 1)).eval());
            std::vector<Eigen::MatrixXd> left_coeff(K), right_coeff(K);
            const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(g.d, g.d);
            for (int a0 = 0; a0 < K; ++a0) {
                left_coeff[a0] =
                    real_embed(Eigen::kroneckerProduct(basis.op(a0 + 1), eye).eval());
                right_coeff[a0] =
                    real_embed(Eigen::kroneckerProduct(eye, basis.op(a0 + 1)).eval());
            }
            const Eigen::MatrixXd trace_coeff =
                real_embed(Eigen::MatrixXcd::Identity(q, q).eval());

            for (std::size_t p = 0; p < prog.pairs.size(); ++p) {
                const auto [u, v] = prog.pairs[p];
                const long off = prog.block_offsets[p + 1];
                // <L^a_u|L^b_v> = tr(rho_uv L^a x L^b); the embedding doubles
                // traces, hence the 1/2
                for (int a0 = 0; a0 < K; ++a0)
                    for (int b0 = 0; b0 < K; ++b0) {
                        sink.add(svec_index(vidx(u, a0), vidx(v, b0)), 1.0 / kSqrt2);
                        add_sym_coeffs(sink, off, pair_coeff[static_cast<std::size_t>(a0) * K + b0],
                                       -0.5);
                        push_rhs(0.0);
                        ++prog.counts.moment_link;
                    }
                for (int a0 = 0; a0 < K; ++a0) {
                    add_sym_coeffs(sink, off, left_coeff[a0], 0.5);
                    push_rhs(0.0);
                    ++prog.counts.one_body;
                    add_sym_coeffs(sink, off, right_coeff[a0], 0.5);
                    push_rhs(0.0);
                    ++prog.counts.one_body;
                }
                add_sym_coeffs(sink, off, trace_coeff, 0.5);
                push_rhs(1.0);
                ++prog.counts.trace;

                // structure of the real embedding: equal diagonal blocks,
                // antisymmetric off-diagonal block
                for (int i = 0; i < q; ++i)
                    for (int j = i; j < q; ++j) {
                        sink.add(off + svec_index(i, j), 1.0);
                        sink.add(off + svec_index(q + i, q + j), -1.0);
                        push_rhs(0.0);
                        ++prog.counts.embedding;
                    }
                for (int i = 0; i < q; ++i)
                    for (int j = i; j < q; ++j) {
                        if (i == j) {
                            sink.add(off + svec_index(i, q + i), 1.0);
                        } else {
                            sink.add(off + svec_index(i, q + j), 1.0);
                            sink.add(off + svec_index(j, q + i), 1.0);
                        }
                        push_rhs(0.0);
                        ++prog.counts.embedding;
                    }
            }

            // objective: E_(u,v)~E tr(rho_uv h)
            const Operator h = edge_interaction(g.d);
            const Eigen::MatrixXd h_embed = real_embed(h.matrix);
            for (const Edge& e : g.edges) {
                const auto it = std::find(prog.pairs.begin(), prog.pairs.end(),
                                          std::make_pair(e.u, e.v));
                const long off = prog.block_offsets[static_cast<std::size_t>(
                                     it - prog.pairs.begin()) + 1];
                Eigen::VectorXd sv(svec_size(2 * q));
                mat_to_svec(h_embed, sv);
                for (long kcomp = 0; kcomp < sv.size(); ++kcomp)
                    if (sv(kcomp) != 0.0) prog.c(off + kcomp) += 0.5 * (e.w / W) * sv(kcomp);
            }
            prog.obj_offset = 0.0;
        } else {
            // ncSoS-2 objective: E[(d-1)/(2d) - (1/4) sum_a <L^a_u|L^a_v>]
            prog.obj_offset = 0.5 * (g.d - 1.0) / g.d;
            for (const Edge& e : g.edges)
                for (int a0 = 0; a0 < K; ++a0)
                    prog.c(svec_index(vidx(e.u, a0), vidx(e.v, a0))) -=
                        0.25 * (e.w / W) / kSqrt2;
        }
    }

    prog.A.resize(static_cast<long>(rhs.size()), dim);
    prog.A.setFromTriplets(sink.trips.begin(), sink.trips.end());
    prog.A.makeCompressed();
    prog.b = Eigen::Map<Eigen::VectorXd>(rhs.data(), static_cast<long>(rhs.size()));
    // stored c is the maximization direction; the solver negates it
    return prog;
}

namespace {

// feasible interior start: maximally mixed moments
Eigen::VectorXd warm_start(const MomentProgram& prog) {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(prog.total_dim);
    if (prog.mode == SdpMode::ProductState) {
        for (int u = 0; u < prog.n; ++u) x(svec_index(u, u)) = 1.0;
        for (std::size_t p = 0; p < prog.pairs.size(); ++p)
            x(prog.block_offsets[p + 1]) = 1.0 / (prog.d - 1.0);
    } else {
        for (long i = 0; i < prog.gram_side; ++i) x(svec_index(i, i)) = 2.0 / prog.d;
        const int q = prog.d * prog.d;
        for (std::size_t p = 0; p < prog.pairs.size(); ++p) {
            const long off = prog.block_offsets[p + 1];
            for (int i = 0; i < 2 * q; ++i) x(off + svec_index(i, i)) = 1.0 / q;
        }
    }
    return x;
}

struct ConeWorkspace {
    std::vector<Eigen::MatrixXd> mats;
    explicit ConeWorkspace(const std::vector<int>& sides) {
        for (int s : sides) mats.emplace_back(s, s);
    }
};

// project each block onto the PSD cone; returns the most negative eigenvalue
// encountered (before clipping)
double project_cone(const MomentProgram& prog, Eigen::VectorXd& x, ConeWorkspace& ws) {
    double min_eig = 0.0;
    for (std::size_t bi = 0; bi < prog.block_sides.size(); ++bi) {
        const int m = prog.block_sides[bi];
        const long off = prog.block_offsets[bi];
        if (m == 1) {
            min_eig = std::min(min_eig, x(off));
            x(off) = std::max(0.0, x(off));
            continue;
        }
        Eigen::MatrixXd& M = ws.mats[bi];
        svec_to_mat(x.segment(off, svec_size(m)), M);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M);
        min_eig = std::min(min_eig, es.eigenvalues().minCoeff());
        Eigen::VectorXd clipped = es.eigenvalues().cwiseMax(0.0);
        M = es.eigenvectors() * clipped.asDiagonal() * es.eigenvectors().transpose();
        mat_to_svec(M, x.segment(off, svec_size(m)));
    }
    return min_eig;
}

} // namespace

SDPSolution solve(const MomentProgram& prog, double tol, long max_iter) {
    if (!(tol > 0.0)) throw std::invalid_argument("solver tolerance must be positive");

    // prefactorized least-squares projection onto {x : Ax = b}
    const Eigen::SparseMatrix<double> Acol = prog.A;
    Eigen::SparseMatrix<double> AAt = (Acol * Acol.transpose()).pruned();
    {
        // tiny ridge keeps the factorization robust to near-redundant rows
        Eigen::SparseMatrix<double> ridge(AAt.rows(), AAt.cols());
        ridge.setIdentity();
        AAt += 1e-12 * ridge;
    }
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver;
    solver.compute(AAt);
    if (solver.info() != Eigen::Success)
        throw NumericError("failed to factorize the constraint normal matrix");

    const auto project_affine = [&](const Eigen::VectorXd& y) -> Eigen::VectorXd {
        return y - prog.A.transpose() * solver.solve(prog.A * y - prog.b);
    };

    const Eigen::VectorXd c = -prog.c; // minimize
    const double relax = 1.6;
    double sigma = 1.0;

    Eigen::VectorXd z = warm_start(prog);
    Eigen::VectorXd dual = Eigen::VectorXd::Zero(prog.total_dim);
    ConeWorkspace ws(prog.block_sides);

    const double bscale = std::max(1.0, prog.b.norm());
    double primal_resid = 0.0, dual_resid = 0.0, min_eig = 0.0;
    long iter = 0;
    bool converged = false;
    Eigen::VectorXd x;

    for (iter = 1; iter <= max_iter; ++iter) {
        x = project_affine(z - dual - c / sigma);
        const Eigen::VectorXd v = relax * x + (1.0 - relax) * z;
        Eigen::VectorXd z_new = v + dual;
        min_eig = project_cone(prog, z_new, ws);
        dual += v - z_new;

        primal_resid = (x - z_new).norm() / std::max({1.0, x.norm(), z_new.norm()});
        dual_resid = sigma * (z_new - z).norm() / std::max(1.0, sigma * dual.norm());
        z = std::move(z_new);

        if (primal_resid < tol && dual_resid < tol) {
            converged = true;
            break;
        }
        if (!std::isfinite(primal_resid) || primal_resid > 1e8)
            throw NumericError("SDP residuals diverged after " + std::to_string(iter) +
                               " iterations; the program appears infeasible");
        if (iter % 100 == 0) {
            if (primal_resid > 10.0 * dual_resid && sigma < 1e6) {
                sigma *= 2.0;
            } else if (dual_resid > 10.0 * primal_resid && sigma > 1e-6) {
                sigma *= 0.5;
            }
        }
    }

    if (!converged)
        throw NumericError("SDP solve did not converge after " + std::to_string(max_iter) +
                           " iterations (primal residual " + std::to_string(primal_resid) +
                           ", dual residual " + std::to_string(dual_resid) + ")");

    SDPSolution sol;
    sol.mode = prog.mode;
    sol.instance = prog.instance;
    sol.d = prog.d;
    sol.n = prog.n;
    sol.solve_tol = tol;
    sol.pairs = prog.pairs;
    sol.residuals.iterations = iter;
    sol.residuals.converged = converged;
    sol.residuals.max_equality_residual = (prog.A * z - prog.b).cwiseAbs().maxCoeff() / bscale;
    sol.residuals.min_block_eigenvalue = min_eig;
    sol.residuals.gap_estimate = std::abs(prog.c.dot(x) - prog.c.dot(z));
    sol.objective = prog.obj_offset + prog.c.dot(z);

    sol.gram.resize(prog.gram_side, prog.gram_side);
    svec_to_mat(z.segment(0, svec_size(prog.gram_side)), sol.gram);
    if (prog.mode == SdpMode::Basic) {
        const int q = prog.d * prog.d;
        Eigen::MatrixXd R(2 * q, 2 * q);
        for (std::size_t p = 0; p < prog.pairs.size(); ++p) {
            svec_to_mat(z.segment(prog.block_offsets[p + 1], svec_size(2 * q)), R);
            sol.rho_blocks.push_back(real_unembed(R));
        }
    }
    return sol;
}

Eigen::MatrixXd extract_vectors(const Eigen::MatrixXd& gram, double clip_tol) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (gram + gram.transpose()));
    const double min_eig = es.eigenvalues().minCoeff();
    if (min_eig < -clip_tol)
        throw NumericError("Gram matrix is not PSD within the clip tolerance (min eigenvalue " +
                           std::to_string(min_eig) + ")");
    Eigen::VectorXd lam = es.eigenvalues().cwiseMax(0.0);
    return lam.cwiseSqrt().asDiagonal() * es.eigenvectors().transpose();
}

StackedVectors stacked_vectors(const SDPSolution& sol) {
    if (sol.mode == SdpMode::ProductState)
        throw std::invalid_argument("stacked_vectors needs a Gram matrix over (vertex, index)");
    const int K = sol.d * sol.d - 1;
    const Eigen::MatrixXd V = extract_vectors(sol.gram);
    const double norm = std::sqrt((2.0 / sol.d) * K);

    StackedVectors sv;
    sv.d = sol.d;
    sv.n = sol.n;
    sv.vectors.reserve(static_cast<std::size_t>(sol.n));
    const long m = V.rows();
    for (int u = 0; u < sol.n; ++u) {
        Eigen::VectorXd stacked(static_cast<long>(K) * m);
        for (int a0 = 0; a0 < K; ++a0)
            stacked.segment(static_cast<long>(a0) * m, m) = V.col(static_cast<long>(u) * K + a0);
        stacked /= norm;
        const double drift = std::abs(stacked.norm() - 1.0);
        if (drift > std::max(1e-8, 1e3 * sol.solve_tol))
            throw NumericError("stacked vector norm drift " + std::to_string(drift) +
                               " exceeds the solver budget");
        sv.vectors.push_back(stacked / stacked.norm());
    }
    return sv;
}

RoundingInput rounding_input(const SDPSolution& sol) {
    RoundingInput in;
    in.d = sol.d;
    if (sol.mode == SdpMode::ProductState) {
        in.source = RoundingInput::Source::ProductSDP;
        const Eigen::MatrixXd V = extract_vectors(sol.gram);
        for (long u = 0; u < V.cols(); ++u) {
            Eigen::VectorXd v = V.col(u);
            const double norm = v.norm();
            if (norm < 1e-8)
                throw NumericError("product-SDP vector " + std::to_string(u) + " has zero norm");
            in.vectors.push_back(v / norm);
        }
    } else {
        in.source = RoundingInput::Source::BasicSDP;
        in.vectors = stacked_vectors(sol).vectors;
    }
    return in;
}

std::pair<Eigen::MatrixXd, double> clique_closed_form(int d, int n) {
    if (n < 2) throw std::invalid_argument("clique_closed_form needs n >= 2");
    if (d < 2) throw std::invalid_argument("clique_closed_form needs d >= 2");
    const int K = d * d - 1;
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(static_cast<long>(n) * K, static_cast<long>(n) * K);
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            for (int a0 = 0; a0 < K; ++a0) {
                const double val = (u == v) ? 2.0 / d : -2.0 / (d * (n - 1.0));
                M(static_cast<long>(u) * K + a0, static_cast<long>(v) * K + a0) = val;
            }
    const double value = (d - 1.0) * (d + n) / (2.0 * d * (n - 1.0));
    return {M, value};
}

VerifyReport verify_solution(const Instance& g, const SDPSolution& sol, double tol) {
    VerifyReport rep;
    rep.objective = sol.objective;
    const int K = g.d * g.d - 1;
    auto flag = [&](const std::string& msg) {
        rep.ok = false;
        rep.violations.push_back(msg);
    };

    if (sol.mode == SdpMode::ProductState) {
        double diag_resid = 0.0;
        rep.min_stacked_inner = std::numeric_limits<double>::infinity();
        for (int u = 0; u < g.n; ++u) {
            diag_resid = std::max(diag_resid, std::abs(sol.gram(u, u) - 1.0));
            for (int v = u + 1; v < g.n; ++v)
                rep.min_stacked_inner = std::min(rep.min_stacked_inner, sol.gram(u, v));
        }
        rep.max_gram_diag_residual = diag_resid;
        if (diag_resid > tol) flag("unit-diagonal constraint violated by " +
                                   std::to_string(diag_resid));
        if (rep.min_stacked_inner < -1.0 / (g.d - 1.0) - tol)
            flag("pair inner product below -1/(d-1): " +
                 std::to_string(rep.min_stacked_inner));
        return rep;
    }

    {
        // gram diagonal blocks (shared by the Basic and ncSoS-2 programs)
        rep.max_gram_diag_residual = 0.0;
        for (int u = 0; u < g.n; ++u)
            for (int a0 = 0; a0 < K; ++a0)
                for (int b0 = 0; b0 < K; ++b0) {
                    const double want = (a0 == b0) ? 2.0 / g.d : 0.0;
                    const double got =
                        sol.gram(static_cast<long>(u) * K + a0, static_cast<long>(u) * K + b0);
                    rep.max_gram_diag_residual =
                        std::max(rep.max_gram_diag_residual, std::abs(got - want));
                }
        if (rep.max_gram_diag_residual > tol)
            flag("gram diagonal-block constraint violated by " +
                 std::to_string(rep.max_gram_diag_residual));
    }

    if (sol.mode == SdpMode::Basic) {
        // the trivial bound and the symmetric-projector moment bound both
        // come from the two-body density blocks, so a bare ncSoS-2 solution
        // may legitimately break them
        if (sol.objective > 1.0 + tol)
            flag("objective exceeds the trivial bound: " + std::to_string(sol.objective));

        rep.min_pair_moment_sum = std::numeric_limits<double>::infinity();
        for (int u = 0; u < g.n; ++u)
            for (int v = u + 1; v < g.n; ++v) {
                double s = 0.0;
                for (int a0 = 0; a0 < K; ++a0)
                    s += sol.gram(static_cast<long>(u) * K + a0, static_cast<long>(v) * K + a0);
                rep.min_pair_moment_sum = std::min(rep.min_pair_moment_sum, s);
            }
        if (rep.min_pair_moment_sum < -2.0 * (g.d + 1.0) / g.d - tol)
            flag("pair moment sum below -2(d+1)/d: " + std::to_string(rep.min_pair_moment_sum));
    }

    if (sol.mode == SdpMode::Basic) {
        const GellMannBasis basis = gellmann_basis(g.d);
        rep.min_rho_eigenvalue = std::numeric_limits<double>::infinity();
        for (std::size_t p = 0; p < sol.rho_blocks.size(); ++p) {
            const Eigen::MatrixXcd& rho = sol.rho_blocks[p];
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
            rep.min_rho_eigenvalue = std::min(rep.min_rho_eigenvalue, es.eigenvalues().minCoeff());
            rep.max_rho_trace_error =
                std::max(rep.max_rho_trace_error, std::abs(rho.trace().real() - 1.0));
            const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(g.d, g.d);
            for (int a0 = 0; a0 < K; ++a0) {
                const double left =
                    (rho * Eigen::kroneckerProduct(basis.op(a0 + 1), eye)).trace().real();
                const double right =
                    (rho * Eigen::kroneckerProduct(eye, basis.op(a0 + 1))).trace().real();
                rep.max_one_body_moment =
                    std::max({rep.max_one_body_moment, std::abs(left), std::abs(right)});
            }
        }
        if (rep.min_rho_eigenvalue < -tol)
            flag("two-body block not PSD: min eigenvalue " +
                 std::to_string(rep.min_rho_eigenvalue));
        if (rep.max_rho_trace_error > tol)
            flag("two-body block trace error " + std::to_string(rep.max_rho_trace_error));
        if (rep.max_one_body_moment > tol)
            flag("one-body moment not eliminated: " + std::to_string(rep.max_one_body_moment));

        const StackedVectors sv = stacked_vectors(sol);
        rep.min_stacked_inner = std::numeric_limits<double>::infinity();
        for (int u = 0; u < g.n; ++u)
            for (int v = u + 1; v < g.n; ++v)
                rep.min_stacked_inner =
                    std::min(rep.min_stacked_inner, sv.vectors[static_cast<std::size_t>(u)].dot(
                                                        sv.vectors[static_cast<std::size_t>(v)]));
        if (rep.min_stacked_inner < -1.0 / (g.d - 1.0) - tol)
            flag("stacked inner product below -1/(d-1): " +
                 std::to_string(rep.min_stacked_inner));
    }
    return rep;
}

nlohmann::json solution_to_json(const SDPSolution& sol) {
    nlohmann::json j;
    j["mode"] = to_string(sol.mode);
    j["d"] = sol.d;
    j["n"] = sol.n;
    j["objective"] = sol.objective;
    j["solve_tol"] = sol.solve_tol;
    j["residuals"] = {{"max_equality_residual", sol.residuals.max_equality_residual},
                      {"min_block_eigenvalue", sol.residuals.min_block_eigenvalue},
                      {"gap_estimate", sol.residuals.gap_estimate},
                      {"iterations", sol.residuals.iterations},
                      {"converged", sol.residuals.converged}};
    nlohmann::json edges = nlohmann::json::array();
    for (const Edge& e : sol.instance.edges) edges.push_back({e.u, e.v, e.w});
    j["instance"] = {{"d", sol.instance.d}, {"n", sol.instance.n}, {"edges", edges}};
    j["gram_side"] = sol.gram.rows();
    std::vector<double> gram_flat;
    gram_flat.reserve(static_cast<std::size_t>(sol.gram.size()));
    for (long r = 0; r < sol.gram.rows(); ++r)
        for (long c = 0; c < sol.gram.cols(); ++c) gram_flat.push_back(sol.gram(r, c));
    j["gram"] = gram_flat;
    nlohmann::json blocks = nlohmann::json::array();
    for (std::size_t p = 0; p < sol.rho_blocks.size(); ++p) {
        const Eigen::MatrixXcd& rho = sol.rho_blocks[p];
        std::vector<double> re, im;
        for (long r = 0; r < rho.rows(); ++r)
            for (long c = 0; c < rho.cols(); ++c) {
                re.push_back(rho(r, c).real());
                im.push_back(rho(r, c).imag());
            }
        blocks.push_back({{"u", sol.pairs[p].first},
                          {"v", sol.pairs[p].second},
                          {"side", rho.rows()},
                          {"real", re},
                          {"imag", im}});
    }
    j["rho_blocks"] = blocks;
    // extracted SDP vectors, one row per Gram index
    const Eigen::MatrixXd V = extract_vectors(sol.gram);
    std::vector<std::vector<double>> vecs;
    for (long col = 0; col < V.cols(); ++col) {
        std::vector<double> v(static_cast<std::size_t>(V.rows()));
        for (long r = 0; r < V.rows(); ++r) v[static_cast<std::size_t>(r)] = V(r, col);
        vecs.push_back(std::move(v));
    }
    j["vectors"] = vecs;
    return j;
}

SDPSolution solution_from_json(const nlohmann::json& j) {
    SDPSolution sol;
    sol.mode = sdp_mode_from_string(j.at("mode").get<std::string>());
    sol.d = j.at("d").get<int>();
    sol.n = j.at("n").get<int>();
    sol.objective = j.at("objective").get<double>();
    sol.solve_tol = j.value("solve_tol", 1e-6);
    const auto& r = j.at("residuals");
    sol.residuals.max_equality_residual = r.at("max_equality_residual").get<double>();
    sol.residuals.min_block_eigenvalue = r.at("min_block_eigenvalue").get<double>();
    sol.residuals.gap_estimate = r.at("gap_estimate").get<double>();
    sol.residuals.iterations = r.at("iterations").get<long>();
    sol.residuals.converged = r.at("converged").get<bool>();
    const auto& inst = j.at("instance");
    std::vector<Edge> edges;
    for (const auto& e : inst.at("edges"))
        edges.push_back({e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<double>()});
    sol.instance = Instance::make(inst.at("d").get<int>(), inst.at("n").get<int>(), edges);
    const long side = j.at("gram_side").get<long>();
    const auto& flat = j.at("gram");
    sol.gram.resize(side, side);
    for (long rr = 0; rr < side; ++rr)
        for (long cc = 0; cc < side; ++cc)
            sol.gram(rr, cc) = flat.at(static_cast<std::size_t>(rr * side + cc)).get<double>();
    for (const auto& blk : j.at("rho_blocks")) {
        const long bside = blk.at("side").get<long>();
        Eigen::MatrixXcd rho(bside, bside);
        const auto& re = blk.at("real");
        const auto& im = blk.at("imag");
        for (long rr = 0; rr < bside; ++rr)
            for (long cc = 0; cc < bside; ++cc) {
                const std::size_t idx = static_cast<std::size_t>(rr * bside + cc);
                rho(rr, cc) = Complex(re.at(idx).get<double>(), im.at(idx).get<double>());
            }
        sol.pairs.emplace_back(blk.at("u").get<int>(), blk.at("v").get<int>());
        sol.rho_blocks.push_back(std::move(rho));
    }
    return sol;
}

} // namespace qmdc
