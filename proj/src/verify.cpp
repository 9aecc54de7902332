#include "qmdc/verify.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <sstream>
#include <unsupported/Eigen/KroneckerProduct>

#include "qmdc/gap.hpp"
#include "qmdc/qudit_algebra.hpp"
#include "qmdc/ratio_analysis.hpp"
#include "qmdc/relaxation.hpp"
#include "qmdc/rng.hpp"
#include "qmdc/rounding.hpp"

namespace qmdc {

namespace {

struct Suite {
    std::vector<CheckResult> results;

    void check(const std::string& name, bool pass, const std::string& detail = "") {
        results.push_back({name, pass, detail});
    }

    // worst-value helper: pass iff |worst| below bound
    void bound(const std::string& name, double worst, double limit) {
        std::ostringstream os;
        os << "worst " << worst << ", limit " << limit;
        check(name, worst <= limit, os.str());
    }
};

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

void algebra_checks(Suite& s, const VerifyOptions& opts) {
    double worst_orth = 0.0, worst_prod = 0.0;
    for (int d : {2, 3, 4, 5}) {
        const GellMannBasis basis = gellmann_basis(d);
        for (int a = 1; a <= basis.count(); ++a) {
            worst_orth = std::max(worst_orth, std::abs(basis.op(a).trace()));
            for (int b = 1; b <= basis.count(); ++b) {
                const double want = a == b ? 2.0 : 0.0;
                worst_orth = std::max(
                    worst_orth, std::abs((basis.op(a) * basis.op(b)).trace() - Complex(want, 0)));
            }
        }
        const StructureConstants sc = structure_constants(basis);
        for (int a = 1; a <= basis.count(); ++a)
            for (int b = 1; b <= basis.count(); ++b)
                worst_prod = std::max(worst_prod, (basis.op(a) * basis.op(b) -
                                                   sc.reconstruct_product(basis, a, b))
                                                      .norm());
    }
    s.bound("algebra/ggm-orthogonality", worst_orth, 1e-12);
    s.bound("algebra/product-property", worst_prod, 1e-10);

    double worst_round = 0.0;
    for (int d : {2, 3, 4, 5})
        for (std::uint64_t t = 0; t < 50; ++t) {
            const DensityMatrix rho = random_density_matrix(d, opts.seed + t * 31 + d);
            for (auto conv : {BlochConvention::Raw, BlochConvention::OutsphereUnit,
                              BlochConvention::InsphereUnit}) {
                const BlochVector b = bloch_encode(rho, conv);
                worst_round =
                    std::max(worst_round, (bloch_decode(b) - rho.matrix).cwiseAbs().maxCoeff());
            }
        }
    s.bound("algebra/bloch-roundtrip", worst_round, 1e-12);

    bool outsphere_ok = true;
    double insphere_min_eig = 0.0;
    for (int d : {2, 3, 4, 5}) {
        const double radius = outsphere_radius(d);
        for (long t = 0; t < opts.random_trials; ++t) {
            const DensityMatrix rho =
                random_density_matrix(d, opts.seed + static_cast<std::uint64_t>(t) * 7 + d);
            const double norm = bloch_encode(rho, BlochConvention::Raw).coords.norm();
            if (norm > radius + 1e-10) outsphere_ok = false;
            // norm meets the radius iff the state is pure
            if (std::abs(norm - radius) <= 1e-10 && std::abs(purity(rho) - 1.0) > 1e-8)
                outsphere_ok = false;
        }
        for (std::uint64_t t = 0; t < 60; ++t) {
            const double norm =
                bloch_encode(random_pure_state(d, opts.seed + t + d), BlochConvention::Raw)
                    .coords.norm();
            if (std::abs(norm - radius) > 1e-10) outsphere_ok = false;
        }
        GaussianStream g(splitmix64(opts.seed + d));
        for (long t = 0; t < opts.random_trials; ++t) {
            Eigen::VectorXd v(d * d - 1);
            for (long i = 0; i < v.size(); ++i) v(i) = g.next();
            v.normalize();
            const Eigen::MatrixXcd rho =
                bloch_decode(BlochVector{d, v, BlochConvention::InsphereUnit});
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
            insphere_min_eig = std::min(insphere_min_eig, es.eigenvalues().minCoeff());
        }
    }
    s.check("algebra/outsphere-bound", outsphere_ok,
            std::to_string(4 * opts.random_trials) + " random states");
    s.bound("algebra/insphere-psd", -insphere_min_eig, 1e-10);

    double worst_rel = 0.0;
    for (int d : {2, 3, 4, 5})
        for (std::uint64_t t = 0; t < 200; ++t) {
            const DensityMatrix a = random_density_matrix(d, opts.seed + 2 * t);
            const DensityMatrix b = random_density_matrix(d, opts.seed + 2 * t + 1);
            const double ip = bloch_encode(a, BlochConvention::Raw)
                                  .coords.dot(bloch_encode(b, BlochConvention::Raw).coords);
            worst_rel = std::max(worst_rel, std::abs(hs_inner(a, b) - 1.0 / d - 2.0 * ip));
        }
    s.bound("algebra/hs-inner-relation", worst_rel, 1e-12);

    double worst_deg1 = 0.0, worst_energy = 0.0;
    for (int d : {2, 3})
        for (int sites : {2, 3})
            for (std::uint64_t t = 0; t < 5; ++t) {
                const DensityMatrix rho =
                    random_density_matrix(d, opts.seed + t + 11 * sites + d, sites);
                const DensityMatrix sym = weyl_symmetrize(rho);
                for (int site = 0; site < sites; ++site)
                    for (int a = 1; a <= d * d - 1; ++a) {
                        std::vector<int> idx(static_cast<std::size_t>(sites), 0);
                        idx[static_cast<std::size_t>(site)] = a;
                        worst_deg1 = std::max(worst_deg1, std::abs(moment(sym, idx)));
                    }
                const Operator h = edge_interaction(d);
                Eigen::MatrixXcd H = h.matrix;
                for (int extra = 2; extra < sites; ++extra)
                    H = Eigen::kroneckerProduct(H, Eigen::MatrixXcd::Identity(d, d)).eval();
                worst_energy = std::max(
                    worst_energy, std::abs(((rho.matrix - sym.matrix) * H).trace().real()));
            }
    s.bound("algebra/weyl-degree-one-kill", worst_deg1, 1e-12);
    s.bound("algebra/weyl-energy-preserved", worst_energy, 1e-12);
}

void hamiltonian_checks(Suite& s, const VerifyOptions& opts) {
    double worst_proj = 0.0;
    bool rank_ok = true;
    for (int d : {2, 3, 4, 5}) {
        const Operator h = edge_interaction(d); // both constructions asserted inside
        worst_proj = std::max(worst_proj, (h.matrix * h.matrix - h.matrix).norm());
        rank_ok = rank_ok &&
                  std::abs(h.matrix.trace().real() - d * (d - 1) / 2.0) < 1e-10;
        maxdcut_interaction(d);
        sym_projector(d);
    }
    s.bound("hamiltonian/h-is-projector", worst_proj, 1e-10);
    s.check("hamiltonian/h-rank", rank_ok);

    bool spectrum_ok = true;
    for (const Instance& g : {complete_graph(2, 4), cycle_graph(2, 5), path_graph(3, 4),
                              star_graph(3, 4), complete_graph(4, 3)}) {
        const double lam = lambda_max(build_hamiltonian(g)).first;
        if (lam < -1e-10 || lam > 1.0 + 1e-10) spectrum_ok = false;
    }
    s.check("hamiltonian/value-in-unit-interval", spectrum_ok);

    bool edge_ok = true;
    for (int d : {2, 3, 4}) {
        const StateVector psi = antisymmetric_state(d);
        const Operator h = edge_interaction(d);
        for (int u = 0; u < d; ++u)
            for (int v = u + 1; v < d; ++v)
                if (std::abs(edge_energy(psi, h, u, v) - 1.0) > 1e-10) edge_ok = false;
    }
    s.check("hamiltonian/antisymmetric-per-edge-energy", edge_ok);

    bool route_ok = true;
    for (int d : {2, 3})
        for (std::uint64_t t = 0; t < 20; ++t) {
            const Instance g = cycle_graph(d, 4);
            ProductState ps;
            for (int v = 0; v < 4; ++v)
                ps.factors.push_back(random_density_matrix(d, opts.seed + t * 5 + v));
            try {
                product_state_energy(g, ps); // route agreement asserted inside
            } catch (const NumericError&) {
                route_ok = false;
            }
        }
    s.check("hamiltonian/product-energy-routes-agree", route_ok);

    const double lam3 = lambda_max(build_hamiltonian(complete_graph(3, 3))).first;
    const double bound3 = baseline_values(3).triangle_sos_bound;
    s.check("hamiltonian/odd-degree-gap", std::abs(lam3 - 1.0) < 1e-8 && lam3 > bound3,
            "lambda_max(K_3)=" + fmt(lam3) + " vs (5d-2)/(6d)=" + fmt(bound3));
    const StateVector psi3 = antisymmetric_state(3);
    const DensityMatrix rho3{3, 3, psi3.amplitudes * psi3.amplitudes.adjoint()};
    double best_moment = 0.0;
    for (int a = 1; a <= 8 && best_moment <= 1e-6; ++a)
        for (int b = 1; b <= 8 && best_moment <= 1e-6; ++b)
            for (int c = 1; c <= 8 && best_moment <= 1e-6; ++c)
                best_moment = std::max(best_moment, std::abs(moment(rho3, {a, b, c})));
    s.check("hamiltonian/odd-degree-moment-nonzero", best_moment > 1e-6,
            "max |moment| = " + fmt(best_moment));
}

void relaxation_checks(Suite& s, const VerifyOptions& opts) {
    const double tol = opts.sdp_tol;
    bool relax_ok = true, bound_ok = true;
    std::string detail;
    for (int d : {2, 3}) {
        std::vector<Instance> batch = {complete_graph(d, 3), complete_graph(d, 4),
                                       complete_graph(d, 5), path_graph(d, 4), cycle_graph(d, 4),
                                       cycle_graph(d, 5)};
        for (const Instance& g : batch) {
            const SDPSolution sol = solve(build_program(g, SdpMode::Basic), tol);
            const double exact = lambda_max(build_hamiltonian(g)).first;
            if (sol.objective < exact - 1e-4) {
                relax_ok = false;
                detail = "d=" + std::to_string(d) + " n=" + std::to_string(g.n) + " sdp " +
                         fmt(sol.objective) + " < exact " + fmt(exact);
            }
            if (sol.objective > 1.0 + 1e-6) bound_ok = false;
        }
    }
    s.check("relaxation/dominates-exact-value", relax_ok, detail);
    s.check("relaxation/trivial-upper-bound", bound_ok);

    double worst_clique = 0.0;
    bool overshoot_seen = false;
    for (int d : {3, 4, 5})
        for (int n = 2; n <= d + 1; ++n) {
            const SDPSolution sol =
                solve(build_program(complete_graph(d, n), SdpMode::NcSos2Only), tol);
            const double want = clique_closed_form(d, n).second;
            worst_clique = std::max(worst_clique, std::abs(sol.objective - want));
            if (n < d && sol.objective > 1.0) overshoot_seen = true;
        }
    s.bound("relaxation/ncsos2-clique-formula", worst_clique, 1e-4);
    s.check("relaxation/ncsos2-overshoots-above-one", overshoot_seen);

    const SDPSolution edge_sol = solve(
        build_program(Instance::make(4, 2, {{0, 1, 1.0}}), SdpMode::ProductState), 1e-8);
    s.bound("relaxation/product-sdp-edge-value", std::abs(edge_sol.objective - 0.5), 1e-6);
    bool dominates = true;
    for (const Instance& g : {complete_graph(3, 3), cycle_graph(3, 4)}) {
        const SDPSolution sol = solve(build_program(g, SdpMode::ProductState), 1e-7);
        if (sol.objective < best_pure_product_energy(g, 4, 25, opts.seed) - 1e-5)
            dominates = false;
    }
    s.check("relaxation/product-sdp-dominates-search", dominates);

    const MomentProgram prog = build_program(complete_graph(3, 3), SdpMode::Basic);
    const SDPSolution a = solve(prog, tol);
    const SDPSolution b = solve(prog, tol);
    s.check("relaxation/deterministic", a.objective == b.objective &&
                                            (a.gram - b.gram).cwiseAbs().maxCoeff() == 0.0);
}

void rounding_checks(Suite& s, const VerifyOptions& opts) {
    bool norms_ok = true, purity_ok = true;
    for (int d : {2, 3, 4, 5}) {
        RoundingInput in;
        in.d = d;
        Eigen::VectorXd u = Eigen::VectorXd::Zero(4), v = Eigen::VectorXd::Zero(4);
        u(0) = 1.0;
        v(0) = -1.0 / (d - 1.0);
        v(1) = std::sqrt(1.0 - v(0) * v(0));
        in.vectors = {u, v};
        for (std::uint64_t seed = 0; seed < 25; ++seed) {
            const RoundedAssignment ra = project_round(in, opts.seed + seed);
            for (const auto& blochvec : ra.bloch)
                if (std::abs(blochvec.norm() - 1.0) > 1e-10) norms_ok = false;
            for (const DensityMatrix& rho : assignment_to_states(ra).factors)
                if (std::abs(purity(rho) - 1.0 / (d - 1.0)) > 1e-10) purity_ok = false;
        }
    }
    s.check("rounding/unit-bloch-outputs", norms_ok);
    s.check("rounding/insphere-purity", purity_ok);

    {
        RoundingInput in;
        in.d = 3;
        Eigen::VectorXd u = Eigen::VectorXd::Zero(3), v = Eigen::VectorXd::Zero(3);
        u(0) = 1.0;
        v(0) = -0.5;
        v(1) = std::sqrt(0.75);
        in.vectors = {u, v};
        const RoundedAssignment base = project_round(in, opts.seed);
        in.vectors[1] = -in.vectors[1];
        const RoundedAssignment flip = project_round(in, opts.seed);
        s.check("rounding/sign-equivariance",
                (base.bloch[1] + flip.bloch[1]).norm() < 1e-14 &&
                    (base.bloch[0] - flip.bloch[0]).norm() < 1e-14);
    }

    double worst_sigma = 0.0;
    for (int k : {1, 3, 8, 15, 24}) {
        std::vector<double> gammas = {-1.0, -0.5, 0.0, 0.5};
        const int d_for_k = static_cast<int>(std::lround(std::sqrt(k + 1.0)));
        if (d_for_k * d_for_k == k + 1 && d_for_k >= 2)
            gammas.push_back(-1.0 / (d_for_k - 1.0)); // the bad angle for this k
        for (double gamma : gammas) {
            const EnergyEstimate est = mc_fstar(k, gamma, opts.mc_samples, opts.seed + k);
            const double se = std::max(est.std_error, 1e-12);
            worst_sigma = std::max(worst_sigma, std::abs(est.mean - fstar(k, gamma)) / se);
        }
    }
    s.check("rounding/mc-fstar-matches-analytic", worst_sigma <= 4.0,
            "worst deviation " + fmt(worst_sigma) + " stderr");

    // estimator consistency on a random instance
    const Instance g = gnp_graph(3, 5, 0.7, opts.seed);
    const SDPSolution sol = solve(build_program(g, SdpMode::Basic), opts.sdp_tol);
    RoundingInput in;
    in.d = g.d;
    in.source = RoundingInput::Source::BasicSDP;
    in.vectors = stacked_vectors(sol).vectors;
    const EnergyEstimate est = estimate_energy(g, in, std::min<long>(opts.mc_samples, 20000),
                                               opts.seed + 1);
    const double closed = rounded_energy_closed_form(g, in, fstar);
    s.check("rounding/estimator-consistency",
            std::abs(est.mean - closed) <= 4.0 * est.std_error,
            "mean " + fmt(est.mean) + " vs closed form " + fmt(closed) + " (stderr " +
                fmt(est.std_error) + ")");

    // rotation invariance in distribution
    {
        RoundingInput in2;
        in2.d = 3;
        Eigen::VectorXd u = Eigen::VectorXd::Zero(6), v = Eigen::VectorXd::Zero(6);
        u(0) = 1.0;
        v(0) = -0.5;
        v(1) = std::sqrt(0.75);
        in2.vectors = {u, v};
        Eigen::VectorXd w(6);
        w << 0.5, -1, 2, 0.25, -0.75, 1.5;
        w.normalize();
        const Eigen::MatrixXd Q = Eigen::MatrixXd::Identity(6, 6) - 2.0 * w * w.transpose();
        RoundingInput rot = in2;
        for (auto& vec : rot.vectors) vec = (Q * vec).eval();
        const Instance edge = Instance::make(3, 2, {{0, 1, 1.0}});
        const long n = std::min<long>(opts.mc_samples, 20000);
        const EnergyEstimate ea = estimate_energy(edge, in2, n, opts.seed + 2);
        const EnergyEstimate eb = estimate_energy(edge, rot, n, opts.seed + 3);
        const double se = std::hypot(ea.std_error, eb.std_error);
        s.check("rounding/rotation-invariance", std::abs(ea.mean - eb.mean) <= 4.0 * se,
                "means " + fmt(ea.mean) + " / " + fmt(eb.mean));
    }
}

void ratio_checks(Suite& s, const VerifyOptions&) {
    bool odd_ok = true, bound_ok = true, monotone_ok = true;
    for (int k : {3, 8, 15, 24}) {
        double prev = -2.0;
        for (int i = 0; i <= 1000; ++i) {
            const double gamma = -1.0 + 2.0 * i / 1000.0;
            const double v = fstar(k, gamma);
            if (std::abs(v + fstar(k, -gamma)) > 1e-14) odd_ok = false;
            if (std::abs(v) > 1.0 + 1e-12) bound_ok = false;
            if (v < prev - 1e-12) monotone_ok = false;
            prev = v;
        }
        if (std::abs(fstar(k, 1.0) - 1.0) > 1e-12) bound_ok = false;
    }
    s.check("ratio/fstar-odd", odd_ok);
    s.check("ratio/fstar-bounded-and-monotone", bound_ok && monotone_ok);

    const struct {
        int d;
        double alpha;
    } table[] = {{2, 0.498767}, {3, 0.372996},  {4, 0.388478},
                 {5, 0.406129}, {10, 0.450614}, {100, 0.495001}};
    double worst_alpha = 0.0;
    for (const auto& row : table)
        worst_alpha = std::max(worst_alpha, std::abs(alpha_ratio(row.d).alpha - row.alpha));
    s.bound("ratio/table-alpha", worst_alpha, 1e-5);
    s.bound("ratio/beta2", std::abs(beta_ratio(2) - 0.956337), 1e-5);

    double worst_beta = 0.0;
    for (int d = 3; d <= 50; ++d)
        worst_beta = std::max(worst_beta, std::abs(beta_ratio(d) - 2.0 * alpha_ratio(d).alpha));
    s.bound("ratio/beta-doubling", worst_beta, 1e-8);

    bool beats = true;
    for (int d = 2; d <= 200; ++d)
        if (alpha_ratio(d).alpha <= 0.5 * (1.0 - 1.0 / d)) beats = false;
    s.check("ratio/alpha-beats-baseline", beats);

    double worst_grid = 0.0;
    for (int d = 3; d <= 10; ++d) {
        const double numeric =
            minimize_on_grid([d](double g) { return alpha_objective(d, g); }, -1.0 / (d - 1.0),
                             1.0 / (d + 1.0), 10000, nullptr);
        worst_grid = std::max(worst_grid, std::abs(numeric - alpha_ratio(d).alpha));
    }
    s.bound("ratio/closed-form-vs-grid", worst_grid, 1e-7);

    const BadAngleScan scan3 = bad_angle_scan(3, 10000);
    s.check("ratio/bad-angle-monotone-d3", scan3.alpha_monotone && scan3.beta_monotone,
            "min derivatives " + fmt(scan3.alpha_min_derivative) + " / " +
                fmt(scan3.beta_min_derivative));
    const AsymptoticReport rep = asymptotic_check({10, 20, 50, 100, 200});
    s.check("ratio/asymptotic-band", rep.in_band && rep.tail_decreasing);
}

} // namespace

std::vector<CheckResult> run_verification_suite(const VerifyOptions& opts) {
    Suite s;
    if (opts.include_algebra) algebra_checks(s, opts);
    if (opts.include_hamiltonian) hamiltonian_checks(s, opts);
    if (opts.include_sdp) relaxation_checks(s, opts);
    if (opts.include_rounding) rounding_checks(s, opts);
    if (opts.include_ratio) ratio_checks(s, opts);
    return s.results;
}

} // namespace qmdc
