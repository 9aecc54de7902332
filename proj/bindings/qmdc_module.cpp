#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "qmdc/gap.hpp"
#include "qmdc/instance_io.hpp"
#include "qmdc/ratio_analysis.hpp"
#include "qmdc/relaxation.hpp"
#include "qmdc/rounding.hpp"
#include "qmdc/verify.hpp"

namespace py = pybind11;
using namespace qmdc;

namespace {

BlochConvention convention_from(const std::string& name) {
    if (name == "raw") return BlochConvention::Raw;
    if (name == "outsphere") return BlochConvention::OutsphereUnit;
    if (name == "insphere") return BlochConvention::InsphereUnit;
    throw std::invalid_argument("convention must be raw|outsphere|insphere");
}

DensityMatrix as_density(const Eigen::MatrixXcd& m, int d, int sites) {
    DensityMatrix rho{d, sites, m};
    rho.validate(1e-9, 1e-9, 1e-8);
    return rho;
}

py::dict estimate_dict(const EnergyEstimate& est) {
    py::dict out;
    out["mean"] = est.mean;
    out["stderr"] = est.std_error;
    out["samples"] = est.count;
    out["seed"] = est.seed;
    return out;
}

RoundingInput input_from_vectors(int d, const std::vector<Eigen::VectorXd>& vectors) {
    RoundingInput in;
    in.d = d;
    in.source = RoundingInput::Source::Synthetic;
    in.vectors = vectors;
    return in;
}

} // namespace

PYBIND11_MODULE(_qmdc, m) {
    m.doc() = "Quantum Max-d-Cut pipeline: qudit algebra, Hamiltonians, SDP "
              "relaxations, projection rounding, approximation ratios";

    // ----- instances -------------------------------------------------------
    py::class_<Edge>(m, "Edge")
        .def(py::init([](int u, int v, double w) { return Edge{u, v, w}; }), py::arg("u"),
             py::arg("v"), py::arg("w") = 1.0)
        .def_readonly("u", &Edge::u)
        .def_readonly("v", &Edge::v)
        .def_readonly("w", &Edge::w)
        .def("__repr__", [](const Edge& e) {
            return "Edge(" + std::to_string(e.u) + ", " + std::to_string(e.v) + ", " +
                   std::to_string(e.w) + ")";
        });

    py::class_<Instance>(m, "Instance")
        .def(py::init([](int d, int n, const std::vector<std::tuple<int, int, double>>& edges) {
                 std::vector<Edge> es;
                 es.reserve(edges.size());
                 for (const auto& [u, v, w] : edges) es.push_back({u, v, w});
                 return Instance::make(d, n, std::move(es));
             }),
             py::arg("d"), py::arg("n"), py::arg("edges"))
        .def_readonly("d", &Instance::d)
        .def_readonly("n", &Instance::n)
        .def_readonly("edges", &Instance::edges)
        .def("total_weight", &Instance::total_weight)
        .def("to_text",
             [](const Instance& g) {
                 std::ostringstream os;
                 write_instance(g, os);
                 return os.str();
             })
        .def_static("from_text", &parse_instance_string)
        .def("__repr__", [](const Instance& g) {
            return "Instance(d=" + std::to_string(g.d) + ", n=" + std::to_string(g.n) + ", " +
                   std::to_string(g.edges.size()) + " edges)";
        });

    m.def("complete_graph", &complete_graph, py::arg("d"), py::arg("n"), py::arg("weight") = 1.0);
    m.def("cycle_graph", &cycle_graph, py::arg("d"), py::arg("n"), py::arg("weight") = 1.0);
    m.def("path_graph", &path_graph, py::arg("d"), py::arg("n"), py::arg("weight") = 1.0);
    m.def("star_graph", &star_graph, py::arg("d"), py::arg("n"), py::arg("weight") = 1.0);
    m.def("gnp_graph", &gnp_graph, py::arg("d"), py::arg("n"), py::arg("p"), py::arg("seed"),
          py::arg("weight") = 1.0);

    // ----- qudit algebra ---------------------------------------------------
    m.def(
        "gellmann_matrices",
        [](int d) {
            const GellMannBasis b = gellmann_basis(d);
            return b.matrices;
        },
        py::arg("d"), "The d^2-1 generalized Gell-Mann matrices in single-index order");
    m.def(
        "weyl_matrices",
        [](int d) {
            const WeylBasis w = weyl_basis(d);
            return w.operators;
        },
        py::arg("d"), "Clock-and-shift operators U_nm flattened row-major over (n, m)");
    m.def(
        "bloch_encode",
        [](const Eigen::MatrixXcd& rho, const std::string& convention) {
            return bloch_encode(as_density(rho, static_cast<int>(rho.rows()), 1),
                                convention_from(convention))
                .coords;
        },
        py::arg("rho"), py::arg("convention") = "raw");
    m.def(
        "bloch_decode",
        [](const Eigen::VectorXd& coords, int d, const std::string& convention) {
            BlochVector b;
            b.d = d;
            b.coords = coords;
            b.convention = convention_from(convention);
            return bloch_decode(b);
        },
        py::arg("coords"), py::arg("d"), py::arg("convention") = "raw");
    m.def(
        "purity",
        [](const Eigen::MatrixXcd& rho, int d, int sites) {
            return purity(as_density(rho, d, sites));
        },
        py::arg("rho"), py::arg("d"), py::arg("sites") = 1);
    m.def(
        "moment",
        [](const Eigen::MatrixXcd& rho, const std::vector<int>& indices, int d) {
            return moment(as_density(rho, d, static_cast<int>(indices.size())), indices);
        },
        py::arg("rho"), py::arg("indices"), py::arg("d"));
    m.def(
        "weyl_symmetrize",
        [](const Eigen::MatrixXcd& rho, int d, int sites) {
            return weyl_symmetrize(as_density(rho, d, sites)).matrix;
        },
        py::arg("rho"), py::arg("d"), py::arg("sites"));

    // ----- Hamiltonians ----------------------------------------------------
    m.def("edge_interaction", [](int d) { return edge_interaction(d).matrix; }, py::arg("d"));
    m.def("heisenberg_interaction", [](int d) { return heisenberg_interaction(d).matrix; },
          py::arg("d"));
    m.def("maxdcut_interaction", [](int d) { return maxdcut_interaction(d).matrix; },
          py::arg("d"));
    m.def(
        "build_hamiltonian", [](const Instance& g) { return build_hamiltonian(g).matrix; },
        py::arg("instance"));
    m.def(
        "exact_value",
        [](const Instance& g) {
            const auto [value, vec] = lambda_max(build_hamiltonian(g));
            return py::make_tuple(value, vec.amplitudes);
        },
        py::arg("instance"), "lambda_max of H_G with its eigenvector");
    m.def(
        "antisymmetric_state", [](int d) { return antisymmetric_state(d).amplitudes; },
        py::arg("d"));
    m.def(
        "product_state_energy",
        [](const Instance& g, const std::vector<Eigen::MatrixXcd>& factors) {
            ProductState ps;
            for (const auto& f : factors) ps.factors.push_back(as_density(f, g.d, 1));
            return product_state_energy(g, ps);
        },
        py::arg("instance"), py::arg("factors"));
    m.def(
        "baselines",
        [](int d) {
            const BaselineValues b = baseline_values(d);
            py::dict out;
            out["pure_prod_cap"] = b.pure_prod_cap;
            out["mixed_prod_edge_cap"] = b.mixed_prod_edge_cap;
            out["maximally_mixed"] = b.maximally_mixed;
            out["triangle_sos_bound"] = b.triangle_sos_bound;
            return out;
        },
        py::arg("d"));

    // ----- SDP relaxations -------------------------------------------------
    py::class_<SDPSolution>(m, "SDPSolution")
        .def_property_readonly("mode",
                               [](const SDPSolution& s) { return to_string(s.mode); })
        .def_readonly("d", &SDPSolution::d)
        .def_readonly("n", &SDPSolution::n)
        .def_readonly("objective", &SDPSolution::objective)
        .def_readonly("gram", &SDPSolution::gram)
        .def_readonly("rho_blocks", &SDPSolution::rho_blocks)
        .def_readonly("pairs", &SDPSolution::pairs)
        .def_property_readonly("iterations",
                               [](const SDPSolution& s) { return s.residuals.iterations; })
        .def_property_readonly(
            "max_equality_residual",
            [](const SDPSolution& s) { return s.residuals.max_equality_residual; })
        .def("stacked_vectors",
             [](const SDPSolution& s) { return stacked_vectors(s).vectors; })
        .def("rounding_vectors",
             [](const SDPSolution& s) { return rounding_input(s).vectors; })
        .def("to_json", [](const SDPSolution& s) { return solution_to_json(s).dump(); })
        .def("__repr__", [](const SDPSolution& s) {
            return "SDPSolution(mode=" + to_string(s.mode) +
                   ", objective=" + std::to_string(s.objective) + ")";
        });

    m.def(
        "solve_sdp",
        [](const Instance& g, const std::string& mode, double tol, long max_iter,
           bool all_pairs) {
            BuildOptions opts;
            opts.all_pairs = all_pairs;
            return solve(build_program(g, sdp_mode_from_string(mode), opts), tol, max_iter);
        },
        py::arg("instance"), py::arg("mode") = "basic", py::arg("tol") = 1e-6,
        py::arg("max_iter") = 200000, py::arg("all_pairs") = true);
    m.def("clique_closed_form", &clique_closed_form, py::arg("d"), py::arg("n"));
    m.def(
        "verify_solution",
        [](const Instance& g, const SDPSolution& sol, double tol) {
            const VerifyReport rep = verify_solution(g, sol, tol);
            py::dict out;
            out["ok"] = rep.ok;
            out["violations"] = rep.violations;
            out["objective"] = rep.objective;
            out["min_rho_eigenvalue"] = rep.min_rho_eigenvalue;
            out["min_stacked_inner"] = rep.min_stacked_inner;
            return out;
        },
        py::arg("instance"), py::arg("solution"), py::arg("tol") = 1e-6);

    // ----- rounding ---------------------------------------------------------
    m.def(
        "project_round",
        [](int d, const std::vector<Eigen::VectorXd>& vectors, std::uint64_t seed) {
            return project_round(input_from_vectors(d, vectors), seed).bloch;
        },
        py::arg("d"), py::arg("vectors"), py::arg("seed"));
    m.def(
        "rounded_states",
        [](int d, const std::vector<Eigen::VectorXd>& vectors, std::uint64_t seed) {
            const ProductState ps =
                assignment_to_states(project_round(input_from_vectors(d, vectors), seed));
            std::vector<Eigen::MatrixXcd> out;
            for (const auto& f : ps.factors) out.push_back(f.matrix);
            return out;
        },
        py::arg("d"), py::arg("vectors"), py::arg("seed"));
    m.def(
        "estimate_energy",
        [](const Instance& g, const std::vector<Eigen::VectorXd>& vectors, long samples,
           std::uint64_t seed) {
            return estimate_dict(estimate_energy(g, input_from_vectors(g.d, vectors), samples,
                                                 seed));
        },
        py::arg("instance"), py::arg("vectors"), py::arg("samples"), py::arg("seed"));
    m.def(
        "rounded_energy_closed_form",
        [](const Instance& g, const std::vector<Eigen::VectorXd>& vectors) {
            return rounded_energy_closed_form(g, input_from_vectors(g.d, vectors), fstar);
        },
        py::arg("instance"), py::arg("vectors"));
    m.def(
        "mc_fstar",
        [](int k, double gamma, long samples, std::uint64_t seed) {
            return estimate_dict(mc_fstar(k, gamma, samples, seed));
        },
        py::arg("k"), py::arg("gamma"), py::arg("samples"), py::arg("seed"));

    // ----- ratios ------------------------------------------------------------
    m.def("log_gamma", &log_gamma, py::arg("x"));
    m.def("gamma_ratio_sq", &gamma_ratio_sq, py::arg("k"));
    m.def("hyp2f1_half", &hyp2f1_half, py::arg("c"), py::arg("z"));
    m.def("fstar", &fstar, py::arg("k"), py::arg("gamma"));
    m.def(
        "alpha",
        [](int d) {
            const AlphaResult a = alpha_ratio(d);
            py::dict out;
            out["alpha"] = a.alpha;
            out["gamma_star"] = a.gamma_star;
            out["closed_form"] = a.closed_form;
            return out;
        },
        py::arg("d"));
    m.def("beta", &beta_ratio, py::arg("d"));
    m.def(
        "ratio_row",
        [](int d) {
            const RatioReport r = ratio_report(d);
            py::dict out;
            out["d"] = r.d;
            out["alpha"] = r.alpha;
            out["gamma_star"] = r.gamma_star;
            out["beta"] = r.beta;
            out["baseline"] = r.baseline;
            out["mixed_cap"] = r.mixed_cap;
            out["method"] = r.method;
            return out;
        },
        py::arg("d"));
    m.def(
        "gap_experiment",
        [](int d, long samples, std::uint64_t seed, double tol) {
            const GapReport rep = gap_experiment(d, samples, seed, tol);
            py::dict out;
            out["d"] = rep.d;
            out["sdp_objective"] = rep.sdp_objective;
            out["min_stacked_inner"] = rep.min_stacked_inner;
            out["max_stacked_inner"] = rep.max_stacked_inner;
            out["antisymmetric_energy"] = rep.antisym_energy;
            out["mean"] = rep.estimate.mean;
            out["stderr"] = rep.estimate.std_error;
            out["closed_form"] = rep.closed_form_energy;
            out["alpha"] = rep.alpha;
            out["gap"] = rep.gap;
            out["within_4_stderr"] = rep.within_4_stderr;
            return out;
        },
        py::arg("d"), py::arg("samples") = 10000, py::arg("seed") = 1, py::arg("tol") = 1e-6);
}
