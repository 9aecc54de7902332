// qmdc: generate instances, compute exact values, solve the SDP relaxations,
// round, and reproduce the approximation-ratio tables.
//
// Exit codes: 0 success, 1 usage error, 2 numeric failure, 3 verification
// failure.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "qmdc/gap.hpp"
#include "qmdc/instance_io.hpp"
#include "qmdc/ratio_analysis.hpp"
#include "qmdc/relaxation.hpp"
#include "qmdc/rounding.hpp"
#include "qmdc/verify.hpp"

namespace {

using nlohmann::json;
using namespace qmdc;

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        if (text.empty() || text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw std::invalid_argument("cannot open output file: " + out_path);
    out << text;
    if (text.empty() || text.back() != '\n') out << '\n';
}

Instance load_with_override(const std::string& path, int d_override) {
    Instance g = load_instance(path);
    if (d_override > 0 && d_override != g.d) {
        std::vector<Edge> edges = g.edges;
        g = Instance::make(d_override, g.n, std::move(edges));
    }
    return g;
}

json instance_json(const Instance& g) {
    json edges = json::array();
    for (const Edge& e : g.edges) edges.push_back({e.u, e.v, e.w});
    return {{"d", g.d}, {"n", g.n}, {"edges", edges}};
}

int run(int argc, char** argv) {
    CLI::App app{"Quantum Max-d-Cut pipeline"};
    app.require_subcommand(1);

    // gen -----------------------------------------------------------------
    auto* gen = app.add_subcommand("gen", "write an instance file");
    std::vector<std::string> gen_spec;
    int gen_d = 2;
    std::string gen_out;
    gen->add_option("spec", gen_spec,
                    "generator spec: complete N | cycle N | path N | star N | gnp N P SEED")
        ->required()
        ->expected(-1);
    gen->add_option("-d,--dimension", gen_d, "qudit dimension");
    gen->add_option("--out", gen_out, "output path (default stdout)");

    // exact ---------------------------------------------------------------
    auto* exact = app.add_subcommand("exact", "dense exact value of an instance");
    std::string exact_path, exact_out, exact_format = "json";
    int exact_d = 0;
    exact->add_option("instance", exact_path, "instance file")->required();
    exact->add_option("-d,--dimension", exact_d, "override the instance dimension");
    exact->add_option("--out", exact_out, "output path");
    exact->add_option("--format", exact_format, "json|csv")
        ->check(CLI::IsMember({"json", "csv"}));

    // sdp -----------------------------------------------------------------
    auto* sdp = app.add_subcommand("sdp", "solve an SDP relaxation");
    std::string sdp_path, sdp_out, sdp_mode = "basic";
    int sdp_d = 0;
    double sdp_tol = 1e-6;
    long sdp_max_iter = 200000;
    bool sdp_edges_only = false;
    sdp->add_option("instance", sdp_path, "instance file")->required();
    sdp->add_option("-d,--dimension", sdp_d, "override the instance dimension");
    sdp->add_option("--mode", sdp_mode, "basic|ncsos2|product")
        ->check(CLI::IsMember({"basic", "ncsos2", "product"}));
    sdp->add_option("--tol", sdp_tol, "solver tolerance");
    sdp->add_option("--max-iter", sdp_max_iter, "iteration cap");
    sdp->add_flag("--edges-only", sdp_edges_only,
                  "restrict two-body blocks to edges (deviates from the all-pairs contract)");
    sdp->add_option("--out", sdp_out, "output path for the solution JSON");

    // round ---------------------------------------------------------------
    auto* round = app.add_subcommand("round", "projection-round a solved SDP");
    std::string round_path, round_out;
    long round_samples = 10000;
    std::uint64_t round_seed = 1;
    bool round_bloch = false;
    round->add_option("solution", round_path, "solution JSON from `sdp`")->required();
    round->add_option("--samples", round_samples, "Monte Carlo samples")
        ->check(CLI::PositiveNumber);
    round->add_option("--seed", round_seed, "master seed");
    round->add_flag("--bloch", round_bloch, "include one rounded Bloch assignment");
    round->add_option("--out", round_out, "output path");

    // ratios ---------------------------------------------------------------
    auto* ratios = app.add_subcommand("ratios", "approximation-ratio table rows");
    std::vector<int> ratio_ds;
    std::string ratio_out, ratio_format = "csv";
    ratios->add_option("d", ratio_ds, "qudit dimensions")->required()->expected(-1);
    ratios->add_option("--format", ratio_format, "json|csv")
        ->check(CLI::IsMember({"json", "csv"}));
    ratios->add_option("--out", ratio_out, "output path");

    // gap -----------------------------------------------------------------
    auto* gap = app.add_subcommand("gap", "K_d algorithmic-gap experiment");
    int gap_d = 3;
    long gap_samples = 100000;
    std::uint64_t gap_seed = 1;
    double gap_tol = 1e-6;
    std::string gap_out;
    gap->add_option("-d,--dimension", gap_d, "qudit dimension")->check(CLI::Range(2, 5));
    gap->add_option("--samples", gap_samples, "Monte Carlo samples")->check(CLI::PositiveNumber);
    gap->add_option("--seed", gap_seed, "master seed");
    gap->add_option("--tol", gap_tol, "SDP tolerance");
    gap->add_option("--out", gap_out, "output path");

    // verify ----------------------------------------------------------------
    auto* verify = app.add_subcommand("verify", "run the full invariant suite");
    VerifyOptions vopts;
    verify->add_option("--samples", vopts.mc_samples, "Monte Carlo samples per F* check");
    verify->add_option("--trials", vopts.random_trials, "random states per geometry check");
    verify->add_option("--seed", vopts.seed, "master seed");
    verify->add_option("--tol", vopts.sdp_tol, "SDP tolerance");
    verify->add_flag("!--skip-sdp", vopts.include_sdp, "skip the SDP battery");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1; // normalize usage errors
    }

    if (gen->parsed()) {
        if (gen_spec.empty()) throw CLI::ValidationError("gen", "empty generator spec");
        const std::string& kind = gen_spec[0];
        auto want_args = [&](std::size_t n) {
            if (gen_spec.size() != n + 1)
                throw CLI::ValidationError("gen", "spec '" + kind + "' expects " +
                                                      std::to_string(n) + " arguments");
        };
        Instance g;
        if (kind == "complete") {
            want_args(1);
            g = complete_graph(gen_d, std::stoi(gen_spec[1]));
        } else if (kind == "cycle") {
            want_args(1);
            g = cycle_graph(gen_d, std::stoi(gen_spec[1]));
        } else if (kind == "path") {
            want_args(1);
            g = path_graph(gen_d, std::stoi(gen_spec[1]));
        } else if (kind == "star") {
            want_args(1);
            g = star_graph(gen_d, std::stoi(gen_spec[1]));
        } else if (kind == "gnp") {
            want_args(3);
            g = gnp_graph(gen_d, std::stoi(gen_spec[1]), std::stod(gen_spec[2]),
                          std::stoull(gen_spec[3]));
        } else {
            throw CLI::ValidationError("gen", "unknown generator '" + kind + "'");
        }
        std::ostringstream os;
        write_instance(g, os);
        emit(os.str(), gen_out);
        return 0;
    }

    if (exact->parsed()) {
        const Instance g = load_with_override(exact_path, exact_d);
        const auto [value, vec] = lambda_max(build_hamiltonian(g));
        (void)vec;
        json j;
        j["instance"] = instance_json(g);
        j["value"] = value;
        j["maximally_mixed"] = baseline_values(g.d).maximally_mixed;
        if (g.n == g.d) j["antisymmetric_energy"] = state_energy(g, antisymmetric_state(g.d));
        if (exact_format == "csv") {
            std::ostringstream os;
            os.precision(12);
            os << "d,n,value,maximally_mixed\n"
               << g.d << "," << g.n << "," << value << ","
               << baseline_values(g.d).maximally_mixed;
            emit(os.str(), exact_out);
        } else {
            emit(j.dump(2), exact_out);
        }
        return 0;
    }

    if (sdp->parsed()) {
        const Instance g = load_with_override(sdp_path, sdp_d);
        BuildOptions opts;
        opts.all_pairs = !sdp_edges_only;
        const MomentProgram prog = build_program(g, sdp_mode_from_string(sdp_mode), opts);
        const SDPSolution sol = solve(prog, sdp_tol, sdp_max_iter);
        emit(solution_to_json(sol).dump(2), sdp_out);
        std::cerr.precision(10);
        std::cerr << "objective " << sol.objective << " (" << sol.residuals.iterations
                  << " iterations, max residual " << sol.residuals.max_equality_residual
                  << ")\n";
        return 0;
    }

    if (round->parsed()) {
        std::ifstream in(round_path);
        if (!in) throw std::invalid_argument("cannot open solution file: " + round_path);
        json jsol = json::parse(in);
        const SDPSolution sol = solution_from_json(jsol);
        const RoundingInput input = rounding_input(sol);
        const Instance& g = sol.instance;
        const EnergyEstimate est = estimate_energy(g, input, round_samples, round_seed);
        json j;
        j["seed"] = est.seed;
        j["samples"] = est.count;
        j["mean"] = est.mean;
        j["stderr"] = est.std_error;
        j["closed_form"] = rounded_energy_closed_form(g, input, fstar);
        j["sdp_objective"] = sol.objective;
        if (round_bloch) {
            const RoundedAssignment ra = project_round(input, round_seed);
            json rows = json::array();
            for (const auto& b : ra.bloch) {
                json row = json::array();
                for (long i = 0; i < b.size(); ++i) row.push_back(b(i));
                rows.push_back(row);
            }
            j["per_vertex_bloch"] = rows;
        }
        emit(j.dump(2), round_out);
        return 0;
    }

    if (ratios->parsed()) {
        std::vector<RatioReport> rows;
        rows.reserve(ratio_ds.size());
        for (int d : ratio_ds) rows.push_back(ratio_report(d));
        if (ratio_format == "json") {
            json arr = json::array();
            for (const RatioReport& r : rows)
                arr.push_back({{"d", r.d},
                               {"alpha", r.alpha},
                               {"gamma_star", r.gamma_star},
                               {"beta", r.beta},
                               {"baseline", r.baseline},
                               {"mixed_cap", r.mixed_cap},
                               {"method", r.method}});
            emit(arr.dump(2), ratio_out);
        } else {
            std::ostringstream os;
            os << ratio_csv_header() << "\n";
            for (const RatioReport& r : rows) os << ratio_csv_row(r) << "\n";
            emit(os.str(), ratio_out);
        }
        return 0;
    }

    if (gap->parsed()) {
        const GapReport rep = gap_experiment(gap_d, gap_samples, gap_seed, gap_tol);
        json j;
        j["d"] = rep.d;
        j["sdp_objective"] = rep.sdp_objective;
        j["min_stacked_inner"] = rep.min_stacked_inner;
        j["max_stacked_inner"] = rep.max_stacked_inner;
        j["antisymmetric_energy"] = rep.antisym_energy;
        if (std::isfinite(rep.eigen_value)) j["eigen_value"] = rep.eigen_value;
        j["samples"] = rep.estimate.count;
        j["seed"] = rep.estimate.seed;
        j["mean"] = rep.estimate.mean;
        j["stderr"] = rep.estimate.std_error;
        j["closed_form"] = rep.closed_form_energy;
        j["alpha"] = rep.alpha;
        j["gap"] = rep.gap;
        j["within_4_stderr"] = rep.within_4_stderr;
        emit(j.dump(2), gap_out);
        // the gap claim is for d >= 3; d = 2 runs informationally
        return (gap_d == 2 || rep.within_4_stderr) ? 0 : 2;
    }

    if (verify->parsed()) {
        const std::vector<CheckResult> results = run_verification_suite(vopts);
        int failed = 0;
        for (const CheckResult& r : results) {
            std::cout << (r.pass ? "PASS " : "FAIL ") << r.name;
            if (!r.detail.empty()) std::cout << "  (" << r.detail << ")";
            std::cout << "\n";
            if (!r.pass) ++failed;
        }
        std::cout << (failed ? "FAILURE: " : "OK: ") << results.size() - failed << "/"
                  << results.size() << " checks passed\n";
        return failed ? 3 : 0;
    }

    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const CLI::Error& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: malformed JSON input: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 2;
    }
}
