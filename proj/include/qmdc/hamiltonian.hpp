#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <utility>
#include <vector>

#include "qmdc/qudit_algebra.hpp"

namespace qmdc {

struct Edge {
    int u = 0;
    int v = 0;
    double w = 1.0;
};

// Weighted undirected interaction graph over n qudits of dimension d.
// Edges are stored with u < v; duplicates are merged by weight addition.
struct Instance {
    int d = 2;
    int n = 0;
    std::vector<Edge> edges;

    static Instance make(int d, int n, std::vector<Edge> edges);
    double total_weight() const;
};

Instance complete_graph(int d, int n, double weight = 1.0);
Instance cycle_graph(int d, int n, double weight = 1.0);
Instance path_graph(int d, int n, double weight = 1.0);
Instance star_graph(int d, int n, double weight = 1.0);
Instance gnp_graph(int d, int n, double p, std::uint64_t seed, double weight = 1.0);

struct Operator {
    int d = 0;
    int sites = 0;
    Eigen::MatrixXcd matrix;
};

struct StateVector {
    int d = 0;
    int sites = 0;
    Eigen::VectorXcd amplitudes;
};

struct ProductState {
    std::vector<DensityMatrix> factors;
};

struct BaselineValues {
    double pure_prod_cap;       // 1/2
    double mixed_prod_edge_cap; // ((d-1)^2+1)/(2d(d-1))
    double maximally_mixed;     // (1/2)(1-1/d)
    double triangle_sos_bound;  // (5d-2)/(6d)
};

// Dense-dimension cap for operators/eigensolves; QMDC_DIM_CAP overrides.
std::size_t default_dim_cap();

// Projector onto the antisymmetric subspace of two qudits, built both from
// the antisymmetric basis and from the Gell-Mann form; the two are checked
// against each other before returning.
Operator edge_interaction(int d);
Operator sym_projector(int d);
Operator heisenberg_interaction(int d); // (1/4) sum_a L^a x L^a
Operator maxdcut_interaction(int d);    // diagonal 0/1 on unequal color pairs

// H_G = (1/W) sum w_uv h_uv as a dense d^n operator.
Operator build_hamiltonian(const Instance& g, std::size_t cap = default_dim_cap());

// Maximum eigenvalue and eigenvector of a Hermitian operator. The problem
// value is the TOP of the spectrum throughout this library; note that the
// antiferromagnetic Heisenberg convention instead minimizes the energy of
// -h plus an identity shift, so translate signs before comparing with
// condensed-matter ground-state numbers.
std::pair<double, StateVector> lambda_max(const Operator& op);

// (1/sqrt(d!)) sum_sigma sgn(sigma) |sigma(1)...sigma(d)>
StateVector antisymmetric_state(int d, std::size_t cap = default_dim_cap());

// <psi| h_uv x I |psi> without materializing a d^n x d^n matrix.
double edge_energy(const StateVector& psi, const Operator& two_site, int u, int v);
// <psi| H_G |psi> accumulated edge by edge.
double state_energy(const Instance& g, const StateVector& psi);

// Energy of a product state, evaluated both by direct d^2 x d^2 traces and
// by the Bloch inner-product formula; the two routes are checked against
// each other before returning.
double product_state_energy(const Instance& g, const ProductState& ps);

BaselineValues baseline_values(int d);

// Random-restart coordinate ascent over pure product states; each sweep sets
// rho_v to the top eigenvector of its mean-field environment.
double best_pure_product_energy(const Instance& g, int restarts, int sweeps, std::uint64_t seed);

} // namespace qmdc
