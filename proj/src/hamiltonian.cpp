#include "qmdc/hamiltonian.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <mutex>
#include <numeric>
#include <unsupported/Eigen/KroneckerProduct>

#include "qmdc/rng.hpp"

namespace qmdc {

namespace {

void check_dimension(int d) {
    if (d < 2) throw std::invalid_argument("qudit dimension must be >= 2, got " + std::to_string(d));
}

void check_hermitian(const Eigen::MatrixXcd& m, double tol = 1e-10) {
    const double r = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (r > tol) throw NumericError("operator not Hermitian: residual " + std::to_string(r));
}

std::size_t checked_pow(int d, int sites, std::size_t cap) {
    std::size_t dim = 1;
    for (int i = 0; i < sites; ++i) {
        dim *= static_cast<std::size_t>(d);
        if (dim > cap) {
            for (int j = i + 1; j < sites; ++j) dim *= static_cast<std::size_t>(d);
            throw DimensionCapError(dim, cap);
        }
    }
    return dim;
}

} // namespace

Instance Instance::make(int d, int n, std::vector<Edge> edges) {
    check_dimension(d);
    if (n < 1) throw std::invalid_argument("vertex count must be positive");
    std::map<std::pair<int, int>, double> merged;
    for (const Edge& e : edges) {
        if (e.u == e.v) throw std::invalid_argument("self-loop on vertex " + std::to_string(e.u));
        if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n)
            throw std::invalid_argument("edge endpoint out of range");
        if (!std::isfinite(e.w) || e.w <= 0.0)
            throw std::invalid_argument("edge weights must be positive and finite");
        merged[{std::min(e.u, e.v), std::max(e.u, e.v)}] += e.w;
    }
    Instance g;
    g.d = d;
    g.n = n;
    g.edges.reserve(merged.size());
    for (const auto& [uv, w] : merged) g.edges.push_back({uv.first, uv.second, w});
    if (g.edges.empty()) throw std::invalid_argument("instance needs at least one edge");
    return g;
}

double Instance::total_weight() const {
    return std::accumulate(edges.begin(), edges.end(), 0.0,
                           [](double acc, const Edge& e) { return acc + e.w; });
}

Instance complete_graph(int d, int n, double weight) {
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) edges.push_back({u, v, weight});
    return Instance::make(d, n, std::move(edges));
}

Instance cycle_graph(int d, int n, double weight) {
    if (n < 3) throw std::invalid_argument("cycle needs n >= 3");
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u) edges.push_back({u, (u + 1) % n, weight});
    return Instance::make(d, n, std::move(edges));
}

Instance path_graph(int d, int n, double weight) {
    if (n < 2) throw std::invalid_argument("path needs n >= 2");
    std::vector<Edge> edges;
    for (int u = 0; u + 1 < n; ++u) edges.push_back({u, u + 1, weight});
    return Instance::make(d, n, std::move(edges));
}

Instance star_graph(int d, int n, double weight) {
    if (n < 2) throw std::invalid_argument("star needs n >= 2");
    std::vector<Edge> edges;
    for (int v = 1; v < n; ++v) edges.push_back({0, v, weight});
    return Instance::make(d, n, std::move(edges));
}

Instance gnp_graph(int d, int n, double p, std::uint64_t seed, double weight) {
    if (n < 2) throw std::invalid_argument("gnp needs n >= 2");
    if (p <= 0.0 || p > 1.0) throw std::invalid_argument("gnp probability must be in (0, 1]");
    GaussianStream g(splitmix64(seed ^ 0x6E9Full));
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (g.uniform01() < p) edges.push_back({u, v, weight});
    if (edges.empty()) edges.push_back({0, 1, weight}); // keep W > 0
    return Instance::make(d, n, std::move(edges));
}

static const Operator& shared_edge_interaction(int d) {
    static std::mutex mu;
    static std::map<int, Operator> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(d);
    if (it == cache.end()) it = cache.emplace(d, edge_interaction(d)).first;
    return it->second;
}

std::size_t default_dim_cap() {
    if (const char* env = std::getenv("QMDC_DIM_CAP")) {
        const long v = std::atol(env);
        if (v > 1) return static_cast<std::size_t>(v);
    }
    return 4096;
}

Operator edge_interaction(int d) {
    check_dimension(d);
    const int dim = d * d;
    // antisymmetric-basis construction
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
    for (int a = 0; a < d; ++a) {
        for (int b = a + 1; b < d; ++b) {
            Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(dim);
            psi(a * d + b) = 1.0 / std::sqrt(2.0);
            psi(b * d + a) = -1.0 / std::sqrt(2.0);
            h += psi * psi.adjoint();
        }
    }
    // Gell-Mann form
    const GellMannBasis basis = gellmann_basis(d);
    Eigen::MatrixXcd g = 0.5 * ((d - 1.0) / d) * Eigen::MatrixXcd::Identity(dim, dim);
    for (int a = 1; a <= basis.count(); ++a)
        g -= 0.25 * Eigen::kroneckerProduct(basis.op(a), basis.op(a));
    const double diff = (h - g).norm();
    if (diff > 1e-10)
        throw NumericError("edge interaction constructions disagree: " + std::to_string(diff));
    return Operator{d, 2, std::move(h)};
}

Operator sym_projector(int d) {
    Operator h = edge_interaction(d);
    Operator p{d, 2, Eigen::MatrixXcd::Identity(h.matrix.rows(), h.matrix.cols()) - h.matrix};
    const Operator heis = heisenberg_interaction(d);
    const Eigen::MatrixXcd rhs =
        0.5 * ((d + 1.0) / d) * Eigen::MatrixXcd::Identity(p.matrix.rows(), p.matrix.cols()) +
        heis.matrix;
    const double diff = (p.matrix - rhs).norm();
    if (diff > 1e-10)
        throw NumericError("symmetric projector identity violated: " + std::to_string(diff));
    return p;
}

Operator heisenberg_interaction(int d) {
    check_dimension(d);
    const GellMannBasis basis = gellmann_basis(d);
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(d * d, d * d);
    for (int a = 1; a <= basis.count(); ++a)
        h += 0.25 * Eigen::kroneckerProduct(basis.op(a), basis.op(a));
    return Operator{d, 2, std::move(h)};
}

Operator maxdcut_interaction(int d) {
    check_dimension(d);
    const int dim = d * d;
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
            if (a != b) h(a * d + b, a * d + b) = 1.0;
    // diagonal Gell-Mann form
    const GellMannBasis basis = gellmann_basis(d);
    Eigen::MatrixXcd g = ((d - 1.0) / d) * Eigen::MatrixXcd::Identity(dim, dim);
    for (int a = 1; a <= d - 1; ++a) {
        const Eigen::MatrixXcd& diag = basis.op(GellMannBasis::diag_index(a));
        g -= 0.5 * Eigen::kroneckerProduct(diag, diag);
    }
    const double diff = (h - g).norm();
    if (diff > 1e-10)
        throw NumericError("Max-d-Cut interaction constructions disagree: " + std::to_string(diff));
    return Operator{d, 2, std::move(h)};
}

Operator build_hamiltonian(const Instance& g, std::size_t cap) {
    const std::size_t dim = checked_pow(g.d, g.n, cap);
    const Operator& h = shared_edge_interaction(g.d);
    const double W = g.total_weight();
    const long d = g.d;
    Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(dim, dim);

    // strides for embedding a two-site operator at (u, v); site 0 is the
    // leftmost tensor factor (slowest-varying index)
    std::vector<long> stride(static_cast<std::size_t>(g.n));
    long s = 1;
    for (int site = g.n - 1; site >= 0; --site) {
        stride[static_cast<std::size_t>(site)] = s;
        s *= d;
    }
    const long rest = static_cast<long>(dim) / (d * d);

    for (const Edge& e : g.edges) {
        const double scale = e.w / W;
        const long su = stride[static_cast<std::size_t>(e.u)];
        const long sv = stride[static_cast<std::size_t>(e.v)];
        // enumerate base indices with zeros at sites u and v
        for (long r = 0; r < rest; ++r) {
            long base = 0, rem = r;
            for (int site = g.n - 1; site >= 0; --site) {
                if (site == e.u || site == e.v) continue;
                base += (rem % d) * stride[static_cast<std::size_t>(site)];
                rem /= d;
            }
            for (long iu = 0; iu < d; ++iu)
                for (long iv = 0; iv < d; ++iv)
                    for (long ju = 0; ju < d; ++ju)
                        for (long jv = 0; jv < d; ++jv) {
                            const Complex val = h.matrix(iu * d + iv, ju * d + jv);
                            if (val != Complex(0.0, 0.0))
                                H(base + iu * su + iv * sv, base + ju * su + jv * sv) +=
                                    scale * val;
                        }
        }
    }
    return Operator{g.d, g.n, std::move(H)};
}

std::pair<double, StateVector> lambda_max(const Operator& op) {
    check_hermitian(op.matrix);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(op.matrix);
    if (es.info() != Eigen::Success) throw NumericError("eigendecomposition failed");
    const long last = es.eigenvalues().size() - 1;
    const double lam = es.eigenvalues()(last);
    Eigen::VectorXcd v = es.eigenvectors().col(last);
    const double resid = (op.matrix * v - lam * v).norm();
    if (resid > 1e-8) throw NumericError("eigenpair residual too large: " + std::to_string(resid));
    return {lam, StateVector{op.d, op.sites, std::move(v)}};
}

StateVector antisymmetric_state(int d, std::size_t cap) {
    check_dimension(d);
    const std::size_t dim = checked_pow(d, d, cap);
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(static_cast<long>(dim));
    std::vector<int> perm(static_cast<std::size_t>(d));
    std::iota(perm.begin(), perm.end(), 0);
    const double amp = 1.0 / std::sqrt(std::tgamma(d + 1.0));
    do {
        // parity by counting inversions
        int inv = 0;
        for (int i = 0; i < d; ++i)
            for (int j = i + 1; j < d; ++j)
                if (perm[static_cast<std::size_t>(i)] > perm[static_cast<std::size_t>(j)]) ++inv;
        long idx = 0;
        for (int i = 0; i < d; ++i) idx = idx * d + perm[static_cast<std::size_t>(i)];
        psi(idx) = (inv % 2 == 0 ? amp : -amp);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return StateVector{d, d, std::move(psi)};
}

double edge_energy(const StateVector& psi, const Operator& two_site, int u, int v) {
    const long d = psi.d;
    long dim = 1;
    for (int i = 0; i < psi.sites; ++i) dim *= d;
    std::vector<long> stride(static_cast<std::size_t>(psi.sites));
    long s = 1;
    for (int site = psi.sites - 1; site >= 0; --site) {
        stride[static_cast<std::size_t>(site)] = s;
        s *= d;
    }
    const long su = stride[static_cast<std::size_t>(u)];
    const long sv = stride[static_cast<std::size_t>(v)];
    const long rest = dim / (d * d);
    Complex acc = 0.0;
    for (long r = 0; r < rest; ++r) {
        long base = 0, rem = r;
        for (int site = psi.sites - 1; site >= 0; --site) {
            if (site == u || site == v) continue;
            base += (rem % d) * stride[static_cast<std::size_t>(site)];
            rem /= d;
        }
        for (long iu = 0; iu < d; ++iu)
            for (long iv = 0; iv < d; ++iv) {
                const long row = base + iu * su + iv * sv;
                Complex hx = 0.0;
                for (long ju = 0; ju < d; ++ju)
                    for (long jv = 0; jv < d; ++jv)
                        hx += two_site.matrix(iu * d + iv, ju * d + jv) *
                              psi.amplitudes(base + ju * su + jv * sv);
                acc += std::conj(psi.amplitudes(row)) * hx;
            }
    }
    return acc.real();
}

double state_energy(const Instance& g, const StateVector& psi) {
    if (psi.sites != g.n || psi.d != g.d)
        throw std::invalid_argument("state does not match instance dimensions");
    const Operator& h = shared_edge_interaction(g.d);
    const double W = g.total_weight();
    double acc = 0.0;
    for (const Edge& e : g.edges) acc += (e.w / W) * edge_energy(psi, h, e.u, e.v);
    return acc;
}

double product_state_energy(const Instance& g, const ProductState& ps) {
    if (static_cast<int>(ps.factors.size()) != g.n)
        throw std::invalid_argument("product state needs one factor per vertex");
    for (const DensityMatrix& rho : ps.factors)
        if (rho.d != g.d || rho.sites != 1)
            throw std::invalid_argument("product-state factors must be single-site, dimension d");

    const Operator& h = shared_edge_interaction(g.d);
    const double W = g.total_weight();

    std::vector<BlochVector> bloch;
    bloch.reserve(ps.factors.size());
    for (const DensityMatrix& rho : ps.factors)
        bloch.push_back(bloch_encode(rho, BlochConvention::Raw));

    double direct = 0.0, via_bloch = 0.0;
    const double c = 0.5 * (g.d - 1.0) / g.d;
    for (const Edge& e : g.edges) {
        const Eigen::MatrixXcd pair = Eigen::kroneckerProduct(
            ps.factors[static_cast<std::size_t>(e.u)].matrix,
            ps.factors[static_cast<std::size_t>(e.v)].matrix);
        direct += (e.w / W) * (h.matrix * pair).trace().real();
        const double ip = bloch[static_cast<std::size_t>(e.u)].coords.dot(
            bloch[static_cast<std::size_t>(e.v)].coords);
        via_bloch += (e.w / W) * c * (1.0 - (2.0 * g.d / (g.d - 1.0)) * ip);
    }
    if (std::abs(direct - via_bloch) > 1e-10)
        throw NumericError("product-state energy routes disagree: " +
                           std::to_string(std::abs(direct - via_bloch)));
    return direct;
}

BaselineValues baseline_values(int d) {
    check_dimension(d);
    BaselineValues b;
    b.pure_prod_cap = 0.5;
    b.mixed_prod_edge_cap = ((d - 1.0) * (d - 1.0) + 1.0) / (2.0 * d * (d - 1.0));
    b.maximally_mixed = 0.5 * (1.0 - 1.0 / d);
    b.triangle_sos_bound = (5.0 * d - 2.0) / (6.0 * d);
    return b;
}

double best_pure_product_energy(const Instance& g, int restarts, int sweeps, std::uint64_t seed) {
    const Operator& h = shared_edge_interaction(g.d);
    const double W = g.total_weight();
    const long d = g.d;
    double best = 0.0;

    for (int r = 0; r < restarts; ++r) {
        std::vector<Eigen::VectorXcd> psi(static_cast<std::size_t>(g.n));
        GaussianStream gs(derive_stream_seed(seed, static_cast<std::uint64_t>(r)));
        for (auto& p : psi) {
            p.resize(d);
            for (long i = 0; i < d; ++i) p(i) = Complex(gs.next(), gs.next());
            p.normalize();
        }
        for (int sweep = 0; sweep < sweeps; ++sweep) {
            for (int v = 0; v < g.n; ++v) {
                // mean-field environment of vertex v; energy is linear in rho_v
                Eigen::MatrixXcd env = Eigen::MatrixXcd::Zero(d, d);
                for (const Edge& e : g.edges) {
                    if (e.u != v && e.v != v) continue;
                    const int other = (e.u == v) ? e.v : e.u;
                    const Eigen::MatrixXcd rho_o =
                        psi[static_cast<std::size_t>(other)] *
                        psi[static_cast<std::size_t>(other)].adjoint();
                    for (long i = 0; i < d; ++i)
                        for (long j = 0; j < d; ++j)
                            for (long a = 0; a < d; ++a)
                                for (long b = 0; b < d; ++b) {
                                    // contract the partner slot of h with rho_o
                                    const Complex val = (e.u == v)
                                                            ? h.matrix(i * d + a, j * d + b)
                                                            : h.matrix(a * d + i, b * d + j);
                                    env(i, j) += (e.w / W) * val * rho_o(b, a);
                                }
                }
                Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(env);
                psi[static_cast<std::size_t>(v)] = es.eigenvectors().col(d - 1);
            }
        }
        ProductState ps;
        for (const auto& p : psi) ps.factors.push_back(DensityMatrix::pure(g.d, p));
        best = std::max(best, product_state_energy(g, ps));
    }
    return best;
}

} // namespace qmdc
