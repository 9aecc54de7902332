#include "qmdc/qudit_algebra.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <map>
#include <mutex>
#include <unsupported/Eigen/KroneckerProduct>

#include "qmdc/rng.hpp"

namespace qmdc {

namespace {
constexpr double kSparseDrop = 1e-12;

void check_dimension(int d) {
    if (d < 2) throw std::invalid_argument("qudit dimension must be >= 2, got " + std::to_string(d));
}

long ipow(int base, int exp) {
    long r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}
} // namespace

GellMannBasis gellmann_basis(int d) {
    check_dimension(d);
    GellMannBasis basis;
    basis.d = d;
    basis.matrices.assign(static_cast<std::size_t>(d * d - 1), Eigen::MatrixXcd::Zero(d, d));
    basis.lambda0 = std::sqrt(2.0 / d) * Eigen::MatrixXcd::Identity(d, d);

    auto& mats = basis.matrices;
    // symmetric / antisymmetric pairs, kets |1..d| stored as rows 0..d-1
    for (int a = 1; a < d; ++a) {
        for (int b = a + 1; b <= d; ++b) {
            Eigen::MatrixXcd sym = Eigen::MatrixXcd::Zero(d, d);
            sym(a - 1, b - 1) = 1.0;
            sym(b - 1, a - 1) = 1.0;
            mats[static_cast<std::size_t>(GellMannBasis::sym_index(a, b) - 1)] = sym;

            Eigen::MatrixXcd asym = Eigen::MatrixXcd::Zero(d, d);
            asym(a - 1, b - 1) = Complex(0.0, -1.0);
            asym(b - 1, a - 1) = Complex(0.0, 1.0);
            mats[static_cast<std::size_t>(GellMannBasis::antisym_index(a, b) - 1)] = asym;
        }
    }
    for (int a = 1; a <= d - 1; ++a) {
        Eigen::MatrixXcd diag = Eigen::MatrixXcd::Zero(d, d);
        const double norm = std::sqrt(2.0 / (a * (a + 1.0)));
        for (int b = 1; b <= a; ++b) diag(b - 1, b - 1) = norm;
        diag(a, a) = -a * norm;
        mats[static_cast<std::size_t>(GellMannBasis::diag_index(a) - 1)] = diag;
    }
    return basis;
}

const GellMannBasis& gellmann(int d) {
    static std::mutex mu;
    static std::map<int, GellMannBasis> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(d);
    if (it == cache.end()) it = cache.emplace(d, gellmann_basis(d)).first;
    return it->second;
}

Eigen::MatrixXcd StructureConstants::reconstruct_product(const GellMannBasis& basis, int a,
                                                         int b) const {
    const int d = basis.d;
    Eigen::MatrixXcd out = (a == b ? 2.0 / d : 0.0) * Eigen::MatrixXcd::Identity(d, d);
    for (int c = 1; c <= d * d - 1; ++c) {
        const Complex coeff(dsym(a, b, c), f(a, b, c));
        if (coeff != Complex(0.0, 0.0)) out += coeff * basis.op(c);
    }
    return out;
}

void StructureConstants::build_maps() {
    f_map_.clear();
    d_map_.clear();
    for (const auto& e : f_entries) f_map_[key(e.a, e.b, e.c)] = e.value;
    for (const auto& e : d_entries) d_map_[key(e.a, e.b, e.c)] = e.value;
}

StructureConstants structure_constants(const GellMannBasis& basis) {
    const int m = basis.count();
    StructureConstants sc;
    sc.d = basis.d;
    // f_abc = tr([La,Lb] Lc)/(4i), d_abc = tr({La,Lb} Lc)/4. Both tables are
    // invariant under (a,b) swap up to sign, so only a <= b is evaluated and
    // expanded; total (anti)symmetry in all three indices is a test property.
    for (int a = 1; a <= m; ++a) {
        const Eigen::MatrixXcd& A = basis.op(a);
        for (int b = a; b <= m; ++b) {
            const Eigen::MatrixXcd AB = A * basis.op(b);
            const Eigen::MatrixXcd BA = basis.op(b) * A;
            for (int c = 1; c <= m; ++c) {
                const Eigen::MatrixXcd& C = basis.op(c);
                const Complex tr_ab = (AB * C).trace();
                const Complex tr_ba = (BA * C).trace();
                const double fv = ((tr_ab - tr_ba) / Complex(0.0, 4.0)).real();
                const double dv = ((tr_ab + tr_ba) / 4.0).real();
                if (std::abs(fv) >= kSparseDrop) {
                    sc.f_entries.push_back({a, b, c, fv});
                    if (a != b) sc.f_entries.push_back({b, a, c, -fv});
                }
                if (std::abs(dv) >= kSparseDrop) {
                    sc.d_entries.push_back({a, b, c, dv});
                    if (a != b) sc.d_entries.push_back({b, a, c, dv});
                }
            }
        }
    }
    sc.build_maps();
    return sc;
}

WeylBasis weyl_basis(int d) {
    check_dimension(d);
    WeylBasis w;
    w.d = d;
    w.omega = std::exp(Complex(0.0, 2.0 * M_PI / d));
    w.operators.reserve(static_cast<std::size_t>(d * d));
    for (int n = 0; n < d; ++n) {
        for (int m = 0; m < d; ++m) {
            Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(d, d);
            for (int k = 0; k < d; ++k) {
                u(k, (k + m) % d) = std::pow(w.omega, k * n);
            }
            w.operators.push_back(std::move(u));
        }
    }
    return w;
}

double bloch_scale(BlochConvention convention, int d) {
    switch (convention) {
        case BlochConvention::Raw: return 1.0;
        case BlochConvention::OutsphereUnit: return outsphere_radius(d);
        case BlochConvention::InsphereUnit: return insphere_radius(d);
    }
    throw std::invalid_argument("unknown Bloch convention");
}

BlochVector BlochVector::to(BlochConvention target) const {
    BlochVector out;
    out.d = d;
    out.convention = target;
    out.coords = coords * (bloch_scale(convention, d) / bloch_scale(target, d));
    return out;
}

void DensityMatrix::validate(double herm_tol, double trace_tol, double psd_tol) const {
    if (matrix.rows() != matrix.cols() || matrix.rows() != ipow(d, sites))
        throw NumericError("density matrix dimension does not match d^sites");
    const double herm = (matrix - matrix.adjoint()).cwiseAbs().maxCoeff();
    if (herm > herm_tol) throw NumericError("density matrix not Hermitian: residual " + std::to_string(herm));
    const double tr_err = std::abs(matrix.trace() - Complex(1.0, 0.0));
    if (tr_err > trace_tol) throw NumericError("density matrix trace != 1: error " + std::to_string(tr_err));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(matrix, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -psd_tol)
        throw NumericError("density matrix not PSD: min eigenvalue " +
                           std::to_string(es.eigenvalues().minCoeff()));
}

DensityMatrix DensityMatrix::maximally_mixed(int d, int sites) {
    check_dimension(d);
    const long n = ipow(d, sites);
    return DensityMatrix{d, sites, Eigen::MatrixXcd::Identity(n, n) / static_cast<double>(n)};
}

DensityMatrix DensityMatrix::pure(int d, const Eigen::VectorXcd& amplitudes) {
    check_dimension(d);
    int sites = 0;
    long n = 1;
    while (n < amplitudes.size()) {
        n *= d;
        ++sites;
    }
    if (n != amplitudes.size()) throw std::invalid_argument("amplitude length is not a power of d");
    const Eigen::VectorXcd psi = amplitudes / amplitudes.norm();
    return DensityMatrix{d, sites == 0 ? 1 : sites, psi * psi.adjoint()};
}

DensityMatrix random_density_matrix(int d, std::uint64_t seed, int sites) {
    check_dimension(d);
    const long n = ipow(d, sites);
    GaussianStream g(splitmix64(seed ^ 0xD15EA5EULL));
    // rho = GG^*/tr(GG^*) with Ginibre G: Hilbert-Schmidt-distributed mixed state
    Eigen::MatrixXcd G(n, n);
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) G(i, j) = Complex(g.next(), g.next());
    Eigen::MatrixXcd rho = G * G.adjoint();
    rho /= rho.trace().real();
    rho = 0.5 * (rho + rho.adjoint().eval());
    return DensityMatrix{d, sites, std::move(rho)};
}

DensityMatrix random_pure_state(int d, std::uint64_t seed, int sites) {
    check_dimension(d);
    const long n = ipow(d, sites);
    GaussianStream g(splitmix64(seed ^ 0x9E1B57ULL));
    Eigen::VectorXcd psi(n);
    for (long i = 0; i < n; ++i) psi(i) = Complex(g.next(), g.next());
    return DensityMatrix::pure(d, psi);
}

BlochVector bloch_encode(const DensityMatrix& rho, BlochConvention convention) {
    if (rho.sites != 1)
        throw std::invalid_argument("bloch_encode expects a single-site density matrix, got " +
                                    std::to_string(rho.sites) + " sites");
    const GellMannBasis& basis = gellmann(rho.d);
    BlochVector b;
    b.d = rho.d;
    b.convention = convention;
    b.coords.resize(basis.count());
    const double scale = bloch_scale(convention, rho.d);
    for (int a = 1; a <= basis.count(); ++a)
        b.coords(a - 1) = 0.5 * (rho.matrix * basis.op(a)).trace().real() / scale;
    return b;
}

Eigen::MatrixXcd bloch_decode(const BlochVector& b) {
    const GellMannBasis& basis = gellmann(b.d);
    if (b.coords.size() != basis.count())
        throw std::invalid_argument("Bloch coordinate length must be d^2-1");
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Identity(b.d, b.d) / static_cast<double>(b.d);
    const double scale = bloch_scale(b.convention, b.d);
    for (int a = 1; a <= basis.count(); ++a) rho += scale * b.coords(a - 1) * basis.op(a);
    return rho;
}

double hs_inner(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (rho.d != sigma.d || rho.sites != sigma.sites)
        throw std::invalid_argument("hs_inner requires matching dimensions");
    return (rho.matrix * sigma.matrix).trace().real();
}

double purity(const DensityMatrix& rho) { return (rho.matrix * rho.matrix).trace().real(); }

Complex moment(const DensityMatrix& rho, const std::vector<int>& indices) {
    if (static_cast<int>(indices.size()) != rho.sites)
        throw std::invalid_argument("moment needs one basis index per site");
    const GellMannBasis& basis = gellmann(rho.d);
    for (int idx : indices)
        if (idx < 0 || idx > basis.count())
            throw std::invalid_argument("basis index out of range: " + std::to_string(idx));
    Eigen::MatrixXcd op = basis.op(indices[0]);
    for (std::size_t i = 1; i < indices.size(); ++i) {
        op = Eigen::kroneckerProduct(op, basis.op(indices[i])).eval();
    }
    return (rho.matrix * op).trace();
}

DensityMatrix weyl_symmetrize(const DensityMatrix& rho) {
    const WeylBasis w = weyl_basis(rho.d);
    const long n = rho.dim();
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(n, n);
    for (int nn = 0; nn < rho.d; ++nn) {
        for (int mm = 0; mm < rho.d; ++mm) {
            Eigen::MatrixXcd u = w.u(nn, mm);
            for (int s = 1; s < rho.sites; ++s) u = Eigen::kroneckerProduct(u, w.u(nn, mm)).eval();
            acc += u * rho.matrix * u.adjoint();
        }
    }
    acc /= static_cast<double>(rho.d * rho.d);
    acc = 0.5 * (acc + acc.adjoint().eval());
    return DensityMatrix{rho.d, rho.sites, std::move(acc)};
}

} // namespace qmdc
