#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "qmdc/errors.hpp"

namespace qmdc {

using Complex = std::complex<double>;

// Generalized Gell-Mann basis for d x d traceless Hermitian matrices,
// plus the normalized identity lambda0 = sqrt(2/d) I. Single indices run
// 1..d^2-1; op(0) returns lambda0. All matrices satisfy tr(L^a L^b) = 2 d_ab.
struct GellMannBasis {
    int d = 0;
    std::vector<Eigen::MatrixXcd> matrices; // matrices[k] = Lambda^{k+1}
    Eigen::MatrixXcd lambda0;

    const Eigen::MatrixXcd& op(int a) const {
        return a == 0 ? lambda0 : matrices.at(static_cast<std::size_t>(a - 1));
    }
    int count() const { return d * d - 1; }

    // single-index maps, 1 <= a < b <= d
    static int sym_index(int a, int b) { return b * b + 2 * (a - b) - 1; }
    static int antisym_index(int a, int b) { return b * b + 2 * (a - b); }
    static int diag_index(int a) { return a * a + 2 * a; }
};

GellMannBasis gellmann_basis(int d);
// shared immutable instance, built once per dimension
const GellMannBasis& gellmann(int d);

// Sparse f_abc (totally antisymmetric) and d_abc (totally symmetric) tables,
// computed from traces; entries below 1e-12 are dropped.
struct StructureConstants {
    int d = 0;
    struct Entry {
        int a, b, c;
        double value;
    };
    std::vector<Entry> f_entries;
    std::vector<Entry> d_entries;

    double f(int a, int b, int c) const { return lookup(f_map_, a, b, c); }
    double dsym(int a, int b, int c) const { return lookup(d_map_, a, b, c); }

    // Lambda^a Lambda^b reconstructed from the tables via the product property.
    Eigen::MatrixXcd reconstruct_product(const GellMannBasis& basis, int a, int b) const;

    void build_maps();

private:
    using Key = std::uint64_t;
    static Key key(int a, int b, int c) {
        return (static_cast<Key>(a) << 40) | (static_cast<Key>(b) << 20) | static_cast<Key>(c);
    }
    static double lookup(const std::unordered_map<Key, double>& m, int a, int b, int c) {
        auto it = m.find(key(a, b, c));
        return it == m.end() ? 0.0 : it->second;
    }
    std::unordered_map<Key, double> f_map_;
    std::unordered_map<Key, double> d_map_;
};

StructureConstants structure_constants(const GellMannBasis& basis);

// Clock-and-shift (Weyl) operators U_nm = U_10^n U_01^m, n,m in [0,d-1].
struct WeylBasis {
    int d = 0;
    Complex omega;
    std::vector<Eigen::MatrixXcd> operators; // row-major: operators[n*d + m]

    const Eigen::MatrixXcd& u(int n, int m) const {
        return operators.at(static_cast<std::size_t>(n * d + m));
    }
};

WeylBasis weyl_basis(int d);

// Bloch-vector scaling conventions. Raw: rho = I/d + b.L. OutsphereUnit:
// pure states have |b| = 1. InsphereUnit: purity-1/(d-1) states have |b| = 1.
enum class BlochConvention { Raw, OutsphereUnit, InsphereUnit };

// Multiplier s(convention) such that rho = I/d + s * b.L.
double bloch_scale(BlochConvention convention, int d);

struct BlochVector {
    int d = 0;
    Eigen::VectorXd coords;
    BlochConvention convention = BlochConvention::Raw;

    BlochVector to(BlochConvention target) const;
};

struct DensityMatrix {
    int d = 0;
    int sites = 1;
    Eigen::MatrixXcd matrix;

    long dim() const { return matrix.rows(); }
    // Hermiticity/trace/PSD check; throws NumericError on violation.
    void validate(double herm_tol = 1e-12, double trace_tol = 1e-12, double psd_tol = 1e-10) const;

    static DensityMatrix maximally_mixed(int d, int sites = 1);
    static DensityMatrix pure(int d, const Eigen::VectorXcd& amplitudes);
};

DensityMatrix random_density_matrix(int d, std::uint64_t seed, int sites = 1);
DensityMatrix random_pure_state(int d, std::uint64_t seed, int sites = 1);

BlochVector bloch_encode(const DensityMatrix& rho, BlochConvention convention);
// Hermitian, unit-trace reconstruction; PSD only guaranteed for
// InsphereUnit vectors with |b| <= 1.
Eigen::MatrixXcd bloch_decode(const BlochVector& b);

double hs_inner(const DensityMatrix& rho, const DensityMatrix& sigma);
double purity(const DensityMatrix& rho);

// tr(rho Lambda^{a_1} x ... x Lambda^{a_sites}); index 0 means lambda0.
Complex moment(const DensityMatrix& rho, const std::vector<int>& indices);

// E_{(n,m)}[ U_nm^{xsites} rho (U_nm^{xsites})^* ]; kills all degree-one
// moments while preserving energy on locally-unitary-invariant Hamiltonians.
DensityMatrix weyl_symmetrize(const DensityMatrix& rho);

// radii of the outsphere / insphere of the Bloch body (Raw convention)
inline double outsphere_radius(int d) { return std::sqrt((d - 1.0) / (2.0 * d)); }
inline double insphere_radius(int d) { return 1.0 / std::sqrt(2.0 * d * (d - 1.0)); }

} // namespace qmdc
