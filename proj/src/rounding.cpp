#include "qmdc/rounding.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>

#include "qmdc/rng.hpp"

namespace qmdc {

namespace {

void check_input(const RoundingInput& input) {
    if (input.d < 2) throw std::invalid_argument("rounding input needs d >= 2");
    if (input.vectors.empty()) throw std::invalid_argument("rounding input is empty");
    const long len = input.vectors.front().size();
    for (const auto& v : input.vectors) {
        if (v.size() != len) throw std::invalid_argument("rounding input vectors differ in length");
        if (std::abs(v.norm() - 1.0) > 1e-8)
            throw std::invalid_argument("rounding input vectors must be unit norm");
    }
}

} // namespace

RoundedAssignment project_round(const RoundingInput& input, std::uint64_t seed) {
    check_input(input);
    const int k = input.d * input.d - 1;
    const long len = input.vectors.front().size();

    std::uint64_t used = seed;
    for (int attempt = 0;; ++attempt) {
        GaussianStream g(splitmix64(used));
        Eigen::MatrixXd Z(k, len);
        for (int r = 0; r < k; ++r)
            for (long c = 0; c < len; ++c) Z(r, c) = g.next();

        RoundedAssignment ra;
        ra.d = input.d;
        ra.seed = used;
        ra.bloch.reserve(input.vectors.size());
        bool ok = true;
        for (const auto& u : input.vectors) {
            Eigen::VectorXd img = Z * u;
            const double norm = img.norm();
            if (norm < 1e-30) {
                ok = false;
                break;
            }
            ra.bloch.push_back(img / norm);
        }
        if (ok) return ra;
        // measure-zero event; retry deterministically with the next seed
        std::clog << "[qmdc] project_round: zero image, retrying with seed+1\n";
        ++used;
        if (attempt > 64) throw NumericError("project_round could not produce nonzero images");
    }
}

ProductState assignment_to_states(const RoundedAssignment& ra) {
    ProductState ps;
    ps.factors.reserve(ra.bloch.size());
    for (const auto& b : ra.bloch) {
        BlochVector bloch;
        bloch.d = ra.d;
        bloch.coords = b;
        bloch.convention = BlochConvention::InsphereUnit;
        ps.factors.push_back(DensityMatrix{ra.d, 1, bloch_decode(bloch)});
    }
    return ps;
}

double rounded_energy_closed_form(const Instance& g, const RoundingInput& input,
                                  const std::function<double(int, double)>& fstar_fn) {
    check_input(input);
    if (static_cast<int>(input.vectors.size()) != g.n)
        throw std::invalid_argument("rounding input needs one vector per vertex");
    const int k = g.d * g.d - 1;
    const double W = g.total_weight();
    const double c = 0.5 * (g.d - 1.0) / g.d;
    double acc = 0.0;
    for (const Edge& e : g.edges) {
        double ip = input.vectors[static_cast<std::size_t>(e.u)].dot(
            input.vectors[static_cast<std::size_t>(e.v)]);
        ip = std::clamp(ip, -1.0, 1.0);
        acc += (e.w / W) * c * (1.0 - fstar_fn(k, ip) / ((g.d - 1.0) * (g.d - 1.0)));
    }
    return acc;
}

EnergyEstimate estimate_energy(const Instance& g, const RoundingInput& input, long samples,
                               std::uint64_t seed) {
    check_input(input);
    if (samples < 1) throw std::invalid_argument("estimate_energy needs samples >= 1");
    double sum = 0.0, sumsq = 0.0;
    for (long i = 0; i < samples; ++i) {
        const std::uint64_t si = derive_stream_seed(seed, static_cast<std::uint64_t>(i));
        const RoundedAssignment ra = project_round(input, si);
        const double e = product_state_energy(g, assignment_to_states(ra));
        sum += e;
        sumsq += e * e;
    }
    EnergyEstimate est;
    est.count = samples;
    est.seed = seed;
    est.mean = sum / samples;
    const double var = samples > 1 ? (sumsq - samples * est.mean * est.mean) / (samples - 1) : 0.0;
    est.std_error = std::sqrt(std::max(0.0, var) / samples);
    return est;
}

EnergyEstimate mc_fstar(int k, double gamma, long samples, std::uint64_t seed) {
    if (k < 1) throw std::invalid_argument("mc_fstar requires k >= 1");
    if (gamma < -1.0 || gamma > 1.0)
        throw std::invalid_argument("mc_fstar requires gamma in [-1, 1]");
    if (samples < 1) throw std::invalid_argument("mc_fstar needs samples >= 1");

    // two unit vectors with the requested inner product
    Eigen::VectorXd u(2), v(2);
    u << 1.0, 0.0;
    v << gamma, std::sqrt(std::max(0.0, 1.0 - gamma * gamma));

    double sum = 0.0, sumsq = 0.0;
    for (long i = 0; i < samples; ++i) {
        std::uint64_t si = derive_stream_seed(seed, static_cast<std::uint64_t>(i));
        double x = 0.0;
        for (;;) {
            GaussianStream g(si);
            Eigen::VectorXd zu(k), zv(k);
            for (int r = 0; r < k; ++r) {
                const double z0 = g.next();
                const double z1 = g.next();
                zu(r) = z0 * u(0) + z1 * u(1);
                zv(r) = z0 * v(0) + z1 * v(1);
            }
            const double nu = zu.norm(), nv = zv.norm();
            if (nu < 1e-30 || nv < 1e-30) {
                ++si; // measure-zero; deterministic retry
                continue;
            }
            x = zu.dot(zv) / (nu * nv);
            break;
        }
        sum += x;
        sumsq += x * x;
    }
    EnergyEstimate est;
    est.count = samples;
    est.seed = seed;
    est.mean = sum / samples;
    const double var = samples > 1 ? (sumsq - samples * est.mean * est.mean) / (samples - 1) : 0.0;
    est.std_error = std::sqrt(std::max(0.0, var) / samples);
    return est;
}

} // namespace qmdc
