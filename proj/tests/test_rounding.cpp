#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "qmdc/ratio_analysis.hpp"
#include "qmdc/rng.hpp"
#include "qmdc/rounding.hpp"

using namespace qmdc;

namespace {

RoundingInput synthetic_pair(int d, double gamma, long len = 4) {
    RoundingInput in;
    in.d = d;
    in.source = RoundingInput::Source::Synthetic;
    Eigen::VectorXd u = Eigen::VectorXd::Zero(len), v = Eigen::VectorXd::Zero(len);
    u(0) = 1.0;
    v(0) = gamma;
    v(1) = std::sqrt(std::max(0.0, 1.0 - gamma * gamma));
    in.vectors = {u, v};
    return in;
}

} // namespace

TEST_SUITE("rounding") {

TEST_CASE("project_round basics") {
    SUBCASE("identical inputs round identically") {
        RoundingInput in = synthetic_pair(3, 1.0);
        in.vectors[1] = in.vectors[0];
        const RoundedAssignment ra = project_round(in, 7);
        CHECK((ra.bloch[0] - ra.bloch[1]).norm() < 1e-14);
    }
    SUBCASE("antipodal inputs round to antipodal Bloch vectors") {
        RoundingInput in = synthetic_pair(3, -1.0);
        in.vectors[1] = -in.vectors[0];
        const RoundedAssignment ra = project_round(in, 9);
        CHECK((ra.bloch[0] + ra.bloch[1]).norm() < 1e-14);
    }
    SUBCASE("outputs are unit vectors, deterministic per seed") {
        for (int d : {2, 3, 4, 5}) {
            const RoundingInput in = synthetic_pair(d, -0.25);
            const RoundedAssignment a = project_round(in, 123);
            const RoundedAssignment b = project_round(in, 123);
            const RoundedAssignment c = project_round(in, 124);
            for (std::size_t i = 0; i < a.bloch.size(); ++i) {
                CHECK(a.bloch[i].norm() == doctest::Approx(1.0).epsilon(1e-12));
                CHECK((a.bloch[i] - b.bloch[i]).norm() == 0.0);
            }
            CHECK((a.bloch[0] - c.bloch[0]).norm() > 1e-6);
        }
    }
    SUBCASE("sign equivariance") {
        RoundingInput in = synthetic_pair(3, -0.5);
        const RoundedAssignment base = project_round(in, 31);
        in.vectors[1] = -in.vectors[1];
        const RoundedAssignment flipped = project_round(in, 31);
        CHECK((base.bloch[0] - flipped.bloch[0]).norm() < 1e-14);
        CHECK((base.bloch[1] + flipped.bloch[1]).norm() < 1e-14);
    }
    SUBCASE("bad inputs") {
        RoundingInput in = synthetic_pair(3, 0.0);
        in.vectors[0] *= 2.0;
        CHECK_THROWS_AS(project_round(in, 1), std::invalid_argument);
        RoundingInput empty;
        empty.d = 3;
        CHECK_THROWS_AS(project_round(empty, 1), std::invalid_argument);
    }
}

TEST_CASE("assignment_to_states produces insphere states") {
    for (int d : {2, 3, 4, 5}) {
        const RoundingInput in = synthetic_pair(d, -1.0 / (d - 1.0));
        const RoundedAssignment ra = project_round(in, 55);
        const ProductState ps = assignment_to_states(ra);
        for (const DensityMatrix& rho : ps.factors) {
            rho.validate(1e-12, 1e-12, 1e-10);
            CHECK(purity(rho) == doctest::Approx(1.0 / (d - 1.0)).epsilon(1e-10));
        }
    }
    SUBCASE("d=2 insphere states are pure") {
        const RoundingInput in = synthetic_pair(2, 0.5);
        const ProductState ps = assignment_to_states(project_round(in, 3));
        CHECK(purity(ps.factors[0]) == doctest::Approx(1.0).epsilon(1e-10));
    }
    SUBCASE("zero Bloch vector decodes to the maximally mixed state") {
        RoundedAssignment ra;
        ra.d = 3;
        ra.bloch = {Eigen::VectorXd::Zero(8)};
        const ProductState ps = assignment_to_states(ra);
        CHECK((ps.factors[0].matrix -
               Eigen::MatrixXcd::Identity(3, 3) / 3.0).norm() < 1e-14);
    }
}

TEST_CASE("closed-form rounded energy") {
    SUBCASE("uncorrelated inputs give the maximally mixed baseline") {
        for (int d : {2, 3, 4}) {
            RoundingInput in = synthetic_pair(d, 0.0);
            const Instance g = Instance::make(d, 2, {{0, 1, 1.0}});
            CHECK(rounded_energy_closed_form(g, in, fstar) ==
                  doctest::Approx(0.5 * (1.0 - 1.0 / d)).epsilon(1e-12));
        }
    }
    SUBCASE("K_3 at the bad angle reproduces alpha_3") {
        // simplex of three unit vectors with pairwise inner product -1/2
        RoundingInput in;
        in.d = 3;
        in.source = RoundingInput::Source::Synthetic;
        Eigen::VectorXd a(3), b(3), c(3);
        a << 1, 0, 0;
        b << -0.5, std::sqrt(3.0) / 2.0, 0;
        c << -0.5, -std::sqrt(3.0) / 2.0, 0;
        in.vectors = {a, b, c};
        const Instance g = complete_graph(3, 3);
        CHECK(rounded_energy_closed_form(g, in, fstar) ==
              doctest::Approx(0.372996).epsilon(1e-5));
    }
    SUBCASE("antipodal pair") {
        for (int d : {2, 3, 5}) {
            RoundingInput in = synthetic_pair(d, -1.0);
            const Instance g = Instance::make(d, 2, {{0, 1, 1.0}});
            const double want =
                0.5 * ((d - 1.0) / d) * (1.0 + 1.0 / ((d - 1.0) * (d - 1.0)));
            CHECK(rounded_energy_closed_form(g, in, fstar) ==
                  doctest::Approx(want).epsilon(1e-12));
        }
    }
}

TEST_CASE("estimate_energy") {
    const Instance g = complete_graph(3, 3);
    RoundingInput in;
    in.d = 3;
    Eigen::VectorXd a(3), b(3), c(3);
    a << 1, 0, 0;
    b << -0.5, std::sqrt(3.0) / 2.0, 0;
    c << -0.5, -std::sqrt(3.0) / 2.0, 0;
    in.vectors = {a, b, c};

    SUBCASE("one sample equals the energy of that draw") {
        const EnergyEstimate e1 = estimate_energy(g, in, 1, 99);
        const RoundedAssignment ra = project_round(in, derive_stream_seed(99, 0));
        CHECK(e1.mean ==
              doctest::Approx(product_state_energy(g, assignment_to_states(ra))).epsilon(1e-14));
        CHECK(e1.count == 1);
    }
    SUBCASE("mean tracks the closed form within 4 stderr") {
        const EnergyEstimate est = estimate_energy(g, in, 4000, 2024);
        const double closed = rounded_energy_closed_form(g, in, fstar);
        CHECK(std::abs(est.mean - closed) <= 4.0 * est.std_error);
        CHECK(est.std_error > 0.0);
        CHECK(est.std_error < 0.01);
    }
    SUBCASE("deterministic and order-independent seeds") {
        const EnergyEstimate x = estimate_energy(g, in, 50, 5);
        const EnergyEstimate y = estimate_energy(g, in, 50, 5);
        CHECK(x.mean == y.mean);
        CHECK(x.std_error == y.std_error);
    }
}

TEST_CASE("mc_fstar oracle") {
    SUBCASE("endpoints") {
        const EnergyEstimate at_one = mc_fstar(8, 1.0, 200, 1);
        CHECK(at_one.mean == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(at_one.std_error == doctest::Approx(0.0).epsilon(1e-12));
        const EnergyEstimate at_zero = mc_fstar(8, 0.0, 20000, 2);
        CHECK(std::abs(at_zero.mean) <= 3.0 * at_zero.std_error + 1e-12);
    }
    SUBCASE("k=1 arcsine value") {
        const EnergyEstimate est = mc_fstar(1, 0.5, 50000, 3);
        CHECK(std::abs(est.mean - 2.0 / M_PI * std::asin(0.5)) <= 3.0 * est.std_error);
    }
    SUBCASE("matches analytic F* across k and gamma") {
        for (int k : {1, 3, 8, 15, 24}) {
            for (double gamma : {-1.0, -0.5, 0.0, 0.5}) {
                const EnergyEstimate est = mc_fstar(k, gamma, 20000, 17);
                CHECK(std::abs(est.mean - fstar(k, gamma)) <=
                      4.0 * est.std_error + 1e-12);
            }
        }
    }
    SUBCASE("domain") {
        CHECK_THROWS_AS(mc_fstar(0, 0.0, 10, 1), std::invalid_argument);
        CHECK_THROWS_AS(mc_fstar(3, 2.0, 10, 1), std::invalid_argument);
    }
}

TEST_CASE("rotation invariance of the rounded distribution") {
    // rotate a fixed pair by a Householder reflection and compare means
    const int d = 3;
    const double gamma = -0.5;
    RoundingInput in = synthetic_pair(d, gamma, 6);
    Eigen::VectorXd w(6);
    w << 1, -2, 0.5, 3, -1, 0.25;
    w.normalize();
    const Eigen::MatrixXd Q = Eigen::MatrixXd::Identity(6, 6) - 2.0 * w * w.transpose();
    RoundingInput rotated = in;
    for (auto& v : rotated.vectors) v = (Q * v).eval();

    const Instance g = Instance::make(d, 2, {{0, 1, 1.0}});
    const EnergyEstimate a = estimate_energy(g, in, 4000, 71);
    const EnergyEstimate b = estimate_energy(g, rotated, 4000, 72);
    const double se = std::hypot(a.std_error, b.std_error);
    CHECK(std::abs(a.mean - b.mean) <= 4.0 * se);
}

} // TEST_SUITE
