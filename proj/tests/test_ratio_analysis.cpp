#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "qmdc/ratio_analysis.hpp"

using namespace qmdc;

TEST_SUITE("ratio_analysis") {

TEST_CASE("gamma ratios") {
    CHECK(gamma_ratio_sq(1) == doctest::Approx(1.0 / M_PI).epsilon(1e-13));
    CHECK(gamma_ratio_sq(2) == doctest::Approx(M_PI / 4.0).epsilon(1e-13));
    CHECK(gamma_ratio_sq(3) == doctest::Approx(4.0 / M_PI).epsilon(1e-13));
    // exact-gamma oracle at k=5: (Gamma(3)/Gamma(2.5))^2 = (2/(1.5*0.5*sqrt(pi)))^2
    const double g25 = 1.5 * 0.5 * std::sqrt(M_PI);
    CHECK(gamma_ratio_sq(5) == doctest::Approx((2.0 / g25) * (2.0 / g25)).epsilon(1e-13));
    // relative error stays tiny out to k = 1e4 (Stirling cross-check)
    const double k = 10000;
    const double stirling = std::exp(2.0 * (std::lgamma((k + 1) / 2.0) - std::lgamma(k / 2.0)));
    CHECK(gamma_ratio_sq(10000) == doctest::Approx(stirling).epsilon(1e-12));
    CHECK_THROWS_AS(log_gamma(0.0), std::invalid_argument);
    CHECK_THROWS_AS(log_gamma(-1.0), std::invalid_argument);
}

TEST_CASE("hypergeometric series") {
    CHECK(hyp2f1_half(2.0, 0.0) == doctest::Approx(1.0));
    // arcsine identity: 2F1(1/2,1/2;3/2;z^2) = arcsin(z)/z
    for (double z : {0.1, 0.5, 0.9, 0.99}) {
        CHECK(hyp2f1_half(1.5, z * z) ==
              doctest::Approx(std::asin(z) / z).epsilon(1e-13));
    }
    CHECK(hyp2f1_half(1.5, 0.25) == doctest::Approx(M_PI / 3.0).epsilon(1e-13));
    // Gauss formula at z=1 against a direct log-gamma evaluation
    const double want = std::exp(std::lgamma(5.0) + std::lgamma(4.0) - 2.0 * std::lgamma(4.5));
    CHECK(hyp2f1_half(5.0, 1.0) == doctest::Approx(want).epsilon(1e-13));
    CHECK_THROWS_AS(hyp2f1_half(1.0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(hyp2f1_half(2.0, 1.5), std::invalid_argument);
}

TEST_CASE("fstar basics") {
    for (int k : {1, 3, 8, 15, 24}) {
        CHECK(fstar(k, 0.0) == 0.0);
        CHECK(fstar(k, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(fstar(k, -1.0) == doctest::Approx(-1.0).epsilon(1e-12));
        // oddness and |F*| <= 1 on a grid
        double prev = -2.0;
        for (int i = 0; i <= 1000; ++i) {
            const double g = -1.0 + 2.0 * i / 1000.0;
            const double v = fstar(k, g);
            CHECK(v == doctest::Approx(-fstar(k, -g)).epsilon(1e-14));
            CHECK(std::abs(v) <= 1.0 + 1e-12);
            CHECK(v >= prev - 1e-12); // monotone nondecreasing
            prev = v;
        }
    }
    // k=1 arcsine law
    for (double g : {-0.99, -0.5, 0.25, 0.7}) {
        CHECK(fstar(1, g) == doctest::Approx(2.0 / M_PI * std::asin(g)).epsilon(1e-10));
    }
    CHECK_THROWS_AS(fstar(0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(fstar(3, 1.5), std::invalid_argument);
}

TEST_CASE("alpha against the table") {
    CHECK(alpha_ratio(3).alpha == doctest::Approx(0.372996).epsilon(1e-5));
    CHECK(alpha_ratio(3).gamma_star == doctest::Approx(-0.5));
    CHECK(alpha_ratio(4).alpha == doctest::Approx(0.388478).epsilon(1e-5));
    CHECK(alpha_ratio(5).alpha == doctest::Approx(0.406129).epsilon(1e-5));
    CHECK(alpha_ratio(10).alpha == doctest::Approx(0.450614).epsilon(1e-5));
    CHECK(alpha_ratio(100).alpha == doctest::Approx(0.495001).epsilon(1e-5));
    const AlphaResult a2 = alpha_ratio(2);
    CHECK(a2.alpha == doctest::Approx(0.498767).epsilon(1e-5));
    CHECK(a2.gamma_star == doctest::Approx(-0.9659).epsilon(1e-3));
    CHECK_FALSE(a2.closed_form);
}

TEST_CASE("alpha closed form equals grid minimization for d=3..10") {
    for (int d = 3; d <= 10; ++d) {
        const double closed = alpha_ratio(d).alpha;
        const double lo = -1.0 / (d - 1.0), hi = 1.0 / (d + 1.0);
        const double numeric = minimize_on_grid(
            [d](double g) { return alpha_objective(d, g); }, lo, hi, 10000, nullptr);
        CHECK(numeric == doctest::Approx(closed).epsilon(1e-7));
    }
}

TEST_CASE("beta") {
    CHECK(beta_ratio(2) == doctest::Approx(0.956337).epsilon(1e-5));
    for (int d : {3, 4, 5, 10, 25, 50}) {
        CHECK(std::abs(beta_ratio(d) - 2.0 * alpha_ratio(d).alpha) < 1e-8);
    }
    CHECK(beta_ratio(10) == doctest::Approx(2.0 * 0.450614).epsilon(2e-5));
    CHECK(beta_ratio(3) == doctest::Approx(2.0 * 0.372996).epsilon(2e-5));
}

TEST_CASE("theorem 1(i): alpha beats the maximally mixed baseline for d=2..200") {
    for (int d = 2; d <= 200; ++d) {
        const double baseline = 0.5 * (1.0 - 1.0 / d);
        CHECK(alpha_ratio(d).alpha > baseline);
    }
}

TEST_CASE("mixed product-state caps across the table") {
    const struct {
        int d;
        double cap;
    } rows[] = {{2, 0.5},          {3, 5.0 / 12.0},  {4, 5.0 / 12.0},
                {5, 17.0 / 40.0},  {10, 41.0 / 90.0}, {100, 4901.0 / 9900.0}};
    for (const auto& row : rows) {
        const RatioReport r = ratio_report(row.d);
        CHECK(r.mixed_cap == doctest::Approx(row.cap).epsilon(1e-12));
        CHECK(r.alpha <= r.mixed_cap + 1e-12);
    }
}

TEST_CASE("ratio report rows") {
    const RatioReport r = ratio_report(3);
    CHECK(r.alpha == doctest::Approx(0.372996).epsilon(1e-5));
    CHECK(r.beta == doctest::Approx(2 * r.alpha).epsilon(1e-8));
    CHECK(r.baseline == doctest::Approx(1.0 / 3.0));
    CHECK(r.mixed_cap == doctest::Approx(5.0 / 12.0));
    CHECK(r.alpha > r.baseline);
    CHECK(r.alpha <= r.mixed_cap);
    CHECK(r.method == "closed-form");
    CHECK(ratio_csv_header() == "d,alpha,gamma_star,beta,baseline,mixed_cap");
    CHECK(ratio_csv_row(r).substr(0, 2) == "3,");
}

TEST_CASE("bad angle scan") {
    SUBCASE("d=3: derivative positive away from the left endpoint") {
        const BadAngleScan scan = bad_angle_scan(3, 10000);
        CHECK(scan.alpha_monotone);
        CHECK(scan.alpha_min_derivative > 0.0);
        CHECK(scan.beta_monotone);
        CHECK(scan.alpha_argmin == doctest::Approx(-0.5).epsilon(1e-3));
    }
    SUBCASE("d=5: argmin at -1/4 within grid spacing") {
        const BadAngleScan scan = bad_angle_scan(5, 10000);
        const double spacing = (1.0 / 6.0 + 0.25) / 10000.0;
        CHECK(std::abs(scan.alpha_argmin - (-0.25)) <= spacing + 1e-12);
    }
    SUBCASE("d=2: interior argmin, non-monotone derivative") {
        const BadAngleScan scan = bad_angle_scan(2, 10000);
        CHECK(scan.alpha_argmin == doctest::Approx(-0.9659).epsilon(1e-3));
        CHECK_FALSE(scan.alpha_monotone);
    }
}

TEST_CASE("asymptotics") {
    const AsymptoticReport rep = asymptotic_check({10, 20, 50, 100, 200});
    CHECK(rep.in_band);
    CHECK(rep.tail_decreasing);
    for (double r : rep.scaled_gap) {
        CHECK(r > 0.5);
        CHECK(r < 1.5);
    }
    // spot values from the printed table
    CHECK(alpha_ratio(10).alpha - 0.45 > 0.0);
    CHECK(alpha_ratio(100).alpha - 0.495 > 0.0);
    CHECK(alpha_ratio(3).alpha - 1.0 / 3.0 > 0.0);
    CHECK_THROWS_AS(asymptotic_check({10, 10}), std::invalid_argument);
}

} // TEST_SUITE
