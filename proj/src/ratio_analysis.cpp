#include "qmdc/ratio_analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iostream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "qmdc/hamiltonian.hpp"

namespace qmdc {

double log_gamma(double x) {
    if (!(x > 0.0)) throw std::invalid_argument("log_gamma requires x > 0");
    return std::lgamma(x);
}

double gamma_ratio_sq(int k) {
    if (k < 1) throw std::invalid_argument("gamma_ratio_sq requires k >= 1");
    return std::exp(2.0 * (log_gamma((k + 1) / 2.0) - log_gamma(k / 2.0)));
}

double hyp2f1_half(double c, double z) {
    if (!(c > 1.0)) throw std::invalid_argument("hyp2f1_half requires c > 1");
    if (z < 0.0 || z > 1.0) throw std::invalid_argument("hyp2f1_half requires z in [0, 1]");
    if (z == 1.0) {
        // Gauss: 2F1(a,b;c;1) = G(c)G(c-a-b) / (G(c-a)G(c-b)), here a = b = 1/2
        return std::exp(log_gamma(c) + log_gamma(c - 1.0) - 2.0 * log_gamma(c - 0.5));
    }
    // rising-factorial series; the term ratio is bounded by z for c > 1,
    // so the tail after t_n is at most t_n * z / (1 - z)
    double term = 1.0, sum = 1.0;
    const long hard_cap = 1000000;
    static std::atomic<int> warnings_left{5};
    for (long n = 0; n < hard_cap; ++n) {
        const double half_n = 0.5 + n;
        term *= (half_n * half_n) / ((c + n) * (n + 1.0)) * z;
        sum += term;
        if (term * z / (1.0 - z) < 1e-14 * std::abs(sum)) return sum;
        if (n == 10000 && warnings_left.fetch_sub(1) > 0)
            std::clog << "[qmdc] hyp2f1_half: slow convergence (c=" << c << ", z=" << z << ")\n";
    }
    return sum;
}

double fstar(int k, double gamma) {
    if (k < 1) throw std::invalid_argument("fstar requires k >= 1");
    if (gamma < -1.0 || gamma > 1.0) throw std::invalid_argument("fstar requires gamma in [-1, 1]");
    return (2.0 * gamma / k) * gamma_ratio_sq(k) * hyp2f1_half(k / 2.0 + 1.0, gamma * gamma);
}

double alpha_objective(int d, double gamma) {
    const int k = d * d - 1;
    return (1.0 - fstar(k, gamma) / ((d - 1.0) * (d - 1.0))) / (1.0 - (d + 1.0) * gamma);
}

double beta_objective(int d, double gamma) {
    const int k = d * d - 1;
    return (1.0 - fstar(k, gamma) / ((d - 1.0) * (d - 1.0))) / (1.0 - gamma);
}

double minimize_on_grid(const std::function<double(double)>& f, double lo, double hi,
                        int grid_points, double* argmin) {
    const double step = (hi - lo) / grid_points;
    double best_x = lo, best = f(lo);
    for (int i = 1; i < grid_points; ++i) {
        const double x = lo + i * step;
        const double v = f(x);
        if (v < best) {
            best = v;
            best_x = x;
        }
    }
    // golden-section refinement on the bracketing interval
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = std::max(lo, best_x - step);
    double b = std::min(hi - step * 1e-9, best_x + step);
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > 1e-10) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = f(x2);
        }
    }
    const double xm = 0.5 * (a + b);
    const double fm = f(xm);
    if (fm < best) {
        best = fm;
        best_x = xm;
    }
    if (argmin) *argmin = best_x;
    return best;
}

AlphaResult alpha_ratio(int d) {
    if (d < 2) throw std::invalid_argument("alpha_ratio requires d >= 2");
    const double lo = -1.0 / (d - 1.0);
    if (d >= 3) {
        const double gamma_star = lo;
        const int k = d * d - 1;
        const double alpha =
            0.5 * ((d - 1.0) / d) * (1.0 - fstar(k, gamma_star) / ((d - 1.0) * (d - 1.0)));
        // the endpoint value and the objective there must agree
        const double check = alpha_objective(d, gamma_star);
        if (std::abs(check - alpha) > 1e-12)
            throw NumericError("alpha closed form inconsistent with objective");
        return {alpha, gamma_star, true};
    }
    const double hi = 1.0 / (d + 1.0);
    double gamma_star = 0.0;
    const double alpha = minimize_on_grid([d](double g) { return alpha_objective(d, g); }, lo, hi,
                                          10000, &gamma_star);
    return {alpha, gamma_star, false};
}

double beta_ratio(int d) {
    if (d < 2) throw std::invalid_argument("beta_ratio requires d >= 2");
    const double lo = -1.0 / (d - 1.0);
    const double numeric =
        minimize_on_grid([d](double g) { return beta_objective(d, g); }, lo, 1.0, 10000, nullptr);
    if (d == 2) return numeric;
    const double endpoint = 2.0 * alpha_ratio(d).alpha;
    if (numeric < endpoint - 1e-8)
        throw NumericError("beta scan found a value below the endpoint minimizer");
    return endpoint;
}

RatioReport ratio_report(int d) {
    const AlphaResult a = alpha_ratio(d);
    const BaselineValues base = baseline_values(d);
    RatioReport r;
    r.d = d;
    r.alpha = a.alpha;
    r.gamma_star = a.gamma_star;
    r.beta = beta_ratio(d);
    r.baseline = base.maximally_mixed;
    r.mixed_cap = base.mixed_prod_edge_cap;
    r.method = a.closed_form ? "closed-form" : "numeric-minimization";
    if (!(r.alpha > r.baseline) || r.alpha > r.mixed_cap + 1e-12)
        throw NumericError("ratio report out of range at d=" + std::to_string(d));
    if (d >= 3 && std::abs(r.beta - 2.0 * r.alpha) > 1e-10)
        throw NumericError("beta/alpha doubling violated at d=" + std::to_string(d));
    return r;
}

std::string ratio_csv_header() { return "d,alpha,gamma_star,beta,baseline,mixed_cap"; }

std::string ratio_csv_row(const RatioReport& r) {
    std::ostringstream os;
    os.precision(12);
    os << r.d << "," << r.alpha << "," << r.gamma_star << "," << r.beta << "," << r.baseline << ","
       << r.mixed_cap;
    return os.str();
}

BadAngleScan bad_angle_scan(int d, int grid_points) {
    if (d < 2) throw std::invalid_argument("bad_angle_scan requires d >= 2");
    if (grid_points < 10) throw std::invalid_argument("bad_angle_scan needs a real grid");
    BadAngleScan scan;
    scan.d = d;
    scan.grid_points = grid_points;

    const double fd_h = 1e-6;
    auto run = [&](const std::function<double(double)>& f, double lo, double hi, double& argmin,
                   double& min_deriv, bool& monotone) {
        const double step = (hi - lo) / grid_points;
        double best = f(lo), best_x = lo;
        min_deriv = std::numeric_limits<double>::infinity();
        for (int i = 0; i <= grid_points; ++i) {
            const double x = lo + i * step;
            if (x >= hi) break;
            const double v = f(x);
            if (v < best) {
                best = v;
                best_x = x;
            }
            // derivative scan skips a margin at the left endpoint
            if (x > lo + 1e-6 && x + fd_h < hi) {
                const double der = (f(x + fd_h) - f(x - fd_h)) / (2.0 * fd_h);
                min_deriv = std::min(min_deriv, der);
            }
        }
        argmin = best_x;
        monotone = min_deriv > 0.0;
    };

    run([d](double g) { return alpha_objective(d, g); }, -1.0 / (d - 1.0), 1.0 / (d + 1.0),
        scan.alpha_argmin, scan.alpha_min_derivative, scan.alpha_monotone);
    run([d](double g) { return beta_objective(d, g); }, -1.0 / (d - 1.0), 1.0, scan.beta_argmin,
        scan.beta_min_derivative, scan.beta_monotone);
    return scan;
}

AsymptoticReport asymptotic_check(const std::vector<int>& d_list) {
    AsymptoticReport rep;
    rep.d = d_list;
    rep.in_band = true;
    rep.tail_decreasing = true;
    for (std::size_t i = 0; i < d_list.size(); ++i) {
        const int d = d_list[i];
        if (i > 0 && d <= d_list[i - 1])
            throw std::invalid_argument("asymptotic_check requires an increasing d list");
        const double alpha = alpha_ratio(d).alpha;
        const double baseline = 0.5 * (1.0 - 1.0 / d);
        const double r = (alpha - baseline) * 2.0 * d * d * d;
        rep.scaled_gap.push_back(r);
        if (d >= 10 && (r < 0.5 || r > 1.5)) rep.in_band = false;
        if (i > 0 && d_list[i - 1] >= 10 &&
            std::abs(r - 1.0) >= std::abs(rep.scaled_gap[i - 1] - 1.0))
            rep.tail_decreasing = false;
    }
    return rep;
}

} // namespace qmdc
