#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace qmdc {

double log_gamma(double x);
// (Gamma((k+1)/2) / Gamma(k/2))^2 via log-gamma differences
double gamma_ratio_sq(int k);

// 2F1(1/2, 1/2; c; z) for c > 1, z in [0,1]; series for z < 1, Gauss
// closed form at z = 1. Emits a warning past 1e4 series terms.
double hyp2f1_half(double c, double z);

// Expected inner product of two projection-rounded unit vectors whose
// inputs have inner product gamma, with a k-row Gaussian matrix.
double fstar(int k, double gamma);

// (1 - F*(d^2-1, g)/(d-1)^2) / (1 - (d+1) g), minimized over
// g in [-1/(d-1), 1/(d+1)) to give alpha_d.
double alpha_objective(int d, double gamma);
// (1 - F*(d^2-1, g)/(d-1)^2) / (1 - g), minimized over [-1/(d-1), 1)
// to give beta_d.
double beta_objective(int d, double gamma);

struct AlphaResult {
    double alpha;
    double gamma_star;
    bool closed_form; // true for d >= 3 (endpoint minimizer), false for d = 2
};

AlphaResult alpha_ratio(int d);
double beta_ratio(int d);

struct RatioReport {
    int d;
    double alpha;
    double gamma_star;
    double beta;
    double baseline;  // (1/2)(1 - 1/d)
    double mixed_cap; // ((d-1)^2 + 1)/(2d(d-1))
    std::string method;
};

RatioReport ratio_report(int d);
std::string ratio_csv_header();
std::string ratio_csv_row(const RatioReport& r);

struct BadAngleScan {
    int d;
    int grid_points;
    double alpha_argmin;          // grid argmin of the alpha objective
    double beta_argmin;           // grid argmin of the beta objective
    double alpha_min_derivative;  // min central difference away from the left endpoint
    double beta_min_derivative;
    bool alpha_monotone; // derivative > 0 on the scanned interior
    bool beta_monotone;
};

BadAngleScan bad_angle_scan(int d, int grid_points);

struct AsymptoticReport {
    std::vector<int> d;
    std::vector<double> scaled_gap; // (alpha_d - baseline) * 2 d^3
    bool in_band;                   // scaled gap in [0.5, 1.5] for all d >= 10
    bool tail_decreasing;           // |scaled_gap - 1| decreasing along the list tail
};

AsymptoticReport asymptotic_check(const std::vector<int>& d_list);

// grid + golden-section minimizer used by the d = 2 ratio computations
double minimize_on_grid(const std::function<double(double)>& f, double lo, double hi,
                        int grid_points, double* argmin);

} // namespace qmdc
