#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "ckls/girsanov.hpp"
#include "ckls/model.hpp"

namespace ckls {

// E r_t = a/b + (r0 - a/b) e^{-bt}; r0 + a t when b == 0.
double mean_rate(const CklsParams& p, double t);

enum class MomentKind { neg_moment, frac_moment };

std::string_view to_string(MomentKind k);

struct MomentBound {
    MomentKind kind;
    double t;
    double bound;
    MomentCase moment_case;
};

// Gronwall bound Psi(t) + c int_0^t Psi(s) e^{c(t-s)} ds for affine
// Psi(s) = A + B s, closed as A e^{ct} + B (e^{ct} - 1) / c.
double gronwall_affine(double A, double B, double c, double t);

// neg_moment bounds E r_t^{-2 gamma}, frac_moment bounds E r_t^{2(gamma-1)}.
// Case II frac_moment is 1 + mean_rate. RegimeError outside both cases.
MomentBound gronwall_bound(const CklsParams& p, double t, MomentKind kind);

struct EngineConfig {
    std::size_t n_steps = 1024;
    std::size_t n_paths = 100000;
    std::uint64_t seed = 1;
    unsigned workers = 1;
};

struct MomentEstimate {
    double exponent = 0.0;
    double terminal_estimate = 0.0;
    double terminal_std_error = 0.0;
    double time_integral_estimate = 0.0;
    double time_integral_std_error = 0.0;
};

// Euler Monte Carlo estimates of E r_t^k and E int_0^t r_s^k ds (trapezoid in
// time) for each exponent, all from the same paths.
std::vector<MomentEstimate> mc_moments(const CklsParams& p, double t,
                                       std::span<const double> exponents,
                                       const EngineConfig& cfg);
MomentEstimate mc_moment(const CklsParams& p, double t, double exponent, const EngineConfig& cfg);

// Scale function value as sign * exp(log_abs); sign 0 means exactly zero.
struct ScaleValue {
    int sign = 0;
    double log_abs = 0.0;

    double value() const;
};

// p(x) = e^{-K} int_1^x y^{-m} exp{K y^{2(1-gamma)}} dy, K = b / (sigma^2 (1-gamma)),
// m = gamma/sigma (paper) or gamma (derived). gamma in [1/2, 1), x > 0.
ScaleValue scale_function_log(const CklsParams& p, double x, Variant variant);
double scale_function(const CklsParams& p, double x, Variant variant);

struct ScalePoint {
    double x;
    ScaleValue p;
};

// Values at x = 10^{-2k} and x = 10^{2k}, k = 1..4.
struct ScaleTrend {
    std::vector<ScalePoint> toward_zero;
    std::vector<ScalePoint> toward_infinity;
    // Whether the integrand is integrable at the boundary, i.e. p has a finite
    // limit there. Decided from the tail exponents, not from the samples.
    bool finite_at_zero = false;
    bool finite_at_infinity = false;

    // |p| strictly increasing along both sequences with p < 0 near zero and
    // p > 0 near infinity, and no finite limit at either end.
    bool diverging() const;
};

ScaleTrend scale_function_trend(const CklsParams& p, Variant variant);

struct KsResult {
    double D = 0.0;
    double critical_05 = 0.0;
    double critical_01 = 0.0;
    double n_effective = 0.0;

    bool accept_01() const { return D < critical_01; }
};

// Asymptotic Kolmogorov critical constant c(alpha) = sqrt(-ln(alpha/2) / 2).
double ks_critical_constant(double alpha);

// One-sample statistic sup |F_n - F| over sorted samples. With weights the
// empirical CDF uses normalised cumulative weights and n is replaced by
// the effective sample size.
KsResult ks_statistic(std::span<const double> sorted_samples,
                      const std::function<double(double)>& cdf,
                      std::optional<std::span<const double>> weights = std::nullopt);

// Sorts (value, weight) pairs, then calls ks_statistic.
KsResult ks_weighted(std::span<const double> values, std::span<const double> weights,
                     const std::function<double(double)>& cdf);

KsResult ks_two_sample(std::span<const double> sorted_a, std::span<const double> sorted_b);

}  // namespace ckls
