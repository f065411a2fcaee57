#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "ckls/model.hpp"
#include "ckls/simulation.hpp"

namespace ckls {

// Drift adjustment q(x) of the change of measure.
//   paper:   (a/sigma x^{-gamma} - gamma sigma/2 x^{gamma-1}) sgn(gamma - 1)
//   derived: -(a/sigma x^{-gamma} - gamma sigma/2 x^{gamma-1}) for both branches;
//            this is the sign for which a - b x + q(x) sigma x^gamma loses the
//            constant a, as the image CIR requires.
double drift_adjustment(const CklsParams& p, double x, Variant variant = Variant::paper);

struct LogWeight {
    double log_weight = 0.0;     // sum q dB - 1/2 sum q^2 dt
    double q_integral_sq = 0.0;  // sum q^2 dt
};

// Left-point sums along one path; values has one more entry than increments.
LogWeight accumulate_log_weight(const CklsParams& p, std::span<const double> values,
                                std::span<const double> increments, double dt,
                                Variant variant = Variant::paper);

struct WeightedPath {
    Path path;
    double log_weight = 0.0;
    double q_integral_sq = 0.0;

    double weight() const;
};

// Throws InputError unless path was simulated on a grid matching the noise row.
WeightedPath accumulate_weight(const CklsParams& p, Path path, std::span<const double> increments,
                               Variant variant = Variant::paper);

struct WeightedEstimate {
    double estimate = 0.0;       // self-normalised sum w phi / sum w
    double std_error = 0.0;      // weighted standard deviation / sqrt(ess)
    double raw_estimate = 0.0;   // mean of w phi
    double raw_std_error = 0.0;  // sample standard deviation of w phi / sqrt(n)
    double ess = 0.0;            // (sum w)^2 / sum w^2
    std::size_t n = 0;
};

// Folds in index order so the result does not depend on how the inputs were
// produced. Zero weights are -inf log weights; all zero -> DegenerateWeights.
WeightedEstimate weighted_expectation(std::span<const double> log_weights,
                                      std::span<const double> values);
WeightedEstimate weighted_expectation(std::span<const WeightedPath> paths,
                                      const std::function<double(const Path&)>& functional);

struct MeanEstimate {
    double estimate = 0.0;
    double std_error = 0.0;
};

MeanEstimate sample_mean(std::span<const double> values);

// Monte Carlo estimate of E int_0^t q(r_s)^2 ds.
MeanEstimate novikov_diagnostic(std::span<const WeightedPath> paths);
MeanEstimate novikov_diagnostic(std::span<const double> q_integral_sq);

// Euler paths under P with their log weights, keeping only per-path
// scalars so large path counts fit in memory.
struct WeightedRun {
    std::vector<double> log_weights;
    std::vector<double> q_integral_sq;
    std::vector<double> terminal;
    std::size_t truncated_paths = 0;
};

WeightedRun simulate_weighted(const CklsParams& p, const NoiseMatrix& noise,
                              Variant variant = Variant::paper, unsigned workers = 1);

}  // namespace ckls
