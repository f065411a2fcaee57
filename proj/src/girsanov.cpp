#include "ckls/girsanov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ckls/errors.hpp"
#include "ckls/parallel.hpp"

namespace ckls {

double drift_adjustment(const CklsParams& p, double x, Variant variant) {
    if (!(x > 0.0)) throw DomainError("drift adjustment argument must be > 0");
    const double g = p.gamma();
    if (g == 1.0) throw DegenerateTransform("drift adjustment undefined at gamma == 1");
    const double core =
        p.a() / p.sigma() * std::pow(x, -g) - 0.5 * g * p.sigma() * std::pow(x, g - 1.0);
    if (variant == Variant::derived) return -core;
    return g > 1.0 ? core : -core;
}

LogWeight accumulate_log_weight(const CklsParams& p, std::span<const double> values,
                                std::span<const double> increments, double dt, Variant variant) {
    if (values.size() != increments.size() + 1)
        throw InputError("path length does not match the noise row");
    LogWeight w;
    double stochastic = 0.0;
    for (std::size_t k = 0; k < increments.size(); ++k) {
        const double q = drift_adjustment(p, values[k], variant);
        stochastic += q * increments[k];
        w.q_integral_sq += q * q * dt;
    }
    w.log_weight = stochastic - 0.5 * w.q_integral_sq;
    return w;
}

double WeightedPath::weight() const { return std::exp(log_weight); }

WeightedPath accumulate_weight(const CklsParams& p, Path path, std::span<const double> increments,
                               Variant variant) {
    if (path.values.size() != path.grid.n_points())
        throw InputError("path values do not match its grid");
    const LogWeight w =
        accumulate_log_weight(p, path.values, increments, path.grid.dt(), variant);
    return {std::move(path), w.log_weight, w.q_integral_sq};
}

WeightedEstimate weighted_expectation(std::span<const double> log_weights,
                                      std::span<const double> values) {
    if (log_weights.empty()) throw InputError("weighted expectation needs at least one sample");
    if (log_weights.size() != values.size())
        throw InputError("weights and values differ in length");

    const std::size_t n = log_weights.size();
    double shift = -std::numeric_limits<double>::infinity();
    for (double lw : log_weights) shift = std::max(shift, lw);
    if (!(shift > -std::numeric_limits<double>::infinity()))
        throw DegenerateWeights("all importance weights are zero");

    double sw = 0.0, sw2 = 0.0, swphi = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double w = std::exp(log_weights[i] - shift);
        sw += w;
        sw2 += w * w;
        swphi += w * values[i];
    }
    WeightedEstimate e;
    e.n = n;
    e.estimate = swphi / sw;
    e.ess = sw * sw / sw2;
    double swdev = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = values[i] - e.estimate;
        swdev += std::exp(log_weights[i] - shift) * d * d;
    }
    e.std_error = std::sqrt(swdev / sw) / std::sqrt(e.ess);

    std::vector<double> raw(n);
    for (std::size_t i = 0; i < n; ++i) raw[i] = std::exp(log_weights[i]) * values[i];
    const MeanEstimate m = sample_mean(raw);
    e.raw_estimate = m.estimate;
    e.raw_std_error = m.std_error;
    return e;
}

WeightedEstimate weighted_expectation(std::span<const WeightedPath> paths,
                                      const std::function<double(const Path&)>& functional) {
    std::vector<double> lw(paths.size()), phi(paths.size());
    for (std::size_t i = 0; i < paths.size(); ++i) {
        lw[i] = paths[i].log_weight;
        phi[i] = functional(paths[i].path);
    }
    return weighted_expectation(lw, phi);
}

MeanEstimate sample_mean(std::span<const double> values) {
    if (values.empty()) throw InputError("mean of an empty sample");
    const double n = static_cast<double>(values.size());
    double sum = 0.0;
    for (double v : values) sum += v;
    const double mean = sum / n;
    if (values.size() < 2) return {mean, 0.0};
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    return {mean, std::sqrt(ss / (n - 1.0) / n)};
}

MeanEstimate novikov_diagnostic(std::span<const WeightedPath> paths) {
    std::vector<double> q(paths.size());
    for (std::size_t i = 0; i < paths.size(); ++i) q[i] = paths[i].q_integral_sq;
    return novikov_diagnostic(q);
}

MeanEstimate novikov_diagnostic(std::span<const double> q_integral_sq) {
    return sample_mean(q_integral_sq);
}

WeightedRun simulate_weighted(const CklsParams& p, const NoiseMatrix& noise, Variant variant,
                              unsigned workers) {
    const std::size_t n = noise.n_paths();
    WeightedRun run;
    run.log_weights.resize(n);
    run.q_integral_sq.resize(n);
    run.terminal.resize(n);
    std::vector<char> truncated(n, 0);
    parallel_for(n, workers, [&](std::size_t i) {
        const std::vector<double> row = noise.row(i);
        const Path path = euler_ckls_path(p, noise.grid(), row);
        const LogWeight w =
            accumulate_log_weight(p, path.values, row, noise.grid().dt(), variant);
        run.log_weights[i] = w.log_weight;
        run.q_integral_sq[i] = w.q_integral_sq;
        run.terminal[i] = path.terminal();
        truncated[i] = path.truncated() ? 1 : 0;
    });
    for (char t : truncated) run.truncated_paths += static_cast<std::size_t>(t);
    return run;
}

}  // namespace ckls
