#include "ckls/analysis.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <numeric>

#include "ckls/errors.hpp"
#include "ckls/parallel.hpp"
#include "ckls/simulation.hpp"

namespace ckls {

double mean_rate(const CklsParams& p, double t) {
    const double b = p.b();
    if (b == 0.0) return p.r0() + p.a() * t;
    // r0 e^{-bt} + a (1 - e^{-bt}) / b, written with expm1 for small b t.
    return p.r0() * std::exp(-b * t) - p.a() * std::expm1(-b * t) / b;
}

std::string_view to_string(MomentKind k) {
    return k == MomentKind::neg_moment ? "neg_moment" : "frac_moment";
}

double gronwall_affine(double A, double B, double c, double t) {
    if (c * t == 0.0) return A + B * t;
    return A * std::exp(c * t) + B * std::expm1(c * t) / c;
}

MomentBound gronwall_bound(const CklsParams& p, double t, MomentKind kind) {
    if (t < 0.0) throw DomainError("time must be >= 0");
    const Regime regime = classify_regime(p);
    if (!regime.moment_valid())
        throw RegimeError("moment bound hypotheses not met: " + regime.moment_violation);
    const double g = p.gamma(), s2 = p.sigma() * p.sigma(), b = p.b(), r0 = p.r0();
    MomentBound out{kind, t, 0.0, regime.moment};

    if (kind == MomentKind::neg_moment) {
        const double A = std::pow(r0, -2.0 * g);
        const double B = g * (2.0 * g + 1.0) * s2;
        const double c = regime.moment == MomentCase::CaseI
                             ? 2.0 * b * g
                             : g * (2.0 * b + (2.0 * g + 1.0) * s2);
        out.bound = gronwall_affine(A, B, c, t);
    } else if (regime.moment == MomentCase::CaseI) {
        const double A = std::pow(r0, 2.0 * (g - 1.0));
        const double B = (g - 1.0) * (2.0 * g - 3.0) * s2;
        out.bound = gronwall_affine(A, B, 2.0 * b * (1.0 - g), t);
    } else {
        out.bound = 1.0 + mean_rate(p, t);
    }
    return out;
}

std::vector<MomentEstimate> mc_moments(const CklsParams& p, double t,
                                       std::span<const double> exponents,
                                       const EngineConfig& cfg) {
    if (!(t > 0.0)) throw DomainError("moment horizon must be > 0");
    const NoiseMatrix noise(cfg.seed, TimeGrid(t, cfg.n_steps), cfg.n_paths);
    const std::size_t ne = exponents.size();
    const double dt = noise.grid().dt();
    // Per-path results laid out [path][exponent] for an ordered reduction.
    std::vector<double> terminal(cfg.n_paths * ne), integral(cfg.n_paths * ne);
    parallel_for(cfg.n_paths, cfg.workers, [&](std::size_t i) {
        const std::vector<double> row = noise.row(i);
        const Path path = euler_ckls_path(p, noise.grid(), row);
        for (std::size_t j = 0; j < ne; ++j) {
            const double k = exponents[j];
            double acc = 0.0;
            const std::size_t last = path.values.size() - 1;
            for (std::size_t m = 0; m <= last; ++m) {
                const double w = (m == 0 || m == last) ? 0.5 : 1.0;
                acc += w * std::pow(path.values[m], k);
            }
            terminal[i * ne + j] = std::pow(path.values[last], k);
            integral[i * ne + j] = acc * dt;
        }
    });

    std::vector<MomentEstimate> out(ne);
    std::vector<double> column(cfg.n_paths);
    for (std::size_t j = 0; j < ne; ++j) {
        out[j].exponent = exponents[j];
        for (std::size_t i = 0; i < cfg.n_paths; ++i) column[i] = terminal[i * ne + j];
        const MeanEstimate term = sample_mean(column);
        for (std::size_t i = 0; i < cfg.n_paths; ++i) column[i] = integral[i * ne + j];
        const MeanEstimate integ = sample_mean(column);
        out[j].terminal_estimate = term.estimate;
        out[j].terminal_std_error = term.std_error;
        out[j].time_integral_estimate = integ.estimate;
        out[j].time_integral_std_error = integ.std_error;
    }
    return out;
}

MomentEstimate mc_moment(const CklsParams& p, double t, double exponent, const EngineConfig& cfg) {
    const double k[] = {exponent};
    return mc_moments(p, t, k, cfg).front();
}

double ScaleValue::value() const {
    if (sign == 0) return 0.0;
    return sign * std::exp(log_abs);
}

namespace {

// log of the integrand after substituting y = e^s:
// (1 - m) s + K (e^{2(1-gamma) s} - 1).
struct ScaleIntegrand {
    double m;
    double K;
    double e;  // 2 (1 - gamma)

    double log_value(double s) const { return (1.0 - m) * s + K * std::expm1(e * s); }
    double log_slope(double s) const { return (1.0 - m) + K * e * std::exp(e * s); }
};

// Breakpoints that resolve the integrand near an endpoint on the scale of
// its local e-folding length, doubling outward.
void add_endpoint_breaks(std::vector<double>& breaks, double end, double toward, double slope) {
    const double length = std::abs(toward - end);
    const double dir = toward > end ? 1.0 : -1.0;
    double w = std::abs(slope) > 0.0 ? 1.0 / std::abs(slope) : length;
    w = std::min(w, length);
    while (w < length) {
        breaks.push_back(end + dir * w);
        w *= 2.0;
    }
}

}  // namespace

ScaleValue scale_function_log(const CklsParams& p, double x, Variant variant) {
    const double g = p.gamma();
    if (!(g >= 0.5 && g < 1.0)) throw DomainError("scale function requires gamma in [1/2, 1)");
    if (!(x > 0.0)) throw DomainError("scale function argument must be > 0");
    if (x == 1.0) return {0, -std::numeric_limits<double>::infinity()};

    const double s2 = p.sigma() * p.sigma();
    const ScaleIntegrand h{variant == Variant::paper ? g / p.sigma() : g, p.b() / (s2 * (1.0 - g)),
                           2.0 * (1.0 - g)};
    const double lo = std::min(0.0, std::log(x));
    const double hi = std::max(0.0, std::log(x));

    // The log-integrand is convex for K > 0 and concave for K < 0; sample it to
    // find the shift that keeps exp() in range.
    double shift = std::max(h.log_value(lo), h.log_value(hi));
    constexpr int kProbe = 256;
    for (int i = 1; i < kProbe; ++i)
        shift = std::max(shift, h.log_value(lo + (hi - lo) * i / kProbe));

    std::vector<double> breaks{lo, hi};
    add_endpoint_breaks(breaks, lo, hi, h.log_slope(lo));
    add_endpoint_breaks(breaks, hi, lo, h.log_slope(hi));
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

    auto f = [&](double s) { return std::exp(h.log_value(s) - shift); };
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        total += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
            f, breaks[i], breaks[i + 1], 12, 1e-13);
    }
    return {x > 1.0 ? 1 : -1, shift + std::log(total)};
}

double scale_function(const CklsParams& p, double x, Variant variant) {
    return scale_function_log(p, x, variant).value();
}

bool ScaleTrend::diverging() const {
    auto strictly_growing = [](const std::vector<ScalePoint>& pts, int sign) {
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (pts[i].p.sign != sign) return false;
            if (i > 0 && !(pts[i].p.log_abs > pts[i - 1].p.log_abs)) return false;
        }
        return !pts.empty();
    };
    return !finite_at_zero && !finite_at_infinity && strictly_growing(toward_zero, -1) &&
           strictly_growing(toward_infinity, 1);
}

ScaleTrend scale_function_trend(const CklsParams& p, Variant variant) {
    ScaleTrend trend;
    // Near 0 the integrand behaves like y^{-m}; near infinity like
    // y^{-m} exp{K y^{2(1-gamma)}}.
    const double m = variant == Variant::paper ? p.gamma() / p.sigma() : p.gamma();
    trend.finite_at_zero = m < 1.0;
    trend.finite_at_infinity = p.b() < 0.0 || (p.b() == 0.0 && m > 1.0);
    for (int k = 1; k <= 4; ++k) {
        const double small = std::pow(10.0, -2.0 * k);
        const double large = std::pow(10.0, 2.0 * k);
        trend.toward_zero.push_back({small, scale_function_log(p, small, variant)});
        trend.toward_infinity.push_back({large, scale_function_log(p, large, variant)});
    }
    return trend;
}

double ks_critical_constant(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0, 1)");
    return std::sqrt(-0.5 * std::log(0.5 * alpha));
}

namespace {

KsResult with_critical_values(double D, double n_eff) {
    return {D, ks_critical_constant(0.05) / std::sqrt(n_eff),
            ks_critical_constant(0.01) / std::sqrt(n_eff), n_eff};
}

void require_sorted(std::span<const double> s) {
    if (s.empty()) throw InputError("KS statistic needs at least one sample");
    if (!std::is_sorted(s.begin(), s.end())) throw InputError("KS samples must be sorted");
}

}  // namespace

KsResult ks_statistic(std::span<const double> sorted_samples,
                      const std::function<double(double)>& cdf,
                      std::optional<std::span<const double>> weights) {
    require_sorted(sorted_samples);
    const std::size_t n = sorted_samples.size();
    double total = static_cast<double>(n);
    double total_sq = total;
    if (weights) {
        if (weights->size() != n) throw InputError("weights and samples differ in length");
        total = 0.0;
        total_sq = 0.0;
        for (double w : *weights) {
            if (!(w > 0.0) || !std::isfinite(w)) throw InputError("KS weights must be positive");
            total += w;
            total_sq += w * w;
        }
    }
    double D = 0.0;
    double cum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double F = cdf(sorted_samples[i]);
        const double before = cum / total;
        cum += weights ? (*weights)[i] : 1.0;
        const double after = i + 1 == n ? 1.0 : cum / total;
        D = std::max({D, std::abs(after - F), std::abs(F - before)});
    }
    return with_critical_values(D, total * total / total_sq);
}

KsResult ks_weighted(std::span<const double> values, std::span<const double> weights,
                     const std::function<double(double)>& cdf) {
    if (values.size() != weights.size()) throw InputError("weights and samples differ in length");
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return values[i] < values[j]; });
    std::vector<double> v(values.size()), w(values.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        v[i] = values[order[i]];
        w[i] = weights[order[i]];
    }
    return ks_statistic(v, cdf, std::span<const double>(w));
}

KsResult ks_two_sample(std::span<const double> sorted_a, std::span<const double> sorted_b) {
    require_sorted(sorted_a);
    require_sorted(sorted_b);
    const double n = static_cast<double>(sorted_a.size());
    const double m = static_cast<double>(sorted_b.size());
    std::size_t i = 0, j = 0;
    double D = 0.0;
    while (i < sorted_a.size() && j < sorted_b.size()) {
        const double x = std::min(sorted_a[i], sorted_b[j]);
        while (i < sorted_a.size() && sorted_a[i] == x) ++i;
        while (j < sorted_b.size() && sorted_b[j] == x) ++j;
        D = std::max(D, std::abs(static_cast<double>(i) / n - static_cast<double>(j) / m));
    }
    return with_critical_values(D, n * m / (n + m));
}

}  // namespace ckls
