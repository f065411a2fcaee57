#include "ckls/distribution.hpp"

#include <cmath>
#include <limits>

#include "ckls/errors.hpp"
#include "ckls/exact.hpp"
#include "ckls/special.hpp"

namespace ckls {
namespace {

constexpr long kMaxTerms = 200000;

double log_poisson_weight(double half_zeta, long n) {
    return -half_zeta + static_cast<double>(n) * std::log(half_zeta) -
           std::lgamma(static_cast<double>(n) + 1.0);
}

// Sums term(n) for n >= 0 starting at `start`. up_ratio(n) bounds
// term(m+1)/term(m) for all m >= n, down_ratio(n) bounds term(m-1)/term(m)
// for all m <= n; both are decreasing away from the start. Each side gets
// half of the tolerance.
template <class Term, class UpRatio, class DownRatio>
double outward_sum(long start, double tol, Term term, UpRatio up_ratio, DownRatio down_ratio) {
    tol *= 0.5;
    double sum = term(start);
    for (long n = start; n < start + kMaxTerms; ++n) {
        const double rho = up_ratio(n);
        if (rho < 1.0) {
            const double t = term(n);
            if (t * rho / (1.0 - rho) <= tol * sum) break;
        }
        sum += term(n + 1);
    }
    for (long n = start; n > 0; --n) {
        const double rho = down_ratio(n);
        if (rho < 1.0) {
            const double t = term(n);
            if (t * rho / (1.0 - rho) <= tol * sum) break;
        }
        sum += term(n - 1);
    }
    return sum;
}

}  // namespace

NoncentralChiSq::NoncentralChiSq(double delta, double zeta, double series_tol)
    : delta_(delta), zeta_(zeta), tol_(series_tol) {
    if (!(delta > 0.0) || !std::isfinite(delta)) throw DomainError("delta must be > 0");
    if (!(zeta >= 0.0) || !std::isfinite(zeta)) throw DomainError("zeta must be >= 0");
    if (!(series_tol > 0.0)) throw DomainError("series_tol must be > 0");
}

double NoncentralChiSq::pdf(double x) const {
    if (std::isnan(x)) throw DomainError("pdf argument is NaN");
    if (x < 0.0) return 0.0;
    if (x == 0.0) {
        if (delta_ < 2.0) throw DomainError("density is unbounded at 0 for delta < 2");
        return delta_ == 2.0 ? 0.5 * std::exp(-0.5 * zeta_) : 0.0;
    }
    if (std::isinf(x)) return 0.0;
    if (zeta_ == 0.0) return std::exp(log_central_chi2_pdf(x, delta_));

    const double hz = 0.5 * zeta_;
    const long start = static_cast<long>(std::floor(hz));
    auto term = [&](long n) {
        return std::exp(log_poisson_weight(hz, n) +
                        log_central_chi2_pdf(x, delta_ + 2.0 * static_cast<double>(n)));
    };
    auto up = [&](long n) {
        return hz / static_cast<double>(n + 1) * x / (delta_ + 2.0 * static_cast<double>(n));
    };
    auto down = [&](long n) {
        return static_cast<double>(n) / hz * (delta_ + 2.0 * static_cast<double>(n) - 2.0) / x;
    };
    return outward_sum(start, tol_, term, up, down);
}

double NoncentralChiSq::cdf(double x) const {
    if (std::isnan(x)) throw DomainError("cdf argument is NaN");
    if (x <= 0.0) return 0.0;
    if (std::isinf(x)) return 1.0;
    if (zeta_ == 0.0) return regularized_gamma_p(0.5 * delta_, 0.5 * x);

    const double hz = 0.5 * zeta_;
    const long start = static_cast<long>(std::floor(hz));
    auto term = [&](long n) {
        return std::exp(log_poisson_weight(hz, n)) *
               regularized_gamma_p(0.5 * delta_ + static_cast<double>(n), 0.5 * x);
    };
    const double tol = 0.5 * tol_;  // per side
    // P(a, x) decreases in a, so the Poisson weight ratio bounds the upper tail.
    auto weight_down = [&](long n) { return static_cast<double>(n) / hz; };
    double sum = term(start);
    for (long n = start; n < start + kMaxTerms; ++n) {
        const double rho = hz / static_cast<double>(n + 2);
        if (rho < 1.0) {
            const double first = hz / static_cast<double>(n + 1);
            if (term(n) * first / (1.0 - rho) <= tol * sum) break;
        }
        sum += term(n + 1);
    }
    // Downward the incomplete gamma factor grows, so bound with weights only.
    for (long n = start; n > 0; --n) {
        const double rho = weight_down(n);
        if (rho < 1.0) {
            const double w = std::exp(log_poisson_weight(hz, n));
            if (w * rho / (1.0 - rho) <= tol * sum) break;
        }
        sum += term(n - 1);
    }
    return std::min(1.0, sum);
}

double NoncentralChiSq::sf(double x) const {
    if (std::isnan(x)) throw DomainError("sf argument is NaN");
    if (x <= 0.0) return 1.0;
    if (std::isinf(x)) return 0.0;
    if (zeta_ == 0.0) return regularized_gamma_q(0.5 * delta_, 0.5 * x);

    const double hz = 0.5 * zeta_;
    const long start = static_cast<long>(std::floor(hz));
    auto weight = [&](long n) { return std::exp(log_poisson_weight(hz, n)); };
    auto term = [&](long n) {
        return weight(n) * regularized_gamma_q(0.5 * delta_ + static_cast<double>(n), 0.5 * x);
    };
    const double tol = 0.5 * tol_;  // per side
    double sum = term(start);
    // Q(a, x) increases in a (bounded by 1): bound the upper tail by weights.
    for (long n = start; n < start + kMaxTerms; ++n) {
        const double rho = hz / static_cast<double>(n + 2);
        if (rho < 1.0 && weight(n + 1) / (1.0 - rho) <= tol * sum) break;
        sum += term(n + 1);
    }
    for (long n = start; n > 0; --n) {
        const double rho = static_cast<double>(n) / hz;
        if (rho < 1.0 && term(n) * rho / (1.0 - rho) <= tol * sum) break;
        sum += term(n - 1);
    }
    return std::min(1.0, sum);
}

TransitionSpec transition_spec(const CklsParams& p, const CirParams& cir, double t,
                               Variant delta_rule) {
    require_girsanov(p);
    if (!(t > 0.0)) throw DomainError("transition time must be > 0");
    const OuMoments m = sqrt_y_moments(cir, t);
    TransitionSpec spec{};
    spec.t = t;
    spec.L = m.variance;
    spec.zeta = m.mean * m.mean / m.variance;
    spec.delta_rule = delta_rule;
    if (delta_rule == Variant::derived) {
        spec.delta = 4.0 * cir.drift_const / (cir.vol * cir.vol);
    } else {
        const double c = cir.vol / p.sigma();
        spec.delta = c * c;
    }
    return spec;
}

double rate_density(const CklsParams& p, const Transform& tr, const TransitionSpec& spec,
                    double x) {
    require_girsanov(p);
    if (!(x > 0.0)) throw DomainError("rate density argument must be > 0");
    const auto v = tr.evaluate(x);
    const double y = v.f / spec.L;
    if (!std::isfinite(y) || y == 0.0) return 0.0;
    return spec.law().pdf(y) * std::abs(v.fprime) / spec.L;
}

double rate_cdf(const CklsParams& p, const Transform& tr, const TransitionSpec& spec, double x) {
    require_girsanov(p);
    if (!(x > 0.0)) return 0.0;
    if (std::isinf(x)) return 1.0;
    const double y = tr.value(x) / spec.L;
    const NoncentralChiSq law = spec.law();
    return tr.gamma() < 1.0 ? law.cdf(y) : law.sf(y);
}

}  // namespace ckls
