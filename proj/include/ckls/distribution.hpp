#pragma once

#include <cmath>
#include <random>

#include "ckls/model.hpp"

namespace ckls {

// Non-central chi-square law with `delta` degrees of freedom and
// noncentrality `zeta`, evaluated as a Poisson(zeta/2) mixture of central
// chi-square laws. Series are summed outward from the Poisson mode and stop
// once the geometric tail bound falls below series_tol relative to the sum.
class NoncentralChiSq {
public:
    explicit NoncentralChiSq(double delta, double zeta, double series_tol = 1e-12);

    double delta() const { return delta_; }
    double zeta() const { return zeta_; }
    double series_tol() const { return tol_; }

    double mean() const { return delta_ + zeta_; }
    double variance() const { return 2.0 * (delta_ + 2.0 * zeta_); }

    // x < 0 -> 0. At x == 0 the density is 0 (delta > 2), e^{-zeta/2}/2
    // (delta == 2) or unbounded (delta < 2, DomainError).
    double pdf(double x) const;
    double cdf(double x) const;
    // 1 - cdf(x), summed directly so the upper tail keeps its precision.
    double sf(double x) const;

    template <class Urbg>
    double sample(Urbg& gen) const {
        if (delta_ >= 1.0) {
            std::normal_distribution<double> normal;
            const double shifted = normal(gen) + std::sqrt(zeta_);
            double x = shifted * shifted;
            if (delta_ > 1.0) x += std::chi_squared_distribution<double>(delta_ - 1.0)(gen);
            return x;
        }
        long n = 0;
        if (zeta_ > 0.0) n = std::poisson_distribution<long>(0.5 * zeta_)(gen);
        return std::chi_squared_distribution<double>(delta_ + 2.0 * static_cast<double>(n))(gen);
    }

private:
    double delta_;
    double zeta_;
    double tol_;
};

// Law of Y_t / L at a fixed time t: non-central chi-square(delta, zeta).
struct TransitionSpec {
    double t;
    double L;
    double delta;
    double zeta;
    Variant delta_rule;

    NoncentralChiSq law() const { return NoncentralChiSq(delta, zeta); }
};

// L is the variance of the Ornstein-Uhlenbeck process sqrt(Y) at time t and
// zeta its squared mean over L. delta_rule derived -> 4 drift_const / vol^2,
// paper -> C^2 (C recovered as vol / sigma).
TransitionSpec transition_spec(const CklsParams& p, const CirParams& cir, double t,
                               Variant delta_rule = Variant::derived);

// Density g_t(x) = g_{delta,zeta}(f(x)/L) |f'(x)| / L of r_t under the new measure.
double rate_density(const CklsParams& p, const Transform& tr, const TransitionSpec& spec,
                    double x);

// Distribution function of r_t implied by rate_density; uses the survival
// function of Y_t/L when f is decreasing (gamma > 1).
double rate_cdf(const CklsParams& p, const Transform& tr, const TransitionSpec& spec, double x);

}  // namespace ckls
