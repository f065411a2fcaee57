#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/distributions/non_central_chi_squared.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "ckls/analysis.hpp"
#include "ckls/distribution.hpp"
#include "ckls/errors.hpp"
#include "ckls/exact.hpp"
#include "ckls/rng.hpp"
#include "ckls/special.hpp"

using namespace ckls;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

const CklsParams kHigh(1.0, 0.2, 0.5, 1.5, 1.0);
const CklsParams kLow(1.0, 0.2, 0.5, 0.75, 1.0);

template <class F>
double integrate(F f, double lo, double hi) {
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, lo, hi, 15, 1e-13);
}

// int_0^inf pdf via x = u^k, k = 2 / min(delta, 1), which removes the
// x^{delta/2-1} singularity at the origin.
double total_mass(const NoncentralChiSq& d) {
    const double k = 2.0 / std::min(d.delta(), 1.0);
    const double hi = std::pow(d.mean() + 40.0 * std::sqrt(d.variance()), 1.0 / k);
    return integrate(
        [&](double u) { return u == 0.0 ? 0.0 : k * std::pow(u, k - 1.0) * d.pdf(std::pow(u, k)); },
        0.0, hi);
}

}  // namespace

TEST_CASE("incomplete gamma against boost") {
    for (double a : {0.5, 1.0, 2.5, 7.0, 30.5, 120.0}) {
        for (double x : {0.0, 0.01, 0.5, 1.0, 3.0, 10.0, 40.0, 150.0}) {
            CHECK_THAT(regularized_gamma_p(a, x), WithinAbs(boost::math::gamma_p(a, x), 1e-14));
            CHECK_THAT(regularized_gamma_q(a, x), WithinAbs(boost::math::gamma_q(a, x), 1e-14));
            const double q = boost::math::gamma_q(a, x);
            if (q > 1e-300) CHECK_THAT(regularized_gamma_q(a, x), WithinRel(q, 1e-11));
        }
    }
    CHECK_THROWS_AS(regularized_gamma_p(0.0, 1.0), DomainError);
    CHECK_THROWS_AS(regularized_gamma_p(1.0, -1.0), DomainError);
}

TEST_CASE("log-gamma accuracy on the working range") {
    for (double x = 0.5; x <= 200.0; x += 0.37) {
        const double ref = boost::math::lgamma(x);
        CHECK(std::abs(std::lgamma(x) - ref) <= 1e-13 * std::max(1.0, std::abs(ref)));
    }
}

TEST_CASE("central chi-square reductions") {
    const NoncentralChiSq two(2.0, 0.0);
    CHECK(two.pdf(0.0) == 0.5);
    CHECK_THAT(two.cdf(2.0 * std::log(2.0)), WithinAbs(0.5, 1e-15));
    CHECK_THAT(two.cdf(3.0), WithinRel(-std::expm1(-1.5), 1e-14));
    CHECK(two.cdf(0.0) == 0.0);
    CHECK(two.pdf(-1.0) == 0.0);

    const NoncentralChiSq one(1.0, 0.0);
    CHECK_THAT(one.pdf(1.0), WithinRel(std::exp(-0.5) / std::sqrt(2.0 * std::numbers::pi), 1e-14));
    CHECK_THAT(one.pdf(1.0), WithinAbs(0.241971, 1e-6));
    CHECK_THROWS_AS(one.pdf(0.0), DomainError);
    CHECK(NoncentralChiSq(3.0, 1.0).pdf(0.0) == 0.0);
    CHECK_THAT(NoncentralChiSq(2.0, 3.0).pdf(0.0), WithinRel(0.5 * std::exp(-1.5), 1e-15));
}

TEST_CASE("construction errors") {
    CHECK_THROWS_AS(NoncentralChiSq(0.0, 1.0), DomainError);
    CHECK_THROWS_AS(NoncentralChiSq(1.0, -1.0), DomainError);
    CHECK_THROWS_AS(NoncentralChiSq(1.0, 1.0, 0.0), DomainError);
}

TEST_CASE("density, cdf and survival against boost", "[property]") {
    for (double delta : {0.5, 1.0, 2.0, 3.0, 10.0}) {
        for (double zeta : {0.0, 0.5, 2.0, 14.45, 80.0, 400.0}) {
            const NoncentralChiSq d(delta, zeta);
            const boost::math::non_central_chi_squared ref(delta, zeta);
            for (double q : {1e-4, 0.01, 0.2, 0.5, 0.8, 0.99, 0.9999}) {
                const double x = boost::math::quantile(ref, q);
                if (!(x > 0.0)) continue;
                CHECK_THAT(d.pdf(x), WithinRel(boost::math::pdf(ref, x), 1e-9));
                CHECK_THAT(d.cdf(x), WithinAbs(boost::math::cdf(ref, x), 1e-12));
                CHECK_THAT(d.sf(x), WithinAbs(boost::math::cdf(boost::math::complement(ref, x)), 1e-12));
            }
        }
    }
}

TEST_CASE("upper tail keeps relative precision") {
    const NoncentralChiSq d(1.0, 14.45);
    const boost::math::non_central_chi_squared ref(1.0, 14.45);
    for (double x : {80.0, 120.0, 200.0}) {
        const double q = boost::math::cdf(boost::math::complement(ref, x));
        CHECK_THAT(d.sf(x), WithinRel(q, 1e-8));
    }
}

TEST_CASE("density integrates to one") {
    for (auto [delta, zeta] : {std::pair{1.0, 14.45}, {1.0, 0.5}, {3.0, 2.0}, {0.5, 1.0}, {4.0, 0.0}}) {
        CHECK_THAT(total_mass(NoncentralChiSq(delta, zeta)), WithinAbs(1.0, 1e-8));
    }
}

TEST_CASE("cdf is monotone and differentiates to the pdf", "[property]") {
    for (auto [delta, zeta] : {std::pair{1.0, 14.45}, {1.0, 0.5}, {3.0, 2.0}}) {
        const NoncentralChiSq d(delta, zeta);
        double prev = 0.0;
        for (double x = 0.05; x < d.mean() + 8.0 * std::sqrt(d.variance()); x += 0.05) {
            const double c = d.cdf(x);
            CHECK(c >= prev);
            CHECK(d.pdf(x) >= 0.0);
            // Each series is truncated within series_tol of its sum.
            CHECK_THAT(c + d.sf(x), WithinAbs(1.0, 2.0 * d.series_tol()));
            prev = c;
            const double h = 1e-5;
            CHECK_THAT((d.cdf(x + h) - d.cdf(x - h)) / (2.0 * h), WithinAbs(d.pdf(x), 1e-6));
        }
    }
}

TEST_CASE("sampler moments and law", "[statistical]") {
    auto gen = substream(2024, 0, StreamTag::oracle);
    for (auto [delta, zeta] : {std::pair{1.0, 14.45}, {3.0, 2.0}, {0.5, 1.0}}) {
        const NoncentralChiSq d(delta, zeta);
        const std::size_t n = 1000000;
        std::vector<double> x(n);
        double sum = 0.0;
        for (auto& v : x) sum += (v = d.sample(gen));
        const double mean = sum / n;
        double m2 = 0.0;
        for (double v : x) m2 += (v - mean) * (v - mean);
        const double var = m2 / (n - 1);
        // Fourth cumulant of the non-central chi-square: 48 (delta + 4 zeta).
        const double k2 = 2.0 * (delta + 2.0 * zeta), k4 = 48.0 * (delta + 4.0 * zeta);
        CHECK(std::abs(mean - d.mean()) < 3.0 * std::sqrt(k2 / n));
        CHECK(std::abs(var - k2) < 3.0 * std::sqrt((k4 + 2.0 * k2 * k2) / n));

        x.resize(100000);
        std::sort(x.begin(), x.end());
        CHECK(ks_statistic(x, [&](double v) { return d.cdf(v); }).accept_01());
    }
}

TEST_CASE("zero noncentrality, one degree of freedom is a squared normal") {
    const NoncentralChiSq d(1.0, 0.0);
    auto g1 = substream(5, 0, StreamTag::oracle);
    auto g2 = substream(5, 0, StreamTag::oracle);
    for (int i = 0; i < 100; ++i) {
        // A fresh distribution per draw, as the sampler does, so no cached
        // second variate is reused.
        const double z = std::normal_distribution<double>()(g2);
        CHECK(d.sample(g1) == z * z);
    }
}

TEST_CASE("transition spec for the high-gamma reference") {
    const CirParams cir = derive_cir(kHigh, make_transform(kHigh, 1.0));
    const TransitionSpec s = transition_spec(kHigh, cir, 1.0);
    CHECK_THAT(s.L, WithinAbs(0.0566466, 5e-7));
    CHECK_THAT(s.zeta, WithinRel(std::exp(-0.2) / s.L, 1e-14));
    CHECK_THAT(s.zeta, WithinAbs(14.4533, 5e-4));
    CHECK(s.delta == 1.0);
    CHECK(transition_spec(kHigh, cir, 1.0, Variant::paper).delta == 1.0);

    const CirParams cir2 = derive_cir(kHigh, make_transform(kHigh, 2.0));
    CHECK(transition_spec(kHigh, cir2, 1.0, Variant::derived).delta == 1.0);
    CHECK_THAT(transition_spec(kHigh, cir2, 1.0, Variant::paper).delta, WithinRel(4.0, 1e-15));

    CHECK_THROWS_AS(transition_spec(kHigh, cir, 0.0), DomainError);
}

TEST_CASE("transition mean equals the OU second moment", "[property]") {
    for (const CklsParams& p : {kHigh, kLow, CklsParams(0.3, 0.7, 0.4, 0.6, 0.2),
                                CklsParams(2.0, -0.5, 1.2, 2.5, 3.0)}) {
        for (double C : {0.5, 1.0, 7.0}) {
            const CirParams cir = derive_cir(p, make_transform(p, C));
            for (double t : {0.01, 0.5, 1.0, 5.0}) {
                const TransitionSpec s = transition_spec(p, cir, t);
                const OuMoments m = sqrt_y_moments(cir, t);
                CHECK_THAT(s.L * (s.delta + s.zeta), WithinRel(m.mean * m.mean + m.variance, 1e-12));
            }
        }
    }
}

TEST_CASE("rate density integrates to one and matches its cdf") {
    for (const CklsParams& p : {kHigh, kLow}) {
        const Transform tr = make_transform(p);
        const TransitionSpec s = transition_spec(p, derive_cir(p, tr), 1.0);
        // Split on a log grid so both the bulk and the tails are resolved.
        double mass = 0.0;
        double lo = 1e-8;
        for (double hi = 1e-7; hi <= 1e8; hi *= 10.0) {
            mass += integrate([&](double x) { return rate_density(p, tr, s, x); }, lo, hi);
            lo = hi;
        }
        CHECK_THAT(mass, WithinAbs(1.0, 1e-6));
        for (double x : {0.3, 0.8, 1.0, 1.5, 3.0}) {
            const double h = 1e-6 * x;
            const double fd = (rate_cdf(p, tr, s, x + h) - rate_cdf(p, tr, s, x - h)) / (2.0 * h);
            CHECK_THAT(fd, WithinAbs(rate_density(p, tr, s, x), 1e-6));
        }
        CHECK(rate_cdf(p, tr, s, 0.0) == 0.0);
        CHECK_THROWS_AS(rate_density(p, tr, s, 0.0), DomainError);
    }
}

TEST_CASE("rate density does not depend on C under the derived rule", "[property]") {
    for (const CklsParams& p : {kHigh, kLow}) {
        const Transform t1 = make_transform(p, 1.0), t7 = make_transform(p, 7.0);
        const TransitionSpec s1 = transition_spec(p, derive_cir(p, t1), 0.5);
        const TransitionSpec s7 = transition_spec(p, derive_cir(p, t7), 0.5);
        const TransitionSpec p7 = transition_spec(p, derive_cir(p, t7), 0.5, Variant::paper);
        double worst_paper = 0.0;
        for (double x : {0.2, 0.6, 1.0, 1.4, 2.5}) {
            const double g1 = rate_density(p, t1, s1, x);
            CHECK_THAT(rate_density(p, t7, s7, x), WithinRel(g1, 1e-10));
            worst_paper = std::max(worst_paper, std::abs(rate_density(p, t7, p7, x) / g1 - 1.0));
        }
        // The printed rule delta = C^2 breaks the invariance away from C = 1.
        CHECK(worst_paper > 1e-2);
    }
}

TEST_CASE("closed-form draws follow the transition law", "[statistical]") {
    for (const CklsParams& p : {kHigh, kLow}) {
        const Transform tr = make_transform(p);
        const TransitionSpec s = transition_spec(p, derive_cir(p, tr), 1.0);
        auto draws = explicit_r_samples(p, 1.0, 100000, 20261019);
        std::sort(draws.begin(), draws.end());
        const KsResult ks = ks_statistic(draws, [&](double x) { return rate_cdf(p, tr, s, x); });
        CHECK(ks.D < ks.critical_01);
    }
}
