#include <catch2/catch_amalgamated.hpp>

#include <atomic>
#include <cmath>
#include <stdexcept>

#include "ckls/analysis.hpp"
#include "ckls/errors.hpp"
#include "ckls/parallel.hpp"
#include "ckls/rng.hpp"
#include "ckls/simulation.hpp"

using namespace ckls;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

const CklsParams kHigh(1.0, 0.2, 0.5, 1.5, 1.0);
const CklsParams kLow(1.0, 0.2, 0.5, 0.75, 1.0);

std::vector<double> zeros(std::size_t n) { return std::vector<double>(n, 0.0); }

bool same_paths(const std::vector<Path>& a, const std::vector<Path>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].values != b[i].values || a[i].truncations != b[i].truncations) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("time grid") {
    const TimeGrid g(1.0, 8);
    CHECK(g.n_points() == 9);
    CHECK(g.dt() == 0.125);
    const auto t = g.times();
    CHECK(t.front() == 0.0);
    CHECK(t.back() == 1.0);
    for (std::size_t k = 1; k < t.size(); ++k) CHECK_THAT(t[k] - t[k - 1], WithinRel(0.125, 1e-14));

    // A horizon that is not a multiple of dt still ends exactly on t_end.
    CHECK(TimeGrid(0.3, 7).times().back() == 0.3);
    CHECK(TimeGrid(0.0, 0).n_points() == 1);
    CHECK_THROWS_AS(TimeGrid(1.0, 0), DomainError);
    CHECK_THROWS_AS(TimeGrid(-1.0, 4), DomainError);
    CHECK_THROWS_AS(g.time(9), InputError);
}

TEST_CASE("noise rows are reproducible and prefix-stable") {
    const TimeGrid g(1.0, 64);
    const NoiseMatrix small(7, g, 3), large(7, g, 100);
    CHECK(small.row(2) == large.row(2));
    CHECK(small.row(0) != small.row(1));
    CHECK(NoiseMatrix(8, g, 3).row(0) != small.row(0));
}

TEST_CASE("substreams differ by tag and index") {
    auto a = substream(1, 0, StreamTag::noise);
    auto b = substream(1, 0, StreamTag::exact);
    auto c = substream(1, 1, StreamTag::noise);
    auto a2 = substream(1, 0, StreamTag::noise);
    const auto x = a();
    CHECK(x != b());
    CHECK(x != c());
    CHECK(x == a2());
}

TEST_CASE("noise increments have variance dt") {
    const TimeGrid g(0.5, 256);
    const NoiseMatrix noise(11, g, 400);
    double sum = 0.0, sum_sq = 0.0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < noise.n_paths(); ++i) {
        for (double x : noise.row(i)) {
            sum += x;
            sum_sq += x * x;
            ++n;
        }
    }
    const double var = sum_sq / n - (sum / n) * (sum / n);
    // Sample variance of a Gaussian has relative sd sqrt(2/n).
    CHECK(std::abs(var / g.dt() - 1.0) < 4.0 * std::sqrt(2.0 / n));
    CHECK(std::abs(sum / n) < 4.0 * std::sqrt(g.dt() / n));
}

TEST_CASE("zero-noise euler with b = 0 adds a dt per step") {
    const CklsParams p(1.0, 0.0, 0.5, 1.5, 1.0);
    const TimeGrid g(0.01, 1);
    const Path path = euler_ckls_path(p, g, zeros(1));
    CHECK(path.values[0] == 1.0);
    CHECK(path.values[1] == 1.0 + 0.01);
}

TEST_CASE("zero-noise euler converges to the ODE solution") {
    const double exact = mean_rate(kHigh, 1.0);
    double prev_err = INFINITY;
    for (std::size_t n : {16, 64, 256, 1024}) {
        const Path path = euler_ckls_path(kHigh, TimeGrid(1.0, n), zeros(n));
        const double err = std::abs(path.terminal() - exact);
        CHECK(err < prev_err);
        prev_err = err;
    }
    CHECK(prev_err < 1e-3);
}

TEST_CASE("increment count must match the grid") {
    CHECK_THROWS_AS(euler_ckls_path(kHigh, TimeGrid(1.0, 4), zeros(3)), InputError);
}

TEST_CASE("auxiliary drift values") {
    CHECK_THAT(auxiliary_drift(CklsParams(1.0, 1.0, 1.0, 1.5, 1.0), 1.0, Variant::paper),
               WithinAbs(0.25, 1e-15));
    CHECK_THAT(auxiliary_drift(kLow, 1.0, Variant::derived), WithinAbs(-0.10625, 1e-15));
    CHECK_THAT(auxiliary_drift(kLow, 1.0, Variant::paper), WithinAbs(-0.0125, 1e-15));

    const CklsParams p(1.0, 1.0, 1.0, 1.5, 1.0);
    const TimeGrid g(0.001, 1);
    const Path path = euler_auxiliary_path(p, g, zeros(1), Variant::derived);
    CHECK_THAT(path.values[1], WithinRel(1.0 + 0.25 * 0.001, 1e-15));
}

TEST_CASE("euler terminal mean matches the closed form", "[statistical]") {
    const TimeGrid g(1.0, 1024);
    const NoiseMatrix noise(20261019, g, 100000);
    const auto paths = euler_ckls(kHigh, noise);
    double sum = 0.0, sum_sq = 0.0;
    for (const auto& p : paths) {
        sum += p.terminal();
        sum_sq += p.terminal() * p.terminal();
    }
    const double n = static_cast<double>(paths.size());
    const double mean = sum / n;
    const double se = std::sqrt((sum_sq / n - mean * mean) / (n - 1.0));
    const double exact = 5.0 - 4.0 * std::exp(-0.2);
    CHECK(std::abs(mean - exact) < 3.0 * se);
}

TEST_CASE("auxiliary paths rarely hit the floor", "[statistical]") {
    for (const CklsParams& p : {kHigh, kLow}) {
        double prev = 1.0;
        for (std::size_t n : {256, 1024}) {
            const NoiseMatrix noise(5, TimeGrid(1.0, n), 10000);
            const auto paths = euler_auxiliary(p, noise, Variant::derived);
            const PositivityStats st = positivity_stats(paths);
            CHECK(st.fraction_truncated() <= prev);
            prev = st.fraction_truncated();
        }
        CHECK(prev < 0.01);
    }
}

TEST_CASE("positivity floor clamps and counts") {
    const CklsParams p(1.0, 0.0, 1.0, 0.5, 0.01);
    const TimeGrid g(1.0, 2);
    const std::vector<double> dB{-10.0, 0.0};
    const Path path = euler_ckls_path(p, g, dB);
    CHECK(path.values[1] == kPositivityFloor);
    CHECK(path.truncations == 1);
    const std::vector<Path> one{path};
    const PositivityStats st = positivity_stats(one);
    CHECK(st.paths_truncated == 1);
    CHECK(st.truncation_events == 1);
    CHECK(st.min_value == kPositivityFloor);
}

TEST_CASE("paths are bit-identical across runs and worker counts") {
    const NoiseMatrix noise(99, TimeGrid(0.5, 128), 257);
    const auto a = euler_ckls(kLow, noise, 1);
    CHECK(same_paths(a, euler_ckls(kLow, noise, 1)));
    CHECK(same_paths(a, euler_ckls(kLow, noise, 4)));
    CHECK(same_paths(euler_auxiliary(kHigh, noise, Variant::paper, 1),
                     euler_auxiliary(kHigh, noise, Variant::paper, 3)));
}

TEST_CASE("parallel_for visits each index once and propagates errors") {
    std::vector<int> hits(1000, 0);
    parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i] += 1; });
    for (int h : hits) CHECK(h == 1);

    CHECK_THROWS_AS(parallel_for(100, 4,
                                 [](std::size_t i) {
                                     if (i == 57) throw std::runtime_error("boom");
                                 }),
                    std::runtime_error);
}
