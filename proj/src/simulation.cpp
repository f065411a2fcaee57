#include "ckls/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "ckls/errors.hpp"
#include "ckls/parallel.hpp"
#include "ckls/rng.hpp"

namespace ckls {

TimeGrid::TimeGrid(double t_end, std::size_t n_steps) : t_end_(t_end), n_steps_(n_steps) {
    if (n_steps == 0) {
        if (t_end != 0.0) throw DomainError("a grid with zero steps must have t_end == 0");
        dt_ = 0.0;
        return;
    }
    if (!(t_end > 0.0) || !std::isfinite(t_end)) throw DomainError("t_end must be > 0");
    dt_ = t_end / static_cast<double>(n_steps);
}

double TimeGrid::time(std::size_t k) const {
    if (k > n_steps_) throw InputError("grid index out of range");
    return k == n_steps_ ? t_end_ : static_cast<double>(k) * dt_;
}

std::vector<double> TimeGrid::times() const {
    std::vector<double> t(n_points());
    for (std::size_t k = 0; k < t.size(); ++k) t[k] = time(k);
    return t;
}

NoiseMatrix::NoiseMatrix(std::uint64_t seed, TimeGrid grid, std::size_t n_paths)
    : seed_(seed), grid_(grid), n_paths_(n_paths) {}

void NoiseMatrix::fill_row(std::size_t path, std::span<double> out) const {
    if (out.size() != grid_.n_steps()) throw InputError("noise row has wrong length");
    auto gen = substream(seed_, path, StreamTag::noise);
    std::normal_distribution<double> normal;
    const double sd = std::sqrt(grid_.dt());
    for (double& x : out) x = sd * normal(gen);
}

std::vector<double> NoiseMatrix::row(std::size_t path) const {
    std::vector<double> r(grid_.n_steps());
    fill_row(path, r);
    return r;
}

namespace {

void check_increments(const TimeGrid& grid, std::span<const double> increments) {
    if (increments.size() != grid.n_steps())
        throw InputError("increment count does not match the grid");
}

// Generic clamped Euler loop: x_{k+1} = x_k + drift(x_k) dt + diffusion(x_k) dB_k.
template <class Drift, class Diffusion>
Path euler_loop(double x0, const TimeGrid& grid, std::span<const double> increments,
                Drift drift, Diffusion diffusion) {
    check_increments(grid, increments);
    Path path{grid, {}, 0};
    path.values.resize(grid.n_points());
    path.values[0] = x0;
    const double dt = grid.dt();
    double x = x0;
    for (std::size_t k = 0; k < increments.size(); ++k) {
        x = x + drift(x) * dt + diffusion(x) * increments[k];
        if (!(x > kPositivityFloor)) {
            x = kPositivityFloor;
            ++path.truncations;
        }
        path.values[k + 1] = x;
    }
    return path;
}

template <class Kernel>
std::vector<Path> run_batch(const NoiseMatrix& noise, unsigned workers, Kernel kernel) {
    std::vector<Path> out(noise.n_paths(), Path{noise.grid(), {}, 0});
    parallel_for(noise.n_paths(), workers, [&](std::size_t i) {
        const std::vector<double> row = noise.row(i);
        out[i] = kernel(std::span<const double>(row));
    });
    return out;
}

}  // namespace

Path euler_ckls_path(const CklsParams& p, const TimeGrid& grid,
                     std::span<const double> increments) {
    const double a = p.a(), b = p.b(), s = p.sigma(), g = p.gamma();
    return euler_loop(
        p.r0(), grid, increments, [=](double x) { return a - b * x; },
        [=](double x) { return s * std::pow(x, g); });
}

std::vector<Path> euler_ckls(const CklsParams& p, const NoiseMatrix& noise, unsigned workers) {
    return run_batch(noise, workers, [&](std::span<const double> row) {
        return euler_ckls_path(p, noise.grid(), row);
    });
}

double auxiliary_drift(const CklsParams& p, double x, Variant variant) {
    const double g = p.gamma(), s = p.sigma();
    if (g == 1.0) throw DegenerateTransform("auxiliary equation undefined at gamma == 1");
    const double power = std::pow(x, 2.0 * g - 1.0);
    if (g > 1.0) return 2.0 * p.a() - p.b() * x - 0.5 * g * s * s * power;
    const double coeff = variant == Variant::paper ? 0.5 * g * s : 0.5 * g * s * s;
    return coeff * power - p.b() * x;
}

Path euler_auxiliary_path(const CklsParams& p, const TimeGrid& grid,
                          std::span<const double> increments, Variant variant) {
    if (p.gamma() == 1.0) throw DegenerateTransform("auxiliary equation undefined at gamma == 1");
    const double s = p.sigma(), g = p.gamma();
    return euler_loop(
        p.r0(), grid, increments, [&](double x) { return auxiliary_drift(p, x, variant); },
        [=](double x) { return s * std::pow(x, g); });
}

std::vector<Path> euler_auxiliary(const CklsParams& p, const NoiseMatrix& noise, Variant variant,
                                  unsigned workers) {
    return run_batch(noise, workers, [&](std::span<const double> row) {
        return euler_auxiliary_path(p, noise.grid(), row, variant);
    });
}

Path euler_q_rate_path(const CklsParams& p, const TimeGrid& grid,
                       std::span<const double> increments) {
    const double b = p.b(), s = p.sigma(), g = p.gamma();
    if (g == 1.0) throw DegenerateTransform("image dynamics undefined at gamma == 1");
    const double sign = g < 1.0 ? 1.0 : -1.0;
    return euler_loop(
        p.r0(), grid, increments,
        [=](double x) { return b * x + 0.5 * g * s * s * std::pow(x, 2.0 * g - 1.0); },
        [=](double x) { return sign * s * std::pow(x, g); });
}

PositivityStats positivity_stats(std::span<const Path> paths) {
    PositivityStats st;
    st.n_paths = paths.size();
    st.min_value = std::numeric_limits<double>::infinity();
    for (const Path& path : paths) {
        if (path.truncated()) ++st.paths_truncated;
        st.truncation_events += path.truncations;
        for (double v : path.values) st.min_value = std::min(st.min_value, v);
    }
    return st;
}

}  // namespace ckls
