#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ckls/model.hpp"

namespace ckls {

// Uniform grid 0 = t_0 < ... < t_n = t_end. The single-point grid
// (t_end = 0, n_steps = 0) is allowed and carries no increments.
class TimeGrid {
public:
    TimeGrid(double t_end, std::size_t n_steps);

    double t_end() const { return t_end_; }
    std::size_t n_steps() const { return n_steps_; }
    std::size_t n_points() const { return n_steps_ + 1; }
    double dt() const { return dt_; }
    double time(std::size_t k) const;
    std::vector<double> times() const;

    friend bool operator==(const TimeGrid&, const TimeGrid&) = default;

private:
    double t_end_;
    std::size_t n_steps_;
    double dt_;
};

// Brownian increments with variance dt, one row per path. Rows are generated
// on demand from the substream (seed, path index), so the matrix never has
// to be held in memory.
class NoiseMatrix {
public:
    NoiseMatrix(std::uint64_t seed, TimeGrid grid, std::size_t n_paths);

    std::uint64_t seed() const { return seed_; }
    const TimeGrid& grid() const { return grid_; }
    std::size_t n_paths() const { return n_paths_; }

    void fill_row(std::size_t path, std::span<double> out) const;
    std::vector<double> row(std::size_t path) const;

private:
    std::uint64_t seed_;
    TimeGrid grid_;
    std::size_t n_paths_;
};

// Values are clamped at this floor; each clamp is counted on the path.
inline constexpr double kPositivityFloor = 1e-12;

struct Path {
    TimeGrid grid;
    std::vector<double> values;
    std::size_t truncations = 0;

    bool truncated() const { return truncations > 0; }
    double terminal() const { return values.back(); }
};

// Euler-Maruyama for dr = (a - b r) dt + sigma r^gamma dB.
Path euler_ckls_path(const CklsParams& p, const TimeGrid& grid,
                     std::span<const double> increments);
std::vector<Path> euler_ckls(const CklsParams& p, const NoiseMatrix& noise, unsigned workers = 1);

// Drift of the auxiliary equation dr = (a - b r + q(r) sigma r^gamma) dt + sigma r^gamma dB'.
// gamma > 1: 2a - b x - (gamma sigma^2 / 2) x^{2 gamma - 1} (both variants).
// gamma < 1: paper -> (gamma sigma / 2) x^{2 gamma - 1} - b x,
//            derived -> (gamma sigma^2 / 2) x^{2 gamma - 1} - b x.
double auxiliary_drift(const CklsParams& p, double x, Variant variant);

Path euler_auxiliary_path(const CklsParams& p, const TimeGrid& grid,
                          std::span<const double> increments, Variant variant);
std::vector<Path> euler_auxiliary(const CklsParams& p, const NoiseMatrix& noise, Variant variant,
                                  unsigned workers = 1);

// Euler-Maruyama for the rate dynamics that the closed-form solution obeys
// under the new measure:
//   dr = (b r + (gamma sigma^2 / 2) r^{2 gamma - 1}) dt + sgn(1 - gamma) sigma r^gamma dB.
// Obtained by applying Ito's formula to r = f^{-1}(Y) with Y the image CIR.
Path euler_q_rate_path(const CklsParams& p, const TimeGrid& grid,
                       std::span<const double> increments);

struct PositivityStats {
    std::size_t n_paths = 0;
    std::size_t paths_truncated = 0;
    std::size_t truncation_events = 0;
    double min_value = 0.0;

    double fraction_truncated() const {
        return n_paths == 0 ? 0.0 : static_cast<double>(paths_truncated) / n_paths;
    }
};

PositivityStats positivity_stats(std::span<const Path> paths);

}  // namespace ckls
