#include "ckls/exact.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "ckls/distribution.hpp"
#include "ckls/errors.hpp"
#include "ckls/parallel.hpp"

namespace ckls {

double ou_variance_factor(double kappa, double t) {
    const double x = 2.0 * kappa * t;
    if (std::abs(x) < 1e-8) return t * (1.0 + kappa * t);
    return std::expm1(x) / (2.0 * kappa);
}

OuMoments sqrt_y_moments(const CirParams& cir, double t) {
    if (t < 0.0) throw DomainError("time must be >= 0");
    const double kappa = 0.5 * cir.drift_lin;
    const double half_vol = 0.5 * cir.vol;
    return {std::sqrt(cir.y0) * std::exp(kappa * t),
            half_vol * half_vol * ou_variance_factor(kappa, t)};
}

double exact_sqrt_y(const CirParams& cir, double t, double z) {
    const OuMoments m = sqrt_y_moments(cir, t);
    return m.mean + std::sqrt(m.variance) * z;
}

double explicit_r(const CklsParams& p, double t, double z) {
    if (t < 0.0) throw DomainError("time must be >= 0");
    const double g = p.gamma();
    if (g == 1.0) throw DegenerateTransform("explicit solution undefined at gamma == 1");
    require_girsanov(p);
    const double kappa = p.b() * (1.0 - g);
    const double one_minus = 1.0 - g;
    const double base = std::pow(p.r0(), one_minus) * std::exp(kappa * t) +
                        p.sigma() * std::abs(g - 1.0) * std::sqrt(ou_variance_factor(kappa, t)) * z;
    if (base == 0.0) throw SingularSample("explicit solution base is zero");
    return std::pow(std::abs(base), 1.0 / one_minus);
}

std::vector<double> explicit_r_samples(const CklsParams& p, double t, std::size_t n_draws,
                                       std::uint64_t seed, unsigned workers) {
    require_girsanov(p);
    std::vector<double> out(n_draws);
    parallel_for(n_draws, workers, [&](std::size_t i) {
        auto gen = substream(seed, i, StreamTag::exact);
        std::normal_distribution<double> normal;
        for (;;) {
            try {
                out[i] = explicit_r(p, t, normal(gen));
                return;
            } catch (const SingularSample&) {
            }
        }
    });
    return out;
}

Path explicit_r_path(const CklsParams& p, const TimeGrid& grid,
                     std::span<const double> increments) {
    if (increments.size() != grid.n_steps())
        throw InputError("increment count does not match the grid");
    const double g = p.gamma();
    if (g == 1.0) throw DegenerateTransform("explicit solution undefined at gamma == 1");
    const double kappa = p.b() * (1.0 - g);
    const double decay = std::exp(kappa * grid.dt());
    const double scale = p.sigma() * std::abs(g - 1.0);
    const double u0 = std::pow(p.r0(), 1.0 - g);

    Path path{grid, {}, 0};
    path.values.resize(grid.n_points());
    path.values[0] = p.r0();
    double integral = 0.0;
    for (std::size_t k = 0; k < increments.size(); ++k) {
        integral = decay * (integral + increments[k]);
        const double base = u0 * std::exp(kappa * grid.time(k + 1)) + scale * integral;
        double r = base == 0.0 ? 0.0 : std::pow(std::abs(base), 1.0 / (1.0 - g));
        if (!(r > kPositivityFloor)) {
            r = kPositivityFloor;
            ++path.truncations;
        } else if (!std::isfinite(r)) {
            r = std::numeric_limits<double>::max();
            ++path.truncations;
        }
        path.values[k + 1] = r;
    }
    return path;
}

double sample_cir_exact(const CklsParams& p, const CirParams& cir, double t, Xoshiro256& gen) {
    const TransitionSpec spec = transition_spec(p, cir, t, Variant::derived);
    return spec.L * spec.law().sample(gen);
}

}  // namespace ckls
