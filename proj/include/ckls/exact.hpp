#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ckls/model.hpp"
#include "ckls/rng.hpp"
#include "ckls/simulation.hpp"

namespace ckls {

// (e^{2 kappa t} - 1) / (2 kappa), switching to the series t (1 + kappa t)
// when |2 kappa t| < 1e-8.
double ou_variance_factor(double kappa, double t);

struct OuMoments {
    double mean;
    double variance;
};

// Mean and variance of sqrt(Y_t), which is Ornstein-Uhlenbeck with rate
// drift_lin / 2 and volatility vol / 2.
OuMoments sqrt_y_moments(const CirParams& cir, double t);

// sqrt(Y_t) realised through a standard normal draw z. Signed: the OU value
// may be negative, only its square is Y_t.
double exact_sqrt_y(const CirParams& cir, double t, double z);

// Closed-form r_t = |r0^{1-gamma} e^{-(gamma-1) b t} + sigma |gamma-1| G_t|^{1/(1-gamma)}
// with G_t Gaussian of variance ou_variance_factor(b(1-gamma), t), realised as
// sd * z. Independent of C. Throws SingularSample when the base is zero.
double explicit_r(const CklsParams& p, double t, double z);

// n_draws independent explicit_r values at time t. Draw i uses substream
// (seed, i) and redraws on SingularSample.
std::vector<double> explicit_r_samples(const CklsParams& p, double t, std::size_t n_draws,
                                       std::uint64_t seed, unsigned workers = 1);

// Closed-form solution along a discretised Brownian path: the stochastic
// integral is the left-point sum of e^{-b(gamma-1)(t - s_k)} dB_k. Values
// whose base hits zero are clamped at kPositivityFloor and counted.
Path explicit_r_path(const CklsParams& p, const TimeGrid& grid,
                     std::span<const double> increments);

// Y_t = L X with X non-central chi-square from transition_spec(derived).
double sample_cir_exact(const CklsParams& p, const CirParams& cir, double t, Xoshiro256& gen);

}  // namespace ckls
