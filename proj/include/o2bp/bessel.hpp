// Copyright 2026 The o2bp Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <random>
#include <span>

#include "o2bp/stats.hpp"

namespace o2bp::bessel {

/// One-dimensional Bessel process dR = dW + (d-1)/(2R) dt.
struct BesselSpec
{
    double dimension;  //!< d = 2 alpha + 1 for the own-term-only coordinate
    double start;
};

enum class BoundaryClass
{
    Polar,                      //!< d >= 2
    InstantaneouslyReflecting   //!< 1 < d < 2
};

/// Dimension of the decoupled coordinate driven by own-repulsion `alpha`.
inline double dimension_from_repulsion(double alpha) { return 2.0 * alpha + 1.0; }

/// Throws std::invalid_argument for d <= 1.
BoundaryClass boundary_class(double d);

/// Exact squared-Bessel transition: draws BESQ^d_t started from the squared
/// value `x0`, as 2t Gamma(d/2 + N, 1) with N ~ Poisson(x0 / (2t)).
template<class Rng>
double besq_exact_transition(double x0, double d, double t, Rng& rng)
{
    const double half_noncentrality = x0 / (2.0 * t);
    long mixing = 0;
    if (half_noncentrality > 0)
        mixing = std::poisson_distribution<long>(half_noncentrality)(rng);
    const stats::GammaLaw law{0.5 * d + static_cast<double>(mixing), 1.0};
    return 2.0 * t * stats::gamma_sample(law, rng);
}

/// CDF of BESQ^d_t started from x0 (noncentral chi-square mixture).
double besq_transition_cdf(double x, double x0, double d, double t);

/// CDF of the Bessel process value R_t started from r0.
double bessel_transition_cdf(double r, double r0, double d, double t);

/// P(tau_0 <= T) for a Bessel process of dimension 1 < d < 2 started at
/// r > 0: the hitting time is r^2 / (2 G) with G ~ Gamma(1 - d/2, 1), so
/// the CDF is Q(1 - d/2, r^2 / (2T)). Throws outside 1 < d < 2.
double bessel_hitting_zero_cdf(double r, double d, double horizon);

/// Density of the dimension-d Bessel law against the dimension-2 law on a
/// uniformly gridded path:
///   (R_t / r)^((d-2)/2) exp(-((d-2)^2 / 8) int_0^t ds / R_s^2),
/// with the integral by the trapezoid rule. `path[0]` must equal r and all
/// values must be positive.
double bessel_density_weight(std::span<const double> path, double d, double r, double dt);

} // namespace o2bp::bessel
