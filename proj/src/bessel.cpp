// Copyright 2026 The o2bp Authors
// SPDX-License-Identifier: Apache-2.0
#include "o2bp/bessel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace o2bp::bessel {

BoundaryClass boundary_class(double d)
{
    if (!(d > 1))
        throw std::invalid_argument("boundary_class: dimension must be > 1");
    return d >= 2 ? BoundaryClass::Polar : BoundaryClass::InstantaneouslyReflecting;
}

double besq_transition_cdf(double x, double x0, double d, double t)
{
    if (!(d > 0) || !(t > 0) || x0 < 0)
        throw std::invalid_argument("besq_transition_cdf: need d > 0, t > 0, x0 >= 0");
    if (x <= 0)
        return 0.0;
    const double lam = x0 / (2.0 * t);
    const double arg = x / (2.0 * t);
    if (lam == 0)
        return stats::gamma_p(0.5 * d, arg);

    // Sum outward from the Poisson mode so large noncentralities stay stable.
    const long mode = static_cast<long>(std::floor(lam));
    const double log_mode_weight = -lam + mode * std::log(lam) - std::lgamma(mode + 1.0);
    double total = 0.0;
    double weight = std::exp(log_mode_weight);
    for (long k = mode; weight > 1e-18 || k < mode + 5; ++k)
    {
        total += weight * stats::gamma_p(0.5 * d + k, arg);
        weight *= lam / (k + 1.0);
    }
    weight = std::exp(log_mode_weight);
    for (long k = mode - 1; k >= 0; --k)
    {
        weight *= (k + 1.0) / lam;
        if (weight < 1e-18)
            break;
        total += weight * stats::gamma_p(0.5 * d + k, arg);
    }
    return std::min(total, 1.0);
}

double bessel_transition_cdf(double r, double r0, double d, double t)
{
    if (r <= 0)
        return 0.0;
    return besq_transition_cdf(r * r, r0 * r0, d, t);
}

double bessel_hitting_zero_cdf(double r, double d, double horizon)
{
    if (!(d > 1 && d < 2))
        throw std::invalid_argument("bessel_hitting_zero_cdf: dimension must lie in (1, 2)");
    if (!(r > 0))
        throw std::invalid_argument("bessel_hitting_zero_cdf: start must be > 0");
    if (!(horizon > 0))
        return 0.0;
    if (std::isinf(horizon))
        return 1.0;
    return stats::gamma_q(1.0 - 0.5 * d, r * r / (2.0 * horizon));
}

double bessel_density_weight(std::span<const double> path, double d, double r, double dt)
{
    if (!(d >= 2))
        throw std::invalid_argument("bessel_density_weight: dimension must be >= 2");
    if (!(r > 0) || !(dt > 0))
        throw std::invalid_argument("bessel_density_weight: need r > 0 and dt > 0");
    if (path.empty() || std::fabs(path.front() - r) > 1e-12 * r)
        throw std::invalid_argument("bessel_density_weight: path must start at r");
    double integral = 0.0;
    for (std::size_t i = 0; i < path.size(); ++i)
    {
        if (!(path[i] > 0))
            throw std::invalid_argument("bessel_density_weight: path must be positive");
        if (i > 0)
            integral += 0.5 * dt * (1.0 / (path[i - 1] * path[i - 1]) + 1.0 / (path[i] * path[i]));
    }
    const double excess = d - 2.0;
    return std::pow(path.back() / r, 0.5 * excess) * std::exp(-excess * excess / 8.0 * integral);
}

} // namespace o2bp::bessel
