// Copyright 2026 The o2bp Authors
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <tuple>
#include <vector>

#include "o2bp/bessel.hpp"
#include "o2bp/rng.hpp"
#include "o2bp/stats.hpp"

using namespace o2bp;
using namespace o2bp::bessel;

TEST_CASE("boundary_class")
{
    CHECK(boundary_class(2.0) == BoundaryClass::Polar);
    CHECK(boundary_class(1.5) == BoundaryClass::InstantaneouslyReflecting);
    CHECK(boundary_class(3.0) == BoundaryClass::Polar);
    CHECK_THROWS_AS(boundary_class(1.0), std::invalid_argument);
    CHECK(dimension_from_repulsion(0.25) == 1.5);
}

TEST_CASE("BESQ transition moments")
{
    Rng rng(1);
    const int n = 1000000;
    std::vector<double> v(n);
    for (auto& x : v)
        x = besq_exact_transition(1.0, 3.0, 1.0, rng);
    CHECK(std::fabs(stats::mean_se(v).mean - 4.0) <= 0.01);

    for (auto& x : v)
        x = besq_exact_transition(0.0, 2.0, 1.0, rng);
    const auto m = stats::mean_se(v);
    const double var = m.se * m.se * n;
    CHECK(std::fabs(var - 4.0) <= 0.05);

    // Continuity at t = 0 from the origin.
    double largest = 0;
    for (int i = 0; i < 1000; ++i)
        largest = std::max(largest, besq_exact_transition(0.0, 1.7, 1e-12, rng));
    CHECK(largest < 1e-9);
}

TEST_CASE("BESQ transition matches its CDF")
{
    Rng rng(3);
    std::vector<double> v(100000);
    for (auto& x : v)
        x = besq_exact_transition(0.8, 1.5, 0.7, rng);
    const auto ks = stats::ks_test_unsorted(v, [](double x) { return besq_transition_cdf(x, 0.8, 1.5, 0.7); });
    CHECK(ks.p_value > 0.001);
}

TEST_CASE("two BESQ steps compose to one")
{
    Rng rng(11);
    const int n = 100000;
    std::vector<double> two(n), one(n);
    for (auto& x : two)
        x = besq_exact_transition(besq_exact_transition(1.0, 2.5, 0.3, rng), 2.5, 0.7, rng);
    for (auto& x : one)
        x = besq_exact_transition(1.0, 2.5, 1.0, rng);
    std::sort(two.begin(), two.end());
    std::sort(one.begin(), one.end());
    CHECK(stats::ks_two_sample(two, one).statistic <= 0.01);
}

TEST_CASE("hitting CDF limits and regression value")
{
    CHECK(bessel_hitting_zero_cdf(1, 1.5, INFINITY) == 1.0);
    CHECK(bessel_hitting_zero_cdf(1, 1.5, 1e-6) == 0.0);
    CHECK(bessel_hitting_zero_cdf(1, 1.5, 1e12) > 0.999);
    // Frozen after agreeing with a 10^6-path simulation.
    CHECK(bessel_hitting_zero_cdf(1, 1.5, 10) == doctest::Approx(0.48344467916953426).epsilon(1e-12));
    CHECK_THROWS_AS(bessel_hitting_zero_cdf(1, 2.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(bessel_hitting_zero_cdf(0, 1.5, 1), std::invalid_argument);
}

TEST_CASE("hitting CDF is monotone in T and decreasing in r")
{
    for (double d : {1.1, 1.5, 1.9})
    {
        double prev_t = 0;
        for (double t = 0.1; t <= 50; t *= 1.3)
        {
            const double v = bessel_hitting_zero_cdf(1.0, d, t);
            CHECK(v >= prev_t);
            prev_t = v;
        }
        double prev_r = 1;
        for (double r = 0.05; r <= 5; r += 0.05)
        {
            const double v = bessel_hitting_zero_cdf(r, d, 3.0);
            CHECK(v <= prev_r);
            prev_r = v;
        }
    }
}

TEST_CASE("hitting CDF agrees with a time-reversal simulation")
{
    // Run backwards from zero, a dimension-d Bessel path until it hits 0 is
    // a dimension-(4 - d) path until its last exit from r. So tau_0 <= T
    // exactly when the transient process sits above r at T and never comes
    // back, which has probability 1 - (r / R_T)^(2 - d) given R_T.
    Rng rng(21);
    const int n = 1000000;
    for (const auto& [r, d, horizon] : {std::tuple{1.0, 1.5, 10.0}, std::tuple{1.0, 1.5, 1.0},
                                        std::tuple{0.5, 1.2, 2.0}})
    {
        std::vector<double> v(n);
        for (auto& x : v)
        {
            const double radius = std::sqrt(besq_exact_transition(0.0, 4.0 - d, horizon, rng));
            x = radius > r ? 1.0 - std::pow(r / radius, 2.0 - d) : 0.0;
        }
        const auto m = stats::mean_se(v);
        CAPTURE(r);
        CAPTURE(d);
        CAPTURE(horizon);
        CAPTURE(m.mean);
        CHECK(std::fabs(m.mean - bessel_hitting_zero_cdf(r, d, horizon)) <= 4 * m.se);
    }
}

TEST_CASE("density weight examples")
{
    std::vector<double> path{1.0, 0.5, 2.0, 0.1, 3.0};
    CHECK(bessel_density_weight(path, 2.0, 1.0, 0.1) == 1.0);

    for (double r : {0.5, 1.0, 2.0})
    {
        std::vector<double> flat(1001, r);
        CHECK(bessel_density_weight(flat, 4.0, r, 1e-3)
              == doctest::Approx(std::exp(-0.5 / (r * r))).epsilon(1e-12));
    }
    CHECK_THROWS_AS(bessel_density_weight(path, 1.5, 1.0, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(bessel_density_weight(path, 3.0, 2.0, 0.1), std::invalid_argument);
}

TEST_CASE("density weight has mean one under the planar law")
{
    // Radial part of a planar Brownian motion started at distance 1.
    Rng rng(8);
    std::normal_distribution<double> z;
    const int n = 100000, steps = 1000;
    const double dt = 1.0 / steps, sd = std::sqrt(dt);
    std::vector<double> weights(n), path(steps + 1);
    for (auto& w : weights)
    {
        double b1 = 1, b2 = 0;
        path[0] = 1;
        for (int k = 1; k <= steps; ++k)
        {
            b1 += sd * z(rng);
            b2 += sd * z(rng);
            path[k] = std::hypot(b1, b2);
        }
        w = bessel_density_weight(path, 3.0, 1.0, dt);
    }
    const auto m = stats::mean_se(weights);
    CAPTURE(m.mean);
    CAPTURE(m.se);
    CHECK(std::fabs(m.mean - 1.0) <= 3 * m.se);
}
