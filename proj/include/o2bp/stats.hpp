// Copyright 2026 The o2bp Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <functional>
#include <random>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace o2bp::stats {

/// Gamma law with shape `a` and rate `c`: density c^a/Gamma(a) x^(a-1) e^(-cx).
struct GammaLaw
{
    double shape;
    double rate;

    double mean() const { return shape / rate; }
    double variance() const { return shape / (rate * rate); }
};

/// Beta law on [0, 1].
struct BetaLaw
{
    double a;
    double b;
};

//---------------------------------------------------------------------------//
// Special functions
//---------------------------------------------------------------------------//

/// Regularized lower incomplete gamma P(a, x). Series expansion for
/// x < a + 1, Lentz continued fraction for the complement otherwise.
double gamma_p(double a, double x);

/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x), evaluated
/// without cancellation on whichever side is small.
double gamma_q(double a, double x);

/// Regularized incomplete beta I_x(a, b).
double beta_inc(double a, double b, double x);

//---------------------------------------------------------------------------//
// Distributions
//---------------------------------------------------------------------------//

double gamma_pdf(double x, GammaLaw law);

/// P(a, c x). Rejects negative x.
double gamma_cdf(double x, GammaLaw law);

/// (1 - i lambda / c)^(-a) on the principal branch.
std::complex<double> gamma_characteristic(double lambda, GammaLaw law);

double beta_pdf(double x, BetaLaw law);
double beta_cdf(double x, BetaLaw law);

/// Draws from Gamma(a, c); rate scaling of a unit-rate draw.
template<class Rng>
double gamma_sample(GammaLaw law, Rng& rng)
{
    std::gamma_distribution<double> unit(law.shape, 1.0);
    return unit(rng) / law.rate;
}

//---------------------------------------------------------------------------//
// Beta-gamma change of variables
//---------------------------------------------------------------------------//

struct BetaGamma
{
    double w;  //!< c x / (c x + d y), in [0, 1]
    double z;  //!< c x + d y
};

/// Rejects c x + d y == 0.
BetaGamma beta_gamma_transform(double x, double y, double c, double d);

//---------------------------------------------------------------------------//
// Goodness of fit
//---------------------------------------------------------------------------//

struct KsResult
{
    double statistic;
    double p_value;
};

/// Asymptotic Kolmogorov tail 2 sum_{k>=1} (-1)^(k-1) exp(-2 k^2 t^2),
/// truncated at 100 terms.
double kolmogorov_sf(double t);

/// One-sample KS statistic of sorted `samples` against `cdf`. Requires at
/// least 8 samples; throws std::invalid_argument on unsorted input.
KsResult ks_test(std::span<const double> samples,
                 const std::function<double(double)>& cdf);

/// Two-sample KS statistic; both inputs must be sorted.
KsResult ks_two_sample(std::span<const double> a, std::span<const double> b);

/// Convenience: copy, sort and run ks_test.
KsResult ks_test_unsorted(std::vector<double> samples,
                          const std::function<double(double)>& cdf);

//---------------------------------------------------------------------------//
// Moments
//---------------------------------------------------------------------------//

struct MeanSe
{
    double mean = 0;
    double se = 0;  //!< sample standard deviation / sqrt(n)
    std::size_t n = 0;
};

MeanSe mean_se(std::span<const double> values);

/// Pearson sample correlation.
double correlation(std::span<const double> a, std::span<const double> b);

/// Normal-approximation 95% half-width 1.96 sqrt(f (1 - f) / n).
double binomial_halfwidth(double frequency, std::size_t n);

} // namespace o2bp::stats
