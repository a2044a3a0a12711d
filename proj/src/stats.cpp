// Copyright 2026 The o2bp Authors
// SPDX-License-Identifier: Apache-2.0
#include "o2bp/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace o2bp::stats {
namespace {

constexpr double kEps = 1e-16;
constexpr double kTiny = 1e-300;
constexpr int kMaxIter = 100000;

// Series for P(a, x), valid and fast for x < a + 1.
double gamma_p_series(double a, double x)
{
    double ap = a;
    double term = 1.0 / a;
    double sum = term;
    for (int n = 0; n < kMaxIter; ++n)
    {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::fabs(term) < std::fabs(sum) * kEps)
            break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Modified Lentz continued fraction for Q(a, x), valid for x >= a + 1.
double gamma_q_fraction(double a, double x)
{
    double b = x + 1.0 - a;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < kMaxIter; ++i)
    {
        double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < kTiny)
            d = kTiny;
        c = b + an / c;
        if (std::fabs(c) < kTiny)
            c = kTiny;
        d = 1.0 / d;
        double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < kEps)
            break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

// Continued fraction for the incomplete beta function.
double beta_fraction(double a, double b, double x)
{
    double qab = a + b;
    double qap = a + 1.0;
    double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny)
        d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m < kMaxIter; ++m)
    {
        int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny)
            d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny)
            c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny)
            d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny)
            c = kTiny;
        d = 1.0 / d;
        double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < kEps)
            break;
    }
    return h;
}

void require_law(GammaLaw law)
{
    if (!(law.shape > 0) || !(law.rate > 0))
        throw std::invalid_argument("gamma law needs shape > 0 and rate > 0");
}

} // namespace

double gamma_p(double a, double x)
{
    if (!(a > 0))
        throw std::invalid_argument("gamma_p: shape must be > 0");
    if (x < 0)
        throw std::invalid_argument("gamma_p: argument must be >= 0");
    if (x == 0)
        return 0.0;
    if (std::isinf(x))
        return 1.0;
    if (x < a + 1.0)
        return gamma_p_series(a, x);
    return 1.0 - gamma_q_fraction(a, x);
}

double gamma_q(double a, double x)
{
    if (!(a > 0))
        throw std::invalid_argument("gamma_q: shape must be > 0");
    if (x < 0)
        throw std::invalid_argument("gamma_q: argument must be >= 0");
    if (x == 0)
        return 1.0;
    if (std::isinf(x))
        return 0.0;
    if (x < a + 1.0)
        return 1.0 - gamma_p_series(a, x);
    return gamma_q_fraction(a, x);
}

double beta_inc(double a, double b, double x)
{
    if (!(a > 0) || !(b > 0))
        throw std::invalid_argument("beta_inc: parameters must be > 0");
    if (x <= 0)
        return 0.0;
    if (x >= 1)
        return 1.0;
    double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b)
                       + a * std::log(x) + b * std::log1p(-x);
    double front = std::exp(log_front);
    if (x < (a + 1.0) / (a + b + 2.0))
        return front * beta_fraction(a, b, x) / a;
    return 1.0 - front * beta_fraction(b, a, 1.0 - x) / b;
}

double gamma_pdf(double x, GammaLaw law)
{
    require_law(law);
    if (x < 0)
        return 0.0;
    if (x == 0)
        return law.shape == 1 ? law.rate : (law.shape < 1 ? INFINITY : 0.0);
    return std::exp(law.shape * std::log(law.rate) - std::lgamma(law.shape)
                    + (law.shape - 1) * std::log(x) - law.rate * x);
}

double gamma_cdf(double x, GammaLaw law)
{
    require_law(law);
    if (x < 0)
        throw std::invalid_argument("gamma_cdf: x must be >= 0");
    return gamma_p(law.shape, law.rate * x);
}

std::complex<double> gamma_characteristic(double lambda, GammaLaw law)
{
    require_law(law);
    const std::complex<double> base(1.0, -lambda / law.rate);
    return std::pow(base, -law.shape);
}

double beta_pdf(double x, BetaLaw law)
{
    if (x < 0 || x > 1)
        return 0.0;
    return std::exp(std::lgamma(law.a + law.b) - std::lgamma(law.a)
                    - std::lgamma(law.b) + (law.a - 1) * std::log(x)
                    + (law.b - 1) * std::log1p(-x));
}

double beta_cdf(double x, BetaLaw law)
{
    return beta_inc(law.a, law.b, x);
}

BetaGamma beta_gamma_transform(double x, double y, double c, double d)
{
    if (!(c > 0) || !(d > 0))
        throw std::invalid_argument("beta_gamma_transform: c and d must be > 0");
    const double cx = c * x;
    const double z = cx + d * y;
    if (!(z > 0))
        throw std::invalid_argument("beta_gamma_transform: c x + d y must be > 0");
    return {cx / z, z};
}

double kolmogorov_sf(double t)
{
    // Below this the alternating series has not converged in 100 terms and
    // the tail is 1 to double precision anyway.
    if (t < 0.1)
        return 1.0;
    double sum = 0.0;
    for (int k = 1; k <= 100; ++k)
    {
        double term = std::exp(-2.0 * k * k * t * t);
        sum += (k % 2 == 1) ? term : -term;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_test(std::span<const double> samples,
                 const std::function<double(double)>& cdf)
{
    const std::size_t n = samples.size();
    if (n < 8)
        throw std::invalid_argument("ks_test: need at least 8 samples");
    if (!std::is_sorted(samples.begin(), samples.end()))
        throw std::invalid_argument("ks_test: samples must be sorted");
    const double nd = static_cast<double>(n);
    double d_max = 0.0;
    for (std::size_t i = 0; i < n; ++i)
    {
        const double f = cdf(samples[i]);
        d_max = std::max({d_max, (i + 1) / nd - f, f - i / nd});
    }
    return {d_max, kolmogorov_sf(std::sqrt(nd) * d_max)};
}

KsResult ks_two_sample(std::span<const double> a, std::span<const double> b)
{
    if (a.size() < 8 || b.size() < 8)
        throw std::invalid_argument("ks_two_sample: need at least 8 samples each");
    if (!std::is_sorted(a.begin(), a.end()) || !std::is_sorted(b.begin(), b.end()))
        throw std::invalid_argument("ks_two_sample: samples must be sorted");
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d_max = 0.0;
    while (i < a.size() && j < b.size())
    {
        const double v = std::min(a[i], b[j]);
        while (i < a.size() && a[i] == v)
            ++i;
        while (j < b.size() && b[j] == v)
            ++j;
        d_max = std::max(d_max, std::fabs(i / na - j / nb));
    }
    const double scale = std::sqrt(na * nb / (na + nb));
    return {d_max, kolmogorov_sf(scale * d_max)};
}

KsResult ks_test_unsorted(std::vector<double> samples,
                          const std::function<double(double)>& cdf)
{
    std::sort(samples.begin(), samples.end());
    return ks_test(samples, cdf);
}

MeanSe mean_se(std::span<const double> values)
{
    MeanSe out;
    out.n = values.size();
    if (values.empty())
        return out;
    // Welford, in input order so the result is reproducible.
    double mean = 0.0, m2 = 0.0;
    std::size_t k = 0;
    for (double v : values)
    {
        ++k;
        const double delta = v - mean;
        mean += delta / k;
        m2 += delta * (v - mean);
    }
    out.mean = mean;
    if (k > 1)
        out.se = std::sqrt(m2 / (k - 1) / k);
    return out;
}

double correlation(std::span<const double> a, std::span<const double> b)
{
    if (a.size() != b.size() || a.size() < 2)
        throw std::invalid_argument("correlation: need equal sizes >= 2");
    const double n = static_cast<double>(a.size());
    const double ma = std::accumulate(a.begin(), a.end(), 0.0) / n;
    const double mb = std::accumulate(b.begin(), b.end(), 0.0) / n;
    double sab = 0, saa = 0, sbb = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
    {
        const double da = a[i] - ma, db = b[i] - mb;
        sab += da * db;
        saa += da * da;
        sbb += db * db;
    }
    return sab / std::sqrt(saa * sbb);
}

double binomial_halfwidth(double frequency, std::size_t n)
{
    if (n == 0)
        return 0.0;
    return 1.96 * std::sqrt(frequency * (1.0 - frequency) / static_cast<double>(n));
}

} // namespace o2bp::stats
