// Copyright 2026 The o2bp Authors
// SPDX-License-Identifier: Apache-2.0
#include "o2bp/regime.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace o2bp {

std::string validation_error(const O2BPParams& p)
{
    const double all[] = {p.alpha, p.beta, p.gamma, p.delta, p.rho, p.theta, p.eta};
    for (double v : all)
    {
        if (!std::isfinite(v))
            return "parameters must be finite";
    }
    if (!(p.alpha > 0))
        return "alpha must be > 0";
    if (!(p.delta > 0))
        return "delta must be > 0";
    if (std::fabs(p.rho) > 1)
        return "rho must lie in [-1, 1]";
    if (p.theta < 0)
        return "theta must be >= 0";
    if (p.eta < 0)
        return "eta must be >= 0";
    return {};
}

void validate(const O2BPParams& p)
{
    if (auto msg = validation_error(p); !msg.empty())
        throw std::invalid_argument(msg);
}

namespace regime {
namespace {

constexpr double kHalf = 0.5;
constexpr double kDegenerateTolerance = 1e-12;

// Normalized C3 margin along mu/lambda = t with lambda = 1; nonnegative iff
// check_C3_at(p, 1, t) holds.
double c3_margin(const O2BPParams& p, double t)
{
    const double along_x = p.alpha + t * p.gamma;
    const double along_y = p.beta + t * p.delta;
    if (along_x < 0 || along_y < 0)
        return std::min(along_x, along_y) / (1.0 + t);
    const double root = std::sqrt(along_x) + std::sqrt(t * along_y);
    const double rhs = 0.5 * (1.0 + t * t + 2.0 * p.rho * t);
    return (root * root - rhs) / (1.0 + t * t);
}

} // namespace

bool quadratic_nonneg(double a, double b, double c)
{
    return a >= 0 && c >= 0 && b >= -2.0 * std::sqrt(a * c);
}

bool check_C1(const O2BPParams& p)
{
    return p.beta >= 0 && p.gamma >= 0 && p.rho >= -1 && p.rho <= p.alpha + p.delta;
}

bool check_C2a(const O2BPParams& p)
{
    return p.alpha >= kHalf && p.beta >= 0;
}

bool check_C2b(const O2BPParams& p)
{
    return p.delta >= kHalf && p.gamma >= 0;
}

bool check_C3_at(const O2BPParams& p, double lambda, double mu)
{
    if (!(lambda > 0) || !(mu > 0))
        throw std::invalid_argument("check_C3_at: lambda and mu must be > 0");
    const double along_x = lambda * p.alpha + mu * p.gamma;
    const double along_y = lambda * p.beta + mu * p.delta;
    if (along_x < 0 || along_y < 0)
        return false;
    const double root = std::sqrt(lambda * along_x) + std::sqrt(mu * along_y);
    return root * root
           >= 0.5 * (lambda * lambda + mu * mu + 2.0 * p.rho * lambda * mu);
}

bool check_symmetric_uncorrelated(const O2BPParams& p)
{
    if (p.rho != 0 || p.alpha != p.delta || std::fabs(p.beta) != std::fabs(p.gamma))
        return false;
    if (p.beta == -p.gamma && p.beta * p.beta <= p.alpha - 0.25)
        return true;
    return p.beta == p.gamma && p.beta < 0 && -p.beta <= p.alpha - 0.25;
}

bool check_skew_bound(const O2BPParams& p)
{
    return std::max(p.alpha, p.delta) >= kHalf
           && 2.0 * p.rho <= p.beta / p.delta + p.gamma / p.alpha + kSkewTolerance;
}

bool check_collision(const O2BPParams& p)
{
    return p.rho == 1 && p.determinant() > 0
           && std::max(p.alpha, p.delta) < kHalf && std::max(p.beta, p.gamma) <= 0;
}

std::optional<C3Witness> search_C3(const O2BPParams& p)
{
    // Closed-form directions that cancel one of the two drift projections.
    if (p.beta < 0 && p.alpha >= kHalf && check_C3_at(p, p.delta, -p.beta))
        return C3Witness{p.delta, -p.beta};
    if (p.gamma < 0 && p.delta >= kHalf && check_C3_at(p, -p.gamma, p.alpha))
        return C3Witness{-p.gamma, p.alpha};
    // The symmetric closed forms hold on the diagonal, which the grid skips.
    if (check_C3_at(p, 1.0, 1.0))
        return C3Witness{1.0, 1.0};

    constexpr int kGridPoints = 200;
    constexpr int kRefinements = 40;
    constexpr double kLogLo = -4.0;
    constexpr double kLogHi = 4.0;
    const double step = (kLogHi - kLogLo) / (kGridPoints - 1);

    int best = 0;
    double best_margin = -INFINITY;
    std::optional<C3Witness> found;
    for (int i = 0; i < kGridPoints; ++i)
    {
        const double t = std::pow(10.0, kLogLo + i * step);
        const double m = c3_margin(p, t);
        if (m > best_margin)
        {
            best_margin = m;
            best = i;
        }
    }
    {
        const double t = std::pow(10.0, kLogLo + best * step);
        if (check_C3_at(p, 1.0, t))
            return C3Witness{1.0, t};
    }

    // Ternary refinement of the margin on the bracket around the best point.
    double lo = kLogLo + std::max(best - 1, 0) * step;
    double hi = kLogLo + std::min(best + 1, kGridPoints - 1) * step;
    for (int k = 0; k < kRefinements; ++k)
    {
        const double m1 = lo + (hi - lo) / 3.0;
        const double m2 = hi - (hi - lo) / 3.0;
        if (c3_margin(p, std::pow(10.0, m1)) < c3_margin(p, std::pow(10.0, m2)))
            lo = m1;
        else
            hi = m2;
    }
    const double t = std::pow(10.0, 0.5 * (lo + hi));
    if (check_C3_at(p, 1.0, t))
        found = C3Witness{1.0, t};
    return found;
}

CornerVerdict corner_verdict(const O2BPParams& p)
{
    CornerVerdict v;
    auto avoided = [&v](CornerWitness w) {
        v.status = CornerStatus::AvoidedGuaranteed;
        v.witness = w;
        return v;
    };
    if (check_C1(p))
        return avoided(CornerWitness::C1);
    if (check_C2a(p))
        return avoided(CornerWitness::C2a);
    if (check_C2b(p))
        return avoided(CornerWitness::C2b);
    if (check_skew_bound(p))
        return avoided(CornerWitness::SkewBound);
    if (auto dir = search_C3(p))
    {
        v.direction = dir;
        return avoided(CornerWitness::C3);
    }
    if (check_collision(p))
    {
        v.status = CornerStatus::HitsAlmostSurely;
        v.witness = CornerWitness::Collision;
    }
    return v;
}

ExistenceClass existence_class(const O2BPParams& p)
{
    validate(p);
    ExistenceClass out;

    // Competitive (both cross terms non-positive): complete answer.
    if (p.beta <= 0 && p.gamma <= 0)
    {
        if (p.determinant() > 0)
        {
            out.kind = ExistenceKind::UniqueInFullQuadrant;
            out.basis = ExistenceBasis::CompetitiveFullQuadrant;
        }
        else if (std::fabs(1.0 + p.rho) <= kDegenerateTolerance
                 && std::fabs(p.alpha + p.gamma) <= kDegenerateTolerance
                 && std::fabs(p.beta + p.delta) <= kDegenerateTolerance)
        {
            out.kind = ExistenceKind::DegenerateLineSystem;
            out.basis = ExistenceBasis::DegenerateOffCorner;
            out.corner_start = ExistenceKind::NoSolution;
            out.corner_start_basis = ExistenceBasis::DegenerateFromCorner;
        }
        else
        {
            out.kind = ExistenceKind::NoSolution;
            out.basis = ExistenceBasis::CompetitiveNoSolution;
        }
        return out;
    }

    const CornerVerdict corner = corner_verdict(p);
    if (corner.status != CornerStatus::AvoidedGuaranteed)
        return out;
    out.witness = corner.witness;

    if (p.beta >= 0 && p.gamma >= 0)
    {
        if (p.determinant() >= 0)
        {
            out.kind = ExistenceKind::UniqueInFullQuadrant;
            out.basis = ExistenceBasis::CooperativeFullQuadrant;
        }
        else
        {
            out.kind = ExistenceKind::UniqueInPuncturedQuadrant;
            out.basis = ExistenceBasis::CooperativePunctured;
            out.corner_start = ExistenceKind::ExistsFromCornerUniquenessOpen;
            out.corner_start_basis = ExistenceBasis::CooperativeFromCorner;
        }
        return out;
    }

    out.kind = ExistenceKind::UniqueInPuncturedQuadrant;
    out.basis = ExistenceBasis::MixedSignPunctured;
    return out;
}

EdgeVerdicts edge_verdicts(const O2BPParams& p)
{
    const bool corner_avoided
        = corner_verdict(p).status == CornerStatus::AvoidedGuaranteed;
    const bool both_strong = p.alpha >= kHalf && p.delta >= kHalf;
    const double bg = p.beta * p.gamma;
    const bool both_edges
        = both_strong
          && (p.beta >= 0 || p.gamma >= 0
              || (bg > 0 && bg <= (p.alpha - kHalf) * (p.delta - kHalf)));

    EdgeVerdicts v;
    if ((p.alpha >= kHalf && (p.beta >= 0 || corner_avoided)) || both_edges)
        v.x_edge = EdgeStatus::Avoided;
    else if (p.alpha < kHalf && p.beta <= 0)
        v.x_edge = EdgeStatus::HitAS;

    if ((p.delta >= kHalf && (p.gamma >= 0 || corner_avoided)) || both_edges)
        v.y_edge = EdgeStatus::Avoided;
    else if (p.delta < kHalf && p.gamma <= 0)
        v.y_edge = EdgeStatus::HitAS;
    return v;
}

std::optional<StationaryLaw> stationary_law(const O2BPParams& p, std::string_view* reason)
{
    auto absent = [reason](std::string_view why) -> std::optional<StationaryLaw> {
        if (reason)
            *reason = why;
        return std::nullopt;
    };
    if (!p.has_drift())
        return absent("no inward drift (theta = eta = 0)");
    const double det = p.determinant();
    if (det == 0)
        return absent("interaction matrix is singular");
    const double exp_x = p.delta * p.theta - p.beta * p.eta;
    const double exp_y = p.alpha * p.eta - p.gamma * p.theta;
    if (!(exp_x > 0) || !(exp_y > 0))
        return absent("gamma rates are not positive");
    if (std::fabs(2.0 * p.rho - p.beta / p.delta - p.gamma / p.alpha) > kSkewTolerance)
        return absent("skew-symmetry 2 rho = beta/delta + gamma/alpha fails");
    if (reason)
        *reason = {};
    return StationaryLaw{1.0 + 2.0 * p.alpha, 1.0 + 2.0 * p.delta,
                         2.0 * p.alpha * exp_x / det, 2.0 * p.delta * exp_y / det};
}

double supermartingale_coefficient(const O2BPParams& p)
{
    return (1.0 - 2.0 * p.alpha) * p.beta + (1.0 - 2.0 * p.delta) * p.gamma
           + p.rho * (2.0 * p.alpha - 1.0) * (2.0 * p.delta - 1.0);
}

RegimeReport classify(const O2BPParams& p)
{
    validate(p);
    RegimeReport r;
    r.params = p;
    r.corner = corner_verdict(p);
    r.existence = existence_class(p);
    r.edges = edge_verdicts(p);
    r.stationary = stationary_law(p, &r.stationary_absent_reason);
    r.supermartingale_coefficient = supermartingale_coefficient(p);
    return r;
}

std::string_view to_string(CornerStatus s)
{
    switch (s)
    {
    case CornerStatus::AvoidedGuaranteed: return "AvoidedGuaranteed";
    case CornerStatus::HitsAlmostSurely: return "HitsAlmostSurely";
    case CornerStatus::Unknown: return "Unknown";
    }
    return "?";
}

std::string_view to_string(CornerWitness w)
{
    switch (w)
    {
    case CornerWitness::C1: return "C1";
    case CornerWitness::C2a: return "C2a";
    case CornerWitness::C2b: return "C2b";
    case CornerWitness::C3: return "C3";
    case CornerWitness::SymmetricUncorrelated: return "Cor4_2";
    case CornerWitness::SkewBound: return "Cor4_3";
    case CornerWitness::Collision: return "Prop5_4";
    }
    return "?";
}

std::string_view to_string(ExistenceKind k)
{
    switch (k)
    {
    case ExistenceKind::UniqueInPuncturedQuadrant: return "UniqueInPuncturedQuadrant";
    case ExistenceKind::UniqueInFullQuadrant: return "UniqueInFullQuadrant";
    case ExistenceKind::ExistsFromCornerUniquenessOpen: return "ExistsFromCornerUniquenessOpen";
    case ExistenceKind::DegenerateLineSystem: return "DegenerateLineSystem";
    case ExistenceKind::NoSolution: return "NoSolution";
    case ExistenceKind::Unknown: return "Unknown";
    }
    return "?";
}

std::string_view to_string(ExistenceBasis b)
{
    switch (b)
    {
    case ExistenceBasis::CooperativePunctured: return "Thm5_1(1)";
    case ExistenceBasis::CooperativeFromCorner: return "Thm5_1(2)";
    case ExistenceBasis::CooperativeFullQuadrant: return "Thm5_1(3)";
    case ExistenceBasis::MixedSignPunctured: return "Thm5_2";
    case ExistenceBasis::CompetitiveFullQuadrant: return "Thm5_3(1)";
    case ExistenceBasis::CompetitiveNoSolution: return "Thm5_3(2)";
    case ExistenceBasis::DegenerateOffCorner: return "Thm5_3(3)";
    case ExistenceBasis::DegenerateFromCorner: return "Thm5_3(4)";
    }
    return "?";
}

std::string_view to_string(EdgeStatus s)
{
    switch (s)
    {
    case EdgeStatus::Avoided: return "Avoided";
    case EdgeStatus::HitAS: return "HitAS";
    case EdgeStatus::Unknown: return "Unknown";
    }
    return "?";
}

} // namespace regime
} // namespace o2bp
