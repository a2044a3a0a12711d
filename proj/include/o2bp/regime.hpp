// Copyright 2026 The o2bp Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string_view>

#include "o2bp/params.hpp"

namespace o2bp::regime {

//---------------------------------------------------------------------------//
// Verdict types
//---------------------------------------------------------------------------//

enum class CornerStatus
{
    AvoidedGuaranteed,
    HitsAlmostSurely,
    Unknown
};

/// Condition that certifies a corner verdict. Serialized with the short tags
/// C1, C2a, C2b, C3, Cor4_2, Cor4_3, Prop5_4.
enum class CornerWitness
{
    C1,                  //!< cooperative cross terms, rho <= alpha + delta
    C2a,                 //!< alpha >= 1/2 and beta >= 0
    C2b,                 //!< delta >= 1/2 and gamma >= 0
    C3,                  //!< linear Lyapunov direction (lambda, mu)
    SymmetricUncorrelated,  //!< rho = 0, alpha = delta, |beta| = |gamma| closed form
    SkewBound,           //!< max(alpha, delta) >= 1/2 and 2 rho <= beta/delta + gamma/alpha
    Collision            //!< rho = 1 with weak, non-positive interactions
};

struct C3Witness
{
    double lambda;
    double mu;
};

struct CornerVerdict
{
    CornerStatus status = CornerStatus::Unknown;
    std::optional<CornerWitness> witness;
    std::optional<C3Witness> direction;  //!< set when witness == C3
};

enum class ExistenceKind
{
    UniqueInPuncturedQuadrant,
    UniqueInFullQuadrant,
    ExistsFromCornerUniquenessOpen,
    DegenerateLineSystem,
    NoSolution,
    Unknown
};

/// Which existence/uniqueness result the class rests on. Serialized as
/// Thm5_1(1|2|3), Thm5_2, Thm5_3(1|2|3|4).
enum class ExistenceBasis
{
    CooperativePunctured,       //!< Thm5_1(1)
    CooperativeFromCorner,      //!< Thm5_1(2)
    CooperativeFullQuadrant,    //!< Thm5_1(3)
    MixedSignPunctured,         //!< Thm5_2
    CompetitiveFullQuadrant,    //!< Thm5_3(1)
    CompetitiveNoSolution,      //!< Thm5_3(2)
    DegenerateOffCorner,        //!< Thm5_3(3)
    DegenerateFromCorner        //!< Thm5_3(4)
};

struct ExistenceClass
{
    ExistenceKind kind = ExistenceKind::Unknown;
    std::optional<ExistenceBasis> basis;
    /// For cooperative interactions with alpha*delta < beta*gamma a solution
    /// started at the corner exists, but its uniqueness is open.
    std::optional<ExistenceKind> corner_start;
    std::optional<ExistenceBasis> corner_start_basis;
    /// Corner-avoidance condition used, where the class depends on one.
    std::optional<CornerWitness> witness;
};

enum class EdgeStatus
{
    Avoided,
    HitAS,
    Unknown
};

struct EdgeVerdicts
{
    EdgeStatus x_edge = EdgeStatus::Unknown;
    EdgeStatus y_edge = EdgeStatus::Unknown;
};

/// Product gamma invariant law Gamma(a, c) x Gamma(b, d).
struct StationaryLaw
{
    double a;
    double b;
    double c;
    double d;
};

/// Everything the classifier knows about one parameter set.
struct RegimeReport
{
    O2BPParams params;
    CornerVerdict corner;
    ExistenceClass existence;
    EdgeVerdicts edges;
    std::optional<StationaryLaw> stationary;
    std::string_view stationary_absent_reason;
    double supermartingale_coefficient = 0;
};

//---------------------------------------------------------------------------//
// Conditions
//---------------------------------------------------------------------------//

/// a x^2 + b x y + c y^2 >= 0 on the closed quadrant.
bool quadratic_nonneg(double a, double b, double c);

bool check_C1(const O2BPParams& p);
bool check_C2a(const O2BPParams& p);
bool check_C2b(const O2BPParams& p);

/// Condition C3 at a given direction; requires lambda, mu > 0.
bool check_C3_at(const O2BPParams& p, double lambda, double mu);

/// Closed-form sufficient condition for C3 when rho = 0, alpha = delta and
/// |beta| = |gamma|.
bool check_symmetric_uncorrelated(const O2BPParams& p);

/// max(alpha, delta) >= 1/2 and 2 rho <= beta/delta + gamma/alpha.
bool check_skew_bound(const O2BPParams& p);

/// rho = 1, alpha*delta > beta*gamma, max(alpha, delta) < 1/2,
/// max(beta, gamma) <= 0.
bool check_collision(const O2BPParams& p);

/// Searches for a direction satisfying C3: closed forms first, then a
/// 200-point log grid over mu/lambda in [1e-4, 1e4] with 40 refinement
/// steps around the best grid point. Absence means "not found", not "false".
std::optional<C3Witness> search_C3(const O2BPParams& p);

//---------------------------------------------------------------------------//
// Classifiers
//---------------------------------------------------------------------------//

CornerVerdict corner_verdict(const O2BPParams& p);

/// Throws std::invalid_argument for invalid parameters.
ExistenceClass existence_class(const O2BPParams& p);

EdgeVerdicts edge_verdicts(const O2BPParams& p);

/// Tolerance on 2 rho - beta/delta - gamma/alpha.
inline constexpr double kSkewTolerance = 1e-12;

/// Product gamma law of the drifted system, or nullopt. `reason`, when
/// given, receives why the law is absent.
std::optional<StationaryLaw> stationary_law(const O2BPParams& p,
                                            std::string_view* reason = nullptr);

/// (1-2a) b + (1-2d) g + rho (2a-1)(2d-1): drift coefficient of
/// X^(1-2 alpha) Y^(1-2 delta).
double supermartingale_coefficient(const O2BPParams& p);

/// Runs every classifier. Throws std::invalid_argument for invalid params.
RegimeReport classify(const O2BPParams& p);

//---------------------------------------------------------------------------//
// Tags
//---------------------------------------------------------------------------//

std::string_view to_string(CornerStatus s);
std::string_view to_string(CornerWitness w);
std::string_view to_string(ExistenceKind k);
std::string_view to_string(ExistenceBasis b);
std::string_view to_string(EdgeStatus s);

} // namespace o2bp::regime
