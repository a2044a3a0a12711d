// Copyright 2026 The o2bp Authors
// SPDX-License-Identifier: Apache-2.0
//
// Hand-checked classifier verdicts, shared by the unit tests and the
// acceptance suite. Unset fields are not asserted.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "o2bp/regime.hpp"

namespace o2bp::testing {

struct RegimeRow
{
    std::string label;
    O2BPParams p;
    std::optional<std::string> corner;   //!< "Status" or "Status(Witness)"
    std::optional<std::string> existence;  //!< "Kind(Basis)"
    std::optional<std::string> x_edge;
    std::optional<std::string> y_edge;
    std::optional<regime::StationaryLaw> law;
    bool law_absent = false;
    std::optional<double> coefficient;
};

inline O2BPParams P(double a, double b, double g, double d, double r, double th = 0,
                    double et = 0)
{
    return {a, b, g, d, r, th, et};
}

inline std::vector<RegimeRow> regime_table()
{
    using L = regime::StationaryLaw;
    const auto none = std::nullopt;
    return {
        {"C2a witness", P(0.6, 0.2, -3, 0.6, 0), "AvoidedGuaranteed(C2a)",
         "UniqueInPuncturedQuadrant(Thm5_2)", "Avoided", "Avoided", none, false, none},
        {"collision hits corner", P(0.25, 0, 0, 0.25, 1), "HitsAlmostSurely(Prop5_4)",
         "UniqueInFullQuadrant(Thm5_3(1))", "HitAS", "HitAS", none, false, none},
        {"competitive, no witness", P(0.25, -1, -1, 0.25, 0), "Unknown",
         "NoSolution(Thm5_3(2))", "HitAS", "HitAS", none, false, none},
        {"cooperative full quadrant", P(1, 0.5, 0.5, 1, 0), "AvoidedGuaranteed(C1)",
         "UniqueInFullQuadrant(Thm5_1(3))", "Avoided", "Avoided", none, false, none},
        {"competitive no solution", P(0.25, -0.5, -0.5, 0.25, 0.5), "Unknown",
         "NoSolution(Thm5_3(2))", "HitAS", "HitAS", none, false, none},
        // C3 holds with equality at lambda = mu and nowhere else.
        {"degenerate line system", P(0.3, -0.4, -0.3, 0.4, -1), "AvoidedGuaranteed(C3)",
         "DegenerateLineSystem(Thm5_3(3))", "HitAS", "HitAS", none, false, none},
        {"C1 weak repulsion", P(0.3, 0.5, 0.5, 0.3, 0), "AvoidedGuaranteed(C1)",
         "UniqueInPuncturedQuadrant(Thm5_1(1))", "Unknown", "Unknown", none, false, none},
        {"skew-symmetric with drift", P(1, -1, 1, 1, 0, 1, 2), "AvoidedGuaranteed(C2b)",
         "UniqueInPuncturedQuadrant(Thm5_2)", "Avoided", "Avoided", L{3, 3, 3, 1}, false, 0.0},
        {"decoupled with drift", P(1, 0, 0, 1, 0, 1, 1), "AvoidedGuaranteed(C1)",
         "UniqueInFullQuadrant(Thm5_3(1))", "Avoided", "Avoided", L{3, 3, 2, 2}, false, 0.0},
        {"skew-symmetry fails", P(1, 1, 1, 1, 0.5, 1, 1), "AvoidedGuaranteed(C1)",
         "UniqueInFullQuadrant(Thm5_1(3))", "Avoided", "Avoided", none, true, -1.5},
        {"small competitive edges", P(1, -0.2, -0.2, 1, 0), "AvoidedGuaranteed(C3)",
         "UniqueInFullQuadrant(Thm5_3(1))", "Avoided", "Avoided", none, false, 0.4},
        {"X edge hit", P(0.25, -1, 0, 1, 0), "AvoidedGuaranteed(C2b)",
         "UniqueInFullQuadrant(Thm5_3(1))", "HitAS", "Avoided", none, false, none},
        {"X edge unknown", P(0.25, 1, 0, 1, 0), "AvoidedGuaranteed(C1)",
         "UniqueInFullQuadrant(Thm5_1(3))", "Unknown", "Avoided", none, false, none},
        {"strict supermartingale", P(1, 0, 0, 1, -0.5), "AvoidedGuaranteed(C1)",
         "UniqueInFullQuadrant(Thm5_3(1))", "Avoided", "Avoided", none, false, -0.5},
        {"perfect correlation cooperative", P(1, 1, 1, 1, 1), "AvoidedGuaranteed(C1)",
         "UniqueInFullQuadrant(Thm5_1(3))", "Avoided", "Avoided", none, false, -1.0},
        {"skew bound", P(1, -0.5, -0.5, 1, -0.5), "AvoidedGuaranteed(Cor4_3)",
         "UniqueInFullQuadrant(Thm5_3(1))", "Avoided", "Avoided", none, false, 0.5},
        {"C3 from grid", P(0.4, -0.1, 1, 0.4, 0), "AvoidedGuaranteed(C3)",
         "UniqueInPuncturedQuadrant(Thm5_2)", "HitAS", "Unknown", none, false, none},
        {"collision with weak competition", P(0.25, -0.1, -0.1, 0.25, 1),
         "HitsAlmostSurely(Prop5_4)", "UniqueInFullQuadrant(Thm5_3(1))", "HitAS", "HitAS", none,
         false, none},
        {"collision ruled out by repulsion", P(0.6, 0, 0, 0.6, 1), "AvoidedGuaranteed(C1)",
         "UniqueInFullQuadrant(Thm5_3(1))", "Avoided", "Avoided", none, false, none},
        {"symmetric uncorrelated boundary", P(0.5, -0.5, 0.5, 0.5, 0), "AvoidedGuaranteed(C2b)",
         "UniqueInPuncturedQuadrant(Thm5_2)", "Avoided", "Avoided", none, false, none},
        {"strong cooperation", P(0.5, 2, 2, 0.5, 0.9), "AvoidedGuaranteed(C1)",
         "UniqueInPuncturedQuadrant(Thm5_1(1))", "Avoided", "Avoided", none, false, none},
        {"negative gamma rate", P(1, 1, 0, 1, 0.5, 0, 1), "AvoidedGuaranteed(C1)",
         "UniqueInFullQuadrant(Thm5_1(3))", "Avoided", "Avoided", none, true, -0.5},
        {"anticorrelated cooperative", P(0.3, 0.5, 0.5, 0.3, -1), "AvoidedGuaranteed(C1)",
         "UniqueInPuncturedQuadrant(Thm5_1(1))", "Unknown", "Unknown", none, false, none},
    };
}

inline std::string corner_tag(const regime::CornerVerdict& v)
{
    std::string s(regime::to_string(v.status));
    if (v.witness)
        s += "(" + std::string(regime::to_string(*v.witness)) + ")";
    return s;
}

inline std::string existence_tag(const regime::ExistenceClass& e)
{
    std::string s(regime::to_string(e.kind));
    if (e.basis)
        s += "(" + std::string(regime::to_string(*e.basis)) + ")";
    return s;
}

/// Empty when the classifier reproduces every asserted field of `row`.
inline std::string row_mismatch(const RegimeRow& row)
{
    const auto r = regime::classify(row.p);
    std::string diff;
    auto cmp = [&](const char* field, const std::optional<std::string>& want,
                   const std::string& got) {
        if (want && *want != got)
            diff += std::string(field) + ": expected " + *want + ", got " + got + "; ";
    };
    cmp("corner", row.corner, corner_tag(r.corner));
    cmp("existence", row.existence, existence_tag(r.existence));
    cmp("x_edge", row.x_edge, std::string(regime::to_string(r.edges.x_edge)));
    cmp("y_edge", row.y_edge, std::string(regime::to_string(r.edges.y_edge)));
    if (row.law)
    {
        if (!r.stationary || r.stationary->a != row.law->a || r.stationary->b != row.law->b
            || r.stationary->c != row.law->c || r.stationary->d != row.law->d)
            diff += "stationary law mismatch; ";
    }
    if (row.law_absent && r.stationary)
        diff += "stationary law should be absent; ";
    if (row.coefficient && r.supermartingale_coefficient != *row.coefficient)
        diff += "supermartingale coefficient " + std::to_string(r.supermartingale_coefficient)
                + "; ";
    return diff;
}

} // namespace o2bp::testing
