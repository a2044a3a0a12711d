// Copyright 2026 The o2bp Authors
// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <sstream>

#include "cli/commands.hpp"
#include "o2bp/io.hpp"

namespace o2bp::cli {

using nlohmann::json;

namespace {

constexpr std::size_t kMaxMonteCarloCells = 10000;

double& param_ref(O2BPParams& p, const std::string& name)
{
    if (name == "alpha") return p.alpha;
    if (name == "beta") return p.beta;
    if (name == "gamma") return p.gamma;
    if (name == "delta") return p.delta;
    if (name == "rho") return p.rho;
    if (name == "theta") return p.theta;
    if (name == "eta") return p.eta;
    throw InvalidInput("unknown phase axis '" + name
                       + "' (expected alpha, beta, gamma, delta, rho, theta or eta)");
}

std::vector<double> axis_values(const PhaseAxis& axis)
{
    if (axis.steps < 1)
        throw InvalidInput("phase axis '" + axis.name + "' needs at least one step");
    if (!std::isfinite(axis.min) || !std::isfinite(axis.max))
        throw InvalidInput("phase axis '" + axis.name + "' bounds must be finite");
    std::vector<double> values;
    for (int i = 0; i < axis.steps; ++i)
        values.push_back(axis.steps == 1
                             ? axis.min
                             : axis.min + (axis.max - axis.min) * i / (axis.steps - 1));
    return values;
}

std::string verdict_cell(const O2BPParams& p, const std::string& verdict)
{
    if (!validation_error(p).empty())
        return "invalid";
    if (verdict == "existence")
        return std::string(regime::to_string(regime::existence_class(p).kind));
    if (verdict == "corner")
        return std::string(regime::to_string(regime::corner_verdict(p).status));
    if (verdict == "x_edge")
        return std::string(regime::to_string(regime::edge_verdicts(p).x_edge));
    if (verdict == "y_edge")
        return std::string(regime::to_string(regime::edge_verdicts(p).y_edge));
    if (verdict == "stationary")
        return regime::stationary_law(p) ? "law" : "none";
    if (verdict == "skew")
        return std::fabs(2 * p.rho - p.beta / p.delta - p.gamma / p.alpha) <= regime::kSkewTolerance
                   ? "holds"
                   : "fails";
    throw InvalidInput("unknown phase verdict '" + verdict
                       + "' (expected existence, corner, x_edge, y_edge, stationary or skew)");
}

std::string hitting_cell(const O2BPParams& p, const RunConfig& cfg)
{
    if (!validation_error(p).empty())
        return "invalid";
    const auto est = mc::hitting_probability(p, cfg.ensemble, cfg.which, cfg.events);
    return io::format_real(est.frequency);
}

} // namespace

Outcome run_phase(const RunConfig& cfg)
{
    const auto& ph = cfg.phase;
    if (ph.mode != "classify" && ph.mode != "hitting")
        throw InvalidInput("unknown phase mode '" + ph.mode + "' (expected classify or hitting)");

    O2BPParams probe = cfg.params;
    param_ref(probe, ph.x.name);
    if (ph.y)
    {
        param_ref(probe, ph.y->name);
        if (ph.y->name == ph.x.name)
            throw InvalidInput("phase axes must name different parameters");
    }
    const auto xs = axis_values(ph.x);
    const auto ys = ph.y ? axis_values(*ph.y) : std::vector<double>{};
    const std::size_t cells = xs.size() * std::max<std::size_t>(ys.size(), 1);
    if (ph.mode == "hitting")
    {
        if (cells > kMaxMonteCarloCells)
            throw InvalidInput("hitting mode allows at most 10000 cells");
        mc::validate(cfg.ensemble);
    }
    else
    {
        verdict_cell(O2BPParams{}, ph.verdict);
    }

    auto cell = [&](O2BPParams p) {
        return ph.mode == "hitting" ? hitting_cell(p, cfg) : verdict_cell(p, ph.verdict);
    };

    std::ostringstream csv;
    io::write_comment(csv, metadata(cfg).dump());
    json grid = json::array();
    if (!ph.y)
    {
        csv << ph.x.name << ',' << (ph.mode == "hitting" ? "frequency" : ph.verdict) << '\n';
        for (double x : xs)
        {
            O2BPParams p = cfg.params;
            param_ref(p, ph.x.name) = x;
            const std::string v = cell(p);
            csv << io::format_real(x) << ',' << v << '\n';
            grid.push_back({{ph.x.name, x}, {"cell", v}});
        }
    }
    else
    {
        csv << ph.y->name << '\\' << ph.x.name;
        for (double x : xs)
            csv << ',' << io::format_real(x);
        csv << '\n';
        for (double y : ys)
        {
            csv << io::format_real(y);
            json row = json::array();
            for (double x : xs)
            {
                O2BPParams p = cfg.params;
                param_ref(p, ph.x.name) = x;
                param_ref(p, ph.y->name) = y;
                const std::string v = cell(p);
                csv << ',' << v;
                row.push_back(v);
            }
            csv << '\n';
            grid.push_back({{ph.y->name, y}, {"cells", row}});
        }
    }

    Outcome out;
    out.result = {{"x_axis", ph.x.name},
                  {"x_values", xs},
                  {"y_axis", ph.y ? json(ph.y->name) : json()},
                  {"y_values", ys},
                  {"mode", ph.mode},
                  {"grid", grid}};
    out.csv = csv.str();
    return out;
}

} // namespace o2bp::cli
