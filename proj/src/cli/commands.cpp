// Copyright 2026 The o2bp Authors
// SPDX-License-Identifier: Apache-2.0
#include "cli/commands.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "o2bp/io.hpp"
#include "o2bp/stats.hpp"

namespace o2bp::cli {

using nlohmann::json;

namespace {

json optional_time(const std::optional<double>& t) { return t ? json(*t) : json(nullptr); }

json events_json(const EventTimes& e)
{
    return {{"corner_time", optional_time(e.corner)},
            {"x_edge_time", optional_time(e.x_edge)},
            {"y_edge_time", optional_time(e.y_edge)}};
}

json mean_se_json(const stats::MeanSe& m)
{
    return {{"mean", m.mean}, {"se", m.se}, {"n", m.n}};
}

json ks_json(const stats::KsResult& k)
{
    return {{"statistic", k.statistic}, {"p_value", k.p_value}};
}

Check at_most(std::string name, double value, double limit)
{
    return {std::move(name), value, limit, value <= limit};
}

std::string metadata_line(const RunConfig& cfg) { return metadata(cfg).dump(); }

} // namespace

json metadata(const RunConfig& cfg)
{
    // The output prefix is left out so that files do not depend on where
    // they were written.
    json config = to_json(cfg);
    config.erase("out");
    return {{"tool", "o2bp"},
            {"version", kToolVersion},
            {"seed", cfg.ensemble.seed},
            {"config", config}};
}

json report_json(const regime::RegimeReport& r)
{
    using regime::to_string;
    json corner = {{"status", to_string(r.corner.status)},
                   {"witness", r.corner.witness ? json(to_string(*r.corner.witness)) : json()},
                   {"direction", r.corner.direction
                                     ? json{{"lambda", r.corner.direction->lambda},
                                            {"mu", r.corner.direction->mu}}
                                     : json()}};
    const auto& e = r.existence;
    json existence = {
        {"kind", to_string(e.kind)},
        {"basis", e.basis ? json(to_string(*e.basis)) : json()},
        {"corner_start", e.corner_start ? json(to_string(*e.corner_start)) : json()},
        {"corner_start_basis",
         e.corner_start_basis ? json(to_string(*e.corner_start_basis)) : json()},
        {"witness", e.witness ? json(to_string(*e.witness)) : json()}};
    json law;
    if (r.stationary)
        law = {{"a", r.stationary->a}, {"b", r.stationary->b}, {"c", r.stationary->c},
               {"d", r.stationary->d}};
    return {{"params",
             {{"alpha", r.params.alpha}, {"beta", r.params.beta}, {"gamma", r.params.gamma},
              {"delta", r.params.delta}, {"rho", r.params.rho}, {"theta", r.params.theta},
              {"eta", r.params.eta}}},
            {"corner", corner},
            {"existence", existence},
            {"edges", {{"x_edge", to_string(r.edges.x_edge)}, {"y_edge", to_string(r.edges.y_edge)}}},
            {"stationary_law", law},
            {"stationary_absent_reason",
             r.stationary ? json() : json(std::string(r.stationary_absent_reason))},
            {"supermartingale_coefficient", r.supermartingale_coefficient}};
}

Outcome run_classify(const RunConfig& cfg)
{
    validate(cfg.params);
    return {report_json(regime::classify(cfg.params)), {}, {}, nullptr};
}

Outcome run_simulate(const RunConfig& cfg)
{
    validate(cfg.params);
    mc::validate(cfg.ensemble);
    if (cfg.stride < 1)
        throw InvalidInput("stride must be >= 1");
    const auto& e = cfg.ensemble;
    const auto paths = mc::map_paths(e.n_paths, e.threads, [&](std::size_t i) {
        Rng rng = path_stream(e.seed, i, mc::kNoiseLane);
        return simulate_path(cfg.params, mc::resolve_start(cfg.params, e, i), e.horizon, e.step,
                             cfg.events, rng, cfg.stride);
    });

    Outcome out;
    std::ostringstream csv;
    json terminal = json::array();
    json events = json::array();
    if (paths.size() == 1)
    {
        io::write_path_csv(csv, paths.front(), metadata_line(cfg));
    }
    else
    {
        io::write_comment(csv, metadata_line(cfg));
        csv << "path_id,t,x,y\n";
        for (std::size_t i = 0; i < paths.size(); ++i)
            for (const auto& s : paths[i].states)
                csv << i << ',' << io::format_real(s.t) << ',' << io::format_real(s.x) << ','
                    << io::format_real(s.y) << '\n';
    }
    for (const auto& path : paths)
    {
        const auto& last = path.states.back();
        terminal.push_back({{"t", last.t}, {"x", last.x}, {"y", last.y}});
        events.push_back(events_json(path.events));
    }
    out.csv = csv.str();
    out.result = {{"paths", paths.size()}, {"terminal", terminal}, {"events", events}};
    out.sidecar = paths.size() == 1 ? events.front() : events;
    return out;
}

Outcome run_hitting(const RunConfig& cfg)
{
    const auto events = mc::hitting_events(cfg.params, cfg.ensemble, cfg.events, cfg.which);
    const auto est = mc::summarize_hits(events, cfg.which, cfg.events, cfg.ensemble.horizon);

    Outcome out;
    out.result = {{"which", to_string(cfg.which)}, {"frequency", est.frequency},
                  {"ci_halfwidth", est.ci_halfwidth}, {"threshold", est.threshold},
                  {"horizon", est.horizon}, {"hits", est.hits}, {"n", est.n}};
    if (cfg.tolerances.min_frequency)
        out.checks.push_back({"frequency >= min_frequency", est.frequency,
                              *cfg.tolerances.min_frequency,
                              est.frequency >= *cfg.tolerances.min_frequency});
    if (cfg.tolerances.max_frequency)
        out.checks.push_back(
            at_most("frequency <= max_frequency", est.frequency, *cfg.tolerances.max_frequency));
    std::ostringstream csv;
    io::write_events_csv(csv, events, metadata_line(cfg));
    out.csv = csv.str();
    return out;
}

Outcome run_stationary(const RunConfig& cfg)
{
    const auto samples = mc::stationary_sample(cfg.params, cfg.ensemble, cfg.stationary);
    std::vector<double> xs, ys;
    xs.reserve(samples.size());
    ys.reserve(samples.size());
    for (const auto& q : samples)
    {
        xs.push_back(q.x);
        ys.push_back(q.y);
    }
    const auto mx = stats::mean_se(xs);
    const auto my = stats::mean_se(ys);

    Outcome out;
    out.result = {{"n_samples", samples.size()}, {"mean_x", mean_se_json(mx)},
                  {"mean_y", mean_se_json(my)}};
    if (auto law = regime::stationary_law(cfg.params))
    {
        const stats::GammaLaw gx{law->a, law->c}, gy{law->b, law->d};
        const stats::GammaLaw gz{law->a + law->b, 1.0};
        const stats::BetaLaw bw{law->a, law->b};
        std::vector<double> ws, zs;
        for (const auto& q : samples)
        {
            const auto t = stats::beta_gamma_transform(q.x, q.y, law->c, law->d);
            ws.push_back(t.w);
            zs.push_back(t.z);
        }
        const double corr = stats::correlation(ws, zs);
        const auto ks_x = stats::ks_test_unsorted(xs, [&](double v) { return stats::gamma_cdf(v, gx); });
        const auto ks_y = stats::ks_test_unsorted(ys, [&](double v) { return stats::gamma_cdf(v, gy); });
        const auto ks_w = stats::ks_test_unsorted(ws, [&](double v) { return stats::beta_cdf(v, bw); });
        const auto ks_z = stats::ks_test_unsorted(zs, [&](double v) { return stats::gamma_cdf(v, gz); });
        out.result["law"] = {{"a", law->a}, {"b", law->b}, {"c", law->c}, {"d", law->d}};
        out.result["ks_x"] = ks_json(ks_x);
        out.result["ks_y"] = ks_json(ks_y);
        out.result["ks_w"] = ks_json(ks_w);
        out.result["ks_z"] = ks_json(ks_z);
        out.result["corr_wz"] = corr;

        const auto& tol = cfg.tolerances;
        out.checks.push_back(at_most("ks_x", ks_x.statistic, tol.ks_max));
        out.checks.push_back(at_most("ks_y", ks_y.statistic, tol.ks_max));
        out.checks.push_back(at_most("mean_x deviation in SE", std::fabs(mx.mean - gx.mean()) / mx.se,
                                     tol.se_multiplier));
        out.checks.push_back(at_most("mean_y deviation in SE", std::fabs(my.mean - gy.mean()) / my.se,
                                     tol.se_multiplier));
        out.checks.push_back(at_most("ks_w", ks_w.statistic, tol.ks_max));
        out.checks.push_back(at_most("ks_z", ks_z.statistic, tol.ks_max));
        out.checks.push_back(at_most("|corr_wz|", std::fabs(corr), tol.corr_max));
    }
    std::ostringstream csv;
    io::write_samples_csv(csv, samples, metadata_line(cfg));
    out.csv = csv.str();
    return out;
}

Outcome run_martingale(const RunConfig& cfg)
{
    const auto& p = cfg.params;
    const auto res = mc::martingale_drift_test(p, cfg.ensemble, cfg.martingale);
    const double k = cfg.tolerances.se_multiplier;

    // The power product is a local martingale exactly when the drift
    // inequality is tight; otherwise only a supermartingale.
    bool equality = true;
    if (cfg.martingale.functional == mc::Functional::PowerProduct)
    {
        const double lhs = p.beta / (2 * p.delta - 1) + p.gamma / (2 * p.alpha - 1);
        equality = std::fabs(lhs - p.rho) <= regime::kSkewTolerance;
    }

    Outcome out;
    json points = json::array();
    std::ostringstream csv;
    io::write_comment(csv, metadata_line(cfg));
    csv << "time,mean,se,stopped_fraction\n";
    double prev_mean = res.initial;
    double prev_se = 0.0;
    for (const auto& pt : res.points)
    {
        points.push_back({{"time", pt.time}, {"mean", pt.value.mean}, {"se", pt.value.se},
                          {"stopped_fraction", pt.stopped_fraction}});
        csv << io::format_real(pt.time) << ',' << io::format_real(pt.value.mean) << ','
            << io::format_real(pt.value.se) << ',' << io::format_real(pt.stopped_fraction)
            << '\n';
        const std::string at = "t=" + io::format_real(pt.time);
        if (equality)
        {
            out.checks.push_back(at_most("|mean - M0| in SE at " + at,
                                         std::fabs(pt.value.mean - res.initial) / pt.value.se, k));
        }
        else
        {
            const double se = std::hypot(pt.value.se, prev_se);
            out.checks.push_back(at_most("increase over previous in SE at " + at,
                                         (pt.value.mean - prev_mean) / se, k));
        }
        prev_mean = pt.value.mean;
        prev_se = pt.value.se;
    }
    out.result = {{"functional", to_json(cfg)["martingale"]["functional"]},
                  {"expectation", equality ? "constant" : "nonincreasing"},
                  {"initial", res.initial},
                  {"points", points}};
    out.csv = csv.str();
    return out;
}

Outcome run_importance(const RunConfig& cfg)
{
    const auto res = mc::importance_estimate(cfg.params, cfg.ensemble, cfg.importance);
    const double k = cfg.tolerances.se_multiplier;
    const double combined = std::hypot(res.direct.se, res.weighted.se);

    Outcome out;
    out.result = {{"direct", mean_se_json(res.direct)},
                  {"weighted", mean_se_json(res.weighted)},
                  {"weight", mean_se_json(res.weight)}};
    out.checks.push_back(at_most("|direct - weighted| in combined SE",
                                 std::fabs(res.direct.mean - res.weighted.mean) / combined, k));
    out.checks.push_back(at_most("|weight - 1| in SE", std::fabs(res.weight.mean - 1.0) / res.weight.se, k));
    return out;
}

int execute(const RunConfig& cfg, std::ostream& out)
{
    Outcome outcome;
    switch (cfg.command)
    {
        case Command::Classify: outcome = run_classify(cfg); break;
        case Command::Simulate: outcome = run_simulate(cfg); break;
        case Command::Hitting: outcome = run_hitting(cfg); break;
        case Command::Stationary: outcome = run_stationary(cfg); break;
        case Command::Martingale: outcome = run_martingale(cfg); break;
        case Command::Importance: outcome = run_importance(cfg); break;
        case Command::Phase: outcome = run_phase(cfg); break;
    }

    bool pass = true;
    json checks = json::array();
    for (const auto& c : outcome.checks)
    {
        checks.push_back({{"name", c.name}, {"value", c.value}, {"limit", c.limit}, {"pass", c.pass}});
        pass = pass && c.pass;
    }
    json summary = {{"metadata", metadata(cfg)}, {"result", outcome.result}};
    if (!outcome.checks.empty())
    {
        summary["checks"] = checks;
        summary["pass"] = pass;
    }
    const std::string text = summary.dump(2) + "\n";

    if (!cfg.out.empty())
    {
        auto write = [](const std::string& path, const std::string& content) {
            std::ofstream f(path, std::ios::binary);
            if (!f || !(f << content))
                throw InvalidInput("cannot write '" + path + "'");
        };
        write(cfg.out + ".json", text);
        if (!outcome.csv.empty())
            write(cfg.out + ".csv", outcome.csv);
        if (!outcome.sidecar.is_null())
            write(cfg.out + ".events.json", outcome.sidecar.dump(2) + "\n");
    }
    out << text;
    return pass ? kExitPass : kExitToleranceFail;
}

} // namespace o2bp::cli
