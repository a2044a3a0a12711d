// Copyright 2026 The o2bp Authors
// SPDX-License-Identifier: Apache-2.0
#include "o2bp/montecarlo.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "o2bp/regime.hpp"

namespace o2bp::mc {

namespace {

stats::GammaLaw x_law(const regime::StationaryLaw& law) { return {law.a, law.c}; }
stats::GammaLaw y_law(const regime::StationaryLaw& law) { return {law.b, law.d}; }

regime::StationaryLaw require_stationary(const O2BPParams& p)
{
    std::string_view reason;
    auto law = regime::stationary_law(p, &reason);
    if (!law)
        throw std::invalid_argument("no stationary law: " + std::string(reason));
    return *law;
}

// True once a grid time t has reached `target`, to within half a step.
bool reached(double t, double target, double dt) { return t >= target - 0.5 * dt; }

} // namespace

void validate(const EnsembleConfig& cfg)
{
    validate(cfg.step);
    if (cfg.n_paths < 1)
        throw std::invalid_argument("n_paths must be >= 1");
    if (!(cfg.horizon > 0) || !std::isfinite(cfg.horizon))
        throw std::invalid_argument("horizon must be > 0");
    if (cfg.start.kind == StartSpec::Kind::Point
        && (!(cfg.start.point.x >= 0) || !(cfg.start.point.y >= 0)))
        throw std::invalid_argument("start must lie in the closed quadrant");
}

PathState resolve_start(const O2BPParams& p, const EnsembleConfig& cfg, std::size_t index)
{
    switch (cfg.start.kind)
    {
        case StartSpec::Kind::Point:
            return {cfg.start.point.x, cfg.start.point.y, 0.0};
        case StartSpec::Kind::GammaMean: {
            const auto law = require_stationary(p);
            return {x_law(law).mean(), y_law(law).mean(), 0.0};
        }
        case StartSpec::Kind::StationaryLaw: {
            const auto law = require_stationary(p);
            Rng rng = path_stream(cfg.seed, index, kStartLane);
            const double x = stats::gamma_sample(x_law(law), rng);
            const double y = stats::gamma_sample(y_law(law), rng);
            return {x, y, 0.0};
        }
    }
    throw std::logic_error("unhandled start kind");
}

//---------------------------------------------------------------------------//
// Hitting
//---------------------------------------------------------------------------//

namespace {

const std::optional<double>& event_of(const EventTimes& e, HitTarget which)
{
    switch (which)
    {
        case HitTarget::Corner: return e.corner;
        case HitTarget::XEdge: return e.x_edge;
        case HitTarget::YEdge: return e.y_edge;
    }
    throw std::logic_error("unhandled hit target");
}

double threshold_of(const EventSpec& spec, HitTarget which)
{
    switch (which)
    {
        case HitTarget::Corner: return spec.corner;
        case HitTarget::XEdge: return spec.x_edge;
        case HitTarget::YEdge: return spec.y_edge;
    }
    throw std::logic_error("unhandled hit target");
}

} // namespace

std::vector<EventTimes> hitting_events(const O2BPParams& p, const EnsembleConfig& cfg,
                                       const EventSpec& spec, std::optional<HitTarget> stop_on)
{
    validate(p);
    validate(cfg);
    return map_paths(cfg.n_paths, cfg.threads, [&](std::size_t i) {
        Rng rng = path_stream(cfg.seed, i, kNoiseLane);
        const PathState start = resolve_start(p, cfg, i);
        return simulate(p, start, cfg.horizon, cfg.step, spec, rng,
                        [&](std::size_t, const PathState&, Increments, const EventTimes& ev) {
                            return !stop_on || !event_of(ev, *stop_on);
                        });
    });
}

HittingEstimate summarize_hits(const std::vector<EventTimes>& events, HitTarget which,
                               const EventSpec& spec, double horizon)
{
    HittingEstimate est;
    est.n = events.size();
    est.threshold = threshold_of(spec, which);
    est.horizon = horizon;
    for (const auto& e : events)
    {
        const auto& t = event_of(e, which);
        if (t && *t <= horizon)
            ++est.hits;
    }
    if (est.n > 0)
    {
        est.frequency = static_cast<double>(est.hits) / static_cast<double>(est.n);
        est.ci_halfwidth = stats::binomial_halfwidth(est.frequency, est.n);
    }
    return est;
}

HittingEstimate hitting_probability(const O2BPParams& p, const EnsembleConfig& cfg,
                                    HitTarget which, const EventSpec& spec)
{
    return summarize_hits(hitting_events(p, cfg, spec, which), which, spec, cfg.horizon);
}

//---------------------------------------------------------------------------//
// Stationary sampling
//---------------------------------------------------------------------------//

std::vector<QuadrantPoint> stationary_sample(const O2BPParams& p, const EnsembleConfig& cfg,
                                             const StationaryConfig& sc)
{
    validate(p);
    if (!(sc.burn_in > 0) || !(sc.spacing > 0))
        throw std::invalid_argument("burn_in and spacing must be > 0");
    if (sc.count < 1)
        throw std::invalid_argument("count must be >= 1");
    if (!sc.force)
        require_stationary(p);

    const std::size_t per_path = (sc.count + cfg.n_paths - 1) / cfg.n_paths;
    EnsembleConfig run = cfg;
    run.horizon = sc.burn_in + sc.spacing * static_cast<double>(per_path - 1);
    validate(run);

    const double dt = run.step.dt;
    const auto per_path_samples = map_paths(run.n_paths, run.threads, [&](std::size_t i) {
        std::vector<QuadrantPoint> out;
        out.reserve(per_path);
        Rng rng = path_stream(run.seed, i, kNoiseLane);
        const PathState start = resolve_start(p, run, i);
        simulate(p, start, run.horizon, run.step, EventSpec{}, rng,
                 [&](std::size_t, const PathState& s, Increments, const EventTimes&) {
                     const double target
                         = sc.burn_in + sc.spacing * static_cast<double>(out.size());
                     if (reached(s.t, target, dt))
                         out.push_back({s.x, s.y});
                     return out.size() < per_path;
                 });
        return out;
    });

    std::vector<QuadrantPoint> pooled;
    pooled.reserve(sc.count);
    for (const auto& samples : per_path_samples)
        for (const auto& q : samples)
            if (pooled.size() < sc.count)
                pooled.push_back(q);
    return pooled;
}

//---------------------------------------------------------------------------//
// Martingale diagnostics
//---------------------------------------------------------------------------//

double functional_value(const O2BPParams& p, Functional f, double x, double y)
{
    switch (f)
    {
        case Functional::PowerProduct:
            return std::pow(x, 1.0 - 2.0 * p.alpha) * std::pow(y, 1.0 - 2.0 * p.delta);
        case Functional::LogCombo:
            return p.gamma * std::log(x) - p.beta * std::log(y);
    }
    throw std::logic_error("unhandled functional");
}

std::string martingale_precondition_error(const O2BPParams& p, Functional f)
{
    if (auto err = validation_error(p); !err.empty())
        return err;
    if (f == Functional::PowerProduct)
    {
        if (!(p.alpha > 0.5))
            return "alpha > 1/2 fails";
        if (!(p.delta > 0.5))
            return "delta > 1/2 fails";
        if (!(p.rho > -1))
            return "rho > -1 fails";
        const double lhs = p.beta / (2.0 * p.delta - 1.0) + p.gamma / (2.0 * p.alpha - 1.0);
        if (!(lhs >= p.rho))
            return "beta/(2 delta - 1) + gamma/(2 alpha - 1) >= rho fails";
        return {};
    }
    if (p.alpha != 0.5)
        return "alpha = 1/2 fails";
    if (p.delta != 0.5)
        return "delta = 1/2 fails";
    if (!(p.rho * p.beta * p.gamma < std::fabs(p.beta * p.gamma)))
        return "rho beta gamma < |beta gamma| fails";
    return {};
}

namespace {

struct MartingalePath
{
    std::vector<double> values;
    std::vector<char> stopped;
};

// Probability that a Brownian bridge of variance dt between a and b, both
// on the same side of `level`, touches it.
double bridge_crossing(double a, double b, double level, double dt)
{
    return std::exp(-2.0 * (a - level) * (b - level) / dt);
}

} // namespace

MartingaleResult martingale_drift_test(const O2BPParams& p, const EnsembleConfig& cfg,
                                       const MartingaleConfig& mc)
{
    if (auto err = martingale_precondition_error(p, mc.functional); !err.empty())
        throw std::invalid_argument(err);
    validate(cfg);
    if (!(mc.box > 1))
        throw std::invalid_argument("box size K must be > 1");
    if (mc.times.empty())
        throw std::invalid_argument("at least one time is required");
    for (std::size_t j = 0; j < mc.times.size(); ++j)
        if (!(mc.times[j] > 0) || (j > 0 && !(mc.times[j] > mc.times[j - 1])))
            throw std::invalid_argument("times must be positive and increasing");
    if (cfg.start.kind != StartSpec::Kind::Point)
        throw std::invalid_argument("martingale runs need a point start");

    const double lo = 1.0 / mc.box;
    const double hi = mc.box;
    const PathState start = cfg.start.point;
    if (!(start.x > lo && start.x < hi && start.y > lo && start.y < hi))
        throw std::invalid_argument("start must lie strictly inside the box");

    const double dt = cfg.step.dt;
    const double horizon = mc.times.back();
    const auto paths = map_paths(cfg.n_paths, cfg.threads, [&](std::size_t i) {
        MartingalePath out;
        out.values.reserve(mc.times.size());
        Rng rng = path_stream(cfg.seed, i, kNoiseLane);
        Rng stop_rng = path_stream(cfg.seed, i, kStoppingLane);
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        PathState prev = start;
        bool stopped = false;
        PathState exit{};

        auto crossed = [&](double a, double b, double step) {
            if (!mc.bridge_exit)
                return false;
            return unif(stop_rng) < bridge_crossing(a, b, lo, step)
                   || unif(stop_rng) < bridge_crossing(b, a, hi, step);
        };

        simulate(p, start, horizon, cfg.step, EventSpec{}, rng,
                 [&](std::size_t, const PathState& s, Increments, const EventTimes&) {
                     const double step = s.t - prev.t;
                     const bool outside = s.x <= lo || s.x >= hi || s.y <= lo || s.y >= hi;
                     if (outside)
                     {
                         stopped = true;
                         exit = {std::clamp(s.x, lo, hi), std::clamp(s.y, lo, hi), s.t};
                     }
                     else if (crossed(prev.x, s.x, step))
                     {
                         stopped = true;
                         const double level
                             = (prev.x - lo) * (s.x - lo) < (hi - prev.x) * (hi - s.x) ? lo : hi;
                         exit = {level, s.y, s.t};
                     }
                     else if (crossed(prev.y, s.y, step))
                     {
                         stopped = true;
                         const double level
                             = (prev.y - lo) * (s.y - lo) < (hi - prev.y) * (hi - s.y) ? lo : hi;
                         exit = {s.x, level, s.t};
                     }
                     const PathState& current = stopped ? exit : s;
                     while (out.values.size() < mc.times.size()
                            && (stopped || reached(s.t, mc.times[out.values.size()], dt)))
                     {
                         out.values.push_back(
                             functional_value(p, mc.functional, current.x, current.y));
                         out.stopped.push_back(stopped);
                     }
                     prev = s;
                     return !stopped;
                 });
        return out;
    });

    MartingaleResult result;
    result.initial = functional_value(p, mc.functional, start.x, start.y);
    std::vector<double> column(paths.size());
    for (std::size_t j = 0; j < mc.times.size(); ++j)
    {
        std::size_t n_stopped = 0;
        for (std::size_t i = 0; i < paths.size(); ++i)
        {
            column[i] = paths[i].values[j];
            n_stopped += paths[i].stopped[j] ? 1 : 0;
        }
        result.points.push_back({mc.times[j], stats::mean_se(column),
                                 static_cast<double>(n_stopped)
                                     / static_cast<double>(paths.size())});
    }
    return result;
}

//---------------------------------------------------------------------------//
// Change of measure
//---------------------------------------------------------------------------//

double test_function_value(TestFunction f, double x, double y)
{
    switch (f)
    {
        case TestFunction::ExpNegSum: return std::exp(-x - y);
        case TestFunction::ExpNegX: return std::exp(-x);
        case TestFunction::ExpNegY: return std::exp(-y);
    }
    throw std::logic_error("unhandled test function");
}

std::string importance_precondition_error(const O2BPParams& p, WeightMode mode,
                                          const PathState& start)
{
    if (auto err = validation_error(p); !err.empty())
        return err;
    if (p.rho != 0)
        return "rho = 0 fails";
    if (p.theta != 0 || p.eta != 0)
        return "theta = eta = 0 fails";
    if (mode == WeightMode::OneSided)
    {
        if (p.gamma != 0)
            return "gamma = 0 fails";
        if (!(p.delta >= 0.5))
            return "delta >= 1/2 fails";
        if (!(start.y > 0))
            return "y > 0 fails";
        return {};
    }
    if (!(std::fabs(p.beta) <= p.delta - 0.5))
        return "|beta| <= delta - 1/2 fails";
    if (!(std::fabs(p.gamma) <= p.alpha - 0.5))
        return "|gamma| <= alpha - 1/2 fails";
    if (!(start.x > 0 && start.y > 0))
        return "x > 0 and y > 0 fails";
    return {};
}

double log_weight_increment(const O2BPParams& p, double u, double v, double du, double dv,
                            double dt)
{
    return p.beta * du / v + p.gamma * dv / u
           - (p.alpha * p.beta + p.gamma * p.delta) * dt / (u * v)
           - 0.5 * p.beta * p.beta * dt / (v * v) - 0.5 * p.gamma * p.gamma * dt / (u * u);
}

ImportanceResult importance_estimate(const O2BPParams& p, const EnsembleConfig& cfg,
                                     const ImportanceConfig& ic)
{
    validate(cfg);
    if (cfg.start.kind != StartSpec::Kind::Point)
        throw std::invalid_argument("importance runs need a point start");
    const PathState start = cfg.start.point;
    if (auto err = importance_precondition_error(p, ic.mode, start); !err.empty())
        throw std::invalid_argument(err);
    if (!(start.x > 0))
        throw std::invalid_argument("x > 0 fails");

    O2BPParams reference;
    reference.alpha = p.alpha;
    reference.delta = p.delta;
    reference.beta = reference.gamma = reference.rho = reference.theta = reference.eta = 0;

    struct Sample
    {
        double direct, weighted, weight;
    };
    const auto samples = map_paths(cfg.n_paths, cfg.threads, [&](std::size_t i) {
        Rng rng = path_stream(cfg.seed, i, kNoiseLane);
        PathState end = start;
        simulate(p, start, cfg.horizon, cfg.step, EventSpec{}, rng,
                 [&](std::size_t, const PathState& s, Increments, const EventTimes&) {
                     end = s;
                     return true;
                 });

        Rng ref_rng = path_stream(cfg.seed, i, kReferenceLane);
        PathState prev = start;
        double log_z = 0.0;
        simulate(reference, start, cfg.horizon, cfg.step, EventSpec{}, ref_rng,
                 [&](std::size_t, const PathState& s, Increments, const EventTimes&) {
                     log_z += log_weight_increment(p, prev.x, prev.y, s.x - prev.x,
                                                   s.y - prev.y, s.t - prev.t);
                     prev = s;
                     return true;
                 });
        const double z = std::exp(log_z);
        return Sample{test_function_value(ic.function, end.x, end.y),
                      test_function_value(ic.function, prev.x, prev.y) * z, z};
    });

    std::vector<double> direct(samples.size()), weighted(samples.size()), weight(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i)
    {
        direct[i] = samples[i].direct;
        weighted[i] = samples[i].weighted;
        weight[i] = samples[i].weight;
    }
    return {stats::mean_se(direct), stats::mean_se(weighted), stats::mean_se(weight)};
}

//---------------------------------------------------------------------------//
// Generic ensemble reduction
//---------------------------------------------------------------------------//

EnsembleSummary run_ensemble(const O2BPParams& p, const EnsembleConfig& cfg,
                             const Reducers& reducers)
{
    validate(p);
    validate(cfg);
    for (std::size_t j = 0; j < reducers.checkpoints.size(); ++j)
    {
        const double t = reducers.checkpoints[j];
        if (!(t > 0 && t <= cfg.horizon) || (j > 0 && !(t > reducers.checkpoints[j - 1])))
            throw std::invalid_argument("checkpoints must be increasing within (0, horizon]");
    }

    struct PathResult
    {
        std::vector<PathState> marks;
        EventTimes events;
    };
    const double dt = cfg.step.dt;
    const auto paths = map_paths(cfg.n_paths, cfg.threads, [&](std::size_t i) {
        PathResult out;
        Rng rng = path_stream(cfg.seed, i, kNoiseLane);
        const PathState start = resolve_start(p, cfg, i);
        out.events = simulate(p, start, cfg.horizon, cfg.step, reducers.events, rng,
                              [&](std::size_t, const PathState& s, Increments, const EventTimes&) {
                                  while (out.marks.size() < reducers.checkpoints.size()
                                         && reached(s.t, reducers.checkpoints[out.marks.size()], dt))
                                      out.marks.push_back(s);
                                  return true;
                              });
        return out;
    });

    EnsembleSummary summary;
    summary.n_paths = paths.size();
    std::vector<double> xs(paths.size()), ys(paths.size());
    for (std::size_t j = 0; j < reducers.checkpoints.size(); ++j)
    {
        for (std::size_t i = 0; i < paths.size(); ++i)
        {
            xs[i] = paths[i].marks[j].x;
            ys[i] = paths[i].marks[j].y;
        }
        summary.checkpoints.push_back(
            {reducers.checkpoints[j], stats::mean_se(xs), stats::mean_se(ys)});
    }
    for (const auto& path : paths)
    {
        summary.corner_hits += path.events.corner ? 1 : 0;
        summary.x_edge_hits += path.events.x_edge ? 1 : 0;
        summary.y_edge_hits += path.events.y_edge ? 1 : 0;
    }
    return summary;
}

} // namespace o2bp::mc
