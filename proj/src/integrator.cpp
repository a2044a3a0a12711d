// Copyright 2026 The o2bp Authors
// SPDX-License-Identifier: Apache-2.0
#include "o2bp/integrator.hpp"

#include <algorithm>
#include <cmath>

namespace o2bp {

void validate(const StepConfig& cfg)
{
    if (!(cfg.dt > 0) || !std::isfinite(cfg.dt))
        throw std::invalid_argument("dt must be > 0");
    if (!(cfg.cross_floor > 0))
        throw std::invalid_argument("cross_floor must be > 0");
    if (cfg.truncation < 1)
        throw std::invalid_argument("truncation order n must be >= 1");
}

StepOutcome advance(const PathState& s, const O2BPParams& p, Increments inc,
                    const StepConfig& cfg, double dt)
{
    double inv_x, inv_y;
    if (cfg.scheme == Scheme::TruncatedLipschitz)
    {
        inv_x = truncated_inverse(s.x, cfg.truncation);
        inv_y = truncated_inverse(s.y, cfg.truncation);
    }
    else
    {
        inv_x = 1.0 / std::max(s.x, cfg.cross_floor);
        inv_y = 1.0 / std::max(s.y, cfg.cross_floor);
    }
    StepOutcome out;
    out.predictor_x = ((s.x + inc.dB) + p.beta * dt * inv_y) - p.theta * dt;
    out.predictor_y = ((s.y + inc.dC) + p.gamma * dt * inv_x) - p.eta * dt;
    out.next.x = implicit_root(out.predictor_x, p.alpha * dt);
    out.next.y = implicit_root(out.predictor_y, p.delta * dt);
    out.next.t = s.t + dt;
    return out;
}

PathState drift_implicit_step(const PathState& s, const O2BPParams& p, double dB,
                              double dC, const StepConfig& cfg)
{
    StepConfig implicit = cfg;
    implicit.scheme = Scheme::DriftImplicit;
    return advance(s, p, {dB, dC}, implicit, cfg.dt).next;
}

PathState truncated_step(const PathState& s, const O2BPParams& p, double dB,
                         double dC, const StepConfig& cfg)
{
    StepConfig truncated = cfg;
    truncated.scheme = Scheme::TruncatedLipschitz;
    return advance(s, p, {dB, dC}, truncated, cfg.dt).next;
}

void detect_events(const StepOutcome& out, const EventSpec& spec, EventTimes& events)
{
    const double ex = std::min(out.next.x, out.predictor_x);
    const double ey = std::min(out.next.y, out.predictor_y);
    const double t = out.next.t;
    if (!events.x_edge && ex <= spec.x_edge)
        events.x_edge = t;
    if (!events.y_edge && ey <= spec.y_edge)
        events.y_edge = t;
    if (!events.corner && std::max(ex, 0.0) + std::max(ey, 0.0) <= spec.corner)
        events.corner = t;
}

void detect_start_events(const PathState& s, const EventSpec& spec, EventTimes& events)
{
    if (s.x <= spec.x_edge)
        events.x_edge = s.t;
    if (s.y <= spec.y_edge)
        events.y_edge = s.t;
    if (s.x + s.y <= spec.corner)
        events.corner = s.t;
}

std::size_t step_count(double horizon, double dt)
{
    if (!(horizon > 0))
        return 0;
    return static_cast<std::size_t>(std::ceil(horizon / dt - 1e-9));
}

} // namespace o2bp
