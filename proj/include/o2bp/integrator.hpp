// Copyright 2026 The o2bp Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "o2bp/params.hpp"

namespace o2bp {

//---------------------------------------------------------------------------//
// Configuration and state
//---------------------------------------------------------------------------//

enum class Scheme
{
    /// Own singular drift implicit (scalar quadratic root), cross terms
    /// explicit with the other coordinate clamped below by `cross_floor`.
    DriftImplicit,
    /// Own singular drift implicit, cross terms through the bounded
    /// Lipschitz truncation h_n of 1/x.
    TruncatedLipschitz
};

struct StepConfig
{
    double dt = 1e-3;
    double cross_floor = 1e-8;
    Scheme scheme = Scheme::DriftImplicit;
    int truncation = 1;  //!< n for TruncatedLipschitz
};

/// Throws std::invalid_argument unless dt > 0, cross_floor > 0, truncation >= 1.
void validate(const StepConfig& cfg);

struct PathState
{
    double x = 0;
    double y = 0;
    double t = 0;
};

struct Increments
{
    double dB;
    double dC;
};

/// Threshold proxies for hitting the edges and the corner.
struct EventSpec
{
    double x_edge = 1e-4;
    double y_edge = 1e-4;
    double corner = 1e-3;
};

/// First proxy hitting times; nullopt means not hit by the horizon.
struct EventTimes
{
    std::optional<double> corner;
    std::optional<double> x_edge;
    std::optional<double> y_edge;
};

/// One step together with the pre-correction predictors: q_x, q_y are the
/// explicit parts of the update before the own singular drift is solved
/// for. A coordinate whose predictor dips below an event threshold is
/// treated as having reached it during the step.
struct StepOutcome
{
    PathState next;
    double predictor_x;
    double predictor_y;
};

//---------------------------------------------------------------------------//
// Brownian increments
//---------------------------------------------------------------------------//

/// Correlated Gaussian pairs with variance dt and covariance rho dt, built
/// as dB = sqrt(dt) Z1, dC = sqrt(dt) (rho Z1 + sqrt(1 - rho^2) Z2).
class CorrelatedNoise
{
  public:
    explicit CorrelatedNoise(double rho)
        : rho_(rho), complement_(std::sqrt(std::max(0.0, 1.0 - rho * rho)))
    {
        if (!(std::fabs(rho) <= 1))
            throw std::invalid_argument("correlation must lie in [-1, 1]");
    }

    template<class Rng>
    Increments operator()(double dt, Rng& rng)
    {
        const double sd = std::sqrt(dt);
        const double z1 = normal_(rng);
        const double z2 = normal_(rng);
        return {sd * z1, sd * (rho_ * z1 + complement_ * z2)};
    }

  private:
    double rho_;
    double complement_;
    std::normal_distribution<double> normal_;
};

template<class Rng>
Increments correlated_increments(double rho, double dt, Rng& rng)
{
    CorrelatedNoise noise(rho);
    return noise(dt, rng);
}

//---------------------------------------------------------------------------//
// Step maps
//---------------------------------------------------------------------------//

/// Positive root of z^2 - q z - own = 0, i.e. the solution of
/// z = q + own / z. Strictly positive for own > 0 and any finite q; the
/// branch for q < 0 is rationalized to avoid cancellation.
inline double implicit_root(double q, double own)
{
    const double disc = std::hypot(q, 2.0 * std::sqrt(own));
    const double z = q >= 0 ? 0.5 * (q + disc) : 2.0 * own / (disc - q);
    return z > 0 ? z : std::numeric_limits<double>::min();
}

/// Bounded Lipschitz truncation of 1/x: (1 - 1/n)/x on [1/n, inf), n - 1 below.
inline double truncated_inverse(double x, int n)
{
    const double cut = 1.0 / n;
    return x >= cut ? (1.0 - cut) / x : n - 1.0;
}

/// Advances one step of length `dt` with the scheme in `cfg`.
StepOutcome advance(const PathState& s, const O2BPParams& p, Increments inc,
                    const StepConfig& cfg, double dt);

/// Drift-implicit step of length cfg.dt:
///   q_x = x + dB + beta dt / max(y, floor) - theta dt,
///   x'  = (q_x + sqrt(q_x^2 + 4 alpha dt)) / 2,
/// and symmetrically for y.
PathState drift_implicit_step(const PathState& s, const O2BPParams& p, double dB,
                              double dC, const StepConfig& cfg);

/// Truncated-interaction step of length cfg.dt with n = cfg.truncation:
/// cross terms beta h_n(y), gamma h_n(x); own terms implicit as above.
PathState truncated_step(const PathState& s, const O2BPParams& p, double dB,
                         double dC, const StepConfig& cfg);

/// Folds the event proxies of one step into `events`.
void detect_events(const StepOutcome& out, const EventSpec& spec, EventTimes& events);

/// Checks the start state itself against the event thresholds.
void detect_start_events(const PathState& s, const EventSpec& spec, EventTimes& events);

/// Number of steps covering [0, horizon]; the last one may be shorter.
std::size_t step_count(double horizon, double dt);

//---------------------------------------------------------------------------//
// Path simulation
//---------------------------------------------------------------------------//

/// Runs the scheme from `start` to `horizon`. After every step calls
/// `observe(step_index, state, increments, events)`; returning false stops
/// the path early. Step k ends at time k * dt except the last, which ends
/// exactly at the horizon.
template<class Rng, class Observer>
EventTimes simulate(const O2BPParams& p, PathState start, double horizon,
                    const StepConfig& cfg, const EventSpec& spec, Rng& rng,
                    Observer&& observe)
{
    if (!(start.x >= 0) || !(start.y >= 0))
        throw std::invalid_argument("start must lie in the closed quadrant");
    if (!(horizon >= 0))
        throw std::invalid_argument("horizon must be >= 0");

    EventTimes events;
    detect_start_events(start, spec, events);

    const std::size_t steps = step_count(horizon, cfg.dt);
    CorrelatedNoise noise(p.rho);
    PathState s = start;
    for (std::size_t k = 1; k <= steps; ++k)
    {
        const bool last = k == steps;
        const double dt = last ? horizon - static_cast<double>(steps - 1) * cfg.dt : cfg.dt;
        const Increments inc = noise(dt, rng);
        StepOutcome out = advance(s, p, inc, cfg, dt);
        out.next.t = last ? horizon : static_cast<double>(k) * cfg.dt;
        detect_events(out, spec, events);
        s = out.next;
        if (!observe(k, s, inc, events))
            break;
    }
    return events;
}

struct Path
{
    std::vector<PathState> states;  //!< start, every stride-th step, and the end
    EventTimes events;
};

/// Validating wrapper around simulate() that records the trajectory.
/// Rejects starts outside the quadrant and negative horizons; a zero
/// horizon returns the start state alone.
template<class Rng>
Path simulate_path(const O2BPParams& p, PathState start, double horizon,
                   const StepConfig& cfg, const EventSpec& spec, Rng& rng,
                   std::size_t stride = 1)
{
    validate(p);
    validate(cfg);
    if (stride == 0)
        throw std::invalid_argument("stride must be >= 1");
    Path path;
    path.states.push_back(start);
    const std::size_t steps = step_count(horizon, cfg.dt);
    path.events = simulate(p, start, horizon, cfg, spec, rng,
                           [&](std::size_t k, const PathState& s, Increments, const EventTimes&) {
                               if (k % stride == 0 || k == steps)
                                   path.states.push_back(s);
                               return true;
                           });
    return path;
}

} // namespace o2bp
