// Copyright 2026 The o2bp Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "o2bp/integrator.hpp"
#include "o2bp/params.hpp"
#include "o2bp/rng.hpp"
#include "o2bp/stats.hpp"

namespace o2bp::mc {

//---------------------------------------------------------------------------//
// Ensemble configuration
//---------------------------------------------------------------------------//

struct StartSpec
{
    enum class Kind
    {
        Point,          //!< every path starts at `point`
        GammaMean,      //!< the mean (a/c, b/d) of the product gamma law
        StationaryLaw   //!< independent draws from the product gamma law
    };

    Kind kind = Kind::Point;
    PathState point{1.0, 1.0, 0.0};
};

struct EnsembleConfig
{
    std::size_t n_paths = 1000;
    std::uint64_t seed = 0;
    StepConfig step;
    double horizon = 1.0;
    StartSpec start;
    /// Execution parameter only; results never depend on it.
    unsigned threads = 1;
};

void validate(const EnsembleConfig& cfg);

/// Stream lanes: each path owns one stream per lane.
enum Lane : std::uint64_t
{
    kNoiseLane = 0,
    kReferenceLane = 1,
    kStartLane = 2,
    kStoppingLane = 3
};

/// Evaluates fn(i) for i in [0, n) on `threads` workers and returns the
/// results in index order. The output never depends on the thread count.
template<class Fn>
auto map_paths(std::size_t n, unsigned threads, Fn&& fn)
    -> std::vector<decltype(fn(std::size_t{}))>
{
    using T = decltype(fn(std::size_t{}));
    std::vector<T> out(n);
    const unsigned workers
        = static_cast<unsigned>(std::min<std::size_t>(std::max(threads, 1u), n));
    if (workers <= 1)
    {
        for (std::size_t i = 0; i < n; ++i)
            out[i] = fn(i);
        return out;
    }

    constexpr std::size_t kChunk = 16;
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        try
        {
            for (std::size_t begin; (begin = next.fetch_add(kChunk)) < n;)
            {
                const std::size_t end = std::min(n, begin + kChunk);
                for (std::size_t i = begin; i < end; ++i)
                    out[i] = fn(i);
            }
        }
        catch (...)
        {
            std::lock_guard lock(failure_mutex);
            if (!failure)
                failure = std::current_exception();
            next.store(n);
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back(work);
    for (auto& t : pool)
        t.join();
    if (failure)
        std::rethrow_exception(failure);
    return out;
}

/// Start state of path `index`. Draws from the stationary law on the
/// path's start lane when requested; throws if the law is undefined.
PathState resolve_start(const O2BPParams& p, const EnsembleConfig& cfg, std::size_t index);

//---------------------------------------------------------------------------//
// Hitting probabilities
//---------------------------------------------------------------------------//

enum class HitTarget
{
    Corner,
    XEdge,
    YEdge
};

struct HittingEstimate
{
    double frequency = 0;
    double ci_halfwidth = 0;  //!< 1.96 sqrt(f (1 - f) / n)
    double threshold = 0;
    double horizon = 0;
    std::size_t hits = 0;
    std::size_t n = 0;
};

/// Per-path proxy event times up to the horizon. When `stop_on` is set a
/// path stops at that event, so later events of other kinds are not seen.
std::vector<EventTimes> hitting_events(const O2BPParams& p, const EnsembleConfig& cfg,
                                       const EventSpec& spec,
                                       std::optional<HitTarget> stop_on = std::nullopt);

HittingEstimate summarize_hits(const std::vector<EventTimes>& events, HitTarget which,
                               const EventSpec& spec, double horizon);

/// Fraction of paths whose `which` proxy fires by the horizon.
HittingEstimate hitting_probability(const O2BPParams& p, const EnsembleConfig& cfg,
                                    HitTarget which, const EventSpec& spec = {});

//---------------------------------------------------------------------------//
// Stationary sampling
//---------------------------------------------------------------------------//

struct StationaryConfig
{
    double burn_in = 5.0;
    double spacing = 0.5;
    std::size_t count = 10000;
    /// Sample even when no product-form law exists (exploratory runs).
    bool force = false;
};

struct QuadrantPoint
{
    double x;
    double y;
};

/// Pools states taken at burn_in, burn_in + spacing, ... from each path;
/// ceil(count / n_paths) per path, in path order, truncated to `count`.
/// cfg.horizon is ignored. Throws when the product law is undefined unless
/// `force` is set.
std::vector<QuadrantPoint> stationary_sample(const O2BPParams& p, const EnsembleConfig& cfg,
                                             const StationaryConfig& sc);

//---------------------------------------------------------------------------//
// Martingale diagnostics
//---------------------------------------------------------------------------//

enum class Functional
{
    PowerProduct,  //!< X^(1-2 alpha) Y^(1-2 delta)
    LogCombo       //!< gamma ln X - beta ln Y
};

double functional_value(const O2BPParams& p, Functional f, double x, double y);

/// Empty when the parameters admit the functional, otherwise the failing
/// inequality.
std::string martingale_precondition_error(const O2BPParams& p, Functional f);

struct MartingaleConfig
{
    Functional functional = Functional::PowerProduct;
    std::vector<double> times{0.5, 1.0, 2.0};
    /// Paths stop on leaving [1/box, box]^2.
    double box = 100.0;
    /// Also stop on Brownian-bridge crossings between grid points.
    bool bridge_exit = true;
};

struct MartingalePoint
{
    double time;
    stats::MeanSe value;
    double stopped_fraction;
};

struct MartingaleResult
{
    double initial;
    std::vector<MartingalePoint> points;
};

/// Estimates E[M_{t ^ tau_box}] at each requested time. Stopped paths
/// contribute M evaluated at the exit point projected onto the box.
MartingaleResult martingale_drift_test(const O2BPParams& p, const EnsembleConfig& cfg,
                                       const MartingaleConfig& mc);

//---------------------------------------------------------------------------//
// Change of measure
//---------------------------------------------------------------------------//

enum class TestFunction
{
    ExpNegSum,  //!< exp(-x - y)
    ExpNegX,    //!< exp(-x)
    ExpNegY     //!< exp(-y)
};

double test_function_value(TestFunction f, double x, double y);

enum class WeightMode
{
    /// gamma = 0, delta >= 1/2, y > 0: weight on the X equation only.
    OneSided,
    /// |beta| <= delta - 1/2, |gamma| <= alpha - 1/2, x, y > 0.
    Novikov
};

std::string importance_precondition_error(const O2BPParams& p, WeightMode mode,
                                          const PathState& start);

struct ImportanceConfig
{
    TestFunction function = TestFunction::ExpNegSum;
    WeightMode mode = WeightMode::OneSided;
};

struct ImportanceResult
{
    stats::MeanSe direct;    //!< f(X_T, Y_T) under the coupled scheme
    stats::MeanSe weighted;  //!< f(U_T, V_T) Z_T under independent Bessel paths
    stats::MeanSe weight;    //!< Z_T alone
};

/// Log of the exponential weight for one reference path step, accumulated
/// with left-point sums. Exposed for testing.
double log_weight_increment(const O2BPParams& p, double u_prev, double v_prev,
                            double du, double dv, double dt);

/// Requires rho = 0 and no constant drift; cfg.start must be a point.
ImportanceResult importance_estimate(const O2BPParams& p, const EnsembleConfig& cfg,
                                     const ImportanceConfig& ic);

//---------------------------------------------------------------------------//
// Generic ensemble reduction
//---------------------------------------------------------------------------//

struct Reducers
{
    std::vector<double> checkpoints;  //!< times at which to take moments
    EventSpec events;
};

struct CheckpointMoments
{
    double time;
    stats::MeanSe x;
    stats::MeanSe y;
};

struct EnsembleSummary
{
    std::size_t n_paths = 0;
    std::vector<CheckpointMoments> checkpoints;
    std::size_t corner_hits = 0;
    std::size_t x_edge_hits = 0;
    std::size_t y_edge_hits = 0;
};

EnsembleSummary run_ensemble(const O2BPParams& p, const EnsembleConfig& cfg,
                             const Reducers& reducers);

} // namespace o2bp::mc
