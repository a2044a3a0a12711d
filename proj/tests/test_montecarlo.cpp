// Copyright 2026 The o2bp Authors
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <stdexcept>
#include <vector>

#include "o2bp/montecarlo.hpp"
#include "o2bp/regime.hpp"

using namespace o2bp;
using namespace o2bp::mc;

namespace {

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

bool same_bits(const stats::MeanSe& a, const stats::MeanSe& b)
{
    return same_bits(a.mean, b.mean) && same_bits(a.se, b.se) && a.n == b.n;
}

const O2BPParams kSkew{1, -1, 1, 1, 0, 1, 2};

} // namespace

TEST_CASE("path streams are keyed by seed, index and lane")
{
    auto a = path_stream(5, 3, 0), b = path_stream(5, 3, 0);
    for (int i = 0; i < 10; ++i)
        CHECK(a() == b());
    CHECK(path_stream(5, 3, 0)() != path_stream(5, 4, 0)());
    CHECK(path_stream(5, 3, 0)() != path_stream(5, 3, 1)());
    CHECK(path_stream(5, 3, 0)() != path_stream(6, 3, 0)());
}

TEST_CASE("map_paths preserves index order and propagates failures")
{
    for (unsigned threads : {1u, 3u, 8u})
    {
        const auto v = map_paths(1000, threads, [](std::size_t i) { return i * i; });
        for (std::size_t i = 0; i < v.size(); ++i)
            REQUIRE(v[i] == i * i);
    }
    CHECK_THROWS_AS(map_paths(100, 4,
                              [](std::size_t i) -> int {
                                  if (i == 57)
                                      throw std::runtime_error("boom");
                                  return 0;
                              }),
                    std::runtime_error);
    CHECK(map_paths(0, 4, [](std::size_t) { return 1; }).empty());
}

TEST_CASE("ensemble config validation")
{
    EnsembleConfig cfg;
    CHECK_NOTHROW(validate(cfg));
    cfg.n_paths = 0;
    CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
    cfg = {};
    cfg.horizon = -1;
    CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
    cfg = {};
    cfg.step.dt = 0;
    CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
}

TEST_CASE("start resolution")
{
    EnsembleConfig cfg;
    cfg.start.kind = StartSpec::Kind::GammaMean;
    const auto mean = resolve_start(kSkew, cfg, 0);
    CHECK(mean.x == 1.0);
    CHECK(mean.y == 3.0);

    cfg.start.kind = StartSpec::Kind::StationaryLaw;
    const auto a = resolve_start(kSkew, cfg, 4), b = resolve_start(kSkew, cfg, 4);
    CHECK(a.x == b.x);
    CHECK(a.y == b.y);
    CHECK(a.x != resolve_start(kSkew, cfg, 5).x);
    CHECK_THROWS(resolve_start(O2BPParams{}, cfg, 0));
}

TEST_CASE("run_ensemble is independent of the thread count")
{
    EnsembleConfig cfg;
    cfg.n_paths = 300;
    cfg.seed = 12345;
    cfg.horizon = 2;
    cfg.step.dt = 1e-2;
    cfg.start.point = {0.3, 0.4, 0};
    Reducers red;
    red.checkpoints = {0.5, 1.0, 2.0};
    red.events.corner = 0.2;
    red.events.x_edge = 0.05;
    const O2BPParams p{0.3, 0.1, -0.2, 0.4, 0.3, 0.2, 0.1};
    cfg.threads = 1;
    const auto one = run_ensemble(p, cfg, red);
    cfg.threads = 8;
    const auto eight = run_ensemble(p, cfg, red);
    REQUIRE(one.checkpoints.size() == 3);
    for (std::size_t j = 0; j < 3; ++j)
    {
        CHECK(same_bits(one.checkpoints[j].x, eight.checkpoints[j].x));
        CHECK(same_bits(one.checkpoints[j].y, eight.checkpoints[j].y));
    }
    CHECK(one.corner_hits == eight.corner_hits);
    CHECK(one.x_edge_hits == eight.x_edge_hits);
    CHECK(one.y_edge_hits == eight.y_edge_hits);
    CHECK(one.x_edge_hits > 0);

    red.checkpoints = {1.0, 0.5};
    CHECK_THROWS_AS(run_ensemble(p, cfg, red), std::invalid_argument);
}

TEST_CASE("run_ensemble with one path matches simulate_path")
{
    EnsembleConfig cfg;
    cfg.n_paths = 1;
    cfg.seed = 77;
    cfg.horizon = 1;
    cfg.step.dt = 1e-3;
    Reducers red;
    red.checkpoints = {0.25, 1.0};
    const O2BPParams p{0.6, 0.2, 0.1, 0.8, -0.4};
    const auto summary = run_ensemble(p, cfg, red);

    Rng rng = path_stream(77, 0, kNoiseLane);
    const auto path = simulate_path(p, cfg.start.point, 1.0, cfg.step, red.events, rng, 250);
    REQUIRE(path.states.size() == 5);
    CHECK(summary.checkpoints[0].x.mean == path.states[1].x);
    CHECK(summary.checkpoints[1].y.mean == path.states[4].y);
    CHECK(summary.checkpoints[0].x.n == 1);
}

TEST_CASE("doubling the ensemble shrinks the standard error by sqrt(2)")
{
    EnsembleConfig cfg;
    cfg.seed = 3;
    cfg.horizon = 1;
    cfg.step.dt = 1e-2;
    Reducers red;
    red.checkpoints = {1.0};
    const O2BPParams p{1, 0.2, 0.2, 1, 0};
    cfg.n_paths = 4000;
    const double se1 = run_ensemble(p, cfg, red).checkpoints[0].x.se;
    cfg.n_paths = 8000;
    const double se2 = run_ensemble(p, cfg, red).checkpoints[0].x.se;
    CHECK(std::fabs(se2 / se1 - 1 / std::sqrt(2.0)) <= 0.2 / std::sqrt(2.0));
}

TEST_CASE("hitting estimates")
{
    std::vector<EventTimes> events(4);
    events[0].corner = 0.5;
    events[1].corner = 3.0;
    events[2].x_edge = 1.0;
    const auto est = summarize_hits(events, HitTarget::Corner, {}, 2.0);
    CHECK(est.hits == 1);
    CHECK(est.n == 4);
    CHECK(est.frequency == 0.25);
    CHECK(est.ci_halfwidth == doctest::Approx(1.96 * std::sqrt(0.25 * 0.75 / 4)));
    CHECK(est.threshold == EventSpec{}.corner);
    CHECK(est.horizon == 2.0);

    // Start inside the threshold hits at time zero.
    EnsembleConfig cfg;
    cfg.n_paths = 10;
    cfg.start.point = {1e-5, 1, 0};
    CHECK(hitting_probability(O2BPParams{}, cfg, HitTarget::XEdge).frequency == 1.0);
}

TEST_CASE("stationary sampling layout and validation")
{
    EnsembleConfig cfg;
    cfg.n_paths = 7;
    cfg.step.dt = 1e-2;
    cfg.start.kind = StartSpec::Kind::GammaMean;
    StationaryConfig sc;
    sc.burn_in = 1;
    sc.spacing = 0.5;
    sc.count = 20;
    CHECK(stationary_sample(kSkew, cfg, sc).size() == 20);

    CHECK_THROWS(stationary_sample(O2BPParams{1, 0, 0, 1, 0.5, 1, 1}, cfg, sc));
    sc.force = true;
    cfg.start.kind = StartSpec::Kind::Point;
    CHECK(stationary_sample(O2BPParams{1, 0, 0, 1, 0.5, 1, 1}, cfg, sc).size() == 20);
    sc.spacing = 0;
    CHECK_THROWS(stationary_sample(kSkew, cfg, sc));
}

TEST_CASE("stationary samples at spacing s and 2s agree")
{
    EnsembleConfig cfg;
    cfg.n_paths = 2000;
    cfg.seed = 17;
    cfg.start.kind = StartSpec::Kind::StationaryLaw;
    StationaryConfig sc;
    sc.burn_in = 2;
    sc.count = 6000;
    sc.spacing = 0.5;
    const auto a = stationary_sample(kSkew, cfg, sc);
    cfg.seed = 18;
    sc.spacing = 1.0;
    const auto b = stationary_sample(kSkew, cfg, sc);
    for (auto coord : {&QuadrantPoint::x, &QuadrantPoint::y})
    {
        std::vector<double> xa, xb;
        for (const auto& q : a)
            xa.push_back(q.*coord);
        for (const auto& q : b)
            xb.push_back(q.*coord);
        std::sort(xa.begin(), xa.end());
        std::sort(xb.begin(), xb.end());
        CHECK(stats::ks_two_sample(xa, xb).statistic <= 0.03);
    }
}

TEST_CASE("martingale functionals and preconditions")
{
    const O2BPParams p{1, 0, 0, 1, 0};
    CHECK(functional_value(p, Functional::PowerProduct, 2, 4) == doctest::Approx(1.0 / 8));
    const O2BPParams q{0.5, 1, 2, 0.5, 0};
    CHECK(functional_value(q, Functional::LogCombo, std::exp(1.0), std::exp(3.0))
          == doctest::Approx(2 - 3));

    CHECK(martingale_precondition_error(p, Functional::PowerProduct).empty());
    CHECK(martingale_precondition_error(O2BPParams{0.4, 0, 0, 1, 0}, Functional::PowerProduct)
          == "alpha > 1/2 fails");
    CHECK(martingale_precondition_error(O2BPParams{1, 0, 0, 1, 0.5}, Functional::PowerProduct)
          == "beta/(2 delta - 1) + gamma/(2 alpha - 1) >= rho fails");
    CHECK(martingale_precondition_error(q, Functional::LogCombo).empty());
    CHECK_FALSE(martingale_precondition_error(p, Functional::LogCombo).empty());

    EnsembleConfig cfg;
    cfg.n_paths = 10;
    MartingaleConfig mc;
    CHECK_THROWS(martingale_drift_test(O2BPParams{0.4, 0, 0, 1, 0}, cfg, mc));
    mc.times = {1.0, 0.5};
    CHECK_THROWS(martingale_drift_test(p, cfg, mc));
}

TEST_CASE("martingale means are flat in the equality case")
{
    EnsembleConfig cfg;
    cfg.n_paths = 20000;
    cfg.seed = 5;
    MartingaleConfig mc;
    mc.box = 10;
    const auto r = martingale_drift_test(O2BPParams{1, 0, 0, 1, 0}, cfg, mc);
    CHECK(r.initial == 1.0);
    REQUIRE(r.points.size() == 3);
    for (const auto& pt : r.points)
    {
        CAPTURE(pt.time);
        CHECK(std::fabs(pt.value.mean - r.initial) <= 3 * pt.value.se);
        CHECK(pt.stopped_fraction >= 0);
        CHECK(pt.stopped_fraction <= 1);
    }
    CHECK(r.points[2].stopped_fraction >= r.points[0].stopped_fraction);
}

TEST_CASE("importance weight preconditions and increments")
{
    const PathState start{1, 1, 0};
    CHECK(importance_precondition_error(O2BPParams{1, 0.4, 0, 1, 0}, WeightMode::OneSided, start)
              .empty());
    CHECK_FALSE(importance_precondition_error(O2BPParams{1, 0.4, 0, 1, 0.1}, WeightMode::OneSided,
                                              start)
                    .empty());
    CHECK_FALSE(importance_precondition_error(O2BPParams{1, 0.4, 0.1, 1, 0}, WeightMode::OneSided,
                                              start)
                    .empty());
    CHECK_FALSE(importance_precondition_error(O2BPParams{1, 0.4, 0, 0.4, 0}, WeightMode::OneSided,
                                              start)
                    .empty());
    CHECK(importance_precondition_error(O2BPParams{1, 0.4, -0.3, 1, 0}, WeightMode::Novikov, start)
              .empty());
    CHECK_FALSE(importance_precondition_error(O2BPParams{1, 0.6, 0, 1, 0}, WeightMode::Novikov,
                                              start)
                    .empty());
    CHECK_FALSE(importance_precondition_error(O2BPParams{1, 0.4, 0, 1, 0, 1, 0},
                                              WeightMode::Novikov, start)
                    .empty());
    CHECK_FALSE(importance_precondition_error(O2BPParams{1, 0.4, 0, 1, 0}, WeightMode::Novikov,
                                              {0, 1, 0})
                    .empty());

    CHECK(log_weight_increment(O2BPParams{1, 0, 0, 1, 0}, 0.7, 1.3, 0.2, -0.1, 0.01) == 0.0);
    // beta dU / V - alpha beta dt / (U V) - beta^2 dt / (2 V^2)
    const double inc = log_weight_increment(O2BPParams{1, 0.5, 0, 1, 0}, 2, 4, 0.1, 0.3, 0.01);
    CHECK(inc == doctest::Approx(0.5 * 0.1 / 4 - 0.5 * 0.01 / 8 - 0.25 * 0.01 / 32).epsilon(1e-14));
}

TEST_CASE("importance estimate with beta = 0 has unit weight")
{
    EnsembleConfig cfg;
    cfg.n_paths = 500;
    cfg.seed = 2;
    cfg.step.dt = 1e-2;
    const auto r = importance_estimate(O2BPParams{1, 0, 0, 1, 0}, cfg, {});
    CHECK(r.weight.mean == 1.0);
    CHECK(r.weight.se == 0.0);
    CHECK(std::fabs(r.direct.mean - r.weighted.mean)
          <= 3 * std::hypot(r.direct.se, r.weighted.se));

    cfg.start.kind = StartSpec::Kind::GammaMean;
    CHECK_THROWS(importance_estimate(O2BPParams{1, 0, 0, 1, 0}, cfg, {}));
}

TEST_CASE("importance estimates agree under the one-sided weight")
{
    EnsembleConfig cfg;
    cfg.n_paths = 20000;
    cfg.seed = 9;
    const auto r = importance_estimate(O2BPParams{1, 0.4, 0, 1, 0}, cfg, {});
    CAPTURE(r.direct.mean);
    CAPTURE(r.weighted.mean);
    CAPTURE(r.weight.mean);
    CHECK(std::fabs(r.direct.mean - r.weighted.mean)
          <= 3 * std::hypot(r.direct.se, r.weighted.se));
    CHECK(std::fabs(r.weight.mean - 1.0) <= 3 * r.weight.se);
}
