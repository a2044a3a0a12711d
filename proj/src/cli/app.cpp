// Copyright 2026 The o2bp Authors
// SPDX-License-Identifier: Apache-2.0
#include <functional>
#include <memory>

#include <CLI11.hpp>

#include "cli/commands.hpp"

namespace o2bp::cli {

namespace {

/// Flags of one subcommand. Each flag that was given on the command line
/// is applied to the config, in registration order, after the config file.
class FlagSet
{
  public:
    explicit FlagSet(CLI::App* app) : app_(app) {}

    template<class T, class F>
    void option(const std::string& name, const std::string& help, F&& apply)
    {
        auto value = std::make_shared<T>();
        CLI::Option* opt = app_->add_option(name, *value, help);
        appliers_.push_back({opt, [value, apply](RunConfig& cfg) { apply(cfg, *value); }});
    }

    template<class F>
    void flag(const std::string& name, const std::string& help, F&& apply)
    {
        CLI::Option* opt = app_->add_flag(name, help);
        appliers_.push_back({opt, [apply](RunConfig& cfg) { apply(cfg); }});
    }

    void apply(RunConfig& cfg) const
    {
        for (const auto& [opt, fn] : appliers_)
            if (opt->count() > 0)
                fn(cfg);
    }

  private:
    CLI::App* app_;
    std::vector<std::pair<CLI::Option*, std::function<void(RunConfig&)>>> appliers_;
};

void add_params(FlagSet& f)
{
    f.option<double>("--alpha", "own repulsion of X (> 0)", [](RunConfig& c, double v) { c.params.alpha = v; });
    f.option<double>("--beta", "effect of Y on X", [](RunConfig& c, double v) { c.params.beta = v; });
    f.option<double>("--gamma", "effect of X on Y", [](RunConfig& c, double v) { c.params.gamma = v; });
    f.option<double>("--delta", "own repulsion of Y (> 0)", [](RunConfig& c, double v) { c.params.delta = v; });
    f.option<double>("--rho", "noise correlation in [-1, 1]", [](RunConfig& c, double v) { c.params.rho = v; });
    f.option<double>("--theta", "constant inward drift of X (>= 0)", [](RunConfig& c, double v) { c.params.theta = v; });
    f.option<double>("--eta", "constant inward drift of Y (>= 0)", [](RunConfig& c, double v) { c.params.eta = v; });
}

void add_ensemble(FlagSet& f)
{
    f.option<double>("--dt", "time step", [](RunConfig& c, double v) { c.ensemble.step.dt = v; });
    f.option<double>("--cross-floor", "clamp for cross terms",
                     [](RunConfig& c, double v) { c.ensemble.step.cross_floor = v; });
    f.option<std::string>("--scheme", "drift_implicit | truncated_lipschitz",
                          [](RunConfig& c, const std::string& v) {
                              nlohmann::json j = {{"schema_version", kSchemaVersion},
                                                  {"step", {{"scheme", v}}}};
                              apply_json(c, j);
                          });
    f.option<int>("--truncation", "n for the truncated scheme",
                  [](RunConfig& c, int v) { c.ensemble.step.truncation = v; });
    f.option<std::size_t>("--paths", "number of paths",
                          [](RunConfig& c, std::size_t v) { c.ensemble.n_paths = v; });
    f.option<std::uint64_t>("--seed", "64-bit seed (fallback: O2BP_DEFAULT_SEED)",
                            [](RunConfig& c, std::uint64_t v) {
                                c.ensemble.seed = v;
                                c.seed_given = true;
                            });
    f.option<double>("--horizon", "time horizon", [](RunConfig& c, double v) { c.ensemble.horizon = v; });
    f.option<std::string>("--start", "point | gamma_mean | stationary_law",
                          [](RunConfig& c, const std::string& v) {
                              apply_json(c, {{"schema_version", kSchemaVersion},
                                             {"ensemble", {{"start", {{"kind", v}}}}}});
                          });
    f.option<double>("--x0", "start x (point start)", [](RunConfig& c, double v) {
        c.ensemble.start.kind = mc::StartSpec::Kind::Point;
        c.ensemble.start.point.x = v;
    });
    f.option<double>("--y0", "start y (point start)", [](RunConfig& c, double v) {
        c.ensemble.start.kind = mc::StartSpec::Kind::Point;
        c.ensemble.start.point.y = v;
    });
    f.option<unsigned>("--threads", "worker threads (wall time only)",
                       [](RunConfig& c, unsigned v) { c.ensemble.threads = v; });
}

void add_events(FlagSet& f)
{
    f.option<std::string>("--which", "corner | x_edge | y_edge",
                          [](RunConfig& c, const std::string& v) { c.which = parse_hit_target(v); });
    f.option<double>("--threshold", "proxy threshold for the --which event",
                     [](RunConfig& c, double v) {
                         switch (c.which)
                         {
                             case mc::HitTarget::Corner: c.events.corner = v; break;
                             case mc::HitTarget::XEdge: c.events.x_edge = v; break;
                             case mc::HitTarget::YEdge: c.events.y_edge = v; break;
                         }
                     });
}

void add_se_multiplier(FlagSet& f)
{
    f.option<double>("--se-multiplier", "tolerance in standard errors",
                     [](RunConfig& c, double v) { c.tolerances.se_multiplier = v; });
}

struct Subcommand
{
    Command command;
    CLI::App* app;
    std::unique_ptr<FlagSet> flags;
    std::string config_path;
};

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Simulation and classification toolkit for oblique two-dimensional Bessel processes",
                 "o2bp"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    std::vector<Subcommand> subs;
    auto make = [&](Command c, const std::string& help) -> Subcommand& {
        auto* sub = app.add_subcommand(to_string(c), help);
        subs.push_back({c, sub, std::make_unique<FlagSet>(sub), {}});
        auto& s = subs.back();
        sub->add_option("--config", s.config_path, "JSON config file; flags override it");
        add_params(*s.flags);
        s.flags->option<std::string>("--out", "output path prefix",
                                     [](RunConfig& c, const std::string& v) { c.out = v; });
        return s;
    };
    subs.reserve(7);

    make(Command::Classify, "regime report for one parameter set");

    {
        auto& s = make(Command::Simulate, "simulate paths to CSV");
        add_ensemble(*s.flags);
        add_events(*s.flags);
        s.flags->option<std::size_t>("--stride", "record every n-th step",
                                     [](RunConfig& c, std::size_t v) { c.stride = v; });
    }
    {
        auto& s = make(Command::Hitting, "finite-horizon hitting frequency");
        add_ensemble(*s.flags);
        add_events(*s.flags);
        s.flags->option<double>("--min-frequency", "fail below this frequency",
                                [](RunConfig& c, double v) { c.tolerances.min_frequency = v; });
        s.flags->option<double>("--max-frequency", "fail above this frequency",
                                [](RunConfig& c, double v) { c.tolerances.max_frequency = v; });
    }
    {
        auto& s = make(Command::Stationary, "sample the invariant law and test it");
        add_ensemble(*s.flags);
        auto& f = *s.flags;
        f.option<double>("--burn-in", "discarded initial time",
                         [](RunConfig& c, double v) { c.stationary.burn_in = v; });
        f.option<double>("--spacing", "time between samples",
                         [](RunConfig& c, double v) { c.stationary.spacing = v; });
        f.option<std::size_t>("--count", "pooled sample count",
                              [](RunConfig& c, std::size_t v) { c.stationary.count = v; });
        f.flag("--force", "sample without a product-form law",
               [](RunConfig& c) { c.stationary.force = true; });
        f.option<double>("--ks-max", "KS tolerance", [](RunConfig& c, double v) { c.tolerances.ks_max = v; });
        f.option<double>("--corr-max", "|corr(W, Z)| tolerance",
                         [](RunConfig& c, double v) { c.tolerances.corr_max = v; });
        add_se_multiplier(f);
    }
    {
        auto& s = make(Command::Martingale, "box-stopped martingale diagnostics");
        add_ensemble(*s.flags);
        auto& f = *s.flags;
        f.option<std::string>("--functional", "power_product | log_combo",
                              [](RunConfig& c, const std::string& v) {
                                  apply_json(c, {{"schema_version", kSchemaVersion},
                                                 {"martingale", {{"functional", v}}}});
                              });
        f.option<std::vector<double>>("--times", "evaluation times",
                                      [](RunConfig& c, const std::vector<double>& v) {
                                          c.martingale.times = v;
                                      });
        f.option<double>("--box", "stop outside [1/K, K]^2",
                         [](RunConfig& c, double v) { c.martingale.box = v; });
        f.flag("--no-bridge-exit", "only stop on grid exits",
               [](RunConfig& c) { c.martingale.bridge_exit = false; });
        add_se_multiplier(f);
    }
    {
        auto& s = make(Command::Importance, "direct vs change-of-measure estimates");
        add_ensemble(*s.flags);
        auto& f = *s.flags;
        f.option<std::string>("--function", "exp_neg_sum | exp_neg_x | exp_neg_y",
                              [](RunConfig& c, const std::string& v) {
                                  apply_json(c, {{"schema_version", kSchemaVersion},
                                                 {"importance", {{"function", v}}}});
                              });
        f.option<std::string>("--mode", "one_sided | novikov",
                              [](RunConfig& c, const std::string& v) {
                                  apply_json(c, {{"schema_version", kSchemaVersion},
                                                 {"importance", {{"mode", v}}}});
                              });
        add_se_multiplier(f);
    }
    {
        auto& s = make(Command::Phase, "grid of verdicts or hitting frequencies");
        add_ensemble(*s.flags);
        add_events(*s.flags);
        auto& f = *s.flags;
        f.option<std::string>("--x-axis", "column parameter",
                              [](RunConfig& c, const std::string& v) { c.phase.x.name = v; });
        f.option<double>("--x-min", "", [](RunConfig& c, double v) { c.phase.x.min = v; });
        f.option<double>("--x-max", "", [](RunConfig& c, double v) { c.phase.x.max = v; });
        f.option<int>("--x-steps", "", [](RunConfig& c, int v) { c.phase.x.steps = v; });
        auto y = [](RunConfig& c) -> PhaseAxis& {
            if (!c.phase.y)
                c.phase.y = PhaseAxis{"gamma", -1.0, 1.0, 5};
            return *c.phase.y;
        };
        f.option<std::string>("--y-axis", "row parameter (optional)",
                              [y](RunConfig& c, const std::string& v) { y(c).name = v; });
        f.option<double>("--y-min", "", [y](RunConfig& c, double v) { y(c).min = v; });
        f.option<double>("--y-max", "", [y](RunConfig& c, double v) { y(c).max = v; });
        f.option<int>("--y-steps", "", [y](RunConfig& c, int v) { y(c).steps = v; });
        f.option<std::string>("--mode", "classify | hitting",
                              [](RunConfig& c, const std::string& v) { c.phase.mode = v; });
        f.option<std::string>("--verdict",
                              "existence | corner | x_edge | y_edge | stationary | skew",
                              [](RunConfig& c, const std::string& v) { c.phase.verdict = v; });
    }

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e)
    {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitPass : kExitInvalidInput;
    }

    try
    {
        for (auto& s : subs)
        {
            if (!s.app->parsed())
                continue;
            RunConfig cfg = default_config(s.command);
            if (!s.config_path.empty())
                apply_config_file(cfg, s.config_path);
            s.flags->apply(cfg);
            if (!cfg.seed_given)
                if (auto seed = env_default_seed())
                    cfg.ensemble.seed = *seed;
            return execute(cfg, out);
        }
    }
    catch (const std::exception& e)
    {
        // Invalid parameters, configs and unwritable outputs all land here.
        err << "error: " << e.what() << '\n';
        return kExitInvalidInput;
    }
    return kExitInvalidInput;
}

} // namespace o2bp::cli
