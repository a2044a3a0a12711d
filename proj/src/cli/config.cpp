// Copyright 2026 The o2bp Authors
// SPDX-License-Identifier: Apache-2.0
#include "cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <initializer_list>

namespace o2bp::cli {

using nlohmann::json;

namespace {

template<class E>
struct Name
{
    E value;
    const char* name;
};

constexpr Name<Command> kCommands[] = {
    {Command::Classify, "classify"},     {Command::Simulate, "simulate"},
    {Command::Hitting, "hitting"},       {Command::Stationary, "stationary"},
    {Command::Martingale, "martingale"}, {Command::Importance, "importance"},
    {Command::Phase, "phase"},
};
constexpr Name<mc::HitTarget> kTargets[] = {
    {mc::HitTarget::Corner, "corner"},
    {mc::HitTarget::XEdge, "x_edge"},
    {mc::HitTarget::YEdge, "y_edge"},
};
constexpr Name<Scheme> kSchemes[] = {
    {Scheme::DriftImplicit, "drift_implicit"},
    {Scheme::TruncatedLipschitz, "truncated_lipschitz"},
};
constexpr Name<mc::StartSpec::Kind> kStarts[] = {
    {mc::StartSpec::Kind::Point, "point"},
    {mc::StartSpec::Kind::GammaMean, "gamma_mean"},
    {mc::StartSpec::Kind::StationaryLaw, "stationary_law"},
};
constexpr Name<mc::Functional> kFunctionals[] = {
    {mc::Functional::PowerProduct, "power_product"},
    {mc::Functional::LogCombo, "log_combo"},
};
constexpr Name<mc::TestFunction> kTestFunctions[] = {
    {mc::TestFunction::ExpNegSum, "exp_neg_sum"},
    {mc::TestFunction::ExpNegX, "exp_neg_x"},
    {mc::TestFunction::ExpNegY, "exp_neg_y"},
};
constexpr Name<mc::WeightMode> kWeightModes[] = {
    {mc::WeightMode::OneSided, "one_sided"},
    {mc::WeightMode::Novikov, "novikov"},
};

template<class E, std::size_t N>
std::string name_of(const Name<E> (&table)[N], E value)
{
    for (const auto& entry : table)
        if (entry.value == value)
            return entry.name;
    throw std::logic_error("unnamed enum value");
}

template<class E, std::size_t N>
E parse_name(const Name<E> (&table)[N], const std::string& s, const char* what)
{
    for (const auto& entry : table)
        if (s == entry.name)
            return entry.value;
    std::string allowed;
    for (const auto& entry : table)
        allowed += (allowed.empty() ? "" : ", ") + std::string(entry.name);
    throw InvalidInput("unknown " + std::string(what) + " '" + s + "' (expected one of: "
                       + allowed + ")");
}

void require_object(const json& j, const std::string& where)
{
    if (!j.is_object())
        throw InvalidInput("config: '" + where + "' must be an object");
}

void reject_unknown(const json& j, const std::string& where,
                    std::initializer_list<const char*> allowed)
{
    require_object(j, where);
    for (const auto& [key, value] : j.items())
        if (std::none_of(allowed.begin(), allowed.end(),
                         [&](const char* a) { return key == a; }))
            throw InvalidInput("config: unknown field '" + where + (where.empty() ? "" : ".")
                               + key + "'");
}

double get_real(const json& j, const std::string& where)
{
    if (!j.is_number())
        throw InvalidInput("config: '" + where + "' must be a number");
    return j.get<double>();
}

std::uint64_t get_count(const json& j, const std::string& where)
{
    if (!j.is_number_integer() || (j.is_number_integer() && !j.is_number_unsigned()
                                   && j.get<std::int64_t>() < 0))
        throw InvalidInput("config: '" + where + "' must be a non-negative integer");
    return j.get<std::uint64_t>();
}

std::string get_string(const json& j, const std::string& where)
{
    if (!j.is_string())
        throw InvalidInput("config: '" + where + "' must be a string");
    return j.get<std::string>();
}

bool get_bool(const json& j, const std::string& where)
{
    if (!j.is_boolean())
        throw InvalidInput("config: '" + where + "' must be a boolean");
    return j.get<bool>();
}

template<class F>
void with(const json& j, const char* key, F&& f)
{
    if (auto it = j.find(key); it != j.end())
        f(*it);
}

json axis_json(const PhaseAxis& a)
{
    return {{"name", a.name}, {"min", a.min}, {"max", a.max}, {"steps", a.steps}};
}

PhaseAxis parse_axis(const json& j, PhaseAxis axis, const std::string& where)
{
    reject_unknown(j, where, {"name", "min", "max", "steps"});
    with(j, "name", [&](const json& v) { axis.name = get_string(v, where + ".name"); });
    with(j, "min", [&](const json& v) { axis.min = get_real(v, where + ".min"); });
    with(j, "max", [&](const json& v) { axis.max = get_real(v, where + ".max"); });
    with(j, "steps",
         [&](const json& v) { axis.steps = static_cast<int>(get_count(v, where + ".steps")); });
    return axis;
}

json optional_real(const std::optional<double>& v)
{
    return v ? json(*v) : json(nullptr);
}

} // namespace

std::string to_string(Command c) { return name_of(kCommands, c); }
Command parse_command(const std::string& name) { return parse_name(kCommands, name, "command"); }
std::string to_string(mc::HitTarget t) { return name_of(kTargets, t); }
mc::HitTarget parse_hit_target(const std::string& s)
{
    return parse_name(kTargets, s, "event");
}

RunConfig default_config(Command c)
{
    RunConfig cfg;
    cfg.command = c;
    switch (c)
    {
        case Command::Hitting:
            cfg.ensemble.horizon = 10.0;
            break;
        case Command::Stationary:
            // Many short paths with two draws each keep the pooled sample
            // close to independent; see README for the start distribution.
            cfg.ensemble.n_paths = 5000;
            cfg.ensemble.start.kind = mc::StartSpec::Kind::StationaryLaw;
            break;
        case Command::Martingale:
            cfg.ensemble.n_paths = 10000;
            cfg.martingale.box = 10.0;
            break;
        case Command::Importance:
            cfg.ensemble.n_paths = 10000;
            break;
        case Command::Phase:
            cfg.ensemble.n_paths = 200;
            break;
        default:
            break;
    }
    return cfg;
}

json to_json(const RunConfig& cfg)
{
    const auto& p = cfg.params;
    const auto& e = cfg.ensemble;
    json phase = {{"x_axis", axis_json(cfg.phase.x)},
                  {"y_axis", cfg.phase.y ? axis_json(*cfg.phase.y) : json(nullptr)},
                  {"mode", cfg.phase.mode},
                  {"verdict", cfg.phase.verdict}};
    return {
        {"schema_version", kSchemaVersion},
        {"command", to_string(cfg.command)},
        {"params",
         {{"alpha", p.alpha}, {"beta", p.beta}, {"gamma", p.gamma}, {"delta", p.delta},
          {"rho", p.rho}, {"theta", p.theta}, {"eta", p.eta}}},
        {"step",
         {{"dt", e.step.dt}, {"cross_floor", e.step.cross_floor},
          {"scheme", name_of(kSchemes, e.step.scheme)}, {"truncation", e.step.truncation}}},
        {"ensemble",
         {{"paths", e.n_paths}, {"seed", e.seed}, {"horizon", e.horizon},
          {"start",
           {{"kind", name_of(kStarts, e.start.kind)}, {"x", e.start.point.x},
            {"y", e.start.point.y}}}}},
        {"events", {{"x_edge", cfg.events.x_edge}, {"y_edge", cfg.events.y_edge},
                    {"corner", cfg.events.corner}}},
        {"hitting", {{"which", to_string(cfg.which)}}},
        {"stationary",
         {{"burn_in", cfg.stationary.burn_in}, {"spacing", cfg.stationary.spacing},
          {"count", cfg.stationary.count}, {"force", cfg.stationary.force}}},
        {"martingale",
         {{"functional", name_of(kFunctionals, cfg.martingale.functional)},
          {"times", cfg.martingale.times}, {"box", cfg.martingale.box},
          {"bridge_exit", cfg.martingale.bridge_exit}}},
        {"importance",
         {{"function", name_of(kTestFunctions, cfg.importance.function)},
          {"mode", name_of(kWeightModes, cfg.importance.mode)}}},
        {"phase", phase},
        {"simulate", {{"stride", cfg.stride}}},
        {"tolerances",
         {{"ks_max", cfg.tolerances.ks_max}, {"se_multiplier", cfg.tolerances.se_multiplier},
          {"corr_max", cfg.tolerances.corr_max},
          {"min_frequency", optional_real(cfg.tolerances.min_frequency)},
          {"max_frequency", optional_real(cfg.tolerances.max_frequency)}}},
        {"out", cfg.out},
    };
}

void apply_json(RunConfig& cfg, const json& j)
{
    reject_unknown(j, "",
                   {"schema_version", "command", "params", "step", "ensemble", "events",
                    "hitting", "stationary", "martingale", "importance", "phase", "simulate",
                    "tolerances", "out"});
    auto version = j.find("schema_version");
    if (version == j.end())
        throw InvalidInput("config: missing schema_version");
    if (!version->is_number_integer() || version->get<int>() != kSchemaVersion)
        throw InvalidInput("config: unsupported schema_version (expected "
                           + std::to_string(kSchemaVersion) + ")");

    with(j, "command", [&](const json& v) {
        if (parse_command(get_string(v, "command")) != cfg.command)
            throw InvalidInput("config: command '" + v.get<std::string>()
                               + "' does not match the subcommand '" + to_string(cfg.command)
                               + "'");
    });
    with(j, "params", [&](const json& v) {
        reject_unknown(v, "params", {"alpha", "beta", "gamma", "delta", "rho", "theta", "eta"});
        auto& p = cfg.params;
        with(v, "alpha", [&](const json& x) { p.alpha = get_real(x, "params.alpha"); });
        with(v, "beta", [&](const json& x) { p.beta = get_real(x, "params.beta"); });
        with(v, "gamma", [&](const json& x) { p.gamma = get_real(x, "params.gamma"); });
        with(v, "delta", [&](const json& x) { p.delta = get_real(x, "params.delta"); });
        with(v, "rho", [&](const json& x) { p.rho = get_real(x, "params.rho"); });
        with(v, "theta", [&](const json& x) { p.theta = get_real(x, "params.theta"); });
        with(v, "eta", [&](const json& x) { p.eta = get_real(x, "params.eta"); });
    });
    with(j, "step", [&](const json& v) {
        reject_unknown(v, "step", {"dt", "cross_floor", "scheme", "truncation"});
        auto& s = cfg.ensemble.step;
        with(v, "dt", [&](const json& x) { s.dt = get_real(x, "step.dt"); });
        with(v, "cross_floor",
             [&](const json& x) { s.cross_floor = get_real(x, "step.cross_floor"); });
        with(v, "scheme", [&](const json& x) {
            s.scheme = parse_name(kSchemes, get_string(x, "step.scheme"), "scheme");
        });
        with(v, "truncation", [&](const json& x) {
            s.truncation = static_cast<int>(get_count(x, "step.truncation"));
        });
    });
    with(j, "ensemble", [&](const json& v) {
        reject_unknown(v, "ensemble", {"paths", "seed", "horizon", "start"});
        auto& e = cfg.ensemble;
        with(v, "paths", [&](const json& x) { e.n_paths = get_count(x, "ensemble.paths"); });
        with(v, "seed", [&](const json& x) {
            e.seed = get_count(x, "ensemble.seed");
            cfg.seed_given = true;
        });
        with(v, "horizon", [&](const json& x) { e.horizon = get_real(x, "ensemble.horizon"); });
        with(v, "start", [&](const json& s) {
            reject_unknown(s, "ensemble.start", {"kind", "x", "y"});
            with(s, "kind", [&](const json& x) {
                e.start.kind = parse_name(kStarts, get_string(x, "ensemble.start.kind"),
                                          "start kind");
            });
            with(s, "x", [&](const json& x) { e.start.point.x = get_real(x, "ensemble.start.x"); });
            with(s, "y", [&](const json& x) { e.start.point.y = get_real(x, "ensemble.start.y"); });
        });
    });
    with(j, "events", [&](const json& v) {
        reject_unknown(v, "events", {"x_edge", "y_edge", "corner"});
        with(v, "x_edge", [&](const json& x) { cfg.events.x_edge = get_real(x, "events.x_edge"); });
        with(v, "y_edge", [&](const json& x) { cfg.events.y_edge = get_real(x, "events.y_edge"); });
        with(v, "corner", [&](const json& x) { cfg.events.corner = get_real(x, "events.corner"); });
    });
    with(j, "hitting", [&](const json& v) {
        reject_unknown(v, "hitting", {"which"});
        with(v, "which",
             [&](const json& x) { cfg.which = parse_hit_target(get_string(x, "hitting.which")); });
    });
    with(j, "stationary", [&](const json& v) {
        reject_unknown(v, "stationary", {"burn_in", "spacing", "count", "force"});
        auto& s = cfg.stationary;
        with(v, "burn_in", [&](const json& x) { s.burn_in = get_real(x, "stationary.burn_in"); });
        with(v, "spacing", [&](const json& x) { s.spacing = get_real(x, "stationary.spacing"); });
        with(v, "count", [&](const json& x) { s.count = get_count(x, "stationary.count"); });
        with(v, "force", [&](const json& x) { s.force = get_bool(x, "stationary.force"); });
    });
    with(j, "martingale", [&](const json& v) {
        reject_unknown(v, "martingale", {"functional", "times", "box", "bridge_exit"});
        auto& m = cfg.martingale;
        with(v, "functional", [&](const json& x) {
            m.functional = parse_name(kFunctionals, get_string(x, "martingale.functional"),
                                      "functional");
        });
        with(v, "times", [&](const json& x) {
            if (!x.is_array())
                throw InvalidInput("config: 'martingale.times' must be an array");
            m.times.clear();
            for (const auto& t : x)
                m.times.push_back(get_real(t, "martingale.times[]"));
        });
        with(v, "box", [&](const json& x) { m.box = get_real(x, "martingale.box"); });
        with(v, "bridge_exit",
             [&](const json& x) { m.bridge_exit = get_bool(x, "martingale.bridge_exit"); });
    });
    with(j, "importance", [&](const json& v) {
        reject_unknown(v, "importance", {"function", "mode"});
        with(v, "function", [&](const json& x) {
            cfg.importance.function
                = parse_name(kTestFunctions, get_string(x, "importance.function"), "function");
        });
        with(v, "mode", [&](const json& x) {
            cfg.importance.mode
                = parse_name(kWeightModes, get_string(x, "importance.mode"), "weight mode");
        });
    });
    with(j, "phase", [&](const json& v) {
        reject_unknown(v, "phase", {"x_axis", "y_axis", "mode", "verdict"});
        with(v, "x_axis",
             [&](const json& x) { cfg.phase.x = parse_axis(x, cfg.phase.x, "phase.x_axis"); });
        with(v, "y_axis", [&](const json& x) {
            if (x.is_null())
                cfg.phase.y.reset();
            else
                cfg.phase.y = parse_axis(x, cfg.phase.y.value_or(PhaseAxis{}), "phase.y_axis");
        });
        with(v, "mode", [&](const json& x) { cfg.phase.mode = get_string(x, "phase.mode"); });
        with(v, "verdict",
             [&](const json& x) { cfg.phase.verdict = get_string(x, "phase.verdict"); });
    });
    with(j, "simulate", [&](const json& v) {
        reject_unknown(v, "simulate", {"stride"});
        with(v, "stride", [&](const json& x) { cfg.stride = get_count(x, "simulate.stride"); });
    });
    with(j, "tolerances", [&](const json& v) {
        reject_unknown(v, "tolerances",
                       {"ks_max", "se_multiplier", "corr_max", "min_frequency", "max_frequency"});
        auto& t = cfg.tolerances;
        with(v, "ks_max", [&](const json& x) { t.ks_max = get_real(x, "tolerances.ks_max"); });
        with(v, "se_multiplier",
             [&](const json& x) { t.se_multiplier = get_real(x, "tolerances.se_multiplier"); });
        with(v, "corr_max",
             [&](const json& x) { t.corr_max = get_real(x, "tolerances.corr_max"); });
        auto optional = [&](const json& x, const char* where) -> std::optional<double> {
            if (x.is_null())
                return std::nullopt;
            return get_real(x, where);
        };
        with(v, "min_frequency", [&](const json& x) {
            t.min_frequency = optional(x, "tolerances.min_frequency");
        });
        with(v, "max_frequency", [&](const json& x) {
            t.max_frequency = optional(x, "tolerances.max_frequency");
        });
    });
    with(j, "out", [&](const json& v) { cfg.out = get_string(v, "out"); });
}

void apply_config_file(RunConfig& cfg, const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw InvalidInput("cannot open config file '" + path + "'");
    json j;
    try
    {
        in >> j;
    }
    catch (const json::parse_error& err)
    {
        throw InvalidInput("config file '" + path + "' is not valid JSON: " + err.what());
    }
    apply_json(cfg, j);
}

std::optional<std::uint64_t> env_default_seed()
{
    const char* raw = std::getenv("O2BP_DEFAULT_SEED");
    if (!raw || !*raw)
        return std::nullopt;
    const std::string s(raw);
    std::uint64_t seed = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), seed);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw InvalidInput("O2BP_DEFAULT_SEED must be a non-negative integer, got '" + s + "'");
    return seed;
}

} // namespace o2bp::cli
