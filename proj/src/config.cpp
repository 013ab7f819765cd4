#include "cfisac/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "cfisac/errors.hpp"

namespace cfisac {

using nlohmann::json;

std::string to_string(RewardTransform t) {
    return t == RewardTransform::Identity ? "identity" : "log1p";
}

RewardTransform reward_transform_from_string(const std::string& name) {
    if (name == "identity") return RewardTransform::Identity;
    if (name == "log1p") return RewardTransform::Log1p;
    throw ParseError("env.reward_transform: unknown value '" + name + "'");
}

namespace {

constexpr int kSchemaVersion = 1;

void require_keys(const json& obj, const std::string& where,
                  const std::set<std::string>& allowed) {
    if (!obj.is_object())
        throw ParseError(where + ": expected an object");
    for (const auto& [key, _] : obj.items()) {
        if (!allowed.contains(key))
            throw ParseError(where + ": unknown key '" + key + "'");
    }
}

const json& require(const json& obj, const std::string& where, const std::string& key) {
    auto it = obj.find(key);
    if (it == obj.end())
        throw ParseError(where + ": missing required key '" + key + "'");
    return *it;
}

double as_number(const json& v, const std::string& where) {
    if (!v.is_number())
        throw ParseError(where + ": expected a number");
    return v.get<double>();
}

std::string as_string(const json& v, const std::string& where) {
    if (!v.is_string())
        throw ParseError(where + ": expected a string");
    return v.get<std::string>();
}

Point2D parse_point(const json& v, const std::string& where) {
    if (!v.is_array() || v.size() != 2)
        throw ParseError(where + ": expected [x, y]");
    return {as_number(v[0], where + "[0]"), as_number(v[1], where + "[1]")};
}

json point_json(const Point2D& p) { return json::array({p.x, p.y}); }

Scenario parse_scenario(const json& s) {
    require_keys(s, "scenario",
                 {"region", "trajectory", "ue_spec", "num_tx", "num_rx", "seed"});
    Scenario out;

    const json& region = require(s, "scenario", "region");
    require_keys(region, "scenario.region", {"x_min", "x_max", "y_min", "y_max"});
    out.region.x_min = as_number(require(region, "scenario.region", "x_min"), "region.x_min");
    out.region.x_max = as_number(require(region, "scenario.region", "x_max"), "region.x_max");
    out.region.y_min = as_number(require(region, "scenario.region", "y_min"), "region.y_min");
    out.region.y_max = as_number(require(region, "scenario.region", "y_max"), "region.y_max");

    const json& traj = require(s, "scenario", "trajectory");
    require_keys(traj, "scenario.trajectory", {"center", "radius", "sample_count"});
    out.trajectory.center = parse_point(require(traj, "trajectory", "center"), "trajectory.center");
    out.trajectory.radius = as_number(require(traj, "trajectory", "radius"), "trajectory.radius");
    out.trajectory.sample_count = static_cast<int>(
        as_number(require(traj, "trajectory", "sample_count"), "trajectory.sample_count"));

    const json& ue = require(s, "scenario", "ue_spec");
    require_keys(ue, "scenario.ue_spec", {"centers", "variance"});
    const json& centers = require(ue, "ue_spec", "centers");
    if (!centers.is_array())
        throw ParseError("ue_spec.centers: expected an array of [x, y] pairs");
    for (std::size_t k = 0; k < centers.size(); ++k)
        out.ue_spec.centers.push_back(
            parse_point(centers[k], "ue_spec.centers[" + std::to_string(k) + "]"));
    if (ue.contains("variance"))
        out.ue_spec.variance = as_number(ue["variance"], "ue_spec.variance");

    out.num_tx = static_cast<int>(as_number(require(s, "scenario", "num_tx"), "scenario.num_tx"));
    out.num_rx = static_cast<int>(as_number(require(s, "scenario", "num_rx"), "scenario.num_rx"));
    out.seed = static_cast<std::uint64_t>(
        as_number(require(s, "scenario", "seed"), "scenario.seed"));

    validate_scenario(out);
    return out;
}

ObjectiveSpec parse_objective(const json& o) {
    require_keys(o, "objective", {"kind", "weight", "log_base", "distance_floor"});
    ObjectiveSpec spec;
    spec.kind = objective_kind_from_string(as_string(require(o, "objective", "kind"), "objective.kind"));
    if (o.contains("weight")) spec.weight = as_number(o["weight"], "objective.weight");
    if (o.contains("log_base")) spec.log_base = as_number(o["log_base"], "objective.log_base");
    if (o.contains("distance_floor"))
        spec.distance_floor = as_number(o["distance_floor"], "objective.distance_floor");
    if (!(spec.weight >= 0.0) || !std::isfinite(spec.weight))
        throw ValidationError("objective.weight: must be finite and >= 0");
    if (!(spec.log_base > 1.0))
        throw ValidationError("objective.log_base: must be > 1");
    if (!(spec.distance_floor > 0.0))
        throw ValidationError("objective.distance_floor: must be > 0");
    return spec;
}

json parsed_root(const std::string& text) {
    json root = json::parse(text, nullptr, false);
    if (root.is_discarded())
        throw ParseError("config: malformed JSON");
    return root;
}

} // namespace

RunConfig load_config(const std::string& config_text) {
    const json root = parsed_root(config_text);
    require_keys(root, "config",
                 {"schema_version", "scenario", "objective", "env", "solver", "sac", "cem",
                  "random_search", "grid", "sweep"});
    const int version = static_cast<int>(
        as_number(require(root, "config", "schema_version"), "schema_version"));
    if (version != kSchemaVersion)
        throw ParseError("schema_version: expected " + std::to_string(kSchemaVersion));

    RunConfig cfg;
    cfg.scenario = parse_scenario(require(root, "config", "scenario"));
    cfg.objective = parse_objective(require(root, "config", "objective"));

    if (root.contains("env")) {
        const json& env = root["env"];
        require_keys(env, "env", {"grid_resolution", "reward_transform"});
        if (env.contains("grid_resolution"))
            cfg.env.grid_resolution =
                static_cast<int>(as_number(env["grid_resolution"], "env.grid_resolution"));
        if (cfg.env.grid_resolution < 0)
            throw ValidationError("env.grid_resolution: must be >= 0");
        if (env.contains("reward_transform"))
            cfg.env.reward_transform = reward_transform_from_string(
                as_string(env["reward_transform"], "env.reward_transform"));
    }

    if (root.contains("solver")) {
        cfg.solver = as_string(root["solver"], "solver");
        if (cfg.solver != "sac" && cfg.solver != "cem" && cfg.solver != "random" &&
            cfg.solver != "grid")
            throw ParseError("solver: unknown value '" + cfg.solver + "'");
    }

    if (root.contains("sac")) {
        const json& s = root["sac"];
        require_keys(s, "sac",
                     {"learning_rate", "buffer_capacity", "batch_size", "discount", "tau",
                      "target_entropy", "total_steps", "warmup_steps", "update_every",
                      "eval_every"});
        if (s.contains("learning_rate"))
            cfg.sac.learning_rate = as_number(s["learning_rate"], "sac.learning_rate");
        if (s.contains("buffer_capacity"))
            cfg.sac.buffer_capacity =
                static_cast<std::uint64_t>(as_number(s["buffer_capacity"], "sac.buffer_capacity"));
        if (s.contains("batch_size"))
            cfg.sac.batch_size = static_cast<int>(as_number(s["batch_size"], "sac.batch_size"));
        if (s.contains("discount")) cfg.sac.discount = as_number(s["discount"], "sac.discount");
        if (s.contains("tau")) cfg.sac.tau = as_number(s["tau"], "sac.tau");
        if (s.contains("target_entropy"))
            cfg.sac.target_entropy = as_number(s["target_entropy"], "sac.target_entropy");
        if (s.contains("total_steps"))
            cfg.sac.total_steps = static_cast<long>(as_number(s["total_steps"], "sac.total_steps"));
        if (s.contains("warmup_steps"))
            cfg.sac.warmup_steps =
                static_cast<long>(as_number(s["warmup_steps"], "sac.warmup_steps"));
        if (s.contains("update_every"))
            cfg.sac.update_every = static_cast<int>(as_number(s["update_every"], "sac.update_every"));
        if (s.contains("eval_every"))
            cfg.sac.eval_every = static_cast<long>(as_number(s["eval_every"], "sac.eval_every"));
        if (!(cfg.sac.discount > 0.0 && cfg.sac.discount < 1.0))
            throw ValidationError("sac.discount: must be in (0, 1)");
        if (!(cfg.sac.tau > 0.0 && cfg.sac.tau < 1.0))
            throw ValidationError("sac.tau: must be in (0, 1)");
        if (cfg.sac.batch_size < 1 ||
            static_cast<std::uint64_t>(cfg.sac.batch_size) > cfg.sac.buffer_capacity)
            throw ValidationError("sac.batch_size: must be in [1, buffer_capacity]");
    }

    if (root.contains("cem")) {
        const json& c = root["cem"];
        require_keys(c, "cem", {"population", "elite_fraction", "iterations", "initial_std"});
        if (c.contains("population"))
            cfg.cem.population = static_cast<int>(as_number(c["population"], "cem.population"));
        if (c.contains("elite_fraction"))
            cfg.cem.elite_fraction = as_number(c["elite_fraction"], "cem.elite_fraction");
        if (c.contains("iterations"))
            cfg.cem.iterations = static_cast<int>(as_number(c["iterations"], "cem.iterations"));
        if (c.contains("initial_std"))
            cfg.cem.initial_std = as_number(c["initial_std"], "cem.initial_std");
        if (!(cfg.cem.elite_fraction > 0.0 && cfg.cem.elite_fraction < 1.0))
            throw ValidationError("cem.elite_fraction: must be in (0, 1)");
        if (cfg.cem.population * cfg.cem.elite_fraction < 1.0)
            throw ValidationError("cem: population * elite_fraction must be >= 1");
    }

    if (root.contains("random_search")) {
        const json& r = root["random_search"];
        require_keys(r, "random_search", {"budget"});
        if (r.contains("budget"))
            cfg.random_search.budget =
                static_cast<std::uint64_t>(as_number(r["budget"], "random_search.budget"));
        if (cfg.random_search.budget < 1)
            throw ValidationError("random_search.budget: must be >= 1");
    }

    if (root.contains("grid")) {
        const json& g = root["grid"];
        require_keys(g, "grid", {"points_per_axis", "budget_cap"});
        if (g.contains("points_per_axis"))
            cfg.grid.points_per_axis =
                static_cast<int>(as_number(g["points_per_axis"], "grid.points_per_axis"));
        if (g.contains("budget_cap"))
            cfg.grid.budget_cap =
                static_cast<std::uint64_t>(as_number(g["budget_cap"], "grid.budget_cap"));
        if (cfg.grid.points_per_axis < 1)
            throw ValidationError("grid.points_per_axis: must be >= 1");
    }

    if (root.contains("sweep")) {
        const json& sw = root["sweep"];
        require_keys(sw, "sweep", {"ap_counts", "objective_kinds"});
        SweepSpec sweep;
        if (sw.contains("ap_counts")) {
            for (const json& pair : sw["ap_counts"]) {
                if (!pair.is_array() || pair.size() != 2)
                    throw ParseError("sweep.ap_counts: expected [M, N] pairs");
                sweep.ap_counts.emplace_back(static_cast<int>(as_number(pair[0], "sweep.ap_counts")),
                                             static_cast<int>(as_number(pair[1], "sweep.ap_counts")));
            }
        }
        if (sw.contains("objective_kinds")) {
            for (const json& kind : sw["objective_kinds"])
                sweep.objective_kinds.push_back(
                    objective_kind_from_string(as_string(kind, "sweep.objective_kinds")));
        }
        if (sweep.ap_counts.empty() && sweep.objective_kinds.empty())
            throw ValidationError("sweep: must list ap_counts and/or objective_kinds");
        cfg.sweep = std::move(sweep);
    }

    return cfg;
}

Scenario load_scenario(const std::string& config_text) {
    const json root = parsed_root(config_text);
    if (root.contains("scenario"))
        return parse_scenario(root["scenario"]);
    return parse_scenario(root);
}

std::string render_config(const RunConfig& cfg) {
    json root;
    root["schema_version"] = kSchemaVersion;
    json& s = root["scenario"];
    s["region"] = {{"x_min", cfg.scenario.region.x_min},
                   {"x_max", cfg.scenario.region.x_max},
                   {"y_min", cfg.scenario.region.y_min},
                   {"y_max", cfg.scenario.region.y_max}};
    s["trajectory"] = {{"center", point_json(cfg.scenario.trajectory.center)},
                       {"radius", cfg.scenario.trajectory.radius},
                       {"sample_count", cfg.scenario.trajectory.sample_count}};
    json centers = json::array();
    for (const Point2D& c : cfg.scenario.ue_spec.centers) centers.push_back(point_json(c));
    s["ue_spec"] = {{"centers", centers}, {"variance", cfg.scenario.ue_spec.variance}};
    s["num_tx"] = cfg.scenario.num_tx;
    s["num_rx"] = cfg.scenario.num_rx;
    s["seed"] = cfg.scenario.seed;

    root["objective"] = {{"kind", to_string(cfg.objective.kind)},
                         {"weight", cfg.objective.weight},
                         {"log_base", cfg.objective.log_base},
                         {"distance_floor", cfg.objective.distance_floor}};
    root["env"] = {{"grid_resolution", cfg.env.grid_resolution},
                   {"reward_transform", to_string(cfg.env.reward_transform)}};
    root["solver"] = cfg.solver;
    json sac = {{"learning_rate", cfg.sac.learning_rate},
                {"buffer_capacity", cfg.sac.buffer_capacity},
                {"batch_size", cfg.sac.batch_size},
                {"discount", cfg.sac.discount},
                {"tau", cfg.sac.tau},
                {"total_steps", cfg.sac.total_steps},
                {"warmup_steps", cfg.sac.warmup_steps},
                {"update_every", cfg.sac.update_every},
                {"eval_every", cfg.sac.eval_every}};
    if (cfg.sac.target_entropy) sac["target_entropy"] = *cfg.sac.target_entropy;
    root["sac"] = sac;
    root["cem"] = {{"population", cfg.cem.population},
                   {"elite_fraction", cfg.cem.elite_fraction},
                   {"iterations", cfg.cem.iterations},
                   {"initial_std", cfg.cem.initial_std}};
    root["random_search"] = {{"budget", cfg.random_search.budget}};
    root["grid"] = {{"points_per_axis", cfg.grid.points_per_axis},
                    {"budget_cap", cfg.grid.budget_cap}};
    if (cfg.sweep) {
        json pairs = json::array();
        for (const auto& [m, n] : cfg.sweep->ap_counts) pairs.push_back(json::array({m, n}));
        json kinds = json::array();
        for (ObjectiveKind k : cfg.sweep->objective_kinds) kinds.push_back(to_string(k));
        root["sweep"] = {{"ap_counts", pairs}, {"objective_kinds", kinds}};
    }
    return root.dump(2) + "\n";
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot write file: " + path);
    out << content;
}

RunConfig load_config_file(const std::string& path) {
    return load_config(read_file(path));
}

Deployment load_deployment(const std::string& text) {
    const json root = parsed_root(text);
    require_keys(root, "deployment", {"tx", "rx"});
    Deployment d;
    for (const json& p : require(root, "deployment", "tx"))
        d.tx.push_back(parse_point(p, "deployment.tx"));
    for (const json& p : require(root, "deployment", "rx"))
        d.rx.push_back(parse_point(p, "deployment.rx"));
    return d;
}

std::string render_deployment(const Deployment& d) {
    json root;
    root["tx"] = json::array();
    root["rx"] = json::array();
    for (const Point2D& p : d.tx) root["tx"].push_back(point_json(p));
    for (const Point2D& p : d.rx) root["rx"].push_back(point_json(p));
    return root.dump(2) + "\n";
}

} // namespace cfisac
