#include "cfisac/reporting.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <json.hpp>

#include "cfisac/env.hpp"
#include "cfisac/errors.hpp"
#include "cfisac/svg.hpp"

namespace cfisac {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

double elapsed_ms(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
}

std::string join(const std::string& dir, const std::string& name) {
    return (fs::path(dir) / name).string();
}

void apply_overrides(RunConfig& cfg, const CliOverrides& overrides) {
    if (overrides.seed) cfg.scenario.seed = *overrides.seed;
    if (overrides.objective) cfg.objective.kind = *overrides.objective;
    if (overrides.solver) {
        if (*overrides.solver != "sac" && *overrides.solver != "cem" &&
            *overrides.solver != "random" && *overrides.solver != "grid")
            throw ParseError("solver: unknown value '" + *overrides.solver + "'");
        cfg.solver = *overrides.solver;
    }
}

// Manifest is written before any result file; timings are patched in on
// completion. Timings live only here so result CSV/JSON stay reproducible.
class Manifest {
public:
    Manifest(const std::string& out_dir, const std::string& command, const RunConfig& cfg,
             std::vector<std::string> outputs)
        : path_(join(out_dir, "manifest.json")), start_(std::chrono::steady_clock::now()) {
        fs::create_directories(out_dir);
        root_["command"] = command;
        root_["tool_version"] = kToolVersion;
        root_["seed"] = cfg.scenario.seed;
        root_["config"] = json::parse(render_config(cfg));
        root_["outputs"] = outputs;
        root_["wall_time_ms"] = nullptr;
        write_file(path_, root_.dump(2) + "\n");
    }

    void finish() {
        root_["wall_time_ms"] = elapsed_ms(start_);
        write_file(path_, root_.dump(2) + "\n");
    }

    double elapsed() const { return elapsed_ms(start_); }

private:
    std::string path_;
    std::chrono::steady_clock::time_point start_;
    json root_;
};

json metric_report_json(const MetricReport& report, const ObjectiveSpec& spec) {
    return {{"objective_kind", to_string(spec.kind)},
            {"per_ue_rate", report.per_ue_rate},
            {"sum_rate", report.sum_rate},
            {"min_rate", report.min_rate},
            {"per_sample_fim_det", report.per_sample_fim_det},
            {"sum_fim_det", report.sum_fim_det},
            {"min_fim_det", report.min_fim_det},
            {"objective_value", report.objective_value}};
}

std::vector<Point2D> deterministic_ue_draw(const Scenario& scenario) {
    Rng rng(scenario.seed);
    return sample_ues(scenario.ue_spec, scenario.region, rng);
}

// One solver run on a fixed scenario + UE draw, shared by compare and sweep.
OracleResult solve_cell(const std::string& solver, const RunConfig& cfg,
                        const Scenario& scenario, std::span<const Point2D> ues,
                        const ObjectiveSpec& objective) {
    if (solver == "grid") {
        return grid_oracle(scenario, ues, objective, cfg.grid.points_per_axis,
                           cfg.grid.budget_cap);
    }
    if (solver == "random") {
        Rng rng(scenario.seed);
        return random_search(scenario, ues, objective, cfg.random_search.budget, rng);
    }
    if (solver == "cem") {
        CemConfig cem{cfg.cem.population, cfg.cem.elite_fraction, cfg.cem.iterations,
                      cfg.cem.initial_std, scenario.seed};
        return cem_optimize(scenario, ues, objective, cem);
    }
    if (solver == "sac") {
        EnvConfig env_cfg{scenario, objective, cfg.env};
        DeploymentEnv env(env_cfg);
        SacConfig sac_cfg;
        sac_cfg.settings = cfg.sac;
        sac_cfg.seed = scenario.seed;
        const TrainResult tr = train(env, sac_cfg);
        // Greedy deployment for the deterministic UE draw.
        std::vector<double> state;
        {
            EnvConfig probe_cfg = env_cfg;
            DeploymentEnv probe(probe_cfg);
            Rng rng(scenario.seed);
            state = probe.reset(rng);
        }
        OracleResult result;
        result.best_deployment = decode_action(greedy_action(tr.agent, state), scenario.region,
                                               scenario.num_tx, scenario.num_rx,
                                               cfg.env.grid_resolution);
        const std::vector<Point2D> traj = sample_trajectory(scenario.trajectory);
        result.best_value = evaluate(result.best_deployment, ues, traj, objective).objective_value;
        result.evaluations = static_cast<std::uint64_t>(cfg.sac.total_steps);
        return result;
    }
    throw ParseError("solver: unknown value '" + solver + "'");
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

} // namespace

RunConfig load_config_with_overrides(const std::string& config_path,
                                     const CliOverrides& overrides) {
    RunConfig cfg = load_config_file(config_path);
    apply_overrides(cfg, overrides);
    return cfg;
}

EvaluateOutput run_evaluate(const std::string& config_path, const std::string& deployment_path,
                            const std::string& out_dir, const CliOverrides& overrides) {
    const RunConfig cfg = load_config_with_overrides(config_path, overrides);
    const Deployment deployment = load_deployment(read_file(deployment_path));
    validate_deployment(deployment, cfg.scenario.region, cfg.scenario.num_tx, cfg.scenario.num_rx);

    EvaluateOutput out;
    out.report_json_path = join(out_dir, "metrics.json");
    out.report_csv_path = join(out_dir, "metrics.csv");
    Manifest manifest(out_dir, "evaluate", cfg, {"metrics.json", "metrics.csv"});

    const std::vector<Point2D> ues = deterministic_ue_draw(cfg.scenario);
    const std::vector<Point2D> traj = sample_trajectory(cfg.scenario.trajectory);
    out.report = evaluate(deployment, ues, traj, cfg.objective);

    write_file(out.report_json_path, metric_report_json(out.report, cfg.objective).dump(2) + "\n");
    write_file(out.report_csv_path, metric_report_csv_header() + "\n" +
                                        metric_report_csv_row(out.report, cfg.objective) + "\n");
    manifest.finish();
    return out;
}

TrainOutput run_train(const std::string& config_path, const std::string& out_dir,
                      const CliOverrides& overrides) {
    const RunConfig cfg = load_config_with_overrides(config_path, overrides);

    TrainOutput out;
    out.checkpoint_path = join(out_dir, "checkpoint.json");
    out.curve_csv_path = join(out_dir, "learning_curve.csv");
    out.svg_path = join(out_dir, "deployment.svg");
    out.deployment_json_path = join(out_dir, "deployment.json");
    Manifest manifest(out_dir, "train", cfg,
                      {"checkpoint.json", "learning_curve.csv", "deployment.svg",
                       "deployment.json"});

    EnvConfig env_cfg{cfg.scenario, cfg.objective, cfg.env};
    DeploymentEnv env(env_cfg);
    SacConfig sac_cfg;
    sac_cfg.settings = cfg.sac;
    sac_cfg.seed = cfg.scenario.seed;
    const TrainResult tr = train(env, sac_cfg);

    // Greedy deployment for a fresh deterministic UE draw.
    DeploymentEnv eval_env(env_cfg);
    Rng eval_rng(cfg.scenario.seed);
    const std::vector<double> state = eval_env.reset(eval_rng);
    const std::vector<double> action = greedy_action(tr.agent, state);
    out.deployment = eval_env.decode(action);
    out.final_eval_reward = eval_env.peek_reward(action);
    out.objective_value = evaluate(out.deployment, eval_env.current_ues(),
                                   eval_env.trajectory_points(), cfg.objective)
                              .objective_value;

    write_file(out.checkpoint_path, save_checkpoint(tr.agent, sac_cfg));
    write_file(out.curve_csv_path, learning_curve_csv(tr.curve));
    write_file(out.svg_path, deployment_svg(cfg.scenario, out.deployment, eval_env.current_ues(),
                                            eval_env.trajectory_points()));
    write_file(out.deployment_json_path, render_deployment(out.deployment));
    manifest.finish();
    return out;
}

OracleOutput run_oracle(const std::string& config_path, const std::string& out_dir,
                        const CliOverrides& overrides) {
    const RunConfig cfg = load_config_with_overrides(config_path, overrides);

    OracleOutput out;
    out.result_json_path = join(out_dir, "oracle.json");
    Manifest manifest(out_dir, "oracle", cfg, {"oracle.json"});

    const std::vector<Point2D> ues = deterministic_ue_draw(cfg.scenario);
    out.result = grid_oracle(cfg.scenario, ues, cfg.objective, cfg.grid.points_per_axis,
                             cfg.grid.budget_cap);

    json root = {{"best_value", out.result.best_value},
                 {"evaluations", out.result.evaluations},
                 {"best_deployment", json::parse(render_deployment(out.result.best_deployment))},
                 {"points_per_axis", cfg.grid.points_per_axis}};
    write_file(out.result_json_path, root.dump(2) + "\n");
    manifest.finish();
    return out;
}

CompareOutput run_compare(const std::string& config_path, const std::string& out_dir,
                          const CliOverrides& overrides) {
    const RunConfig cfg = load_config_with_overrides(config_path, overrides);

    CompareOutput out;
    out.csv_path = join(out_dir, "compare.csv");
    Manifest manifest(out_dir, "compare", cfg, {"compare.csv"});

    const std::vector<Point2D> ues = deterministic_ue_draw(cfg.scenario);
    std::ofstream csv(out.csv_path, std::ios::binary);
    if (!csv)
        throw IoError("cannot write file: " + out.csv_path);
    csv << "method,objective_kind,value,evaluations,wall_time_ms\n";

    for (const std::string method : {"grid", "random", "cem"}) {
        const auto start = std::chrono::steady_clock::now();
        OracleResult result;
        try {
            result = solve_cell(method, cfg, cfg.scenario, ues, cfg.objective);
        } catch (const BudgetError& e) {
            std::cerr << "compare: skipping " << method << ": " << e.what() << "\n";
            continue;
        }
        CompareRow row{method, cfg.objective.kind, result.best_value, result.evaluations,
                       elapsed_ms(start)};
        out.rows.push_back(row);
        csv << row.method << ',' << to_string(row.objective_kind) << ','
            << format_double(row.value) << ',' << row.evaluations << ','
            << format_double(row.wall_time_ms) << '\n';
        csv.flush();
    }
    manifest.finish();
    return out;
}

SweepOutput run_sweep(const std::string& config_path, const std::string& out_dir,
                      const CliOverrides& overrides) {
    const RunConfig cfg = load_config_with_overrides(config_path, overrides);
    if (!cfg.sweep)
        throw ValidationError("sweep: config has no 'sweep' section");

    SweepOutput out;
    out.csv_path = join(out_dir, "sweep.csv");
    Manifest manifest(out_dir, "sweep", cfg, {"sweep.csv"});

    std::vector<std::pair<int, int>> ap_counts = cfg.sweep->ap_counts;
    if (ap_counts.empty()) ap_counts.emplace_back(cfg.scenario.num_tx, cfg.scenario.num_rx);
    std::vector<ObjectiveKind> kinds = cfg.sweep->objective_kinds;
    if (kinds.empty()) kinds.push_back(cfg.objective.kind);

    std::ofstream csv(out.csv_path, std::ios::binary);
    if (!csv)
        throw IoError("cannot write file: " + out.csv_path);
    csv << "num_tx,num_rx,objective_kind,solver,scaled_sum_rate,scaled_sum_fim,min_rate,min_fim,"
           "objective_value,seed,wall_time_ms\n";

    const std::vector<Point2D> traj = sample_trajectory(cfg.scenario.trajectory);
    for (const auto& [m, n] : ap_counts) {
        Scenario scenario = cfg.scenario;
        scenario.num_tx = m;
        scenario.num_rx = n;
        validate_scenario(scenario, /*require_nondegenerate_sensing=*/false);
        const std::vector<Point2D> ues = deterministic_ue_draw(scenario);
        for (ObjectiveKind kind : kinds) {
            ObjectiveSpec objective = cfg.objective;
            objective.kind = kind;
            const auto start = std::chrono::steady_clock::now();
            const OracleResult result = solve_cell(cfg.solver, cfg, scenario, ues, objective);
            const MetricReport report = evaluate(result.best_deployment, ues, traj, objective);
            const double q = static_cast<double>(traj.size());
            SweepRow row{m,
                         n,
                         kind,
                         cfg.solver,
                         report.sum_rate / q,
                         report.sum_fim_det / q,
                         report.min_rate,
                         report.min_fim_det,
                         report.objective_value,
                         scenario.seed,
                         elapsed_ms(start)};
            out.rows.push_back(row);
            csv << row.num_tx << ',' << row.num_rx << ',' << to_string(row.objective_kind) << ','
                << row.solver << ',' << format_double(row.scaled_sum_rate) << ','
                << format_double(row.scaled_sum_fim) << ',' << format_double(row.min_rate) << ','
                << format_double(row.min_fim) << ',' << format_double(row.objective_value) << ','
                << row.seed << ',' << format_double(row.wall_time_ms) << '\n';
            csv.flush();
        }
    }
    manifest.finish();
    return out;
}

} // namespace cfisac
