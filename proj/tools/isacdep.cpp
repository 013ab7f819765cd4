#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "cfisac/errors.hpp"
#include "cfisac/reporting.hpp"

namespace {

struct GlobalArgs {
    std::string config;
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed;
    std::optional<std::string> objective;
    std::optional<std::string> solver;
};

void add_global_options(CLI::App* cmd, GlobalArgs& args) {
    cmd->add_option("--config", args.config, "Scenario/run config file (JSON)")->required();
    cmd->add_option("--out-dir", args.out_dir, "Output directory");
    cmd->add_option("--seed", args.seed, "Override the config seed");
    cmd->add_option("--objective", args.objective,
                    "Override the objective kind (max_sum, max_min, comm_only, sensing_only, "
                    "weighted_sum)");
    cmd->add_option("--solver", args.solver, "Override the solver (sac, cem, random, grid)");
}

cfisac::CliOverrides to_overrides(const GlobalArgs& args) {
    cfisac::CliOverrides o;
    o.seed = args.seed;
    if (args.objective) o.objective = cfisac::objective_kind_from_string(*args.objective);
    o.solver = args.solver;
    return o;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Access-point placement optimizer for cell-free sensing + communication"};
    app.require_subcommand(1);

    GlobalArgs eval_args, train_args, oracle_args, compare_args, sweep_args;
    std::string deployment_path;

    CLI::App* cmd_evaluate =
        app.add_subcommand("evaluate", "Score an explicit deployment against the scenario");
    add_global_options(cmd_evaluate, eval_args);
    cmd_evaluate->add_option("--deployment", deployment_path, "Deployment file (JSON)")
        ->required();

    CLI::App* cmd_train = app.add_subcommand("train", "Train the SAC agent");
    add_global_options(cmd_train, train_args);

    CLI::App* cmd_oracle = app.add_subcommand("oracle", "Exhaustive grid search");
    add_global_options(cmd_oracle, oracle_args);

    CLI::App* cmd_compare = app.add_subcommand("compare", "Run baselines side by side");
    add_global_options(cmd_compare, compare_args);

    CLI::App* cmd_sweep = app.add_subcommand("sweep", "Run the configured AP/objective sweep");
    add_global_options(cmd_sweep, sweep_args);

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_evaluate->parsed()) {
            const auto out = cfisac::run_evaluate(eval_args.config, deployment_path,
                                                  eval_args.out_dir, to_overrides(eval_args));
            std::cout << "objective_value " << out.report.objective_value << "\n"
                      << "report " << out.report_json_path << "\n";
        } else if (cmd_train->parsed()) {
            const auto out =
                cfisac::run_train(train_args.config, train_args.out_dir, to_overrides(train_args));
            std::cout << "final_eval_reward " << out.final_eval_reward << "\n"
                      << "objective_value " << out.objective_value << "\n"
                      << "checkpoint " << out.checkpoint_path << "\n"
                      << "plot " << out.svg_path << "\n";
        } else if (cmd_oracle->parsed()) {
            const auto out = cfisac::run_oracle(oracle_args.config, oracle_args.out_dir,
                                                to_overrides(oracle_args));
            std::cout << "best_value " << out.result.best_value << "\n"
                      << "evaluations " << out.result.evaluations << "\n"
                      << "result " << out.result_json_path << "\n";
        } else if (cmd_compare->parsed()) {
            const auto out = cfisac::run_compare(compare_args.config, compare_args.out_dir,
                                                 to_overrides(compare_args));
            for (const auto& row : out.rows)
                std::cout << row.method << " " << row.value << "\n";
            std::cout << "csv " << out.csv_path << "\n";
        } else if (cmd_sweep->parsed()) {
            const auto out = cfisac::run_sweep(sweep_args.config, sweep_args.out_dir,
                                               to_overrides(sweep_args));
            std::cout << "rows " << out.rows.size() << "\n"
                      << "csv " << out.csv_path << "\n";
        }
    } catch (const cfisac::ParseError& e) {
        std::cerr << "error (parse): " << e.what() << "\n";
        return 2;
    } catch (const cfisac::ValidationError& e) {
        std::cerr << "error (validation): " << e.what() << "\n";
        return 3;
    } catch (const cfisac::IoError& e) {
        std::cerr << "error (io): " << e.what() << "\n";
        return 4;
    } catch (const cfisac::BudgetError& e) {
        std::cerr << "error (budget): " << e.what() << "\n";
        return 5;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
