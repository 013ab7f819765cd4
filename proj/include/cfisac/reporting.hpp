#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cfisac/baselines.hpp"
#include "cfisac/config.hpp"
#include "cfisac/metrics.hpp"
#include "cfisac/sac.hpp"

namespace cfisac {

inline constexpr const char* kToolVersion = "0.1.0";

// Command-line overrides applied on top of the config file.
struct CliOverrides {
    std::optional<std::uint64_t> seed;
    std::optional<ObjectiveKind> objective;
    std::optional<std::string> solver;
};

RunConfig load_config_with_overrides(const std::string& config_path, const CliOverrides& overrides);

// evaluate: metric report for an explicit deployment file.
struct EvaluateOutput {
    MetricReport report;
    std::string report_json_path;
    std::string report_csv_path;
};
EvaluateOutput run_evaluate(const std::string& config_path, const std::string& deployment_path,
                            const std::string& out_dir, const CliOverrides& overrides = {});

// train: SAC training with checkpoint, learning curve and deployment plot.
struct TrainOutput {
    Deployment deployment;
    double final_eval_reward = 0.0; // untransformed reward objective
    double objective_value = 0.0;   // reported (scaled) objective of the deployment
    std::string checkpoint_path;
    std::string curve_csv_path;
    std::string svg_path;
    std::string deployment_json_path;
};
TrainOutput run_train(const std::string& config_path, const std::string& out_dir,
                      const CliOverrides& overrides = {});

// oracle: exhaustive grid search result.
struct OracleOutput {
    OracleResult result;
    std::string result_json_path;
};
OracleOutput run_oracle(const std::string& config_path, const std::string& out_dir,
                        const CliOverrides& overrides = {});

// compare: baselines side by side (grid is skipped when over its budget cap).
struct CompareRow {
    std::string method;
    ObjectiveKind objective_kind;
    double value = 0.0;
    std::uint64_t evaluations = 0;
    double wall_time_ms = 0.0;
};
struct CompareOutput {
    std::vector<CompareRow> rows;
    std::string csv_path;
};
CompareOutput run_compare(const std::string& config_path, const std::string& out_dir,
                          const CliOverrides& overrides = {});

// sweep: one optimized cell per (M, N) x objective combination.
struct SweepRow {
    int num_tx = 0;
    int num_rx = 0;
    ObjectiveKind objective_kind = ObjectiveKind::MaxSum;
    std::string solver;
    double scaled_sum_rate = 0.0;  // sum_k R_k / Q
    double scaled_sum_fim = 0.0;   // sum_q |FIM| / Q
    double min_rate = 0.0;
    double min_fim = 0.0;
    double objective_value = 0.0;
    std::uint64_t seed = 0;
    double wall_time_ms = 0.0;
};
struct SweepOutput {
    std::vector<SweepRow> rows;
    std::string csv_path;
};
SweepOutput run_sweep(const std::string& config_path, const std::string& out_dir,
                      const CliOverrides& overrides = {});

} // namespace cfisac
