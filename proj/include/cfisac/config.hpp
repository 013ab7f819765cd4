#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cfisac/geometry.hpp"
#include "cfisac/metrics.hpp"

namespace cfisac {

enum class RewardTransform { Identity, Log1p };

std::string to_string(RewardTransform t);
RewardTransform reward_transform_from_string(const std::string& name);

struct EnvSettings {
    int grid_resolution = 0; // 0 = continuous actions
    RewardTransform reward_transform = RewardTransform::Identity;

    bool operator==(const EnvSettings&) const = default;
};

struct SacSettings {
    double learning_rate = 1e-5;
    std::uint64_t buffer_capacity = 1ULL << 21;
    int batch_size = 1 << 9;
    double discount = 0.98;
    double tau = 0.005;
    std::optional<double> target_entropy; // default -action_dim when unset
    long total_steps = 20000;
    long warmup_steps = 1000;
    int update_every = 1;
    long eval_every = 100;

    bool operator==(const SacSettings&) const = default;
};

struct CemSettings {
    int population = 64;
    double elite_fraction = 0.25;
    int iterations = 30;
    double initial_std = 0.0; // 0 = quarter of the larger region extent

    bool operator==(const CemSettings&) const = default;
};

struct RandomSearchSettings {
    std::uint64_t budget = 10000;

    bool operator==(const RandomSearchSettings&) const = default;
};

struct GridSettings {
    int points_per_axis = 9;
    std::uint64_t budget_cap = 20000000;

    bool operator==(const GridSettings&) const = default;
};

struct SweepSpec {
    std::vector<std::pair<int, int>> ap_counts;   // (M, N) pairs
    std::vector<ObjectiveKind> objective_kinds;

    bool operator==(const SweepSpec&) const = default;
};

// Everything one run needs, read from a single config file.
struct RunConfig {
    Scenario scenario;
    ObjectiveSpec objective;
    EnvSettings env;
    std::string solver = "sac"; // sac | cem | random | grid
    SacSettings sac;
    CemSettings cem;
    RandomSearchSettings random_search;
    GridSettings grid;
    std::optional<SweepSpec> sweep;

    bool operator==(const RunConfig&) const = default;
};

// Parse + validate. Unknown keys are an error. Throws ParseError /
// ValidationError with field context.
RunConfig load_config(const std::string& config_text);
Scenario load_scenario(const std::string& config_text);

std::string render_config(const RunConfig& config);

RunConfig load_config_file(const std::string& path);
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

// Deployment file: {"tx": [[x,y],...], "rx": [[x,y],...]}
Deployment load_deployment(const std::string& text);
std::string render_deployment(const Deployment& d);

} // namespace cfisac
