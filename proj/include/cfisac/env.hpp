#pragma once

#include <span>
#include <vector>

#include "cfisac/config.hpp"
#include "cfisac/geometry.hpp"
#include "cfisac/metrics.hpp"
#include "cfisac/rng.hpp"

namespace cfisac {

struct EnvConfig {
    Scenario scenario;
    ObjectiveSpec objective;
    EnvSettings settings;
};

// Affine map of a [-1,1] action vector into AP coordinates; grid_resolution
// G > 0 snaps each coordinate to the nearest of G uniformly spaced grid
// values spanning the region.
Deployment decode_action(std::span<const double> action, const Region& region,
                         int num_tx, int num_rx, int grid_resolution);

// Inverse of decode_action for in-region deployments (continuous mode).
std::vector<double> encode_deployment(const Deployment& d, const Region& region);

double apply_reward_transform(double value, RewardTransform t);

struct StepResult {
    double reward = 0.0;
    std::vector<double> next_state;
    bool done = true;
};

// One-step episodic deployment environment: the state encodes the UE draw and
// the trajectory center, the action is the full deployment, the episode ends
// immediately with the objective as reward.
class DeploymentEnv {
public:
    explicit DeploymentEnv(const EnvConfig& cfg);

    int state_dim() const { return 2 * ue_count() + 2; }
    int action_dim() const { return 2 * (config_.scenario.num_tx + config_.scenario.num_rx); }
    int ue_count() const { return config_.scenario.ue_spec.count(); }

    const EnvConfig& config() const { return config_; }
    const std::vector<Point2D>& trajectory_points() const { return trajectory_points_; }
    const std::vector<Point2D>& current_ues() const { return ues_; }

    // Samples fresh UE positions and returns the encoded state.
    std::vector<double> reset(Rng& rng);

    // Computes the (transformed) reward of the decoded deployment against the
    // current UE draw, then resets for the next single-step episode.
    StepResult step(std::span<const double> action, Rng& rng);

    // Untransformed reward of an action against the current UE draw, without
    // advancing the environment. Used for greedy evaluation.
    double peek_reward(std::span<const double> action) const;

    Deployment decode(std::span<const double> action) const;

private:
    std::vector<double> encode_state() const;

    EnvConfig config_;
    std::vector<Point2D> trajectory_points_;
    std::vector<Point2D> ues_;
};

} // namespace cfisac
