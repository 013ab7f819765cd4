#include "cfisac/env.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cfisac/errors.hpp"

namespace cfisac {

namespace {

double snap_to_grid(double value, double lo, double hi, int grid_resolution) {
    if (grid_resolution == 1) return 0.5 * (lo + hi);
    const double step = (hi - lo) / (grid_resolution - 1);
    const double idx = std::round((value - lo) / step);
    const double clamped = std::min(std::max(idx, 0.0), static_cast<double>(grid_resolution - 1));
    return lo + clamped * step;
}

double decode_coord(double a, double lo, double hi, int grid_resolution) {
    const double raw = lo + 0.5 * (a + 1.0) * (hi - lo);
    if (grid_resolution <= 0) return raw;
    return snap_to_grid(raw, lo, hi, grid_resolution);
}

double encode_coord(double v, double lo, double hi) {
    return 2.0 * (v - lo) / (hi - lo) - 1.0;
}

} // namespace

Deployment decode_action(std::span<const double> action, const Region& region,
                         int num_tx, int num_rx, int grid_resolution) {
    if (static_cast<int>(action.size()) != 2 * (num_tx + num_rx))
        throw ValidationError("action: expected length " + std::to_string(2 * (num_tx + num_rx)));
    Deployment d;
    d.tx.reserve(num_tx);
    d.rx.reserve(num_rx);
    std::size_t i = 0;
    for (int m = 0; m < num_tx; ++m, i += 2)
        d.tx.push_back({decode_coord(action[i], region.x_min, region.x_max, grid_resolution),
                        decode_coord(action[i + 1], region.y_min, region.y_max, grid_resolution)});
    for (int n = 0; n < num_rx; ++n, i += 2)
        d.rx.push_back({decode_coord(action[i], region.x_min, region.x_max, grid_resolution),
                        decode_coord(action[i + 1], region.y_min, region.y_max, grid_resolution)});
    return d;
}

std::vector<double> encode_deployment(const Deployment& d, const Region& region) {
    std::vector<double> a;
    a.reserve(2 * (d.tx.size() + d.rx.size()));
    for (const Point2D& p : d.tx) {
        a.push_back(encode_coord(p.x, region.x_min, region.x_max));
        a.push_back(encode_coord(p.y, region.y_min, region.y_max));
    }
    for (const Point2D& p : d.rx) {
        a.push_back(encode_coord(p.x, region.x_min, region.x_max));
        a.push_back(encode_coord(p.y, region.y_min, region.y_max));
    }
    return a;
}

double apply_reward_transform(double value, RewardTransform t) {
    return t == RewardTransform::Log1p ? std::log1p(value) : value;
}

DeploymentEnv::DeploymentEnv(const EnvConfig& cfg) : config_(cfg) {
    validate_scenario(config_.scenario, /*require_nondegenerate_sensing=*/false);
    trajectory_points_ = sample_trajectory(config_.scenario.trajectory);
    ues_ = config_.scenario.ue_spec.centers; // placeholder until first reset
    for (Point2D& p : ues_) p = clamp_to_region(p, config_.scenario.region);
}

std::vector<double> DeploymentEnv::encode_state() const {
    const Region& r = config_.scenario.region;
    std::vector<double> state;
    state.reserve(state_dim());
    for (const Point2D& ue : ues_) {
        state.push_back(encode_coord(ue.x, r.x_min, r.x_max));
        state.push_back(encode_coord(ue.y, r.y_min, r.y_max));
    }
    const Point2D& c = config_.scenario.trajectory.center;
    state.push_back(encode_coord(c.x, r.x_min, r.x_max));
    state.push_back(encode_coord(c.y, r.y_min, r.y_max));
    return state;
}

std::vector<double> DeploymentEnv::reset(Rng& rng) {
    ues_ = sample_ues(config_.scenario.ue_spec, config_.scenario.region, rng);
    return encode_state();
}

Deployment DeploymentEnv::decode(std::span<const double> action) const {
    return decode_action(action, config_.scenario.region, config_.scenario.num_tx,
                         config_.scenario.num_rx, config_.settings.grid_resolution);
}

double DeploymentEnv::peek_reward(std::span<const double> action) const {
    const Deployment d = decode(action);
    const MetricReport report = evaluate(d, ues_, trajectory_points_, config_.objective);
    return reward_objective(report, config_.objective);
}

StepResult DeploymentEnv::step(std::span<const double> action, Rng& rng) {
    StepResult result;
    result.reward = apply_reward_transform(peek_reward(action), config_.settings.reward_transform);
    result.done = true;
    result.next_state = reset(rng);
    return result;
}

} // namespace cfisac
