#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cfisac/config.hpp"
#include "cfisac/env.hpp"
#include "cfisac/mlp.hpp"
#include "cfisac/policy.hpp"
#include "cfisac/rng.hpp"

namespace cfisac {

struct Transition {
    std::vector<double> state;
    std::vector<double> action;
    double reward = 0.0;
    std::vector<double> next_state;
    bool done = true;
};

// Fixed-capacity FIFO ring buffer of transitions.
class ReplayBuffer {
public:
    explicit ReplayBuffer(std::uint64_t capacity);

    void push(Transition t);
    std::size_t size() const { return data_.size(); }
    std::uint64_t capacity() const { return capacity_; }
    const Transition& at(std::size_t logical_index) const; // 0 = oldest

    // Uniform with replacement; throws ValidationError if size < batch_size.
    std::vector<Transition> sample(int batch_size, Rng& rng) const;

private:
    std::uint64_t capacity_;
    std::size_t head_ = 0; // next write slot once full
    std::vector<Transition> data_;
};

struct SacConfig {
    std::vector<int> hidden{64, 32};
    SacSettings settings;
    std::uint64_t seed = 0;

    double target_entropy(int action_dim) const {
        return settings.target_entropy ? *settings.target_entropy
                                       : -static_cast<double>(action_dim);
    }
};

// All learnable state: actor, twin critics with targets, log-temperature.
struct AgentState {
    int state_dim = 0;
    int action_dim = 0;
    MlpParams actor;
    MlpParams critic1, critic2;
    MlpParams target1, target2;
    double log_omega = 0.0;
    AdamState actor_opt, critic1_opt, critic2_opt;
    ScalarAdamState omega_opt;

    double omega() const;
};

AgentState make_agent(int state_dim, int action_dim, const SacConfig& cfg, Rng& rng);

PolicyOutput actor_forward(const AgentState& agent, std::span<const double> state,
                           ForwardCache* cache = nullptr);
double critic_forward(const MlpParams& critic, std::span<const double> state,
                      std::span<const double> action, ForwardCache* cache = nullptr);
std::vector<double> greedy_action(const AgentState& agent, std::span<const double> state);

// One optimizer step per critic against the soft Bellman target
// y = r + gamma * (1 - done) * (min_j Q_target_j(s', a') - omega * log pi(a'|s')).
// Returns the mean squared-error loss over both critics.
double critic_update(AgentState& agent, std::span<const Transition> batch, double discount,
                     Rng& rng);

// One optimizer step on the actor for E[omega * log pi(a|s) - min_j Q_j(s, a)].
double actor_update(AgentState& agent, std::span<const Transition> batch, Rng& rng);

// One optimizer step on log omega for E[-omega * (log pi(a|s) + target_entropy)].
double temperature_update(AgentState& agent, std::span<const Transition> batch,
                          double target_entropy, Rng& rng);

void soft_update(AgentState& agent, double tau);

struct CurvePoint {
    long step = 0;
    double eval_reward = 0.0;
    double actor_loss = 0.0;
    double critic_loss = 0.0;
    double omega = 0.0;
};

struct TrainResult {
    AgentState agent;
    std::vector<CurvePoint> curve;
};

TrainResult train(DeploymentEnv& env, const SacConfig& cfg);

// Checkpoints round-trip bit-exactly (JSON with explicit shapes).
std::string save_checkpoint(const AgentState& agent, const SacConfig& cfg);
AgentState load_checkpoint(const std::string& text, SacConfig* cfg_out = nullptr);

std::string learning_curve_csv(std::span<const CurvePoint> curve);

} // namespace cfisac
