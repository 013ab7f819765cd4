#include "cfisac/sac.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <json.hpp>

#include "cfisac/errors.hpp"

namespace cfisac {

using nlohmann::json;

ReplayBuffer::ReplayBuffer(std::uint64_t capacity) : capacity_(capacity) {
    if (capacity_ < 1)
        throw ValidationError("replay buffer: capacity must be >= 1");
}

void ReplayBuffer::push(Transition t) {
    if (!std::isfinite(t.reward))
        throw ValidationError("replay buffer: reward must be finite");
    if (data_.size() < capacity_) {
        data_.push_back(std::move(t));
    } else {
        data_[head_] = std::move(t);
        head_ = (head_ + 1) % data_.size();
    }
}

const Transition& ReplayBuffer::at(std::size_t logical_index) const {
    return data_[(head_ + logical_index) % data_.size()];
}

std::vector<Transition> ReplayBuffer::sample(int batch_size, Rng& rng) const {
    if (size() < static_cast<std::size_t>(batch_size))
        throw ValidationError("replay buffer: size " + std::to_string(size()) +
                              " < batch size " + std::to_string(batch_size));
    std::vector<Transition> batch;
    batch.reserve(batch_size);
    for (int i = 0; i < batch_size; ++i) batch.push_back(data_[rng.index(data_.size())]);
    return batch;
}

double AgentState::omega() const { return std::exp(log_omega); }

AgentState make_agent(int state_dim, int action_dim, const SacConfig& cfg, Rng& rng) {
    AgentState agent;
    agent.state_dim = state_dim;
    agent.action_dim = action_dim;
    agent.actor = make_mlp(state_dim, cfg.hidden, 2 * action_dim, rng);
    agent.critic1 = make_mlp(state_dim + action_dim, cfg.hidden, 1, rng);
    agent.critic2 = make_mlp(state_dim + action_dim, cfg.hidden, 1, rng);
    agent.target1 = agent.critic1;
    agent.target2 = agent.critic2;
    agent.log_omega = 0.0;
    agent.actor_opt = make_adam(agent.actor, cfg.settings.learning_rate);
    agent.critic1_opt = make_adam(agent.critic1, cfg.settings.learning_rate);
    agent.critic2_opt = make_adam(agent.critic2, cfg.settings.learning_rate);
    agent.omega_opt.learning_rate = cfg.settings.learning_rate;
    return agent;
}

PolicyOutput actor_forward(const AgentState& agent, std::span<const double> state,
                           ForwardCache* cache) {
    return split_policy_head(mlp_forward(agent.actor, state, cache));
}

namespace {

std::vector<double> concat(std::span<const double> a, std::span<const double> b) {
    std::vector<double> out;
    out.reserve(a.size() + b.size());
    out.insert(out.end(), a.begin(), a.end());
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

std::vector<double> draw_noise(int dim, Rng& rng) {
    std::vector<double> noise(dim);
    for (double& n : noise) n = rng.normal();
    return noise;
}

} // namespace

double critic_forward(const MlpParams& critic, std::span<const double> state,
                      std::span<const double> action, ForwardCache* cache) {
    return mlp_forward(critic, concat(state, action), cache)[0];
}

std::vector<double> greedy_action(const AgentState& agent, std::span<const double> state) {
    const PolicyOutput out = actor_forward(agent, state);
    std::vector<double> action(out.mean.size());
    for (std::size_t d = 0; d < action.size(); ++d) action[d] = std::tanh(out.mean[d]);
    return action;
}

double critic_update(AgentState& agent, std::span<const Transition> batch, double discount,
                     Rng& rng) {
    if (batch.empty())
        throw ValidationError("critic_update: empty batch");
    const double inv_batch = 1.0 / static_cast<double>(batch.size());
    const double omega = agent.omega();

    MlpGrads grads1 = zero_grads_like(agent.critic1);
    MlpGrads grads2 = zero_grads_like(agent.critic2);
    double loss = 0.0;
    ForwardCache cache;
    for (const Transition& t : batch) {
        double y = t.reward;
        if (!t.done) {
            const PolicyOutput next_out = actor_forward(agent, t.next_state);
            const std::vector<double> noise = draw_noise(agent.action_dim, rng);
            const PolicySample next_sample = policy_sample(next_out, noise);
            const double q1 = critic_forward(agent.target1, t.next_state, next_sample.action);
            const double q2 = critic_forward(agent.target2, t.next_state, next_sample.action);
            y += discount * (std::min(q1, q2) - omega * next_sample.log_prob);
        }
        for (auto* pair : {&grads1, &grads2}) {
            MlpParams& critic = (pair == &grads1) ? agent.critic1 : agent.critic2;
            const double q = critic_forward(critic, t.state, t.action, &cache);
            const double err = q - y;
            loss += 0.5 * err * err * inv_batch * 0.5; // mean over batch, avg of two critics
            const double upstream[1] = {err * inv_batch};
            mlp_backward(critic, cache, upstream, *pair);
        }
    }
    adam_step(agent.critic1_opt, agent.critic1, grads1);
    adam_step(agent.critic2_opt, agent.critic2, grads2);
    return loss;
}

double actor_update(AgentState& agent, std::span<const Transition> batch, Rng& rng) {
    if (batch.empty())
        throw ValidationError("actor_update: empty batch");
    const double inv_batch = 1.0 / static_cast<double>(batch.size());
    const double omega = agent.omega();

    MlpGrads actor_grads = zero_grads_like(agent.actor);
    MlpGrads scratch = zero_grads_like(agent.critic1); // critic grads are discarded
    double loss = 0.0;
    ForwardCache actor_cache, critic_cache;
    for (const Transition& t : batch) {
        const PolicyOutput out =
            split_policy_head(mlp_forward(agent.actor, t.state, &actor_cache));
        const std::vector<double> noise = draw_noise(agent.action_dim, rng);
        const PolicySample sample = policy_sample(out, noise);

        const double q1 = critic_forward(agent.critic1, t.state, sample.action);
        const double q2 = critic_forward(agent.critic2, t.state, sample.action);
        const bool first_is_min = q1 <= q2;
        const MlpParams& critic = first_is_min ? agent.critic1 : agent.critic2;
        const double q_min = first_is_min ? q1 : q2;
        loss += (omega * sample.log_prob - q_min) * inv_batch;

        // dQ/da via the input gradient of the minimizing critic.
        critic_forward(critic, t.state, sample.action, &critic_cache);
        const double upstream[1] = {1.0};
        const std::vector<double> input_grad =
            mlp_backward(critic, critic_cache, upstream, scratch);
        std::vector<double> action_grad(agent.action_dim);
        for (int d = 0; d < agent.action_dim; ++d)
            action_grad[d] = -input_grad[agent.state_dim + d] * inv_batch;

        const PolicyGrads pg =
            policy_sample_grads(out, sample, noise, action_grad, omega * inv_batch);
        const std::vector<double> head_grad = concat(pg.mean, pg.log_std);
        mlp_backward(agent.actor, actor_cache, head_grad, actor_grads);
    }
    adam_step(agent.actor_opt, agent.actor, actor_grads);
    return loss;
}

double temperature_update(AgentState& agent, std::span<const Transition> batch,
                          double target_entropy, Rng& rng) {
    if (batch.empty())
        throw ValidationError("temperature_update: empty batch");
    const double inv_batch = 1.0 / static_cast<double>(batch.size());
    const double omega = agent.omega();

    double mean_log_prob = 0.0;
    for (const Transition& t : batch) {
        const PolicyOutput out = actor_forward(agent, t.state);
        const std::vector<double> noise = draw_noise(agent.action_dim, rng);
        mean_log_prob += policy_sample(out, noise).log_prob * inv_batch;
    }
    // L(omega) = -omega * (mean_log_prob + target_entropy); optimize log omega.
    const double loss = -omega * (mean_log_prob + target_entropy);
    const double grad_log_omega = -omega * (mean_log_prob + target_entropy);
    scalar_adam_step(agent.omega_opt, agent.log_omega, grad_log_omega);
    return loss;
}

void soft_update(AgentState& agent, double tau) {
    auto blend = [tau](MlpParams& target, const MlpParams& online) {
        for (std::size_t li = 0; li < target.layers.size(); ++li) {
            auto& tl = target.layers[li];
            const auto& ol = online.layers[li];
            for (std::size_t i = 0; i < tl.w.size(); ++i)
                tl.w[i] = tau * ol.w[i] + (1.0 - tau) * tl.w[i];
            for (std::size_t i = 0; i < tl.b.size(); ++i)
                tl.b[i] = tau * ol.b[i] + (1.0 - tau) * tl.b[i];
        }
    };
    blend(agent.target1, agent.critic1);
    blend(agent.target2, agent.critic2);
}

TrainResult train(DeploymentEnv& env, const SacConfig& cfg) {
    Rng rng(cfg.seed);
    AgentState agent = make_agent(env.state_dim(), env.action_dim(), cfg, rng);
    ReplayBuffer buffer(cfg.settings.buffer_capacity);
    const double target_entropy = cfg.target_entropy(env.action_dim());

    TrainResult result;
    std::vector<double> state = env.reset(rng);
    double last_actor_loss = 0.0;
    double last_critic_loss = 0.0;
    for (long step = 1; step <= cfg.settings.total_steps; ++step) {
        std::vector<double> action;
        if (step <= cfg.settings.warmup_steps) {
            action.resize(env.action_dim());
            for (double& a : action) a = rng.uniform(-1.0, 1.0);
        } else {
            const PolicyOutput out = actor_forward(agent, state);
            action = policy_sample(out, draw_noise(env.action_dim(), rng)).action;
        }

        const StepResult sr = env.step(action, rng);
        buffer.push({state, action, sr.reward, sr.next_state, sr.done});
        state = sr.next_state;

        if (step > cfg.settings.warmup_steps &&
            buffer.size() >= static_cast<std::size_t>(cfg.settings.batch_size) &&
            step % cfg.settings.update_every == 0) {
            const std::vector<Transition> batch = buffer.sample(cfg.settings.batch_size, rng);
            last_critic_loss = critic_update(agent, batch, cfg.settings.discount, rng);
            last_actor_loss = actor_update(agent, batch, rng);
            temperature_update(agent, batch, target_entropy, rng);
            soft_update(agent, cfg.settings.tau);
        }

        if (cfg.settings.eval_every > 0 && step % cfg.settings.eval_every == 0) {
            const double eval = env.peek_reward(greedy_action(agent, state));
            result.curve.push_back({step, eval, last_actor_loss, last_critic_loss, agent.omega()});
        }
    }
    result.agent = std::move(agent);
    return result;
}

namespace {

json mlp_to_json(const MlpParams& params) {
    json layers = json::array();
    for (const auto& l : params.layers)
        layers.push_back({{"in", l.in}, {"out", l.out}, {"w", l.w}, {"b", l.b}});
    return {{"layers", layers}};
}

MlpParams mlp_from_json(const json& j) {
    MlpParams params;
    for (const json& lj : j.at("layers")) {
        MlpParams::Layer l;
        l.in = lj.at("in").get<int>();
        l.out = lj.at("out").get<int>();
        l.w = lj.at("w").get<std::vector<double>>();
        l.b = lj.at("b").get<std::vector<double>>();
        if (l.w.size() != static_cast<std::size_t>(l.in) * l.out ||
            l.b.size() != static_cast<std::size_t>(l.out))
            throw ParseError("checkpoint: layer shape mismatch");
        params.layers.push_back(std::move(l));
    }
    if (params.layers.empty())
        throw ParseError("checkpoint: empty network");
    return params;
}

} // namespace

std::string save_checkpoint(const AgentState& agent, const SacConfig& cfg) {
    json root;
    root["format"] = "cfisac-checkpoint-v1";
    json settings = {{"learning_rate", cfg.settings.learning_rate},
                     {"buffer_capacity", cfg.settings.buffer_capacity},
                     {"batch_size", cfg.settings.batch_size},
                     {"discount", cfg.settings.discount},
                     {"tau", cfg.settings.tau},
                     {"total_steps", cfg.settings.total_steps},
                     {"warmup_steps", cfg.settings.warmup_steps},
                     {"update_every", cfg.settings.update_every},
                     {"eval_every", cfg.settings.eval_every}};
    if (cfg.settings.target_entropy) settings["target_entropy"] = *cfg.settings.target_entropy;
    root["config"] = {{"hidden", cfg.hidden}, {"seed", cfg.seed}, {"settings", settings}};
    root["state_dim"] = agent.state_dim;
    root["action_dim"] = agent.action_dim;
    root["actor"] = mlp_to_json(agent.actor);
    root["critic1"] = mlp_to_json(agent.critic1);
    root["critic2"] = mlp_to_json(agent.critic2);
    root["target1"] = mlp_to_json(agent.target1);
    root["target2"] = mlp_to_json(agent.target2);
    root["log_omega"] = agent.log_omega;
    return root.dump(2) + "\n";
}

AgentState load_checkpoint(const std::string& text, SacConfig* cfg_out) {
    json root = json::parse(text, nullptr, false);
    if (root.is_discarded() || root.value("format", "") != "cfisac-checkpoint-v1")
        throw ParseError("checkpoint: unrecognized format");
    AgentState agent;
    agent.state_dim = root.at("state_dim").get<int>();
    agent.action_dim = root.at("action_dim").get<int>();
    agent.actor = mlp_from_json(root.at("actor"));
    agent.critic1 = mlp_from_json(root.at("critic1"));
    agent.critic2 = mlp_from_json(root.at("critic2"));
    agent.target1 = mlp_from_json(root.at("target1"));
    agent.target2 = mlp_from_json(root.at("target2"));
    agent.log_omega = root.at("log_omega").get<double>();
    if (cfg_out) {
        const json& c = root.at("config");
        cfg_out->hidden = c.at("hidden").get<std::vector<int>>();
        cfg_out->seed = c.at("seed").get<std::uint64_t>();
        const json& s = c.at("settings");
        cfg_out->settings.learning_rate = s.at("learning_rate").get<double>();
        cfg_out->settings.buffer_capacity = s.at("buffer_capacity").get<std::uint64_t>();
        cfg_out->settings.batch_size = s.at("batch_size").get<int>();
        cfg_out->settings.discount = s.at("discount").get<double>();
        cfg_out->settings.tau = s.at("tau").get<double>();
        cfg_out->settings.total_steps = s.at("total_steps").get<long>();
        cfg_out->settings.warmup_steps = s.at("warmup_steps").get<long>();
        cfg_out->settings.update_every = s.at("update_every").get<int>();
        cfg_out->settings.eval_every = s.at("eval_every").get<long>();
        if (s.contains("target_entropy"))
            cfg_out->settings.target_entropy = s.at("target_entropy").get<double>();
    }
    agent.actor_opt = make_adam(agent.actor, 0.0);
    agent.critic1_opt = make_adam(agent.critic1, 0.0);
    agent.critic2_opt = make_adam(agent.critic2, 0.0);
    return agent;
}

std::string learning_curve_csv(std::span<const CurvePoint> curve) {
    std::string csv = "step,eval_reward,actor_loss,critic_loss,omega\n";
    char buf[160];
    for (const CurvePoint& p : curve) {
        std::snprintf(buf, sizeof(buf), "%ld,%.12g,%.12g,%.12g,%.12g\n", p.step, p.eval_reward,
                      p.actor_loss, p.critic_loss, p.omega);
        csv += buf;
    }
    return csv;
}

} // namespace cfisac
