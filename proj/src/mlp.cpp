#include "cfisac/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cfisac/errors.hpp"

namespace cfisac {

std::size_t MlpParams::parameter_count() const {
    std::size_t count = 0;
    for (const Layer& l : layers) count += l.w.size() + l.b.size();
    return count;
}

MlpParams make_mlp(int input_dim, std::span<const int> hidden, int output_dim, Rng& rng) {
    MlpParams params;
    std::vector<int> dims;
    dims.push_back(input_dim);
    dims.insert(dims.end(), hidden.begin(), hidden.end());
    dims.push_back(output_dim);
    for (std::size_t i = 0; i + 1 < dims.size(); ++i) {
        MlpParams::Layer layer;
        layer.in = dims[i];
        layer.out = dims[i + 1];
        // Uniform fan-in scaling (Glorot-style) keeps initial outputs O(1).
        const double limit = std::sqrt(6.0 / (layer.in + layer.out));
        layer.w.resize(static_cast<std::size_t>(layer.in) * layer.out);
        for (double& w : layer.w) w = rng.uniform(-limit, limit);
        layer.b.assign(layer.out, 0.0);
        params.layers.push_back(std::move(layer));
    }
    return params;
}

std::vector<double> mlp_forward(const MlpParams& params, std::span<const double> input,
                                ForwardCache* cache) {
    if (static_cast<int>(input.size()) != params.input_dim())
        throw ValidationError("mlp_forward: input length " + std::to_string(input.size()) +
                              " != " + std::to_string(params.input_dim()));
    if (cache) cache->inputs.clear();
    std::vector<double> x(input.begin(), input.end());
    for (std::size_t li = 0; li < params.layers.size(); ++li) {
        const auto& layer = params.layers[li];
        if (cache) cache->inputs.push_back(x);
        std::vector<double> y(layer.out);
        const bool last = li + 1 == params.layers.size();
        for (int o = 0; o < layer.out; ++o) {
            double acc = layer.b[o];
            const double* wrow = layer.w.data() + static_cast<std::size_t>(o) * layer.in;
            for (int i = 0; i < layer.in; ++i) acc += wrow[i] * x[i];
            y[o] = last ? acc : std::max(acc, 0.0);
        }
        x = std::move(y);
    }
    return x;
}

void MlpGrads::scale(double factor) {
    for (auto& l : layers) {
        for (double& w : l.w) w *= factor;
        for (double& b : l.b) b *= factor;
    }
}

MlpGrads zero_grads_like(const MlpParams& params) {
    MlpGrads grads;
    for (const auto& layer : params.layers) {
        MlpParams::Layer g;
        g.in = layer.in;
        g.out = layer.out;
        g.w.assign(layer.w.size(), 0.0);
        g.b.assign(layer.b.size(), 0.0);
        grads.layers.push_back(std::move(g));
    }
    return grads;
}

std::vector<double> mlp_backward(const MlpParams& params, const ForwardCache& cache,
                                 std::span<const double> upstream, MlpGrads& accum) {
    if (cache.inputs.size() != params.layers.size())
        throw ValidationError("mlp_backward: cache does not match network depth");
    std::vector<double> delta(upstream.begin(), upstream.end());
    for (std::size_t li = params.layers.size(); li-- > 0;) {
        const auto& layer = params.layers[li];
        const std::vector<double>& x = cache.inputs[li];
        const bool last = li + 1 == params.layers.size();

        // ReLU mask: recompute the pre-activation sign from the stored input.
        std::vector<double> local = delta;
        if (!last) {
            for (int o = 0; o < layer.out; ++o) {
                double acc = layer.b[o];
                const double* wrow = layer.w.data() + static_cast<std::size_t>(o) * layer.in;
                for (int i = 0; i < layer.in; ++i) acc += wrow[i] * x[i];
                if (acc <= 0.0) local[o] = 0.0;
            }
        }

        auto& g = accum.layers[li];
        std::vector<double> prev(layer.in, 0.0);
        for (int o = 0; o < layer.out; ++o) {
            const double d = local[o];
            g.b[o] += d;
            double* grow = g.w.data() + static_cast<std::size_t>(o) * layer.in;
            const double* wrow = layer.w.data() + static_cast<std::size_t>(o) * layer.in;
            for (int i = 0; i < layer.in; ++i) {
                grow[i] += d * x[i];
                prev[i] += d * wrow[i];
            }
        }
        delta = std::move(prev);
    }
    return delta;
}

AdamState make_adam(const MlpParams& params, double learning_rate) {
    AdamState state;
    state.learning_rate = learning_rate;
    state.m = zero_grads_like(params).layers;
    state.v = zero_grads_like(params).layers;
    return state;
}

namespace {

inline void adam_update(double& param, double& m, double& v, double grad, const double lr,
                        double beta1, double beta2, double eps, double bc1, double bc2) {
    m = beta1 * m + (1.0 - beta1) * grad;
    v = beta2 * v + (1.0 - beta2) * grad * grad;
    const double m_hat = m / bc1;
    const double v_hat = v / bc2;
    param -= lr * m_hat / (std::sqrt(v_hat) + eps);
}

} // namespace

void adam_step(AdamState& state, MlpParams& params, const MlpGrads& grads) {
    ++state.step;
    const double bc1 = 1.0 - std::pow(state.beta1, state.step);
    const double bc2 = 1.0 - std::pow(state.beta2, state.step);
    for (std::size_t li = 0; li < params.layers.size(); ++li) {
        auto& layer = params.layers[li];
        const auto& g = grads.layers[li];
        auto& m = state.m[li];
        auto& v = state.v[li];
        for (std::size_t i = 0; i < layer.w.size(); ++i)
            adam_update(layer.w[i], m.w[i], v.w[i], g.w[i], state.learning_rate, state.beta1,
                        state.beta2, state.epsilon, bc1, bc2);
        for (std::size_t i = 0; i < layer.b.size(); ++i)
            adam_update(layer.b[i], m.b[i], v.b[i], g.b[i], state.learning_rate, state.beta1,
                        state.beta2, state.epsilon, bc1, bc2);
    }
}

void scalar_adam_step(ScalarAdamState& state, double& param, double grad) {
    ++state.step;
    const double bc1 = 1.0 - std::pow(state.beta1, state.step);
    const double bc2 = 1.0 - std::pow(state.beta2, state.step);
    adam_update(param, state.m, state.v, grad, state.learning_rate, state.beta1, state.beta2,
                state.epsilon, bc1, bc2);
}

} // namespace cfisac
