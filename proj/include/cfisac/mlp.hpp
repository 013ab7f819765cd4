#pragma once

#include <span>
#include <vector>

#include "cfisac/rng.hpp"

namespace cfisac {

// Dense feed-forward network with ReLU hidden activations and a linear output
// layer. Weights are stored row-major (out x in).
struct MlpParams {
    struct Layer {
        int in = 0;
        int out = 0;
        std::vector<double> w; // out * in
        std::vector<double> b; // out
    };
    std::vector<Layer> layers;

    int input_dim() const { return layers.front().in; }
    int output_dim() const { return layers.back().out; }
    std::size_t parameter_count() const;
};

MlpParams make_mlp(int input_dim, std::span<const int> hidden, int output_dim, Rng& rng);

// Activations recorded by a forward pass, consumed by mlp_backward.
struct ForwardCache {
    std::vector<std::vector<double>> inputs; // input to each layer
};

std::vector<double> mlp_forward(const MlpParams& params, std::span<const double> input,
                                ForwardCache* cache = nullptr);

struct MlpGrads {
    std::vector<MlpParams::Layer> layers; // same shapes as the parameters

    void scale(double factor);
};

MlpGrads zero_grads_like(const MlpParams& params);

// Accumulates parameter gradients into `accum` and returns the gradient with
// respect to the input vector.
std::vector<double> mlp_backward(const MlpParams& params, const ForwardCache& cache,
                                 std::span<const double> upstream, MlpGrads& accum);

// Bias-corrected adaptive-moment update state for one MlpParams.
struct AdamState {
    double learning_rate = 1e-5;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
    long step = 0;
    std::vector<MlpParams::Layer> m;
    std::vector<MlpParams::Layer> v;
};

AdamState make_adam(const MlpParams& params, double learning_rate);
void adam_step(AdamState& state, MlpParams& params, const MlpGrads& grads);

// Same update rule for a single scalar parameter (the log-temperature).
struct ScalarAdamState {
    double learning_rate = 1e-5;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
    long step = 0;
    double m = 0.0;
    double v = 0.0;
};

void scalar_adam_step(ScalarAdamState& state, double& param, double grad);

} // namespace cfisac
