#include <doctest.h>

#include <cmath>
#include <functional>
#include <vector>

#include "cfisac/mlp.hpp"
#include "cfisac/rng.hpp"

using namespace cfisac;

namespace {

// Visit every parameter of a network as a mutable reference.
void for_each_param(MlpParams& params, const std::function<void(double&)>& fn) {
    for (auto& layer : params.layers) {
        for (double& w : layer.w) fn(w);
        for (double& b : layer.b) fn(b);
    }
}

std::vector<double> flatten(const MlpGrads& grads) {
    std::vector<double> flat;
    for (const auto& layer : grads.layers) {
        flat.insert(flat.end(), layer.w.begin(), layer.w.end());
        flat.insert(flat.end(), layer.b.begin(), layer.b.end());
    }
    return flat;
}

// Central finite differences of scalar_of(params) with respect to every
// parameter. The independent oracle for every gradient assertion here.
std::vector<double> finite_difference_grads(MlpParams params,
                                            const std::function<double(const MlpParams&)>& scalar_of,
                                            double h = 1e-5) {
    std::vector<double*> slots;
    for_each_param(params, [&](double& p) { slots.push_back(&p); });
    std::vector<double> grads(slots.size());
    for (std::size_t i = 0; i < slots.size(); ++i) {
        const double saved = *slots[i];
        *slots[i] = saved + h;
        const double up = scalar_of(params);
        *slots[i] = saved - h;
        const double down = scalar_of(params);
        *slots[i] = saved;
        grads[i] = (up - down) / (2.0 * h);
    }
    return grads;
}

void check_grads_close(std::span<const double> analytic, std::span<const double> numeric,
                       double max_rel_err) {
    REQUIRE(analytic.size() == numeric.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < analytic.size(); ++i) {
        const double scale = std::max({std::abs(analytic[i]), std::abs(numeric[i]), 1e-6});
        worst = std::max(worst, std::abs(analytic[i] - numeric[i]) / scale);
    }
    CHECK(worst < max_rel_err);
}

} // namespace

TEST_CASE("zero weights and biases give zero output") {
    Rng rng(1);
    MlpParams params = make_mlp(3, std::vector<int>{8, 8}, 2, rng);
    for_each_param(params, [](double& p) { p = 0.0; });
    const auto out = mlp_forward(params, std::vector<double>{1.0, -2.0, 3.0});
    for (double v : out) CHECK(v == 0.0);
}

TEST_CASE("single-path identity network traces the input") {
    // 1 -> 1 -> 1 with unit weights: relu(1 * x) then 1 * h.
    MlpParams params;
    params.layers.push_back({1, 1, {1.0}, {0.0}});
    params.layers.push_back({1, 1, {1.0}, {0.0}});
    CHECK(mlp_forward(params, std::vector<double>{1.0})[0] == 1.0);
    CHECK(mlp_forward(params, std::vector<double>{2.5})[0] == 2.5);
    // Negative input dies at the hidden rectifier.
    CHECK(mlp_forward(params, std::vector<double>{-3.0})[0] == 0.0);
}

TEST_CASE("forward pass is deterministic") {
    Rng rng(2);
    const MlpParams params = make_mlp(4, std::vector<int>{8}, 3, rng);
    const std::vector<double> input{0.3, -1.2, 0.7, 2.0};
    CHECK(mlp_forward(params, input) == mlp_forward(params, input));
}

TEST_CASE("analytic gradients match finite differences on 20 random nets") {
    Rng rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        MlpParams params = make_mlp(4, std::vector<int>{8, 8}, 2, rng);
        std::vector<double> input(4), mix(2);
        for (double& v : input) v = rng.uniform(-2, 2);
        for (double& v : mix) v = rng.uniform(-1, 1);

        auto scalar_of = [&](const MlpParams& p) {
            const auto out = mlp_forward(p, input);
            return mix[0] * out[0] + mix[1] * out[1];
        };

        ForwardCache cache;
        mlp_forward(params, input, &cache);
        MlpGrads grads = zero_grads_like(params);
        mlp_backward(params, cache, mix, grads);

        check_grads_close(flatten(grads), finite_difference_grads(params, scalar_of), 1e-4);
    }
}

TEST_CASE("input gradient matches finite differences") {
    Rng rng(19);
    MlpParams params = make_mlp(3, std::vector<int>{6}, 1, rng);
    std::vector<double> input{0.4, -0.9, 1.3};
    ForwardCache cache;
    mlp_forward(params, input, &cache);
    MlpGrads scratch = zero_grads_like(params);
    const std::vector<double> upstream{1.0};
    const std::vector<double> input_grad = mlp_backward(params, cache, upstream, scratch);

    const double h = 1e-6;
    for (std::size_t i = 0; i < input.size(); ++i) {
        std::vector<double> up = input, down = input;
        up[i] += h;
        down[i] -= h;
        const double fd = (mlp_forward(params, up)[0] - mlp_forward(params, down)[0]) / (2 * h);
        CHECK(input_grad[i] == doctest::Approx(fd).epsilon(1e-4));
    }
}

TEST_CASE("zero upstream gradient gives zero parameter gradients") {
    Rng rng(3);
    MlpParams params = make_mlp(3, std::vector<int>{5}, 2, rng);
    ForwardCache cache;
    mlp_forward(params, std::vector<double>{1, 2, 3}, &cache);
    MlpGrads grads = zero_grads_like(params);
    mlp_backward(params, cache, std::vector<double>{0.0, 0.0}, grads);
    for (double g : flatten(grads)) CHECK(g == 0.0);
}

TEST_CASE("adam step with zero gradient leaves fresh parameters unchanged") {
    Rng rng(4);
    MlpParams params = make_mlp(2, std::vector<int>{4}, 1, rng);
    const MlpParams before = params;
    AdamState state = make_adam(params, 1e-3);
    adam_step(state, params, zero_grads_like(params));
    for (std::size_t li = 0; li < params.layers.size(); ++li) {
        CHECK(params.layers[li].w == before.layers[li].w);
        CHECK(params.layers[li].b == before.layers[li].b);
    }
}

TEST_CASE("adam first step moves by about the learning rate regardless of gradient scale") {
    for (double g : {1e-4, 1.0, 250.0}) {
        Rng rng(5);
        MlpParams params = make_mlp(1, std::vector<int>{}, 1, rng);
        const double before = params.layers[0].w[0];
        AdamState state = make_adam(params, 1e-3);
        MlpGrads grads = zero_grads_like(params);
        grads.layers[0].w[0] = g;
        adam_step(state, params, grads);
        // Bias-corrected moments cancel the magnitude of a constant gradient.
        CHECK(before - params.layers[0].w[0] == doctest::Approx(1e-3).epsilon(1e-3));
    }
}

TEST_CASE("adam updates are deterministic") {
    auto run = [] {
        Rng rng(6);
        MlpParams params = make_mlp(2, std::vector<int>{4}, 2, rng);
        AdamState state = make_adam(params, 1e-3);
        MlpGrads grads = zero_grads_like(params);
        grads.layers[0].w[0] = 0.5;
        grads.layers[1].b[0] = -0.25;
        for (int i = 0; i < 10; ++i) adam_step(state, params, grads);
        return params;
    };
    const MlpParams a = run(), b = run();
    for (std::size_t li = 0; li < a.layers.size(); ++li) {
        CHECK(a.layers[li].w == b.layers[li].w);
        CHECK(a.layers[li].b == b.layers[li].b);
    }
}
