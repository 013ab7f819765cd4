#include <doctest.h>

#include <cmath>
#include <vector>

#include "cfisac/policy.hpp"
#include "cfisac/rng.hpp"

using namespace cfisac;

TEST_CASE("split_policy_head clamps log_std") {
    const std::vector<double> raw{0.5, -0.5, -100.0, 100.0};
    const PolicyOutput out = split_policy_head(raw);
    REQUIRE(out.mean.size() == 2);
    CHECK(out.mean[0] == 0.5);
    CHECK(out.mean[1] == -0.5);
    CHECK(out.log_std[0] == kLogStdMin);
    CHECK(out.log_std[1] == kLogStdMax);
}

TEST_CASE("vanishing stochasticity collapses to tanh(mean)") {
    PolicyOutput out;
    out.mean = {0.7, -1.4};
    out.log_std = {kLogStdMin, kLogStdMin};
    const PolicySample s = policy_sample(out, std::vector<double>{3.0, -2.0});
    CHECK(s.action[0] == doctest::Approx(std::tanh(0.7)).epsilon(1e-8));
    CHECK(s.action[1] == doctest::Approx(std::tanh(-1.4)).epsilon(1e-8));
}

TEST_CASE("closed-form log_prob at the origin") {
    const int dim = 3;
    PolicyOutput out;
    out.mean.assign(dim, 0.0);
    out.log_std.assign(dim, 0.0);
    const PolicySample s = policy_sample(out, std::vector<double>(dim, 0.0));
    for (double a : s.action) CHECK(a == 0.0);
    const double expected =
        dim * (std::log(1.0 / std::sqrt(2.0 * M_PI)) - std::log(1.0 + kTanhEpsilon));
    CHECK(s.log_prob == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("log_prob matches a quadrature oracle for the 1-D squashed density") {
    // CDF of the squashed action: P(a <= x) = Phi((atanh(x) - mean) / std).
    // Numerically differentiating it is an independent route to the density.
    const double mean = 0.3;
    const double log_std = -0.5;
    const double std_dev = std::exp(log_std);
    PolicyOutput out;
    out.mean = {mean};
    out.log_std = {log_std};

    auto cdf = [&](double x) {
        return 0.5 * (1.0 + std::erf((std::atanh(x) - mean) / (std_dev * std::sqrt(2.0))));
    };

    for (double noise : {-1.5, -0.3, 0.0, 0.4, 1.2}) {
        const PolicySample s = policy_sample(out, std::vector<double>{noise});
        const double a = s.action[0];
        const double h = 1e-6;
        const double density = (cdf(a + h) - cdf(a - h)) / (2.0 * h);
        CHECK(s.log_prob == doctest::Approx(std::log(density)).epsilon(1e-3));
        CHECK(s.log_prob == doctest::Approx(policy_log_prob(out, s.pre_squash)).epsilon(1e-12));
    }
}

TEST_CASE("actions stay within [-1, 1] and log_prob stays finite") {
    // tanh is strictly inside (-1, 1) in exact arithmetic but saturates to
    // +/-1 in doubles for large pre-squash values; the epsilon in the
    // squash correction keeps log_prob finite there.
    Rng rng(23);
    for (int trial = 0; trial < 500; ++trial) {
        const int dim = 1 + static_cast<int>(rng.index(8));
        PolicyOutput out;
        std::vector<double> noise(dim);
        for (int d = 0; d < dim; ++d) {
            out.mean.push_back(rng.uniform(-30, 30));
            out.log_std.push_back(rng.uniform(kLogStdMin, kLogStdMax));
            noise[d] = rng.normal() * 3.0;
        }
        const PolicySample s = policy_sample(out, noise);
        for (double a : s.action) {
            CHECK(a >= -1.0);
            CHECK(a <= 1.0);
        }
        CHECK(std::isfinite(s.log_prob));
    }
}

TEST_CASE("policy sample gradients match finite differences") {
    Rng rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        const int dim = 2;
        PolicyOutput out;
        std::vector<double> noise(dim), action_grad(dim);
        for (int d = 0; d < dim; ++d) {
            out.mean.push_back(rng.uniform(-1, 1));
            out.log_std.push_back(rng.uniform(-2, 0.5));
            noise[d] = rng.normal();
            action_grad[d] = rng.uniform(-1, 1);
        }
        const double coeff = rng.uniform(0.0, 2.0);

        auto loss_of = [&](const PolicyOutput& o) {
            const PolicySample s = policy_sample(o, noise);
            double loss = coeff * s.log_prob;
            for (int d = 0; d < dim; ++d) loss += action_grad[d] * s.action[d];
            return loss;
        };

        const PolicySample s = policy_sample(out, noise);
        const PolicyGrads grads = policy_sample_grads(out, s, noise, action_grad, coeff);

        const double h = 1e-6;
        for (int d = 0; d < dim; ++d) {
            PolicyOutput up = out, down = out;
            up.mean[d] += h;
            down.mean[d] -= h;
            const double fd_mean = (loss_of(up) - loss_of(down)) / (2 * h);
            CHECK(grads.mean[d] == doctest::Approx(fd_mean).epsilon(1e-4));

            up = out;
            down = out;
            up.log_std[d] += h;
            down.log_std[d] -= h;
            const double fd_std = (loss_of(up) - loss_of(down)) / (2 * h);
            CHECK(grads.log_std[d] == doctest::Approx(fd_std).epsilon(1e-4));
        }
    }
}
