#pragma once

#include <span>
#include <vector>

namespace cfisac {

inline constexpr double kLogStdMin = -20.0;
inline constexpr double kLogStdMax = 2.0;
inline constexpr double kTanhEpsilon = 1e-6;

// Squashed-Gaussian policy head. The actor network outputs 2 * action_dim
// values: means first, then log standard deviations (clamped on split).
struct PolicyOutput {
    std::vector<double> mean;
    std::vector<double> log_std;
};

PolicyOutput split_policy_head(std::span<const double> raw);

struct PolicySample {
    std::vector<double> action;     // tanh-squashed, strictly inside (-1, 1)
    std::vector<double> pre_squash; // u = mean + std * noise
    double log_prob = 0.0;
};

// Reparameterized sample: u = mean + exp(log_std) * noise, action = tanh(u),
// log_prob = sum_d [ log N(u_d; mean_d, std_d) - log(1 - tanh(u_d)^2 + eps) ].
PolicySample policy_sample(const PolicyOutput& out, std::span<const double> noise);

// Log-density of the squashed policy at a given pre-squash vector.
double policy_log_prob(const PolicyOutput& out, std::span<const double> pre_squash);

// Gradient of a scalar loss through the sample, with the noise held fixed.
// Given d(loss)/d(action) and the entropy coefficient in front of log_prob,
// fills d(loss)/d(mean) and d(loss)/d(log_std). Used by the actor update for
// the loss  coeff * log_prob + sum_d action_grad_d * action_d.
struct PolicyGrads {
    std::vector<double> mean;
    std::vector<double> log_std;
};

PolicyGrads policy_sample_grads(const PolicyOutput& out, const PolicySample& sample,
                                std::span<const double> noise,
                                std::span<const double> action_grad, double log_prob_coeff);

} // namespace cfisac
