#include "cfisac/policy.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cfisac/errors.hpp"

namespace cfisac {

namespace {
constexpr double kHalfLog2Pi = 0.9189385332046727; // 0.5 * log(2*pi)
}

PolicyOutput split_policy_head(std::span<const double> raw) {
    if (raw.size() % 2 != 0)
        throw ValidationError("policy head: raw output length must be even");
    const std::size_t dim = raw.size() / 2;
    PolicyOutput out;
    out.mean.assign(raw.begin(), raw.begin() + dim);
    out.log_std.resize(dim);
    for (std::size_t d = 0; d < dim; ++d)
        out.log_std[d] = std::clamp(raw[dim + d], kLogStdMin, kLogStdMax);
    return out;
}

PolicySample policy_sample(const PolicyOutput& out, std::span<const double> noise) {
    const std::size_t dim = out.mean.size();
    if (noise.size() != dim)
        throw ValidationError("policy_sample: noise length " + std::to_string(noise.size()) +
                              " != " + std::to_string(dim));
    PolicySample sample;
    sample.action.resize(dim);
    sample.pre_squash.resize(dim);
    double log_prob = 0.0;
    for (std::size_t d = 0; d < dim; ++d) {
        const double std_dev = std::exp(out.log_std[d]);
        const double u = out.mean[d] + std_dev * noise[d];
        const double t = std::tanh(u);
        sample.pre_squash[d] = u;
        sample.action[d] = t;
        log_prob += -out.log_std[d] - kHalfLog2Pi - 0.5 * noise[d] * noise[d] -
                    std::log(1.0 - t * t + kTanhEpsilon);
    }
    sample.log_prob = log_prob;
    return sample;
}

double policy_log_prob(const PolicyOutput& out, std::span<const double> pre_squash) {
    double log_prob = 0.0;
    for (std::size_t d = 0; d < out.mean.size(); ++d) {
        const double std_dev = std::exp(out.log_std[d]);
        const double z = (pre_squash[d] - out.mean[d]) / std_dev;
        const double t = std::tanh(pre_squash[d]);
        log_prob += -out.log_std[d] - kHalfLog2Pi - 0.5 * z * z -
                    std::log(1.0 - t * t + kTanhEpsilon);
    }
    return log_prob;
}

PolicyGrads policy_sample_grads(const PolicyOutput& out, const PolicySample& sample,
                                std::span<const double> noise,
                                std::span<const double> action_grad, double log_prob_coeff) {
    const std::size_t dim = out.mean.size();
    PolicyGrads grads;
    grads.mean.resize(dim);
    grads.log_std.resize(dim);
    for (std::size_t d = 0; d < dim; ++d) {
        const double std_dev = std::exp(out.log_std[d]);
        const double t = sample.action[d];
        const double one_minus_t2 = 1.0 - t * t;
        // d log_prob / du from the tanh correction; the Gaussian part is
        // constant in (mean, log_std) once reparameterized with fixed noise,
        // except for the -log_std term handled below.
        const double dlp_du = 2.0 * t * one_minus_t2 / (one_minus_t2 + kTanhEpsilon);
        const double du_dlogstd = std_dev * noise[d];
        const double da_du = one_minus_t2;

        grads.mean[d] = log_prob_coeff * dlp_du + action_grad[d] * da_du;
        grads.log_std[d] = log_prob_coeff * (-1.0 + dlp_du * du_dlogstd) +
                           action_grad[d] * da_du * du_dlogstd;
        // No gradient through a saturated log_std clamp.
        if (out.log_std[d] <= kLogStdMin || out.log_std[d] >= kLogStdMax)
            grads.log_std[d] = 0.0;
    }
    return grads;
}

} // namespace cfisac
