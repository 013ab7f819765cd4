#include "cfisac/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "cfisac/errors.hpp"

namespace cfisac {

namespace {

Deployment unflatten(std::span<const double> flat, int num_tx, int num_rx) {
    Deployment d;
    d.tx.reserve(num_tx);
    d.rx.reserve(num_rx);
    std::size_t i = 0;
    for (int m = 0; m < num_tx; ++m, i += 2) d.tx.push_back({flat[i], flat[i + 1]});
    for (int n = 0; n < num_rx; ++n, i += 2) d.rx.push_back({flat[i], flat[i + 1]});
    return d;
}

double objective_of(const Deployment& d, const Scenario& scenario, std::span<const Point2D> ues,
                    const ObjectiveSpec& spec, const std::vector<Point2D>& traj_pts) {
    return evaluate(d, ues, traj_pts, spec).objective_value;
}

} // namespace

std::vector<double> grid_axis_values(double lo, double hi, int points_per_axis) {
    std::vector<double> values;
    values.reserve(points_per_axis);
    if (points_per_axis == 1) {
        values.push_back(0.5 * (lo + hi));
        return values;
    }
    const double step = (hi - lo) / (points_per_axis - 1);
    for (int i = 0; i < points_per_axis; ++i) values.push_back(lo + i * step);
    return values;
}

OracleResult grid_oracle(const Scenario& scenario, std::span<const Point2D> ues,
                         const ObjectiveSpec& spec, int points_per_axis,
                         std::uint64_t budget_cap) {
    const int dims = 2 * (scenario.num_tx + scenario.num_rx);
    double count = std::pow(static_cast<double>(points_per_axis), dims);
    if (count > static_cast<double>(budget_cap))
        throw BudgetError("grid oracle: " + std::to_string(points_per_axis) + "^" +
                          std::to_string(dims) + " = " + std::to_string(count) +
                          " evaluations exceeds budget cap " + std::to_string(budget_cap));

    const std::vector<Point2D> traj_pts = sample_trajectory(scenario.trajectory);
    const std::vector<double> xs =
        grid_axis_values(scenario.region.x_min, scenario.region.x_max, points_per_axis);
    const std::vector<double> ys =
        grid_axis_values(scenario.region.y_min, scenario.region.y_max, points_per_axis);

    std::vector<int> digits(dims, 0);
    std::vector<double> flat(dims);
    OracleResult result;
    result.best_value = -std::numeric_limits<double>::infinity();
    while (true) {
        for (int i = 0; i < dims; ++i)
            flat[i] = (i % 2 == 0) ? xs[digits[i]] : ys[digits[i]];
        const Deployment d = unflatten(flat, scenario.num_tx, scenario.num_rx);
        const double value = objective_of(d, scenario, ues, spec, traj_pts);
        ++result.evaluations;
        // Strict > keeps the first (lexicographically smallest) maximizer.
        if (value > result.best_value) {
            result.best_value = value;
            result.best_deployment = d;
        }
        // Odometer: last digit fastest = lexicographic order over the tuple.
        int i = dims - 1;
        for (; i >= 0; --i) {
            if (++digits[i] < points_per_axis) break;
            digits[i] = 0;
        }
        if (i < 0) break;
    }
    return result;
}

OracleResult random_search(const Scenario& scenario, std::span<const Point2D> ues,
                           const ObjectiveSpec& spec, std::uint64_t budget, Rng& rng) {
    if (budget < 1)
        throw ValidationError("random_search: budget must be >= 1");
    const std::vector<Point2D> traj_pts = sample_trajectory(scenario.trajectory);
    const Region& r = scenario.region;
    OracleResult result;
    result.best_value = -std::numeric_limits<double>::infinity();
    for (std::uint64_t i = 0; i < budget; ++i) {
        Deployment d;
        for (int m = 0; m < scenario.num_tx; ++m)
            d.tx.push_back({rng.uniform(r.x_min, r.x_max), rng.uniform(r.y_min, r.y_max)});
        for (int n = 0; n < scenario.num_rx; ++n)
            d.rx.push_back({rng.uniform(r.x_min, r.x_max), rng.uniform(r.y_min, r.y_max)});
        const double value = objective_of(d, scenario, ues, spec, traj_pts);
        ++result.evaluations;
        if (value > result.best_value) {
            result.best_value = value;
            result.best_deployment = std::move(d);
        }
    }
    return result;
}

OracleResult cem_optimize(const Scenario& scenario, std::span<const Point2D> ues,
                          const ObjectiveSpec& spec, const CemConfig& cfg) {
    if (cfg.population * cfg.elite_fraction < 1.0)
        throw ValidationError("cem: population * elite_fraction must be >= 1");
    const std::vector<Point2D> traj_pts = sample_trajectory(scenario.trajectory);
    const Region& r = scenario.region;
    const int dims = 2 * (scenario.num_tx + scenario.num_rx);
    const int elite_count =
        std::max(1, static_cast<int>(cfg.population * cfg.elite_fraction));

    const double default_std = 0.25 * std::max(r.width(), r.height());
    std::vector<double> mean(dims);
    std::vector<double> stddev(dims, cfg.initial_std > 0.0 ? cfg.initial_std : default_std);
    for (int i = 0; i < dims; ++i)
        mean[i] = (i % 2 == 0) ? r.center().x : r.center().y;

    Rng rng(cfg.seed);
    OracleResult result;
    result.best_value = -std::numeric_limits<double>::infinity();
    std::vector<std::vector<double>> population(cfg.population, std::vector<double>(dims));
    std::vector<double> scores(cfg.population);
    std::vector<int> order(cfg.population);
    for (int iter = 0; iter < cfg.iterations; ++iter) {
        for (int p = 0; p < cfg.population; ++p) {
            std::vector<double>& x = population[p];
            for (int i = 0; i < dims; ++i) {
                const double lo = (i % 2 == 0) ? r.x_min : r.y_min;
                const double hi = (i % 2 == 0) ? r.x_max : r.y_max;
                x[i] = std::clamp(mean[i] + stddev[i] * rng.normal(), lo, hi);
            }
            const Deployment d = unflatten(x, scenario.num_tx, scenario.num_rx);
            scores[p] = objective_of(d, scenario, ues, spec, traj_pts);
            ++result.evaluations;
            if (scores[p] > result.best_value) {
                result.best_value = scores[p];
                result.best_deployment = d;
            }
        }
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return scores[a] > scores[b]; });
        for (int i = 0; i < dims; ++i) {
            double m = 0.0;
            for (int e = 0; e < elite_count; ++e) m += population[order[e]][i];
            m /= elite_count;
            double var = 0.0;
            for (int e = 0; e < elite_count; ++e) {
                const double diff = population[order[e]][i] - m;
                var += diff * diff;
            }
            var /= elite_count;
            mean[i] = m;
            stddev[i] = std::sqrt(var) + 1e-6;
        }
    }
    return result;
}

} // namespace cfisac
