#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cfisac/config.hpp"
#include "cfisac/geometry.hpp"
#include "cfisac/metrics.hpp"
#include "cfisac/rng.hpp"

namespace cfisac {

struct OracleResult {
    Deployment best_deployment;
    double best_value = 0.0; // evaluate().objective_value of best_deployment
    std::uint64_t evaluations = 0;
};

// The grid points used by grid_oracle (and grid-snapped actions): G uniformly
// spaced values spanning [lo, hi].
std::vector<double> grid_axis_values(double lo, double hi, int points_per_axis);

// Exhaustive search over the joint grid of all AP coordinates against a fixed
// UE draw. Ties broken by lexicographically smallest coordinate tuple. Throws
// BudgetError when G^(2(M+N)) exceeds budget_cap.
OracleResult grid_oracle(const Scenario& scenario, std::span<const Point2D> ues,
                         const ObjectiveSpec& spec, int points_per_axis,
                         std::uint64_t budget_cap);

// Best of `budget` uniform deployments in the region.
OracleResult random_search(const Scenario& scenario, std::span<const Point2D> ues,
                           const ObjectiveSpec& spec, std::uint64_t budget, Rng& rng);

struct CemConfig {
    int population = 64;
    double elite_fraction = 0.25;
    int iterations = 30;
    double initial_std = 0.0; // 0 = quarter of the larger region extent
    std::uint64_t seed = 0;
};

// Cross-entropy method: iterative elite refitting of a diagonal Gaussian over
// the flattened deployment vector, clamped to the region. Returns best-ever.
OracleResult cem_optimize(const Scenario& scenario, std::span<const Point2D> ues,
                          const ObjectiveSpec& spec, const CemConfig& cfg);

} // namespace cfisac
