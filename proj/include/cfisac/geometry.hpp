#pragma once

#include <cstdint>
#include <vector>

#include "cfisac/rng.hpp"

namespace cfisac {

struct Point2D {
    double x = 0.0;
    double y = 0.0;

    bool operator==(const Point2D&) const = default;
};

bool is_finite(const Point2D& p);
double distance(const Point2D& a, const Point2D& b);

// Axis-aligned deployment region, the constraint set for all AP positions.
struct Region {
    double x_min = 0.0;
    double x_max = 0.0;
    double y_min = 0.0;
    double y_max = 0.0;

    bool contains(const Point2D& p, double tol = 0.0) const;
    double width() const { return x_max - x_min; }
    double height() const { return y_max - y_min; }
    Point2D center() const { return {0.5 * (x_min + x_max), 0.5 * (y_min + y_max)}; }

    bool operator==(const Region&) const = default;
};

Point2D clamp_to_region(const Point2D& p, const Region& region);

// Target path: Q points uniformly spaced in angle, starting at angle 0.
struct CircularTrajectory {
    Point2D center;
    double radius = 0.0;
    int sample_count = 1; // Q

    bool operator==(const CircularTrajectory&) const = default;
};

std::vector<Point2D> sample_trajectory(const CircularTrajectory& traj);

struct UEPlacementSpec {
    std::vector<Point2D> centers;
    double variance = 2.0; // meters^2

    int count() const { return static_cast<int>(centers.size()); }
    bool operator==(const UEPlacementSpec&) const = default;
};

// One Gaussian draw per UE around its center, clamped into the region.
std::vector<Point2D> sample_ues(const UEPlacementSpec& spec, const Region& region, Rng& rng);

struct Scenario {
    Region region;
    CircularTrajectory trajectory;
    UEPlacementSpec ue_spec;
    int num_tx = 1; // M
    int num_rx = 1; // N
    std::uint64_t seed = 0;

    bool operator==(const Scenario&) const = default;
};

// Throws ValidationError with a field-level message on any broken invariant.
// Config ingestion requires M + N >= 3 (a single bistatic pair cannot
// localize); environments and sweep cells may opt out of that check.
void validate_scenario(const Scenario& s, bool require_nondegenerate_sensing = true);

// The decision variable: ordered transmitter and receiver AP coordinates.
struct Deployment {
    std::vector<Point2D> tx;
    std::vector<Point2D> rx;

    bool operator==(const Deployment&) const = default;
};

// Throws ValidationError naming the offending AP index.
void validate_deployment(const Deployment& d, const Region& region, int num_tx, int num_rx);

} // namespace cfisac
