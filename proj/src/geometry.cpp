#include "cfisac/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cfisac/errors.hpp"

namespace cfisac {

bool is_finite(const Point2D& p) {
    return std::isfinite(p.x) && std::isfinite(p.y);
}

double distance(const Point2D& a, const Point2D& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

bool Region::contains(const Point2D& p, double tol) const {
    return p.x >= x_min - tol && p.x <= x_max + tol &&
           p.y >= y_min - tol && p.y <= y_max + tol;
}

Point2D clamp_to_region(const Point2D& p, const Region& region) {
    return {std::clamp(p.x, region.x_min, region.x_max),
            std::clamp(p.y, region.y_min, region.y_max)};
}

std::vector<Point2D> sample_trajectory(const CircularTrajectory& traj) {
    std::vector<Point2D> points;
    points.reserve(static_cast<std::size_t>(traj.sample_count));
    for (int q = 0; q < traj.sample_count; ++q) {
        const double angle = 2.0 * M_PI * q / traj.sample_count;
        points.push_back({traj.center.x + traj.radius * std::cos(angle),
                          traj.center.y + traj.radius * std::sin(angle)});
    }
    return points;
}

std::vector<Point2D> sample_ues(const UEPlacementSpec& spec, const Region& region, Rng& rng) {
    const double stddev = std::sqrt(spec.variance);
    std::vector<Point2D> ues;
    ues.reserve(spec.centers.size());
    for (const Point2D& c : spec.centers) {
        // Draw both offsets even when variance is 0 so the rng stream layout
        // does not depend on the variance value.
        const double gx = stddev * rng.normal();
        const double gy = stddev * rng.normal();
        ues.push_back(clamp_to_region({c.x + gx, c.y + gy}, region));
    }
    return ues;
}

void validate_scenario(const Scenario& s, bool require_nondegenerate_sensing) {
    if (!(s.region.x_min < s.region.x_max))
        throw ValidationError("region: x_min must be < x_max");
    if (!(s.region.y_min < s.region.y_max))
        throw ValidationError("region: y_min must be < y_max");
    if (!is_finite(s.trajectory.center))
        throw ValidationError("trajectory.center: must be finite");
    if (!(s.trajectory.radius > 0.0))
        throw ValidationError("trajectory.radius: must be > 0");
    if (s.trajectory.sample_count < 1)
        throw ValidationError("trajectory.sample_count: must be >= 1");
    for (const Point2D& p : sample_trajectory(s.trajectory)) {
        if (!s.region.contains(p, 1e-12))
            throw ValidationError("trajectory outside region");
    }
    if (s.ue_spec.centers.empty())
        throw ValidationError("ue_spec.centers: need at least one UE");
    for (std::size_t k = 0; k < s.ue_spec.centers.size(); ++k) {
        if (!is_finite(s.ue_spec.centers[k]))
            throw ValidationError("ue_spec.centers[" + std::to_string(k) + "]: must be finite");
    }
    if (s.ue_spec.variance < 0.0)
        throw ValidationError("ue_spec.variance: must be >= 0");
    if (s.num_tx < 1)
        throw ValidationError("num_tx: must be >= 1");
    if (s.num_rx < 1)
        throw ValidationError("num_rx: must be >= 1");
    if (require_nondegenerate_sensing && s.num_tx + s.num_rx < 3)
        throw ValidationError("num_tx + num_rx: must be >= 3 for a non-degenerate sensing objective");
}

void validate_deployment(const Deployment& d, const Region& region, int num_tx, int num_rx) {
    if (static_cast<int>(d.tx.size()) != num_tx)
        throw ValidationError("deployment.tx: expected " + std::to_string(num_tx) +
                              " points, got " + std::to_string(d.tx.size()));
    if (static_cast<int>(d.rx.size()) != num_rx)
        throw ValidationError("deployment.rx: expected " + std::to_string(num_rx) +
                              " points, got " + std::to_string(d.rx.size()));
    for (std::size_t i = 0; i < d.tx.size(); ++i) {
        if (!is_finite(d.tx[i]) || !region.contains(d.tx[i], 1e-12))
            throw ValidationError("deployment.tx[" + std::to_string(i) + "]: outside region");
    }
    for (std::size_t i = 0; i < d.rx.size(); ++i) {
        if (!is_finite(d.rx[i]) || !region.contains(d.rx[i], 1e-12))
            throw ValidationError("deployment.rx[" + std::to_string(i) + "]: outside region");
    }
}

} // namespace cfisac
