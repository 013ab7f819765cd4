#pragma once

#include <span>
#include <string>

#include "cfisac/geometry.hpp"

namespace cfisac {

// Static deployment plot: region boundary with axes, trajectory circle with
// its sample dots, UE markers, and distinct glyphs for tx and rx APs. The
// <g id="deployment"> group contains exactly M + N + K + Q + 1 geometric
// primitives.
std::string deployment_svg(const Scenario& scenario, const Deployment& deployment,
                           std::span<const Point2D> ues, std::span<const Point2D> trajectory_points);

} // namespace cfisac
