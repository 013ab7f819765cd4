#pragma once

#include <span>
#include <string>
#include <vector>

#include "cfisac/geometry.hpp"

namespace cfisac {

enum class ObjectiveKind { MaxSum, MaxMin, CommOnly, SensingOnly, WeightedSum };

std::string to_string(ObjectiveKind kind);
ObjectiveKind objective_kind_from_string(const std::string& name);

struct ObjectiveSpec {
    ObjectiveKind kind = ObjectiveKind::MaxSum;
    double weight = 0.5;          // WeightedSum only
    double log_base = 2.0;
    double distance_floor = 1e-3; // meters

    bool operator==(const ObjectiveSpec&) const = default;
};

// D-optimality sensing metric: determinant of the 2x2 localization Fisher
// information at `target` for the given bistatic tx/rx geometry. Purely
// angular; distances only enter through the direction cosines, clamped by
// `distance_floor` so an AP sitting on the target stays evaluable. Always
// >= 0 (clamped against round-off).
double fim_determinant(std::span<const Point2D> tx, std::span<const Point2D> rx,
                       const Point2D& target, double distance_floor);

// Asymptotic zero-forcing SNR for one UE: sum of inverse squared distances to
// every AP, with distances clamped below by `distance_floor`.
double snr(const Point2D& ue, std::span<const Point2D> tx, std::span<const Point2D> rx,
           double distance_floor);

// Shannon-style rate log_base(1 + snr).
double rate(double snr_value, double log_base);

struct MetricReport {
    std::vector<double> per_ue_rate;
    double sum_rate = 0.0;
    double min_rate = 0.0;
    std::vector<double> per_sample_fim_det;
    double sum_fim_det = 0.0;
    double min_fim_det = 0.0;
    double objective_value = 0.0;
};

// Full metric evaluation of a deployment against fixed UE positions and
// trajectory sample points. objective_value uses the 1/Q-scaled forms for
// MaxSum / CommOnly / SensingOnly / WeightedSum and min*min for MaxMin.
MetricReport evaluate(const Deployment& deployment, std::span<const Point2D> ues,
                      std::span<const Point2D> trajectory_points, const ObjectiveSpec& spec);

// Unscaled reward objective (no 1/Q factors on the product terms); argmax
// equivalent to the reported objective_value.
double reward_objective(const MetricReport& report, const ObjectiveSpec& spec);

std::string metric_report_csv_header();
std::string metric_report_csv_row(const MetricReport& report, const ObjectiveSpec& spec);

} // namespace cfisac
