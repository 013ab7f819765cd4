#include "cfisac/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "cfisac/errors.hpp"

namespace cfisac {

std::string to_string(ObjectiveKind kind) {
    switch (kind) {
        case ObjectiveKind::MaxSum: return "max_sum";
        case ObjectiveKind::MaxMin: return "max_min";
        case ObjectiveKind::CommOnly: return "comm_only";
        case ObjectiveKind::SensingOnly: return "sensing_only";
        case ObjectiveKind::WeightedSum: return "weighted_sum";
    }
    return "unknown";
}

ObjectiveKind objective_kind_from_string(const std::string& name) {
    if (name == "max_sum") return ObjectiveKind::MaxSum;
    if (name == "max_min") return ObjectiveKind::MaxMin;
    if (name == "comm_only") return ObjectiveKind::CommOnly;
    if (name == "sensing_only") return ObjectiveKind::SensingOnly;
    if (name == "weighted_sum") return ObjectiveKind::WeightedSum;
    throw ParseError("objective.kind: unknown value '" + name + "'");
}

namespace {

// Direction cosines from target to AP with the floor applied to the distance.
inline void direction(const Point2D& target, const Point2D& ap, double floor,
                      double& cos_out, double& sin_out) {
    const double dx = target.x - ap.x;
    const double dy = target.y - ap.y;
    const double d = std::max(std::hypot(dx, dy), floor);
    cos_out = dx / d;
    sin_out = dy / d;
}

} // namespace

double fim_determinant(std::span<const Point2D> tx, std::span<const Point2D> rx,
                       const Point2D& target, double distance_floor) {
    const std::size_t m_count = tx.size();
    const std::size_t n_count = rx.size();
    std::vector<double> ct(m_count), st(m_count), cr(n_count), sr(n_count);
    for (std::size_t m = 0; m < m_count; ++m)
        direction(target, tx[m], distance_floor, ct[m], st[m]);
    for (std::size_t n = 0; n < n_count; ++n)
        direction(target, rx[n], distance_floor, cr[n], sr[n]);

    double a = 0.0, b = 0.0, c = 0.0;
    for (std::size_t m = 0; m < m_count; ++m) {
        for (std::size_t n = 0; n < n_count; ++n) {
            const double cs = ct[m] + cr[n];
            const double sn = st[m] + sr[n];
            a += cs * cs;
            b += sn * sn;
            c += cs * sn;
        }
    }
    return std::max(a * b - c * c, 0.0);
}

double snr(const Point2D& ue, std::span<const Point2D> tx, std::span<const Point2D> rx,
           double distance_floor) {
    double total = 0.0;
    for (const Point2D& p : tx) {
        const double d = std::max(distance(ue, p), distance_floor);
        total += 1.0 / (d * d);
    }
    for (const Point2D& p : rx) {
        const double d = std::max(distance(ue, p), distance_floor);
        total += 1.0 / (d * d);
    }
    return total;
}

double rate(double snr_value, double log_base) {
    return std::log1p(snr_value) / std::log(log_base);
}

MetricReport evaluate(const Deployment& deployment, std::span<const Point2D> ues,
                      std::span<const Point2D> trajectory_points, const ObjectiveSpec& spec) {
    MetricReport report;
    report.per_ue_rate.reserve(ues.size());
    for (const Point2D& ue : ues) {
        const double s = snr(ue, deployment.tx, deployment.rx, spec.distance_floor);
        report.per_ue_rate.push_back(rate(s, spec.log_base));
    }
    report.per_sample_fim_det.reserve(trajectory_points.size());
    for (const Point2D& target : trajectory_points) {
        report.per_sample_fim_det.push_back(
            fim_determinant(deployment.tx, deployment.rx, target, spec.distance_floor));
    }

    report.sum_rate = std::accumulate(report.per_ue_rate.begin(), report.per_ue_rate.end(), 0.0);
    report.min_rate = *std::min_element(report.per_ue_rate.begin(), report.per_ue_rate.end());
    report.sum_fim_det =
        std::accumulate(report.per_sample_fim_det.begin(), report.per_sample_fim_det.end(), 0.0);
    report.min_fim_det =
        *std::min_element(report.per_sample_fim_det.begin(), report.per_sample_fim_det.end());

    const double q = static_cast<double>(trajectory_points.size());
    const double scaled_rate = report.sum_rate / q;
    const double scaled_fim = report.sum_fim_det / q;
    switch (spec.kind) {
        case ObjectiveKind::MaxSum:
            report.objective_value = scaled_rate * scaled_fim;
            break;
        case ObjectiveKind::MaxMin:
            report.objective_value = report.min_rate * report.min_fim_det;
            break;
        case ObjectiveKind::CommOnly:
            report.objective_value = scaled_rate;
            break;
        case ObjectiveKind::SensingOnly:
            report.objective_value = scaled_fim;
            break;
        case ObjectiveKind::WeightedSum:
            report.objective_value = spec.weight * scaled_rate + (1.0 - spec.weight) * scaled_fim;
            break;
    }
    return report;
}

double reward_objective(const MetricReport& report, const ObjectiveSpec& spec) {
    switch (spec.kind) {
        case ObjectiveKind::MaxSum:
            return report.sum_rate * report.sum_fim_det;
        case ObjectiveKind::MaxMin:
            return report.min_rate * report.min_fim_det;
        default:
            // No 1/Q-scaling ambiguity matters for the single-term objectives;
            // reuse the reported value.
            return report.objective_value;
    }
}

namespace {

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

} // namespace

std::string metric_report_csv_header() {
    return "objective_kind,sum_rate,min_rate,sum_fim_det,min_fim_det,objective_value";
}

std::string metric_report_csv_row(const MetricReport& report, const ObjectiveSpec& spec) {
    std::string row = to_string(spec.kind);
    for (double v : {report.sum_rate, report.min_rate, report.sum_fim_det, report.min_fim_det,
                     report.objective_value}) {
        row += ',';
        row += format_double(v);
    }
    return row;
}

} // namespace cfisac
