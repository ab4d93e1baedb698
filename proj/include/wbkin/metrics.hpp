#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "wbkin/feasibility.hpp"

namespace wbkin {

struct AccuracySample {
  Posed target;
  Posed achieved;
};

struct VelocitySample {
  Vec3d cmd_linear = Vec3d::Zero();
  Vec3d measured_linear = Vec3d::Zero();
  double cmd_angular = 0.0;
  double measured_angular = 0.0;
};

struct IkRateCase {
  TorsoState torso;
  Posed world_target;
};

/// Deterministic pairwise reduction: splits in half recursively so the sum is
/// independent of any batching or threading of the caller.
double pairwise_sum(std::span<const double> values);

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;  // population form, sqrt(E[x^2] - mean^2) via two passes
};

MeanStd mean_std(std::span<const double> values);

/// Nearest-rank percentile: the k-th smallest with k = ceil(p/100 * N).
/// Throws std::invalid_argument on an empty list or p outside (0, 100].
double percentile(std::vector<double> values, double p);

/// Euclidean translation errors and geodesic rotation errors, index-aligned
/// with the input.
std::pair<std::vector<double>, std::vector<double>> pose_errors(
    std::span<const AccuracySample> samples);

struct VelocityErrorSummary {
  double lvte_mean = 0.0, lvte_std = 0.0;
  double avte_mean = 0.0, avte_std = 0.0;
};

VelocityErrorSummary velocity_tracking_errors(
    std::span<const VelocitySample> samples);

/// Fraction of cases judged feasible by feasible_state. Per-case streams are
/// derived as seed XOR a content hash of the case, so the rate is invariant
/// under reordering. Throws std::invalid_argument on empty input.
double ik_solution_rate(std::span<const IkRateCase> cases,
                        const RobotModel& model, const IkParams& params,
                        int restarts, std::uint64_t seed);

}  // namespace wbkin
