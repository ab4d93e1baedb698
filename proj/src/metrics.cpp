#include "wbkin/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wbkin/parallel.hpp"

namespace wbkin {

double pairwise_sum(std::span<const double> values) {
  if (values.empty()) return 0.0;
  if (values.size() == 1) return values[0];
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

MeanStd mean_std(std::span<const double> values) {
  if (values.empty())
    throw std::invalid_argument("mean_std: empty input");
  MeanStd out;
  const double n = static_cast<double>(values.size());
  out.mean = pairwise_sum(values) / n;
  std::vector<double> sq(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double d = values[i] - out.mean;
    sq[i] = d * d;
  }
  out.std = std::sqrt(pairwise_sum(sq) / n);
  return out;
}

double percentile(std::vector<double> values, double p) {
  if (values.empty()) throw std::invalid_argument("percentile: empty input");
  if (!(p > 0.0) || p > 100.0)
    throw std::invalid_argument("percentile: p must lie in (0, 100]");
  const auto k = static_cast<std::size_t>(
      std::ceil(p / 100.0 * static_cast<double>(values.size())));
  const std::size_t index = std::max<std::size_t>(k, 1) - 1;
  std::nth_element(values.begin(), values.begin() + index, values.end());
  return values[index];
}

std::pair<std::vector<double>, std::vector<double>> pose_errors(
    std::span<const AccuracySample> samples) {
  if (samples.empty()) throw std::invalid_argument("pose_errors: empty input");
  std::vector<double> pe(samples.size()), re(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    pe[i] = (samples[i].target.translation - samples[i].achieved.translation)
                .norm();
    re[i] = geodesic_distance(samples[i].target.rotation,
                              samples[i].achieved.rotation);
  }
  return {std::move(pe), std::move(re)};
}

VelocityErrorSummary velocity_tracking_errors(
    std::span<const VelocitySample> samples) {
  if (samples.empty())
    throw std::invalid_argument("velocity_tracking_errors: empty input");
  std::vector<double> lvte(samples.size()), avte(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    lvte[i] = (samples[i].cmd_linear - samples[i].measured_linear).norm();
    avte[i] = std::abs(samples[i].cmd_angular - samples[i].measured_angular);
  }
  const MeanStd lin = mean_std(lvte);
  const MeanStd ang = mean_std(avte);
  return {lin.mean, lin.std, ang.mean, ang.std};
}

double ik_solution_rate(std::span<const IkRateCase> cases,
                        const RobotModel& model, const IkParams& params,
                        int restarts, std::uint64_t seed) {
  if (cases.empty())
    throw std::invalid_argument("ik_solution_rate: empty input");
  std::vector<std::uint8_t> feasible(cases.size(), 0);
  parallel_for(static_cast<int>(cases.size()), [&](int i) {
    const IkRateCase& c = cases[static_cast<std::size_t>(i)];
    // Content-derived stream: the rate is invariant under case reordering.
    std::uint64_t h = fnv1a(c.torso.pose_in_world.translation.data(),
                            3 * sizeof(double));
    h = fnv1a(c.torso.pose_in_world.rotation.quaternion().coeffs().data(),
              4 * sizeof(double), h);
    h = fnv1a(c.world_target.translation.data(), 3 * sizeof(double), h);
    h = fnv1a(c.world_target.rotation.quaternion().coeffs().data(),
              4 * sizeof(double), h);
    Rng rng = make_stream(seed, h);
    const FeasibilityOutcome outcome =
        feasible_state(c.torso, c.world_target, model, params, restarts, rng);
    feasible[static_cast<std::size_t>(i)] = outcome.feasible ? 1 : 0;
  });
  std::size_t count = 0;
  for (std::uint8_t f : feasible) count += f;
  return static_cast<double>(count) / static_cast<double>(cases.size());
}

}  // namespace wbkin
