#include "wbkin/planner.hpp"

#include <cmath>
#include <numbers>

#include "wbkin/errors.hpp"

namespace wbkin {

void validate_spec(const TrajectorySpec& spec) {
  if (!(spec.t_total > 0.0))
    throw NumericError("trajectory: t_total must be positive");
  const double angle =
      geodesic_distance(spec.t_init.rotation, spec.t_end.rotation);
  if (angle >= std::numbers::pi - 1e-3)
    throw NumericError("trajectory: endpoint rotation too close to pi");
}

Posed sample_target(const Posed& t_init, double radius, Rng& rng) {
  Posed target;
  target.rotation = sample_uniform_rotation(rng);
  target.translation = t_init.translation + sample_in_ball(rng, radius);
  return target;
}

namespace {

double smooth_step(double tau) { return tau * tau * (3.0 - 2.0 * tau); }

double clamp_tau(const TrajectorySpec& spec, double t) {
  const double tau = t / spec.t_total;
  return tau < 0.0 ? 0.0 : (tau > 1.0 ? 1.0 : tau);
}

}  // namespace

Posed interpolate(const TrajectorySpec& spec, double t) {
  validate_spec(spec);
  const Twistd delta = pose_diff(spec.t_end, spec.t_init);
  return pose_oplus(spec.t_init, smooth_step(clamp_tau(spec, t)) * delta);
}

Twistd reference_twist(const TrajectorySpec& spec, double t) {
  validate_spec(spec);
  const double tau = clamp_tau(spec, t);
  const double sdot = 6.0 * tau * (1.0 - tau) / spec.t_total;
  return sdot * pose_diff(spec.t_end, spec.t_init);
}

std::vector<Waypoint> generate_trajectory(const TrajectorySpec& spec,
                                          double dt) {
  validate_spec(spec);
  if (!(dt > 0.0)) throw NumericError("trajectory: dt must be positive");
  const Twistd delta = pose_diff(spec.t_end, spec.t_init);

  std::vector<Waypoint> points;
  const int whole_steps = static_cast<int>(std::floor(spec.t_total / dt));
  for (int k = 0; k <= whole_steps; ++k) {
    const double t = k * dt;
    if (t >= spec.t_total) break;
    const double tau = t / spec.t_total;
    points.push_back({t, pose_oplus(spec.t_init, smooth_step(tau) * delta),
                      6.0 * tau * (1.0 - tau) / spec.t_total * delta});
  }
  points.push_back(
      {spec.t_total, pose_oplus(spec.t_init, delta), Twistd::Zero()});
  return points;
}

}  // namespace wbkin
