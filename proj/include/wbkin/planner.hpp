#pragma once

#include <vector>

#include "wbkin/rng.hpp"
#include "wbkin/se3.hpp"

namespace wbkin {

/// Endpoint pair plus duration for a smooth-step SE(3) trajectory.
/// The relative rotation between the endpoints must stay below pi - 1e-3 so
/// the interpolation path is unambiguous.
struct TrajectorySpec {
  Posed t_init;
  Posed t_end;
  double t_total = 1.0;
};

/// Throws NumericError when t_total <= 0 or the endpoint rotation angle is
/// too close to pi for a unique geodesic.
void validate_spec(const TrajectorySpec& spec);

/// Draws a target pose: translation uniform in the ball of given radius
/// around the initial translation, rotation uniform over SO(3).
Posed sample_target(const Posed& t_init, double radius, Rng& rng);

/// Pose at time t in [0, t_total]: t_init boxplus s(tau) * (t_end boxminus
/// t_init) with the cubic smooth-step s(tau) = tau^2 (3 - 2 tau), tau = t /
/// t_total. Out-of-range t clamps to the endpoints.
Posed interpolate(const TrajectorySpec& spec, double t);

/// Body-frame twist of the interpolated motion: sdot(tau) * (t_end boxminus
/// t_init) with sdot = 6 tau (1 - tau) / t_total. Zero at both endpoints.
Twistd reference_twist(const TrajectorySpec& spec, double t);

struct Waypoint {
  double t = 0.0;
  Posed pose;
  Twistd twist = Twistd::Zero();
};

/// Uniform sampling of [0, t_total] every dt. The final waypoint always lands
/// exactly on t_total (bitwise equal to t_end's interpolation) even when dt
/// does not divide the duration.
std::vector<Waypoint> generate_trajectory(const TrajectorySpec& spec,
                                          double dt);

}  // namespace wbkin
