#include "wbkin/feasibility.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "wbkin/errors.hpp"
#include "wbkin/parallel.hpp"

namespace wbkin {

Posed world_to_arm_target(const TorsoState& torso, const Posed& world_target,
                          const RobotModel& model) {
  return model.mount_in_body.inverse() *
         (torso.pose_in_world.inverse() * world_target);
}

FeasibilityOutcome feasible_state(const TorsoState& torso,
                                  const Posed& world_target,
                                  const RobotModel& model,
                                  const IkParams& params, int restarts,
                                  Rng& rng) {
  FeasibilityOutcome outcome;
  outcome.body_target = torso.pose_in_world.inverse() * world_target;
  const Posed arm_target = model.mount_in_body.inverse() * outcome.body_target;
  // The arm's own joint state is unknown here; the neutral mid-limit
  // configuration serves as the deterministic first warm start.
  const JointVector mid = 0.5 * (model.q_min + model.q_max);
  const IkResult ik =
      solve_ik_multistart(model, arm_target, mid, params, restarts, rng);
  outcome.feasible = ik.feasible;
  if (ik.feasible) outcome.q_ideal = ik.q;
  return outcome;
}

Posed proj_frame(const TorsoState& torso) {
  const Vec3d ypr = yaw_pitch_roll(torso.pose_in_world.rotation);
  if (std::abs(ypr[1]) > std::numbers::pi / 2 - 1e-3)
    throw BranchError("proj_frame: yaw is degenerate near pitch pi/2");
  Posed frame;
  frame.rotation = so3_exp(Vec3d(0.0, 0.0, ypr[0]));
  frame.translation = Vec3d(torso.pose_in_world.translation.x(),
                            torso.pose_in_world.translation.y(), 0.0);
  return frame;
}

FeasibilityMap feasibility_map(const RobotModel& model, const TorsoState& torso,
                               const FeasibilityGrid& grid,
                               const Rotationd& fixed_rotation,
                               const IkParams& params, int restarts,
                               std::uint64_t seed) {
  if (grid.nx < 1 || grid.ny < 1)
    throw std::invalid_argument("feasibility_map: need at least one node per axis");
  FeasibilityMap map;
  map.grid = grid;
  map.rotation = fixed_rotation;
  map.seed = seed;
  map.values.assign(static_cast<std::size_t>(grid.nx) * grid.ny, 0);

  parallel_for(grid.nx * grid.ny, [&](int node) {
    const int ix = node % grid.nx;
    const int iy = node / grid.nx;
    Posed target;
    target.rotation = fixed_rotation;
    target.translation = Vec3d(grid.x_at(ix), grid.y_at(iy), grid.z);
    Rng rng = make_stream(seed, static_cast<std::uint64_t>(node));
    const FeasibilityOutcome outcome =
        feasible_state(torso, target, model, params, restarts, rng);
    map.values[static_cast<std::size_t>(node)] = outcome.feasible ? 1 : 0;
  });
  return map;
}

}  // namespace wbkin
