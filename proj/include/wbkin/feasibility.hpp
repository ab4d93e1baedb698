#pragma once

#include <cstdint>
#include <vector>

#include "wbkin/ik.hpp"

namespace wbkin {

/// Torso state of the quadruped: the body frame expressed in the world frame.
struct TorsoState {
  Posed pose_in_world;
};

struct FeasibilityOutcome {
  bool feasible = false;
  JointVector q_ideal;  // witness configuration; meaningful when feasible
  Posed body_target;    // target re-expressed in the body frame
};

/// Re-expresses a world-frame target in the arm-base frame:
/// mount_in_body^-1 * torso^-1 * world_target.
Posed world_to_arm_target(const TorsoState& torso, const Posed& world_target,
                          const RobotModel& model);

/// Whether some in-limit arm configuration reaches the world target given the
/// torso pose. Realized by multistart numeric IK on the transformed target;
/// the initial attempt starts from the middle of the joint-limit box. Sound
/// but incomplete: a hard reachable target may come back infeasible.
FeasibilityOutcome feasible_state(const TorsoState& torso,
                                  const Posed& world_target,
                                  const RobotModel& model,
                                  const IkParams& params, int restarts,
                                  Rng& rng);

/// Body frame orthogonally projected onto the ground plane z = 0: keeps the
/// horizontal position and the yaw, zeroes height, roll and pitch.
/// Throws BranchError when |pitch| > pi/2 - 1e-3.
Posed proj_frame(const TorsoState& torso);

/// Axis-aligned x/y grid at a fixed height; nodes are linspaced per axis
/// (a single-node axis collapses to the minimum).
struct FeasibilityGrid {
  double x_min = 0.0, x_max = 0.0;
  double y_min = 0.0, y_max = 0.0;
  double z = 0.0;
  int nx = 1, ny = 1;

  double x_at(int i) const {
    return nx > 1 ? x_min + (x_max - x_min) * i / (nx - 1) : x_min;
  }
  double y_at(int j) const {
    return ny > 1 ? y_min + (y_max - y_min) * j / (ny - 1) : y_min;
  }
};

struct FeasibilityMap {
  FeasibilityGrid grid;
  Rotationd rotation;  // target rotation shared by every node
  std::uint64_t seed = 0;
  std::vector<std::uint8_t> values;  // row-major over (y, x)

  bool at(int ix, int iy) const {
    return values[static_cast<std::size_t>(iy) * grid.nx + ix] != 0;
  }
};

/// Evaluates feasible_state at every grid node with the fixed target
/// rotation. Node streams are derived as seed XOR node index, so the result
/// is independent of evaluation order and scheduling.
FeasibilityMap feasibility_map(const RobotModel& model, const TorsoState& torso,
                               const FeasibilityGrid& grid,
                               const Rotationd& fixed_rotation,
                               const IkParams& params, int restarts,
                               std::uint64_t seed);

}  // namespace wbkin
