#pragma once

#include <span>

#include "wbkin/rewards.hpp"

namespace wbkin {

/// Actor-side sensor corruption: per-group Gaussian noise plus a uniform
/// hysteresis delay. Delayed fields are every measured quantity (roll/pitch,
/// joint states, body twist, end-effector pose); groups without a std entry
/// are delayed but noise-free. Command and last action are neither delayed
/// nor noised.
struct NoiseModel {
  double joint_position_std = 0.01;  // rad
  double joint_velocity_std = 0.5;   // rad/s
  double body_twist_std = 0.05;
  double ee_pose_std = 0.05;  // applied to twist coordinates of the pose
  int hysteresis_delay_steps = 0;
};

inline constexpr int kActorDim = 77;
inline constexpr int kCriticDim = 230;

struct LayoutField {
  const char* name;
  int offset;
  int size;
};

/// command 9, roll_pitch 2, joint_position 18, joint_velocity 18,
/// body_twist 6, ee_pose 6, last_action 18.
std::span<const LayoutField> actor_layout();

/// command 9, joint_states 72, planned_ee_twist 6, q_desired 6, ik_status 1,
/// body_twist 6, action_history 36, foot_clearance 4, foot_period 4,
/// foot_position 12, foot_slip 4, foot_impulse 4, torso_disturbance 6,
/// ee_pose 6, ee_twist 6, ee_disturbance 6, link_masses 6, jacobian 36.
std::span<const LayoutField> critic_layout();

using ActorObservation = Eigen::Matrix<double, kActorDim, 1>;
using CriticObservation = Eigen::Matrix<double, kCriticDim, 1>;

/// Simulator-side privileged inputs that have no home in RobotSnapshot.
struct CriticAux {
  Twistd planned_ee_twist = Twistd::Zero();
  JointVector q_desired = JointVector::Zero(6);
  Eigen::Matrix<double, 36, 1> action_history =
      Eigen::Matrix<double, 36, 1>::Zero();  // two stacked 18-joint actions
  Eigen::Matrix<double, 12, 1> foot_position =
      Eigen::Matrix<double, 12, 1>::Zero();
  Eigen::Vector4d foot_touchdown_impulse = Eigen::Vector4d::Zero();
  Vec6d torso_disturbance = Vec6d::Zero();
  Twistd ee_twist = Twistd::Zero();
  Vec6d ee_disturbance = Vec6d::Zero();
  Eigen::Matrix<double, 6, 1> link_masses = Eigen::Matrix<double, 6, 1>::Zero();
  Mat6d jacobian = Mat6d::Zero();  // flattened row-major into the final block
};

/// The 9-dim command block is (vx, vy, yaw rate) followed by the target pose
/// as position + rotation exponential coordinates. Poses everywhere in the
/// observation encode as that same 6-vector.
Eigen::Matrix<double, 9, 1> command_block(const RobotSnapshot& s);

/// history holds past snapshots oldest-first; a delay of k reads
/// history[history.size() - k] and a delay of 0 reads the current snapshot.
/// Throws std::out_of_range when the history is shallower than the delay.
ActorObservation build_actor_obs(const RobotSnapshot& s,
                                 std::span<const RobotSnapshot> history,
                                 const NoiseModel& noise, Rng& rng);

/// Noise-free privileged concatenation; uses ik_result.feasible for the
/// solver-status element.
CriticObservation build_critic_obs(const RobotSnapshot& s,
                                   const CriticAux& aux);

}  // namespace wbkin
