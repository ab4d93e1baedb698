#pragma once

#include <array>

#include "wbkin/ik.hpp"

namespace wbkin {

/// One control-loop timestep of the legged manipulator (12 leg + 6 arm
/// joints). Foot arrays are indexed leg 0..3 and consumed as given; nothing
/// here computes contact states.
struct RobotSnapshot {
  Vec3d cmd_linear_velocity = Vec3d::Zero();   // m/s, body frame
  double cmd_angular_velocity = 0.0;           // rad/s, yaw rate
  Vec3d measured_linear_velocity = Vec3d::Zero();
  double measured_angular_velocity = 0.0;

  Posed cmd_pose;  // commanded end-effector pose, body frame
  Posed ee_pose;   // measured end-effector pose, body frame

  JointVector joint_q = JointVector::Zero(18);
  JointVector joint_qd = JointVector::Zero(18);
  JointVector joint_qdd = JointVector::Zero(18);
  JointVector joint_torque = JointVector::Zero(18);       // N*m
  JointVector joint_torque_rate = JointVector::Zero(18);  // N*m/s

  int collision_count = 0;  // contact points excluding the four feet
  Eigen::Vector4d foot_clearance = Eigen::Vector4d::Zero();  // m
  Eigen::Vector4d foot_lift_time = Eigen::Vector4d::Zero();  // s
  Eigen::Vector4d foot_slip = Eigen::Vector4d::Zero();       // m/s

  IkResult ik_result;
  JointVector arm_q_measured = JointVector::Zero(6);

  // Consumed by observation assembly only; rewards ignore these.
  Posed torso_pose_in_world;
  Twistd body_twist = Twistd::Zero();
  JointVector last_action = JointVector::Zero(18);
};

/// Clamped difference-of-joints exponents grow with error in the source
/// material; here every tracking term uses exp(-error) so that 1 is perfect
/// and the kinematics clamp at 0.2 is a floor. kGrowing restores the literal
/// positive-exponent variant for comparison runs.
enum class RewardExponent { kDecaying, kGrowing };

/// One scalar per reward term. Signs live here: penalties carry negative
/// weights while the pre-weight term values stay positive-magnitude.
struct RewardWeights {
  double kinematics = 0.16;
  double linear_velocity = 0.5;
  double angular_velocity = 0.3;
  double pose_tracking = 0.6;
  double torque = -1.2e-5;
  double torque_smooth = -1.5e-6;
  double joint_accel = -1.0e-7;
  double joint_limit = -0.1;
  double collision = -0.4;
  double clearance = 3.0;
  double lift_time = 0.35;
  double slip = -0.15;
};

inline constexpr int kRewardTermCount = 12;

/// Fixed term order shared by RewardWeights, RewardBreakdown and the record
/// writers.
const std::array<const char*, kRewardTermCount>& reward_term_names();

struct RewardBreakdown {
  std::array<double, kRewardTermCount> raw{};       // pre-weight values
  std::array<double, kRewardTermCount> weighted{};  // raw * weight
  double total = 0.0;                               // sum of weighted
};

/// Feasibility-gated joint-gap reward: 0 when ik.feasible is false (the
/// solver's failure contract returns q = q_real, so the gate must not look at
/// joint values), else max(exp(-sum |q_ideal - q_measured|), 0.2).
double feasible_state_reward(const IkResult& ik, const JointVector& arm_q_measured,
                             RewardExponent mode = RewardExponent::kDecaying);

struct TaskRewards {
  double linear_velocity = 0.0;
  double angular_velocity = 0.0;
  double pose_tracking = 0.0;
};

/// lin = exp(-|v_cmd - v|), ang = exp(-(w_cmd - w)^2),
/// pose = exp(-|cmd_pose boxminus ee_pose|). Propagates the branch error of
/// pose_diff at relative angle pi.
TaskRewards task_rewards(const RobotSnapshot& s,
                         RewardExponent mode = RewardExponent::kDecaying);

struct RegularizationRewards {
  double torque = 0.0;         // sum tau_i^2
  double torque_smooth = 0.0;  // sqrt(sum taudot_i^2)
  double joint_accel = 0.0;    // sum qdd_i^2
  double joint_limit = 0.0;    // count of arm joints near a limit
  double collision = 0.0;      // collision_count
  double clearance = 0.0;      // sum d_i
  double lift_time = 0.0;      // sum t_i
  double slip = 0.0;           // sum s_i
};

/// The joint-limit count applies near_limit (fraction 0.96) to
/// arm_q_measured against the arm model's limits; leg joints carry no limit
/// box in this toolkit and are excluded.
RegularizationRewards regularization_rewards(const RobotSnapshot& s,
                                             const RobotModel& model);

RewardBreakdown total_reward(const RobotSnapshot& s, const RewardWeights& w,
                             const RobotModel& model,
                             RewardExponent mode = RewardExponent::kDecaying);

}  // namespace wbkin
