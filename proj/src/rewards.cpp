#include "wbkin/rewards.hpp"

#include <cmath>
#include <stdexcept>

namespace wbkin {

const std::array<const char*, kRewardTermCount>& reward_term_names() {
  static const std::array<const char*, kRewardTermCount> names = {
      "kinematics",   "linear_velocity", "angular_velocity", "pose_tracking",
      "torque",       "torque_smooth",   "joint_accel",      "joint_limit",
      "collision",    "clearance",       "lift_time",        "slip"};
  return names;
}

namespace {

double tracking_exp(double error, RewardExponent mode) {
  return std::exp(mode == RewardExponent::kDecaying ? -error : error);
}

}  // namespace

double feasible_state_reward(const IkResult& ik, const JointVector& arm_q_measured,
                             RewardExponent mode) {
  if (!ik.feasible) return 0.0;
  if (ik.q.size() != arm_q_measured.size())
    throw std::invalid_argument("feasible_state_reward: joint size mismatch");
  const double gap = (ik.q - arm_q_measured).cwiseAbs().sum();
  return std::max(tracking_exp(gap, mode), 0.2);
}

TaskRewards task_rewards(const RobotSnapshot& s, RewardExponent mode) {
  TaskRewards r;
  r.linear_velocity = tracking_exp(
      (s.cmd_linear_velocity - s.measured_linear_velocity).norm(), mode);
  const double ang_gap = s.cmd_angular_velocity - s.measured_angular_velocity;
  r.angular_velocity = tracking_exp(ang_gap * ang_gap, mode);
  r.pose_tracking = tracking_exp(pose_diff(s.cmd_pose, s.ee_pose).norm(), mode);
  return r;
}

RegularizationRewards regularization_rewards(const RobotSnapshot& s,
                                             const RobotModel& model) {
  RegularizationRewards r;
  r.torque = s.joint_torque.squaredNorm();
  r.torque_smooth = std::sqrt(s.joint_torque_rate.squaredNorm());
  r.joint_accel = s.joint_qdd.squaredNorm();
  if (s.arm_q_measured.size() != model.dof())
    throw std::invalid_argument(
        "regularization_rewards: arm joint count does not match the model");
  for (int i = 0; i < model.dof(); ++i)
    if (near_limit(model, s.arm_q_measured, i)) r.joint_limit += 1.0;
  r.collision = static_cast<double>(s.collision_count);
  r.clearance = s.foot_clearance.sum();
  r.lift_time = s.foot_lift_time.sum();
  r.slip = s.foot_slip.sum();
  return r;
}

RewardBreakdown total_reward(const RobotSnapshot& s, const RewardWeights& w,
                             const RobotModel& model, RewardExponent mode) {
  const double kin = feasible_state_reward(s.ik_result, s.arm_q_measured, mode);
  const TaskRewards task = task_rewards(s, mode);
  const RegularizationRewards reg = regularization_rewards(s, model);

  RewardBreakdown out;
  out.raw = {kin,        task.linear_velocity, task.angular_velocity,
             task.pose_tracking, reg.torque,   reg.torque_smooth,
             reg.joint_accel,    reg.joint_limit, reg.collision,
             reg.clearance,      reg.lift_time,   reg.slip};
  const std::array<double, kRewardTermCount> weights = {
      w.kinematics, w.linear_velocity, w.angular_velocity, w.pose_tracking,
      w.torque,     w.torque_smooth,   w.joint_accel,      w.joint_limit,
      w.collision,  w.clearance,       w.lift_time,        w.slip};
  for (int i = 0; i < kRewardTermCount; ++i) {
    out.weighted[i] = weights[i] * out.raw[i];
    out.total += out.weighted[i];
  }
  return out;
}

}  // namespace wbkin
