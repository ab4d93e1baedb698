#pragma once

#include <Eigen/Dense>
#include <string>

#include "wbkin/se3.hpp"

namespace wbkin {

using JointVector = Eigen::VectorXd;

/// Product-of-exponentials description of a serial arm. Screw axes are
/// expressed in the arm-base (space) frame at the zero configuration and are
/// unit-normalized on load.
struct RobotModel {
  std::string name;
  Posed home_pose;  // end-effector pose at q = 0, arm-base frame
  Eigen::Matrix<double, 6, Eigen::Dynamic> screw_axes;
  Eigen::VectorXd q_min;
  Eigen::VectorXd q_max;
  Posed mount_in_body;  // arm-base frame expressed in the quadruped body frame

  int dof() const { return static_cast<int>(screw_axes.cols()); }
};

/// Normalizes the screw axes in place and checks the model invariants
/// (dof >= 1, normalizable axes, q_min < q_max). Throws ParseError.
void validate_model(RobotModel& model);

/// Parses the JSON model schema: {name, screw_axes, home_pose, joint_limits,
/// mount_in_body}. Unknown keys are rejected; errors carry the field path.
RobotModel parse_model(const std::string& text);

std::string serialize_model(const RobotModel& model);

/// POE forward kinematics: prod_i exp(S_i q_i) * home_pose, arm-base frame.
/// Defined for any q of matching length; limits are not enforced here.
Posed forward_kinematics(const RobotModel& model, const JointVector& q);

/// Jacobian in the end-effector frame, rows (angular, linear), one column per
/// joint: pose_diff(FK(q + dq), FK(q)) ~= J dq to first order.
Eigen::Matrix<double, 6, Eigen::Dynamic> body_jacobian(const RobotModel& model,
                                                       const JointVector& q);

/// True when joint `joint` lies in the outer (1 - fraction) band of its range,
/// i.e. |q_i - mid| > fraction * half_range. Reproduces the guard band
/// q_i < f*q_min || q_i > f*q_max for symmetric limits and stays well posed
/// for asymmetric ones.
bool near_limit(const RobotModel& model, const JointVector& q, int joint,
                double fraction = 0.96);

JointVector clamp_to_limits(const RobotModel& model, const JointVector& q);

/// Uniform sample inside the joint-limit box.
JointVector random_configuration(const RobotModel& model, Rng& rng);

}  // namespace wbkin
