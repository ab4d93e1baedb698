#include "wbkin/robot_model.hpp"

#include <cmath>
#include <string>

#include "json.hpp"
#include "wbkin/errors.hpp"
#include "wbkin/io.hpp"

namespace wbkin {

void validate_model(RobotModel& model) {
  const int n = model.dof();
  if (n < 1) throw ParseError("screw_axes: need at least one joint");
  if (model.q_min.size() != n || model.q_max.size() != n)
    throw ParseError("joint_limits: expected " + std::to_string(n) +
                     " entries, got " + std::to_string(model.q_min.size()));
  for (int i = 0; i < n; ++i) {
    auto axis = model.screw_axes.col(i);
    if (!axis.allFinite())
      throw ParseError("screw_axes[" + std::to_string(i) + "]: not finite");
    // Screw normalization: unit angular part for revolute-type axes, else
    // zero angular part with unit linear part (pure translation).
    const double w_norm = axis.head<3>().norm();
    const double v_norm = axis.tail<3>().norm();
    if (w_norm > 1e-6) {
      axis /= w_norm;
    } else if (v_norm > 1e-6) {
      axis.head<3>().setZero();
      axis.tail<3>() /= v_norm;
    } else {
      throw ParseError("screw_axes[" + std::to_string(i) +
                       "]: not normalizable");
    }
    if (!(model.q_min[i] < model.q_max[i]))
      throw ParseError("joint_limits[" + std::to_string(i) +
                       "]: min must be strictly below max");
  }
}

namespace {

void require_keys(const nlohmann::json& j,
                  std::initializer_list<const char*> keys,
                  const std::string& path) {
  for (const char* k : keys)
    if (!j.contains(k)) throw ParseError(path + ": missing key '" + k + "'");
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* k : keys) known = known || item.key() == k;
    if (!known) throw ParseError(path + ": unknown key '" + item.key() + "'");
  }
}

}  // namespace

RobotModel parse_model(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("model: ") + e.what());
  }
  try {
    require_keys(
        j, {"name", "screw_axes", "home_pose", "joint_limits", "mount_in_body"},
        "model");
    RobotModel model;
    model.name = j.at("name").get<std::string>();
    const auto& axes = j.at("screw_axes");
    if (!axes.is_array() || axes.empty())
      throw ParseError("screw_axes: expected a nonempty array");
    model.screw_axes.resize(6, static_cast<Eigen::Index>(axes.size()));
    for (std::size_t i = 0; i < axes.size(); ++i) {
      if (!axes[i].is_array() || axes[i].size() != 6)
        throw ParseError("screw_axes[" + std::to_string(i) +
                         "]: expected 6 numbers");
      for (int k = 0; k < 6; ++k)
        model.screw_axes(k, static_cast<Eigen::Index>(i)) =
            axes[i][k].get<double>();
    }
    model.home_pose = io::parse_pose(j.at("home_pose"));
    const auto& limits = j.at("joint_limits");
    if (!limits.is_array() || limits.size() != axes.size())
      throw ParseError("joint_limits: expected one [min,max] per joint");
    model.q_min.resize(static_cast<Eigen::Index>(limits.size()));
    model.q_max.resize(static_cast<Eigen::Index>(limits.size()));
    for (std::size_t i = 0; i < limits.size(); ++i) {
      if (!limits[i].is_array() || limits[i].size() != 2)
        throw ParseError("joint_limits[" + std::to_string(i) +
                         "]: expected [min,max]");
      model.q_min[static_cast<Eigen::Index>(i)] = limits[i][0].get<double>();
      model.q_max[static_cast<Eigen::Index>(i)] = limits[i][1].get<double>();
    }
    model.mount_in_body = io::parse_pose(j.at("mount_in_body"));
    validate_model(model);
    return model;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("model: ") + e.what());
  }
}

std::string serialize_model(const RobotModel& model) {
  std::string out = "{\"name\":\"" + model.name + "\",\"screw_axes\":[";
  for (int i = 0; i < model.dof(); ++i) {
    if (i) out += ',';
    out += io::json_array(model.screw_axes.col(i));
  }
  out += "],\"home_pose\":" + io::pose_json(model.home_pose);
  out += ",\"joint_limits\":[";
  for (int i = 0; i < model.dof(); ++i) {
    if (i) out += ',';
    out += '[' + io::format_double(model.q_min[i]) + ',' +
           io::format_double(model.q_max[i]) + ']';
  }
  out += "],\"mount_in_body\":" + io::pose_json(model.mount_in_body);
  out += '}';
  return out;
}

Posed forward_kinematics(const RobotModel& model, const JointVector& q) {
  if (q.size() != model.dof())
    throw std::invalid_argument("forward_kinematics: configuration size " +
                                std::to_string(q.size()) + " vs dof " +
                                std::to_string(model.dof()));
  Posed t;  // identity
  for (int i = 0; i < model.dof(); ++i)
    t = t * se3_exp(model.screw_axes.col(i) * q[i]);
  return t * model.home_pose;
}

Eigen::Matrix<double, 6, Eigen::Dynamic> body_jacobian(const RobotModel& model,
                                                       const JointVector& q) {
  if (q.size() != model.dof())
    throw std::invalid_argument("body_jacobian: configuration size mismatch");
  // Space Jacobian column i is Ad_{exp(S_1 q_1) ... exp(S_{i-1} q_{i-1})} S_i;
  // conjugating by FK(q)^-1 yields the end-effector (body) frame.
  const int n = model.dof();
  Eigen::Matrix<double, 6, Eigen::Dynamic> jac(6, n);
  Posed prefix;  // exp(S_1 q_1) ... exp(S_{i-1} q_{i-1})
  for (int i = 0; i < n; ++i) {
    jac.col(i) = adjoint(prefix) * Vec6d(model.screw_axes.col(i));
    prefix = prefix * se3_exp(model.screw_axes.col(i) * q[i]);
  }
  const Posed fk_inv = (prefix * model.home_pose).inverse();
  return adjoint(fk_inv) * jac;
}

bool near_limit(const RobotModel& model, const JointVector& q, int joint,
                double fraction) {
  if (joint < 0 || joint >= model.dof())
    throw std::out_of_range("near_limit: joint index " + std::to_string(joint));
  const double mid = 0.5 * (model.q_min[joint] + model.q_max[joint]);
  const double half_range = 0.5 * (model.q_max[joint] - model.q_min[joint]);
  return std::abs(q[joint] - mid) > fraction * half_range;
}

JointVector clamp_to_limits(const RobotModel& model, const JointVector& q) {
  return q.cwiseMax(model.q_min).cwiseMin(model.q_max);
}

JointVector random_configuration(const RobotModel& model, Rng& rng) {
  JointVector q(model.dof());
  for (int i = 0; i < model.dof(); ++i)
    q[i] = uniform_real(rng, model.q_min[i], model.q_max[i]);
  return q;
}

}  // namespace wbkin
