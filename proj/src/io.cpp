#include "wbkin/io.hpp"

#include <cstdio>
#include <istream>

#include "wbkin/errors.hpp"

namespace wbkin::io {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string json_array(const Eigen::Ref<const Eigen::VectorXd>& v) {
  std::string out = "[";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += format_double(v[i]);
  }
  out += ']';
  return out;
}

std::string pose_json(const Posed& pose) {
  const auto& q = pose.rotation.quaternion();
  return "{\"position\":" + json_array(pose.translation) + ",\"quaternion\":[" +
         format_double(q.w()) + ',' + format_double(q.x()) + ',' +
         format_double(q.y()) + ',' + format_double(q.z()) + "]}";
}

namespace {

const nlohmann::json& field(const nlohmann::json& j, const char* key) {
  if (!j.is_object()) throw ParseError("expected an object");
  const auto it = j.find(key);
  if (it == j.end())
    throw ParseError(std::string("missing field '") + key + "'");
  return *it;
}

double number(const nlohmann::json& j, const char* key) {
  const nlohmann::json& v = field(j, key);
  if (!v.is_number())
    throw ParseError(std::string("field '") + key + "': expected a number");
  return v.get<double>();
}

Eigen::VectorXd vector(const nlohmann::json& j, const char* key,
                       Eigen::Index n) {
  const nlohmann::json& v = field(j, key);
  if (!v.is_array() || (n >= 0 && static_cast<Eigen::Index>(v.size()) != n))
    throw ParseError(std::string("field '") + key + "': expected " +
                     std::to_string(n) + " numbers");
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    if (!v[static_cast<std::size_t>(i)].is_number())
      throw ParseError(std::string("field '") + key + "': expected numbers");
    out[i] = v[static_cast<std::size_t>(i)].get<double>();
  }
  return out;
}

void reject_unknown(const nlohmann::json& j,
                    std::initializer_list<const char*> keys) {
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* k : keys) known = known || item.key() == k;
    if (!known) throw ParseError("unknown field '" + item.key() + "'");
  }
}

}  // namespace

Posed parse_pose(const nlohmann::json& j) {
  reject_unknown(j, {"position", "quaternion"});
  const Eigen::VectorXd p = vector(j, "position", 3);
  const Eigen::VectorXd q = vector(j, "quaternion", 4);
  const double norm = q.norm();
  if (std::abs(norm - 1.0) > 1e-6)
    throw ParseError("field 'quaternion': norm " + format_double(norm) +
                     " is not unit within 1e-6");
  Posed pose;
  pose.rotation = Rotationd::from_quaternion(q[0], q[1], q[2], q[3]);
  pose.translation = p;
  return pose;
}

std::vector<nlohmann::json> parse_record_lines(std::istream& in) {
  std::vector<nlohmann::json> records;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    try {
      records.push_back(nlohmann::json::parse(line));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return records;
}

IkCase parse_ik_case(const nlohmann::json& j, int expected_dof) {
  reject_unknown(j, {"target", "warm_start", "q_real"});
  IkCase c;
  c.target = parse_pose(field(j, "target"));
  c.warm_start = vector(j, "warm_start", expected_dof);
  c.q_real = vector(j, "q_real", expected_dof);
  return c;
}

std::string ik_result_record(const IkResult& r) {
  return "{\"q\":" + json_array(r.q) +
         ",\"feasible\":" + (r.feasible ? "true" : "false") +
         ",\"iterations\":" + std::to_string(r.iterations) +
         ",\"final_error\":" + format_double(r.final_error) + "}";
}

RobotSnapshot parse_snapshot(const nlohmann::json& j) {
  reject_unknown(
      j, {"cmd_linear_velocity", "cmd_angular_velocity",
          "measured_linear_velocity", "measured_angular_velocity", "cmd_pose",
          "ee_pose", "joint_q", "joint_qd", "joint_qdd", "joint_torque",
          "joint_torque_rate", "collision_count", "foot_clearance",
          "foot_lift_time", "foot_slip", "ik_result", "arm_q_measured",
          "torso_pose_in_world", "body_twist", "last_action"});

  RobotSnapshot s;
  if (j.contains("cmd_linear_velocity"))
    s.cmd_linear_velocity = vector(j, "cmd_linear_velocity", 3);
  if (j.contains("cmd_angular_velocity"))
    s.cmd_angular_velocity = number(j, "cmd_angular_velocity");
  if (j.contains("measured_linear_velocity"))
    s.measured_linear_velocity = vector(j, "measured_linear_velocity", 3);
  if (j.contains("measured_angular_velocity"))
    s.measured_angular_velocity = number(j, "measured_angular_velocity");
  if (j.contains("cmd_pose")) s.cmd_pose = parse_pose(field(j, "cmd_pose"));
  if (j.contains("ee_pose")) s.ee_pose = parse_pose(field(j, "ee_pose"));
  if (j.contains("joint_q")) s.joint_q = vector(j, "joint_q", 18);
  if (j.contains("joint_qd")) s.joint_qd = vector(j, "joint_qd", 18);
  if (j.contains("joint_qdd")) s.joint_qdd = vector(j, "joint_qdd", 18);
  if (j.contains("joint_torque"))
    s.joint_torque = vector(j, "joint_torque", 18);
  if (j.contains("joint_torque_rate"))
    s.joint_torque_rate = vector(j, "joint_torque_rate", 18);
  if (j.contains("collision_count")) {
    const double c = number(j, "collision_count");
    if (c < 0) throw ParseError("field 'collision_count': must be >= 0");
    s.collision_count = static_cast<int>(c);
  }
  if (j.contains("foot_clearance"))
    s.foot_clearance = vector(j, "foot_clearance", 4);
  if (j.contains("foot_lift_time"))
    s.foot_lift_time = vector(j, "foot_lift_time", 4);
  if (j.contains("foot_slip")) s.foot_slip = vector(j, "foot_slip", 4);
  if (j.contains("ik_result")) {
    const nlohmann::json& ik = field(j, "ik_result");
    reject_unknown(ik, {"q", "feasible", "iterations", "final_error"});
    s.ik_result.q = vector(ik, "q", -1);
    const nlohmann::json& feasible = field(ik, "feasible");
    if (!feasible.is_boolean())
      throw ParseError("field 'feasible': expected a boolean");
    s.ik_result.feasible = feasible.get<bool>();
    if (ik.contains("iterations"))
      s.ik_result.iterations = static_cast<int>(number(ik, "iterations"));
    if (ik.contains("final_error"))
      s.ik_result.final_error = number(ik, "final_error");
  }
  if (j.contains("arm_q_measured"))
    s.arm_q_measured = vector(j, "arm_q_measured", -1);
  if (j.contains("torso_pose_in_world"))
    s.torso_pose_in_world = parse_pose(field(j, "torso_pose_in_world"));
  if (j.contains("body_twist")) s.body_twist = vector(j, "body_twist", 6);
  if (j.contains("last_action")) s.last_action = vector(j, "last_action", 18);
  return s;
}

std::string reward_record(const RewardBreakdown& b) {
  const auto& names = reward_term_names();
  std::string out = "{\"raw\":{";
  for (int i = 0; i < kRewardTermCount; ++i) {
    if (i) out += ',';
    out += std::string("\"") + names[i] + "\":" + format_double(b.raw[i]);
  }
  out += "},\"weighted\":{";
  for (int i = 0; i < kRewardTermCount; ++i) {
    if (i) out += ',';
    out += std::string("\"") + names[i] + "\":" + format_double(b.weighted[i]);
  }
  out += "},\"total\":" + format_double(b.total) + "}";
  return out;
}

AccuracySample parse_accuracy_sample(const nlohmann::json& j) {
  reject_unknown(j, {"target", "achieved"});
  return {parse_pose(field(j, "target")), parse_pose(field(j, "achieved"))};
}

VelocitySample parse_velocity_sample(const nlohmann::json& j) {
  reject_unknown(j, {"cmd_linear", "measured_linear", "cmd_angular",
                     "measured_angular"});
  VelocitySample s;
  s.cmd_linear = vector(j, "cmd_linear", 3);
  s.measured_linear = vector(j, "measured_linear", 3);
  s.cmd_angular = number(j, "cmd_angular");
  s.measured_angular = number(j, "measured_angular");
  return s;
}

IkRateCase parse_ik_rate_case(const nlohmann::json& j) {
  reject_unknown(j, {"torso", "world_target"});
  IkRateCase c;
  c.torso.pose_in_world = parse_pose(field(j, "torso"));
  c.world_target = parse_pose(field(j, "world_target"));
  return c;
}

std::string waypoint_record(const Waypoint& w) {
  return "{\"t\":" + format_double(w.t) + ",\"pose\":" + pose_json(w.pose) +
         ",\"twist\":" + json_array(w.twist) + "}";
}

std::string observation_record(
    const char* kind, const Eigen::Ref<const Eigen::VectorXd>& values) {
  return std::string("{\"kind\":\"") + kind +
         "\",\"values\":" + json_array(values) + "}";
}

std::string feasibility_map_text(const FeasibilityMap& map) {
  const auto& q = map.rotation.quaternion();
  std::string out = "{\"x_min\":" + format_double(map.grid.x_min) +
                    ",\"x_max\":" + format_double(map.grid.x_max) +
                    ",\"y_min\":" + format_double(map.grid.y_min) +
                    ",\"y_max\":" + format_double(map.grid.y_max) +
                    ",\"z\":" + format_double(map.grid.z) +
                    ",\"nx\":" + std::to_string(map.grid.nx) +
                    ",\"ny\":" + std::to_string(map.grid.ny) +
                    ",\"seed\":" + std::to_string(map.seed) +
                    ",\"quaternion\":[" + format_double(q.w()) + ',' +
                    format_double(q.x()) + ',' + format_double(q.y()) + ',' +
                    format_double(q.z()) + "]}\n";
  for (int iy = 0; iy < map.grid.ny; ++iy) {
    for (int ix = 0; ix < map.grid.nx; ++ix)
      out += map.at(ix, iy) ? '1' : '0';
    out += '\n';
  }
  return out;
}

}  // namespace wbkin::io
