#include "wbkin/observations.hpp"

#include <stdexcept>

namespace wbkin {

namespace {

constexpr LayoutField kActorFields[] = {
    {"command", 0, 9},        {"roll_pitch", 9, 2},
    {"joint_position", 11, 18}, {"joint_velocity", 29, 18},
    {"body_twist", 47, 6},    {"ee_pose", 53, 6},
    {"last_action", 59, 18},
};

constexpr LayoutField kCriticFields[] = {
    {"command", 0, 9},           {"joint_states", 9, 72},
    {"planned_ee_twist", 81, 6}, {"q_desired", 87, 6},
    {"ik_status", 93, 1},        {"body_twist", 94, 6},
    {"action_history", 100, 36}, {"foot_clearance", 136, 4},
    {"foot_period", 140, 4},     {"foot_position", 144, 12},
    {"foot_slip", 156, 4},       {"foot_impulse", 160, 4},
    {"torso_disturbance", 164, 6}, {"ee_pose", 170, 6},
    {"ee_twist", 176, 6},        {"ee_disturbance", 182, 6},
    {"link_masses", 188, 6},     {"jacobian", 194, 36},
};

template <std::size_t N>
constexpr bool layout_consistent(const LayoutField (&fields)[N], int total) {
  int cursor = 0;
  for (const LayoutField& f : fields) {
    if (f.offset != cursor) return false;
    cursor += f.size;
  }
  return cursor == total;
}

static_assert(layout_consistent(kActorFields, kActorDim));
static_assert(layout_consistent(kCriticFields, kCriticDim));

Eigen::Matrix<double, 6, 1> pose_coordinates(const Posed& pose) {
  Eigen::Matrix<double, 6, 1> out;
  out.head<3>() = pose.translation;
  out.tail<3>() = so3_log(pose.rotation);
  return out;
}

void add_noise(Eigen::Ref<Eigen::VectorXd> block, double std, Rng& rng) {
  if (std == 0.0) return;
  for (Eigen::Index i = 0; i < block.size(); ++i) block[i] += normal(rng, std);
}

void require_size(const Eigen::VectorXd& v, Eigen::Index n, const char* row) {
  if (v.size() != n)
    throw std::invalid_argument(std::string("observation row '") + row +
                                "': expected " + std::to_string(n) +
                                " values, got " + std::to_string(v.size()));
}

}  // namespace

std::span<const LayoutField> actor_layout() { return kActorFields; }
std::span<const LayoutField> critic_layout() { return kCriticFields; }

Eigen::Matrix<double, 9, 1> command_block(const RobotSnapshot& s) {
  Eigen::Matrix<double, 9, 1> cmd;
  cmd[0] = s.cmd_linear_velocity.x();
  cmd[1] = s.cmd_linear_velocity.y();
  cmd[2] = s.cmd_angular_velocity;
  cmd.tail<6>() = pose_coordinates(s.cmd_pose);
  return cmd;
}

ActorObservation build_actor_obs(const RobotSnapshot& s,
                                 std::span<const RobotSnapshot> history,
                                 const NoiseModel& noise, Rng& rng) {
  if (noise.hysteresis_delay_steps < 0)
    throw std::invalid_argument("noise model: negative delay");
  const std::size_t delay =
      static_cast<std::size_t>(noise.hysteresis_delay_steps);
  if (delay > history.size())
    throw std::out_of_range("actor observation: history shallower than delay");
  const RobotSnapshot& lagged =
      delay == 0 ? s : history[history.size() - delay];
  require_size(lagged.joint_q, 18, "joint_position");
  require_size(lagged.joint_qd, 18, "joint_velocity");
  require_size(s.last_action, 18, "last_action");

  ActorObservation obs;
  obs.segment<9>(0) = command_block(s);
  const Vec3d ypr = yaw_pitch_roll(lagged.torso_pose_in_world.rotation);
  obs[9] = ypr[2];   // roll
  obs[10] = ypr[1];  // pitch
  obs.segment<18>(11) = lagged.joint_q;
  obs.segment<18>(29) = lagged.joint_qd;
  obs.segment<6>(47) = lagged.body_twist;
  obs.segment<6>(53) = pose_coordinates(lagged.ee_pose);
  obs.segment<18>(59) = s.last_action;

  add_noise(obs.segment<18>(11), noise.joint_position_std, rng);
  add_noise(obs.segment<18>(29), noise.joint_velocity_std, rng);
  add_noise(obs.segment<6>(47), noise.body_twist_std, rng);
  add_noise(obs.segment<6>(53), noise.ee_pose_std, rng);
  return obs;
}

CriticObservation build_critic_obs(const RobotSnapshot& s,
                                   const CriticAux& aux) {
  require_size(s.joint_q, 18, "joint_states");
  require_size(s.joint_qd, 18, "joint_states");
  require_size(s.joint_torque, 18, "joint_states");
  require_size(s.joint_torque_rate, 18, "joint_states");
  require_size(aux.q_desired, 6, "q_desired");

  CriticObservation obs;
  obs.segment<9>(0) = command_block(s);
  obs.segment<18>(9) = s.joint_q;
  obs.segment<18>(27) = s.joint_qd;
  obs.segment<18>(45) = s.joint_torque;
  obs.segment<18>(63) = s.joint_torque_rate;
  obs.segment<6>(81) = aux.planned_ee_twist;
  obs.segment<6>(87) = aux.q_desired;
  obs[93] = s.ik_result.feasible ? 1.0 : 0.0;
  obs.segment<6>(94) = s.body_twist;
  obs.segment<36>(100) = aux.action_history;
  obs.segment<4>(136) = s.foot_clearance;
  obs.segment<4>(140) = s.foot_lift_time;
  obs.segment<12>(144) = aux.foot_position;
  obs.segment<4>(156) = s.foot_slip;
  obs.segment<4>(160) = aux.foot_touchdown_impulse;
  obs.segment<6>(164) = aux.torso_disturbance;
  obs.segment<6>(170) = pose_coordinates(s.ee_pose);
  obs.segment<6>(176) = aux.ee_twist;
  obs.segment<6>(182) = aux.ee_disturbance;
  obs.segment<6>(188) = aux.link_masses;
  for (int r = 0; r < 6; ++r)
    obs.segment<6>(194 + 6 * r) = aux.jacobian.row(r).transpose();
  return obs;
}

}  // namespace wbkin
