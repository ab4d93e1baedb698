#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "wbkin/io.hpp"

namespace {

using namespace wbkin;

struct CommonOpts {
  std::string model_path;
  std::uint64_t seed = 0;
  double tol = 1e-3;
  int max_iters = 10;
  double delta = 1e-3;
  int restarts = 4;
  std::vector<double> we_diag;
  std::string out_path;
};

void add_seed_option(CLI::App& cmd, CommonOpts& opts) {
  cmd.add_option("--seed", opts.seed, "Seed for all randomness")
      ->envname("WBKIN_SEED");
}

void add_model_option(CLI::App& cmd, CommonOpts& opts) {
  cmd.add_option("--model", opts.model_path, "Robot model JSON file")
      ->required();
}

void add_ik_options(CLI::App& cmd, CommonOpts& opts) {
  cmd.add_option("--tol", opts.tol, "IK success threshold on e = 0.5 e'We");
  cmd.add_option("--max-iters", opts.max_iters, "IK iteration cap");
  cmd.add_option("--delta", opts.delta, "IK damping bias");
  cmd.add_option("--restarts", opts.restarts, "Extra random IK starts");
  cmd.add_option("--we-diag", opts.we_diag,
                 "Diagonal of the 6x6 twist-error weight (rotation first)")
      ->expected(6);
}

void add_out_option(CLI::App& cmd, CommonOpts& opts) {
  cmd.add_option("--out", opts.out_path, "Output path (default stdout)");
}

IkParams make_params(const CommonOpts& opts) {
  IkParams params;
  params.tol = opts.tol;
  params.max_iters = opts.max_iters;
  params.delta = opts.delta;
  if (!opts.we_diag.empty()) {
    params.weight.setZero();
    for (int i = 0; i < 6; ++i) params.weight(i, i) = opts.we_diag[i];
  }
  validate_params(params);
  return params;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

RobotModel load_model(const CommonOpts& opts) {
  return parse_model(read_file(opts.model_path));
}

std::vector<nlohmann::json> read_records(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return io::parse_record_lines(in);
}

void write_output(const CommonOpts& opts, const std::string& text) {
  if (opts.out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(opts.out_path, std::ios::binary);
  if (!out) throw ParseError("cannot open '" + opts.out_path + "' for writing");
  out << text;
}

Posed parse_pose_flag(const std::string& text, const char* flag) {
  try {
    return io::parse_pose(nlohmann::json::parse(text));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string(flag) + ": " + e.what());
  } catch (const ParseError& e) {
    throw ParseError(std::string(flag) + ": " + e.what());
  }
}

template <typename Fn>
auto at_record(std::size_t index, Fn&& fn) {
  try {
    return fn();
  } catch (const ParseError& e) {
    throw ParseError("record " + std::to_string(index + 1) + ": " + e.what());
  }
}

int run_fk(const CommonOpts& opts, const std::string& input) {
  const RobotModel model = load_model(opts);
  const auto records = read_records(input);
  std::string out;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const JointVector q = at_record(i, [&] {
      const nlohmann::json& j = records[i];
      if (!j.is_array() || static_cast<int>(j.size()) != model.dof())
        throw ParseError("expected an array of " +
                         std::to_string(model.dof()) + " joint values");
      JointVector v(model.dof());
      for (int k = 0; k < model.dof(); ++k) v[k] = j[k].get<double>();
      return v;
    });
    out += io::pose_json(forward_kinematics(model, q)) + "\n";
  }
  write_output(opts, out);
  return 0;
}

int run_ik(const CommonOpts& opts, const std::string& input) {
  const RobotModel model = load_model(opts);
  const IkParams params = make_params(opts);
  const auto records = read_records(input);
  std::string out;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const IkCase c =
        at_record(i, [&] { return io::parse_ik_case(records[i], model.dof()); });
    out += io::ik_result_record(solve_ik(model, c, params)) + "\n";
  }
  write_output(opts, out);
  return 0;
}

int run_plan(const CommonOpts& opts, const std::string& t_init_text,
             const std::string& t_end_text, double t_total, double dt,
             double radius) {
  TrajectorySpec spec;
  spec.t_total = t_total;
  if (!t_init_text.empty()) spec.t_init = parse_pose_flag(t_init_text, "--t-init");
  if (t_end_text.empty()) {
    Rng rng = make_stream(opts.seed);
    spec.t_end = sample_target(spec.t_init, radius, rng);
  } else {
    spec.t_end = parse_pose_flag(t_end_text, "--t-end");
  }
  std::string out;
  for (const Waypoint& w : generate_trajectory(spec, dt))
    out += io::waypoint_record(w) + "\n";
  write_output(opts, out);
  return 0;
}

int run_feasmap(const CommonOpts& opts, const FeasibilityGrid& grid,
                const std::string& torso_text,
                const std::vector<double>& quat) {
  const RobotModel model = load_model(opts);
  const IkParams params = make_params(opts);
  TorsoState torso;
  if (!torso_text.empty())
    torso.pose_in_world = parse_pose_flag(torso_text, "--torso");
  Rotationd rotation;
  if (!quat.empty())
    rotation = Rotationd::from_quaternion(quat[0], quat[1], quat[2], quat[3]);
  const FeasibilityMap map = feasibility_map(model, torso, grid, rotation,
                                             params, opts.restarts, opts.seed);
  write_output(opts, io::feasibility_map_text(map));
  return 0;
}

int run_reward(const CommonOpts& opts, const std::string& input,
               const std::string& weights_path, bool growing) {
  const RobotModel model = load_model(opts);
  RewardWeights weights;
  if (!weights_path.empty()) {
    const nlohmann::json j = nlohmann::json::parse(read_file(weights_path));
    const auto& names = reward_term_names();
    std::array<double*, kRewardTermCount> slots = {
        &weights.kinematics, &weights.linear_velocity,
        &weights.angular_velocity, &weights.pose_tracking, &weights.torque,
        &weights.torque_smooth, &weights.joint_accel, &weights.joint_limit,
        &weights.collision, &weights.clearance, &weights.lift_time,
        &weights.slip};
    for (const auto& item : j.items()) {
      bool known = false;
      for (int i = 0; i < kRewardTermCount; ++i) {
        if (item.key() == names[i]) {
          *slots[i] = item.value().get<double>();
          known = true;
        }
      }
      if (!known) throw ParseError("weights: unknown term '" + item.key() + "'");
    }
  }
  const RewardExponent mode =
      growing ? RewardExponent::kGrowing : RewardExponent::kDecaying;
  const auto records = read_records(input);
  if (records.empty()) throw ParseError("reward: no snapshot records");

  std::string out;
  RewardBreakdown aggregate;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const RobotSnapshot s =
        at_record(i, [&] { return io::parse_snapshot(records[i]); });
    const RewardBreakdown b = total_reward(s, weights, model, mode);
    for (int k = 0; k < kRewardTermCount; ++k) {
      aggregate.raw[k] += b.raw[k];
      aggregate.weighted[k] += b.weighted[k];
    }
    aggregate.total += b.total;
    out += io::reward_record(b) + "\n";
  }
  const double n = static_cast<double>(records.size());
  for (int k = 0; k < kRewardTermCount; ++k) {
    aggregate.raw[k] /= n;
    aggregate.weighted[k] /= n;
  }
  aggregate.total /= n;
  out += io::reward_record(aggregate) + "\n";
  write_output(opts, out);
  return 0;
}

int run_metrics(const CommonOpts& opts, const std::string& accuracy_path,
                const std::string& velocity_path,
                const std::string& ik_cases_path) {
  const RobotModel model = load_model(opts);
  const IkParams params = make_params(opts);

  std::vector<AccuracySample> accuracy;
  for (const auto& j : read_records(accuracy_path))
    accuracy.push_back(
        at_record(accuracy.size(), [&] { return io::parse_accuracy_sample(j); }));
  std::vector<VelocitySample> velocity;
  for (const auto& j : read_records(velocity_path))
    velocity.push_back(
        at_record(velocity.size(), [&] { return io::parse_velocity_sample(j); }));
  std::vector<IkRateCase> cases;
  for (const auto& j : read_records(ik_cases_path))
    cases.push_back(
        at_record(cases.size(), [&] { return io::parse_ik_rate_case(j); }));

  auto [pe, re] = pose_errors(accuracy);
  const VelocityErrorSummary vel = velocity_tracking_errors(velocity);
  const double rate =
      ik_solution_rate(cases, model, params, opts.restarts, opts.seed);

  const std::string out =
      "{\"pe_p60\":" + io::format_double(percentile(pe, 60.0)) +
      ",\"re_p60\":" + io::format_double(percentile(re, 60.0)) +
      ",\"lvte_mean\":" + io::format_double(vel.lvte_mean) +
      ",\"lvte_std\":" + io::format_double(vel.lvte_std) +
      ",\"avte_mean\":" + io::format_double(vel.avte_mean) +
      ",\"avte_std\":" + io::format_double(vel.avte_std) +
      ",\"ik_rate\":" + io::format_double(rate) + "}\n";
  write_output(opts, out);
  return 0;
}

int run_layout(const CommonOpts& opts) {
  std::string out = "kind field offset size\n";
  for (const LayoutField& f : actor_layout())
    out += std::string("actor ") + f.name + ' ' + std::to_string(f.offset) +
           ' ' + std::to_string(f.size) + '\n';
  for (const LayoutField& f : critic_layout())
    out += std::string("critic ") + f.name + ' ' + std::to_string(f.offset) +
           ' ' + std::to_string(f.size) + '\n';
  write_output(opts, out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Whole-body kinematic feasibility toolkit: POE forward kinematics, "
      "damped least-squares IK, feasibility maps, SE(3) trajectory plans, "
      "reward breakdowns, tracking metrics."};
  app.require_subcommand(1);
  app.set_config("--config", "", "Config file with flag defaults (flags win)");

  CommonOpts opts;
  std::string input, t_init_text, t_end_text, torso_text;
  std::string accuracy_path, velocity_path, ik_cases_path, weights_path;
  std::vector<double> quat;
  double dt = 0.02, t_total = 3.0, radius = 1.0;
  bool growing = false;
  FeasibilityGrid grid{-2.5, 2.5, -2.5, 2.5, 0.0, 101, 101};

  CLI::App* fk = app.add_subcommand(
      "fk", "Forward kinematics; input lines are arrays of joint values");
  add_model_option(*fk, opts);
  add_out_option(*fk, opts);
  fk->add_option("input", input, "Configuration list file")->required();

  CLI::App* ik = app.add_subcommand(
      "ik", "Damped least-squares IK over {target, warm_start, q_real} lines");
  add_model_option(*ik, opts);
  add_ik_options(*ik, opts);
  add_out_option(*ik, opts);
  ik->add_option("input", input, "IK case file")->required();

  CLI::App* plan = app.add_subcommand(
      "plan", "Cubic SE(3) trajectory between two poses; the end pose is "
              "sampled (uniform rotation, ball translation) when not given");
  add_seed_option(*plan, opts);
  add_out_option(*plan, opts);
  plan->add_option("--t-init", t_init_text, "Initial pose JSON (default identity)");
  plan->add_option("--t-end", t_end_text, "Final pose JSON (default sampled)");
  plan->add_option("--t-total", t_total, "Duration in seconds");
  plan->add_option("--dt", dt, "Sample period in seconds");
  plan->add_option("--radius", radius, "Sampling ball radius in meters");

  CLI::App* feasmap = app.add_subcommand(
      "feasmap", "Feasibility map of world targets over an x/y grid");
  add_model_option(*feasmap, opts);
  add_seed_option(*feasmap, opts);
  add_ik_options(*feasmap, opts);
  add_out_option(*feasmap, opts);
  feasmap->add_option("--x-min", grid.x_min, "Grid minimum x");
  feasmap->add_option("--x-max", grid.x_max, "Grid maximum x");
  feasmap->add_option("--y-min", grid.y_min, "Grid minimum y");
  feasmap->add_option("--y-max", grid.y_max, "Grid maximum y");
  feasmap->add_option("--z", grid.z, "Target height");
  feasmap->add_option("--nx", grid.nx, "Nodes along x");
  feasmap->add_option("--ny", grid.ny, "Nodes along y");
  feasmap->add_option("--torso", torso_text, "Torso pose JSON (default identity)");
  feasmap->add_option("--quat", quat,
                      "Target rotation w x y z (default identity)")
      ->expected(4);

  CLI::App* reward = app.add_subcommand(
      "reward", "Reward breakdown per snapshot line plus a mean record");
  add_model_option(*reward, opts);
  add_out_option(*reward, opts);
  reward->add_option("input", input, "Snapshot log")->required();
  reward->add_option("--weights", weights_path,
                     "JSON object overriding term weights by name");
  reward->add_flag("--growing-exponent", growing,
                   "Use exp(+error) tracking terms instead of exp(-error)");

  CLI::App* metrics = app.add_subcommand(
      "metrics", "Accuracy percentiles, velocity errors, IK solution rate");
  add_model_option(*metrics, opts);
  add_seed_option(*metrics, opts);
  add_ik_options(*metrics, opts);
  add_out_option(*metrics, opts);
  metrics->add_option("--accuracy", accuracy_path, "Accuracy sample file")
      ->required();
  metrics->add_option("--velocity", velocity_path, "Velocity sample file")
      ->required();
  metrics->add_option("--ik-cases", ik_cases_path, "IK rate case file")
      ->required();

  CLI::App* layout = app.add_subcommand(
      "layout", "Observation vector field names, offsets, sizes");
  add_out_option(*layout, opts);

  CLI11_PARSE(app, argc, argv);

  try {
    if (fk->parsed()) return run_fk(opts, input);
    if (ik->parsed()) return run_ik(opts, input);
    if (plan->parsed())
      return run_plan(opts, t_init_text, t_end_text, t_total, dt, radius);
    if (feasmap->parsed()) return run_feasmap(opts, grid, torso_text, quat);
    if (reward->parsed()) return run_reward(opts, input, weights_path, growing);
    if (metrics->parsed())
      return run_metrics(opts, accuracy_path, velocity_path, ik_cases_path);
    if (layout->parsed()) return run_layout(opts);
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  } catch (const std::out_of_range& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  } catch (const NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
