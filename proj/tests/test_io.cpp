#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "support.hpp"
#include "wbkin/io.hpp"

using namespace wbkin;
using nlohmann::json;

TEST_CASE("format_double is %.17g: shortest-exact for doubles") {
  CHECK(io::format_double(0.1) == "0.10000000000000001");
  CHECK(io::format_double(1.0) == "1");
  CHECK(io::format_double(-2.5) == "-2.5");
  CHECK(io::format_double(0.0) == "0");
  const double parsed = std::stod(io::format_double(1.0 / 3.0));
  CHECK(parsed == 1.0 / 3.0);  // roundtrips bitwise
}

TEST_CASE("pose json roundtrips bitwise") {
  Posed pose;
  pose.rotation = so3_exp(Vec3d(0.3, -0.4, 1.1));
  pose.translation = Vec3d(0.1, 2.0 / 3.0, -5.25);
  const std::string text = io::pose_json(pose);
  const Posed back = io::parse_pose(json::parse(text));
  CHECK(back.translation == pose.translation);
  CHECK(back.rotation.quaternion().coeffs() ==
        pose.rotation.quaternion().coeffs());
}

TEST_CASE("pose parsing enforces the quaternion contract") {
  json j = {{"position", {0, 0, 0}}, {"quaternion", {1.0, 0, 0, 0}}};
  CHECK_NOTHROW(io::parse_pose(j));

  j["quaternion"] = {1.0 + 5e-7, 0, 0, 0};  // within tolerance: normalized
  const Posed p = io::parse_pose(j);
  CHECK(std::abs(p.rotation.quaternion().norm() - 1.0) < 1e-12);

  j["quaternion"] = {1.0 + 2e-6, 0, 0, 0};  // outside tolerance
  CHECK_THROWS_AS(io::parse_pose(j), ParseError);

  j["quaternion"] = {1.0, 0, 0};  // wrong arity
  CHECK_THROWS_AS(io::parse_pose(j), ParseError);

  j = {{"position", {0, 0, 0}}, {"quaternion", {1.0, 0, 0, 0}}, {"extra", 1}};
  CHECK_THROWS_WITH_AS(io::parse_pose(j), doctest::Contains("extra"),
                       ParseError);

  j = {{"quaternion", {1.0, 0, 0, 0}}};
  CHECK_THROWS_WITH_AS(io::parse_pose(j), doctest::Contains("position"),
                       ParseError);
}

TEST_CASE("record lines skip blanks and cite the offending line") {
  std::istringstream good("{\"a\":1}\n\n   \n{\"b\":2}\n");
  const auto records = io::parse_record_lines(good);
  REQUIRE(records.size() == 2);
  CHECK(records[0]["a"] == 1);
  CHECK(records[1]["b"] == 2);

  std::istringstream bad("{\"a\":1}\n\n{}\nnot json\n");
  CHECK_THROWS_WITH_AS(io::parse_record_lines(bad), doctest::Contains("line 4"),
                       ParseError);
}

TEST_CASE("ik case parsing pins dof and key set") {
  json j = {{"target",
             {{"position", {1, 0, 0}}, {"quaternion", {1, 0, 0, 0}}}},
            {"warm_start", {0.0, 0.0}},
            {"q_real", {0.1, 0.2}}};
  const IkCase c = io::parse_ik_case(j, 2);
  CHECK(c.warm_start.size() == 2);
  CHECK(c.q_real[1] == 0.2);
  CHECK(c.target.translation.x() == 1.0);

  CHECK_THROWS_AS(io::parse_ik_case(j, 6), ParseError);
  j["typo"] = 3;
  CHECK_THROWS_WITH_AS(io::parse_ik_case(j, 2), doctest::Contains("typo"),
                       ParseError);
}

TEST_CASE("ik result record layout is fixed") {
  IkResult r;
  r.q = Eigen::Vector2d(0.5, -1.0);
  r.feasible = true;
  r.iterations = 3;
  r.final_error = 0.25;
  CHECK(io::ik_result_record(r) ==
        "{\"q\":[0.5,-1],\"feasible\":true,\"iterations\":3,"
        "\"final_error\":0.25}");
  r.feasible = false;
  r.final_error = std::numeric_limits<double>::quiet_NaN();
  const std::string rec = io::ik_result_record(r);
  CHECK(rec.find("\"feasible\":false") != std::string::npos);
  CHECK(rec.find("\"final_error\":nan") != std::string::npos);
}

TEST_CASE("snapshot parsing fills defaults and rejects junk") {
  const RobotSnapshot empty = io::parse_snapshot(json::object());
  CHECK(empty.joint_q.size() == 18);
  CHECK(empty.joint_q.norm() == 0.0);
  CHECK(empty.collision_count == 0);
  CHECK_FALSE(empty.ik_result.feasible);

  json j = {{"cmd_angular_velocity", 0.4},
            {"collision_count", 2},
            {"arm_q_measured", {0.1, 0.2, 0.3, 0.4, 0.5, 0.6}},
            {"ik_result",
             {{"q", {0.1, 0.2, 0.3, 0.4, 0.5, 0.6}}, {"feasible", true}}}};
  const RobotSnapshot s = io::parse_snapshot(j);
  CHECK(s.cmd_angular_velocity == 0.4);
  CHECK(s.collision_count == 2);
  CHECK(s.ik_result.feasible);
  CHECK(s.ik_result.q.size() == 6);

  json bad = {{"not_a_field", 1}};
  CHECK_THROWS_WITH_AS(io::parse_snapshot(bad),
                       doctest::Contains("not_a_field"), ParseError);
  json neg = {{"collision_count", -1}};
  CHECK_THROWS_AS(io::parse_snapshot(neg), ParseError);
  json short_q = {{"joint_q", {1, 2, 3}}};
  CHECK_THROWS_AS(io::parse_snapshot(short_q), ParseError);
}

TEST_CASE("reward record carries every term by name, in order") {
  RewardBreakdown b;
  for (int i = 0; i < kRewardTermCount; ++i) {
    b.raw[i] = i;
    b.weighted[i] = 2 * i;
  }
  b.total = 7.5;
  const std::string text = io::reward_record(b);
  const json j = json::parse(text);
  CHECK(j["total"] == 7.5);
  CHECK(j["raw"]["kinematics"] == 0.0);
  CHECK(j["raw"]["slip"] == 11.0);
  CHECK(j["weighted"]["pose_tracking"] == 6.0);
  // key order in the emitted text follows reward_term_names
  CHECK(text.find("kinematics") < text.find("linear_velocity"));
  CHECK(text.find("lift_time") < text.find("slip"));
  CHECK(text.rfind("\"total\":7.5}") == text.size() - 12);
}

TEST_CASE("sample parsers accept the documented keys only") {
  const json pose_ok = {{"position", {0, 0, 0}}, {"quaternion", {1, 0, 0, 0}}};
  json acc = {{"target", pose_ok}, {"achieved", pose_ok}};
  CHECK_NOTHROW(io::parse_accuracy_sample(acc));
  acc["extra"] = 1;
  CHECK_THROWS_AS(io::parse_accuracy_sample(acc), ParseError);

  json vel = {{"cmd_linear", {1, 0, 0}},
              {"measured_linear", {0.5, 0, 0}},
              {"cmd_angular", 0.2},
              {"measured_angular", 0.1}};
  const VelocitySample vs = io::parse_velocity_sample(vel);
  CHECK(vs.cmd_linear.x() == 1.0);
  CHECK(vs.measured_angular == 0.1);
  vel.erase("cmd_angular");
  CHECK_THROWS_AS(io::parse_velocity_sample(vel), ParseError);

  json rate = {{"torso", pose_ok}, {"world_target", pose_ok}};
  const IkRateCase rc = io::parse_ik_rate_case(rate);
  CHECK(rc.world_target.translation.norm() == 0.0);
  rate["seed"] = 1;
  CHECK_THROWS_AS(io::parse_ik_rate_case(rate), ParseError);
}

TEST_CASE("waypoint and observation records have a stable shape") {
  Waypoint w;
  w.t = 0.5;
  w.pose.translation = Vec3d(1, 2, 3);
  w.twist << 0, 0, 0, 0.25, 0, 0;
  CHECK(io::waypoint_record(w) ==
        "{\"t\":0.5,\"pose\":{\"position\":[1,2,3],"
        "\"quaternion\":[1,0,0,0]},\"twist\":[0,0,0,0.25,0,0]}");

  Eigen::VectorXd values(3);
  values << 1.0, -0.5, 2.0;
  CHECK(io::observation_record("actor", values) ==
        "{\"kind\":\"actor\",\"values\":[1,-0.5,2]}");
}

TEST_CASE("feasibility map text: one header line then 0/1 rows") {
  FeasibilityMap map;
  map.grid.x_min = -1.0;
  map.grid.x_max = 1.0;
  map.grid.y_min = 0.0;
  map.grid.y_max = 2.0;
  map.grid.z = 0.25;
  map.grid.nx = 3;
  map.grid.ny = 2;
  map.seed = 9;
  map.values = {1, 0, 1, 0, 0, 1};  // iy = 0 row first
  CHECK(io::feasibility_map_text(map) ==
        "{\"x_min\":-1,\"x_max\":1,\"y_min\":0,\"y_max\":2,\"z\":0.25,"
        "\"nx\":3,\"ny\":2,\"seed\":9,\"quaternion\":[1,0,0,0]}\n"
        "101\n001\n");
}
