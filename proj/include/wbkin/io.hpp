#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "wbkin/feasibility.hpp"
#include "wbkin/metrics.hpp"
#include "wbkin/observations.hpp"
#include "wbkin/planner.hpp"
#include "wbkin/rewards.hpp"

// Record-oriented serialization. Parsing goes through nlohmann::json; every
// writer emits hand-assembled text with %.17g numbers and a fixed key order
// so outputs are byte-stable across runs and platforms.
namespace wbkin::io {

std::string format_double(double v);

std::string json_array(const Eigen::Ref<const Eigen::VectorXd>& v);
std::string pose_json(const Posed& pose);

/// {position:[x,y,z], quaternion:[w,x,y,z]}; quaternion must be unit within
/// 1e-6 (normalized on read). Throws ParseError.
Posed parse_pose(const nlohmann::json& j);

/// One whitespace-trimmed JSON value per nonempty line. ParseError carries
/// the 1-based line number.
std::vector<nlohmann::json> parse_record_lines(std::istream& in);

IkCase parse_ik_case(const nlohmann::json& j, int expected_dof);
std::string ik_result_record(const IkResult& r);

RobotSnapshot parse_snapshot(const nlohmann::json& j);
std::string reward_record(const RewardBreakdown& b);

AccuracySample parse_accuracy_sample(const nlohmann::json& j);
VelocitySample parse_velocity_sample(const nlohmann::json& j);
IkRateCase parse_ik_rate_case(const nlohmann::json& j);

std::string waypoint_record(const Waypoint& w);
std::string observation_record(const char* kind,
                               const Eigen::Ref<const Eigen::VectorXd>& values);

/// Header line "x_min x_max y_min y_max z nx ny seed {pose-json of rotation}"
/// then ny lines of nx '0'/'1' characters, row iy = 0 first.
std::string feasibility_map_text(const FeasibilityMap& map);

}  // namespace wbkin::io
