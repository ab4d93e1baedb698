#pragma once

#include <limits>

#include "wbkin/robot_model.hpp"

namespace wbkin {

/// Damped least-squares solver parameters. The damping term is
/// error-adaptive: D = J^T W J + 0.5 (e^T W e + delta) I.
struct IkParams {
  Mat6d weight = Mat6d::Identity();  // W_e; symmetric positive semidefinite
  double delta = 1e-3;               // constant damping bias, >= 0
  int max_iters = 10;
  double tol = 1e-3;  // success threshold on e = 0.5 e^T W e
};

/// Throws std::invalid_argument on malformed parameters.
void validate_params(const IkParams& params);

struct IkResult {
  JointVector q;
  bool feasible = false;
  int iterations = 0;
  double final_error = std::numeric_limits<double>::quiet_NaN();
};

struct IkCase {
  Posed target;  // arm-base frame
  JointVector warm_start;
  JointVector q_real;
};

/// Iterative damped least-squares descent from the warm start, with
/// joint-limit clamping and column zeroing. Success requires
/// e = 0.5 e^T W e <= tol within max_iters iterations; on failure the result
/// carries q_real bitwise and feasible = false. Non-finite intermediates
/// raise NumericError, which is distinct from infeasibility. An iterate whose
/// error twist is branch-ambiguous (relative rotation at pi) ends the attempt
/// unconverged instead of raising: no success can be certified there, and a
/// restart may still find a witness.
IkResult solve_ik(const RobotModel& model, const IkCase& ik_case,
                  const IkParams& params);

/// solve_ik first from warm_start = q_real, then from `restarts` uniform
/// random in-limit configurations. Returns the first feasible result, or the
/// failure result of the last attempt. Deterministic given the rng state.
IkResult solve_ik_multistart(const RobotModel& model, const Posed& target,
                             const JointVector& q_real, const IkParams& params,
                             int restarts, Rng& rng);

/// Recomputes the weighted error 0.5 e^T W e of q against the target.
double ik_error(const RobotModel& model, const Posed& target,
                const JointVector& q, const Mat6d& weight);

}  // namespace wbkin
