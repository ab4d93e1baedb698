#include "wbkin/ik.hpp"

#include <cmath>
#include <stdexcept>

#include "wbkin/errors.hpp"

namespace wbkin {

void validate_params(const IkParams& params) {
  if (params.max_iters < 1)
    throw std::invalid_argument("ik params: max_iters must be >= 1");
  if (!(params.tol > 0.0))
    throw std::invalid_argument("ik params: tol must be positive");
  if (!(params.delta >= 0.0))
    throw std::invalid_argument("ik params: delta must be nonnegative");
  if (!params.weight.allFinite() ||
      (params.weight - params.weight.transpose()).cwiseAbs().maxCoeff() > 1e-12)
    throw std::invalid_argument("ik params: weight must be finite symmetric");
  Eigen::SelfAdjointEigenSolver<Mat6d> eig(params.weight);
  if (eig.eigenvalues().minCoeff() < -1e-12)
    throw std::invalid_argument("ik params: weight must be positive semidefinite");
}

double ik_error(const RobotModel& model, const Posed& target,
                const JointVector& q, const Mat6d& weight) {
  const Vec6d e_vec = pose_diff(target, forward_kinematics(model, q));
  return 0.5 * e_vec.dot(weight * e_vec);
}

IkResult solve_ik(const RobotModel& model, const IkCase& ik_case,
                  const IkParams& params) {
  const int n = model.dof();
  if (ik_case.warm_start.size() != n || ik_case.q_real.size() != n)
    throw std::invalid_argument("solve_ik: joint vector size mismatch");

  IkResult result;
  JointVector q = ik_case.warm_start;
  // Joints whose previous unclamped update overshot a bound; their Jacobian
  // columns are zeroed for one iteration, which freezes the joint and lets
  // the lock expire unless the next update overshoots again.
  Eigen::Array<bool, Eigen::Dynamic, 1> locked =
      Eigen::Array<bool, Eigen::Dynamic, 1>::Constant(n, false);

  double error = std::numeric_limits<double>::quiet_NaN();
  for (int step = 0; step < params.max_iters; ++step) {
    result.iterations = step + 1;
    const Posed fk = forward_kinematics(model, q);
    Vec6d e_vec;
    try {
      e_vec = pose_diff(ik_case.target, fk);
    } catch (const BranchError&) {
      // The error twist is branch-ambiguous at this iterate, so the attempt
      // can certify nothing; end it under the failure contract rather than
      // aborting the caller (restarts may still find a witness).
      break;
    }
    const double quad = e_vec.dot(params.weight * e_vec);  // e^T W e
    error = 0.5 * quad;
    if (!std::isfinite(error)) throw NumericError("solve_ik: error diverged");
    if (error <= params.tol) {
      result.q = q;
      result.feasible = true;
      result.final_error = error;
      return result;
    }

    Eigen::Matrix<double, 6, Eigen::Dynamic> jac = body_jacobian(model, q);
    for (int i = 0; i < n; ++i)
      if (locked[i]) jac.col(i).setZero();

    const Eigen::MatrixXd damped =
        jac.transpose() * params.weight * jac +
        0.5 * (quad + params.delta) * Eigen::MatrixXd::Identity(n, n);
    const Eigen::VectorXd gradient = jac.transpose() * (params.weight * e_vec);
    const Eigen::VectorXd update = damped.ldlt().solve(gradient);
    if (!update.allFinite()) throw NumericError("solve_ik: singular update");

    const JointVector unclamped = q + update;
    q = clamp_to_limits(model, unclamped);
    locked = (unclamped.array() < model.q_min.array()) ||
             (unclamped.array() > model.q_max.array());
  }

  result.q = ik_case.q_real;
  result.feasible = false;
  result.final_error = error;
  return result;
}

IkResult solve_ik_multistart(const RobotModel& model, const Posed& target,
                             const JointVector& q_real, const IkParams& params,
                             int restarts, Rng& rng) {
  if (restarts < 0)
    throw std::invalid_argument("solve_ik_multistart: restarts must be >= 0");
  IkCase attempt{target, q_real, q_real};
  IkResult result = solve_ik(model, attempt, params);
  for (int r = 0; r < restarts && !result.feasible; ++r) {
    attempt.warm_start = random_configuration(model, rng);
    result = solve_ik(model, attempt, params);
  }
  return result;
}

}  // namespace wbkin
