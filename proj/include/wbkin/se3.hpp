#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "wbkin/errors.hpp"
#include "wbkin/rng.hpp"

// Exact SO(3)/SE(3) math on top of Eigen dense types.
//
// Conventions, fixed project-wide:
//   * Twists are 6-vectors with the angular block first: xi = (omega, v).
//   * pose_diff(a, b) = se3_log(b^-1 * a), a twist in the b-local frame.
//   * pose_oplus(t, xi) = t * se3_exp(xi), so oplus inverts pose_diff:
//     pose_oplus(b, pose_diff(a, b)) == a.
//   * Logarithms return the principal branch, angle in [0, pi]. At angle
//     exactly pi the axis sign is canonicalized (first nonzero component
//     positive). se3_log refuses angles within 1e-6 of pi (BranchError).

namespace wbkin {

template <typename Scalar>
using Vec3 = Eigen::Matrix<Scalar, 3, 1>;
template <typename Scalar>
using Vec6 = Eigen::Matrix<Scalar, 6, 1>;
template <typename Scalar>
using Mat3 = Eigen::Matrix<Scalar, 3, 3>;
template <typename Scalar>
using Mat6 = Eigen::Matrix<Scalar, 6, 6>;

/// Exponential coordinates of a rigid motion, angular block first.
template <typename Scalar>
using Twist = Vec6<Scalar>;

/// Element of SO(3). Stored as a unit quaternion; convertible to and from
/// a (w, x, y, z) quaternion and a 3x3 matrix.
template <typename Scalar>
class Rotation {
 public:
  using Quaternion = Eigen::Quaternion<Scalar>;

  Rotation() : q_(Quaternion::Identity()) {}

  static Rotation identity() { return Rotation(); }

  /// Builds from quaternion coefficients, w first. The input is normalized;
  /// a non-normalizable quaternion is rejected.
  static Rotation from_quaternion(Scalar w, Scalar x, Scalar y, Scalar z) {
    Quaternion q(w, x, y, z);
    const Scalar n = q.norm();
    if (!std::isfinite(n) || n <= Scalar(0)) {
      throw NumericError("Rotation: quaternion is not normalizable");
    }
    q.coeffs() /= n;
    return Rotation(q);
  }

  static Rotation from_quaternion(const Quaternion& q) {
    return from_quaternion(q.w(), q.x(), q.y(), q.z());
  }

  static Rotation from_matrix(const Mat3<Scalar>& m) {
    return Rotation(Quaternion(m));
  }

  const Quaternion& quaternion() const { return q_; }
  Mat3<Scalar> matrix() const { return q_.toRotationMatrix(); }

  Rotation inverse() const { return Rotation(q_.conjugate()); }

  Rotation operator*(const Rotation& rhs) const {
    return Rotation(q_ * rhs.q_);
  }

  Vec3<Scalar> operator*(const Vec3<Scalar>& v) const { return q_ * v; }

 private:
  explicit Rotation(const Quaternion& q) : q_(q) {}

  Quaternion q_;  // unit to machine precision
};

/// Rigid transform in SE(3).
template <typename Scalar>
struct Pose {
  Rotation<Scalar> rotation;
  Vec3<Scalar> translation = Vec3<Scalar>::Zero();

  Pose() = default;
  Pose(const Rotation<Scalar>& r, const Vec3<Scalar>& t)
      : rotation(r), translation(t) {}

  static Pose identity() { return Pose(); }

  Pose operator*(const Pose& rhs) const {
    return Pose(rotation * rhs.rotation,
                translation + rotation * rhs.translation);
  }

  /// Transforms a point.
  Vec3<Scalar> operator*(const Vec3<Scalar>& p) const {
    return rotation * p + translation;
  }

  Pose inverse() const {
    const Rotation<Scalar> rinv = rotation.inverse();
    return Pose(rinv, -(rinv * translation));
  }
};

using Rotationd = Rotation<double>;
using Posed = Pose<double>;
using Twistd = Twist<double>;
using Vec3d = Vec3<double>;
using Vec6d = Vec6<double>;
using Mat3d = Mat3<double>;
using Mat6d = Mat6<double>;

template <typename DerivedA, typename DerivedB>
Twist<typename DerivedA::Scalar> make_twist(
    const Eigen::MatrixBase<DerivedA>& angular,
    const Eigen::MatrixBase<DerivedB>& linear) {
  Twist<typename DerivedA::Scalar> xi;
  xi << angular, linear;
  return xi;
}

template <typename Derived>
Mat3<typename Derived::Scalar> skew(const Eigen::MatrixBase<Derived>& v_in) {
  using Scalar = typename Derived::Scalar;
  const Vec3<Scalar> v = v_in;
  Mat3<Scalar> m;
  // clang-format off
  m << Scalar(0), -v.z(),     v.y(),
       v.z(),     Scalar(0), -v.x(),
      -v.y(),     v.x(),      Scalar(0);
  // clang-format on
  return m;
}

/// Rodrigues map: rotation about omega/|omega| by |omega| radians.
/// Exactly the identity at omega = 0.
template <typename Derived>
Rotation<typename Derived::Scalar> so3_exp(
    const Eigen::MatrixBase<Derived>& omega_in) {
  using Scalar = typename Derived::Scalar;
  const Vec3<Scalar> omega = omega_in;
  const Scalar theta2 = omega.squaredNorm();
  const Scalar theta = std::sqrt(theta2);
  Scalar half_sinc;  // sin(theta/2) / theta
  Scalar w;
  if (theta < Scalar(1e-4)) {
    half_sinc =
        Scalar(0.5) - theta2 / Scalar(48) + theta2 * theta2 / Scalar(3840);
    w = Scalar(1) - theta2 / Scalar(8) + theta2 * theta2 / Scalar(384);
  } else {
    half_sinc = std::sin(theta / Scalar(2)) / theta;
    w = std::cos(theta / Scalar(2));
  }
  return Rotation<Scalar>::from_quaternion(w, omega.x() * half_sinc,
                                           omega.y() * half_sinc,
                                           omega.z() * half_sinc);
}

/// Principal logarithm, angle in [0, pi]. At angle exactly pi the returned
/// axis has its first nonzero component positive.
template <typename Scalar>
Vec3<Scalar> so3_log(const Rotation<Scalar>& r) {
  Eigen::Quaternion<Scalar> q = r.quaternion();
  if (q.w() < Scalar(0)) q.coeffs() = -q.coeffs();
  const Scalar s = q.vec().norm();
  if (s == Scalar(0)) return Vec3<Scalar>::Zero();
  const Scalar angle = Scalar(2) * std::atan2(s, q.w());
  Vec3<Scalar> out = q.vec() * (angle / s);
  if (q.w() == Scalar(0)) {
    // angle exactly pi: both antipodal axes are valid, pick one.
    for (int i = 0; i < 3; ++i) {
      if (out[i] != Scalar(0)) {
        if (out[i] < Scalar(0)) out = -out;
        break;
      }
    }
  }
  return out;
}

/// SE(3) exponential with the closed-form coupling of the angular and
/// linear parts: translation = V(omega) * v, V = I + a*[w] + b*[w]^2 with
/// a = (1-cos)/t^2 and b = (t-sin)/t^3. Series below t = 1e-4 where the
/// closed forms lose all significant digits.
template <typename Derived>
Pose<typename Derived::Scalar> se3_exp(
    const Eigen::MatrixBase<Derived>& xi_in) {
  using Scalar = typename Derived::Scalar;
  const Vec6<Scalar> xi = xi_in;
  const Vec3<Scalar> omega = xi.template head<3>();
  const Vec3<Scalar> v = xi.template tail<3>();
  const Scalar theta2 = omega.squaredNorm();
  const Scalar theta = std::sqrt(theta2);
  Scalar a, b;
  if (theta < Scalar(1e-4)) {
    a = Scalar(0.5) - theta2 / Scalar(24) + theta2 * theta2 / Scalar(720);
    b = Scalar(1) / Scalar(6) - theta2 / Scalar(120) +
        theta2 * theta2 / Scalar(5040);
  } else {
    const Scalar sh = std::sin(theta / Scalar(2));
    a = Scalar(2) * sh * sh / theta2;  // (1 - cos t) / t^2, cancellation-free
    b = (theta - std::sin(theta)) / (theta2 * theta);
  }
  const Vec3<Scalar> wv = omega.cross(v);
  const Vec3<Scalar> t = v + a * wv + b * omega.cross(wv);
  return Pose<Scalar>(so3_exp(omega), t);
}

/// Inverse of se3_exp on the principal branch.
/// Throws BranchError when the rotation angle is within 1e-6 of pi.
template <typename Scalar>
Twist<Scalar> se3_log(const Pose<Scalar>& pose) {
  const Vec3<Scalar> omega = so3_log(pose.rotation);
  const Scalar theta2 = omega.squaredNorm();
  const Scalar theta = std::sqrt(theta2);
  if (theta >= std::numbers::pi_v<Scalar> - Scalar(1e-6)) {
    throw BranchError("se3_log: rotation angle within 1e-6 of pi");
  }
  Scalar c;  // V^-1 = I - [w]/2 + c*[w]^2
  if (theta < Scalar(1e-4)) {
    c = Scalar(1) / Scalar(12) + theta2 / Scalar(720) +
        theta2 * theta2 / Scalar(30240);
  } else {
    const Scalar half = theta / Scalar(2);
    c = (Scalar(1) - half * std::cos(half) / std::sin(half)) / theta2;
  }
  const Vec3<Scalar>& t = pose.translation;
  const Vec3<Scalar> wt = omega.cross(t);
  const Vec3<Scalar> v = t - Scalar(0.5) * wt + c * omega.cross(wt);
  return make_twist(omega, v);
}

/// Generalized pose subtraction: se3_log(b^-1 * a), expressed in the
/// b-local frame.
template <typename Scalar>
Twist<Scalar> pose_diff(const Pose<Scalar>& a, const Pose<Scalar>& b) {
  return se3_log(b.inverse() * a);
}

/// Right-composition with an exponentiated twist: t * se3_exp(xi).
template <typename Scalar, typename Derived>
Pose<Scalar> pose_oplus(const Pose<Scalar>& t,
                        const Eigen::MatrixBase<Derived>& xi) {
  return t * se3_exp(xi);
}

/// SO(3) geodesic distance |so3_log(a^T b)| in [0, pi].
template <typename Scalar>
Scalar geodesic_distance(const Rotation<Scalar>& a, const Rotation<Scalar>& b) {
  return so3_log(a.inverse() * b).norm();
}

/// Adjoint of a pose acting on (omega, v) twists:
/// [R 0; [t]R R].
template <typename Scalar>
Mat6<Scalar> adjoint(const Pose<Scalar>& pose) {
  const Mat3<Scalar> r = pose.rotation.matrix();
  Mat6<Scalar> ad;
  ad.template topLeftCorner<3, 3>() = r;
  ad.template topRightCorner<3, 3>().setZero();
  ad.template bottomLeftCorner<3, 3>() = skew(pose.translation) * r;
  ad.template bottomRightCorner<3, 3>() = r;
  return ad;
}

/// Yaw-pitch-roll of R under the factorization R = Rz(yaw) Ry(pitch) Rx(roll).
/// Returns (yaw, pitch, roll). Yaw and roll are arbitrary at |pitch| = pi/2;
/// callers that cannot tolerate that must check pitch themselves.
template <typename Scalar>
Vec3<Scalar> yaw_pitch_roll(const Rotation<Scalar>& r) {
  const Mat3<Scalar> m = r.matrix();
  const Scalar sp = std::clamp(-m(2, 0), Scalar(-1), Scalar(1));
  return Vec3<Scalar>(std::atan2(m(1, 0), m(0, 0)), std::asin(sp),
                      std::atan2(m(2, 1), m(2, 2)));
}

/// Haar-uniform rotation from three uniforms (Shoemake's method).
inline Rotationd sample_uniform_rotation(Rng& rng) {
  const double u0 = uniform01(rng);
  const double a1 = 2.0 * std::numbers::pi * uniform01(rng);
  const double a2 = 2.0 * std::numbers::pi * uniform01(rng);
  const double r1 = std::sqrt(1.0 - u0);
  const double r2 = std::sqrt(u0);
  return Rotationd::from_quaternion(r2 * std::cos(a2), r1 * std::sin(a1),
                                    r1 * std::cos(a1), r2 * std::sin(a2));
}

/// Uniform-by-volume point in the closed ball of the given radius.
inline Vec3d sample_in_ball(Rng& rng, double radius) {
  if (!(radius > 0.0)) {
    throw std::invalid_argument("sample_in_ball: radius must be positive");
  }
  while (true) {
    const Vec3d p(uniform_real(rng, -1.0, 1.0), uniform_real(rng, -1.0, 1.0),
                  uniform_real(rng, -1.0, 1.0));
    if (p.squaredNorm() <= 1.0) return radius * p;
  }
}

}  // namespace wbkin
