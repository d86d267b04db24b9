#ifndef ARMTRAJ_KINEMATICS_HPP_
#define ARMTRAJ_KINEMATICS_HPP_

#include <array>
#include <string>

#include "armtraj/types.hpp"

namespace armtraj::kinematics {

/// One Denavit-Hartenberg row. theta_offset is added to (or replaces, for
/// the fixed part of) the joint variable; d and a are in mm, alpha in rad.
struct DhRow {
  double theta_offset = 0.0;
  double d = 0.0;
  double a = 0.0;
  double alpha = 0.0;
};

/// Inclusive joint limit pair, radians.
struct JointLimit {
  double lower;
  double upper;
};

/// Serial 6R arm described by its DH table and joint limits. max_speed /
/// max_accel (mm/s, mm/s^2) describe the tool; the trapezoid planner uses
/// max_accel as its ramp acceleration.
struct RobotModel {
  std::string id;
  std::array<DhRow, 6> dh;
  std::array<JointLimit, 6> limits;
  double max_speed = 0.0;
  double max_accel = 0.0;

  bool within_limits(const JointVec& q) const;
  /// Clamp each joint into its limit interval.
  JointVec clamp(const JointVec& q) const;
};

/// True when R is orthonormal with determinant +1, within tol.
bool is_rotation(const Mat3& R, double tol = 1e-9);

/// Nearest rotation matrix to R (SVD projection). Never applied silently
/// by the library; callers opt in explicitly.
Mat3 nearest_rotation(const Mat3& R);

/// Coordinates of a mobile-frame vector in the fixed frame: R * r_mobile.
Vec3 rotate_to_fixed(const Mat3& R, const Vec3& r_mobile);

/// Homogeneous transform composition (4x4 product).
Mat4 compose(const Mat4& a, const Mat4& b);

/// Homogeneous transform for a single DH row at joint angle theta
/// (already including the row's offset):
///   A = Rz(theta) * Tz(d) * Tx(a) * Rx(alpha)
Mat4 dh_transform(double theta, double d, double a, double alpha);

/// Full forward kinematics: base-to-tool transform for joint vector q.
Mat4 forward(const RobotModel& model, const JointVec& q);

/// Convenience: translation part of forward(model, q), in mm.
Vec3 tool_position(const RobotModel& model, const JointVec& q);

}  // namespace armtraj::kinematics

#endif  // ARMTRAJ_KINEMATICS_HPP_
