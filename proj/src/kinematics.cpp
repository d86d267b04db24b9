#include "armtraj/kinematics.hpp"

#include <cmath>

namespace armtraj::kinematics {

bool RobotModel::within_limits(const JointVec& q) const {
  for (int i = 0; i < 6; ++i) {
    if (q[i] < limits[i].lower || q[i] > limits[i].upper) return false;
  }
  return true;
}

JointVec RobotModel::clamp(const JointVec& q) const {
  JointVec out = q;
  for (int i = 0; i < 6; ++i) {
    out[i] = std::max(limits[i].lower, std::min(limits[i].upper, out[i]));
  }
  return out;
}

bool is_rotation(const Mat3& R, double tol) {
  const Mat3 err = R.transpose() * R - Mat3::Identity();
  return err.cwiseAbs().maxCoeff() <= tol && R.determinant() > 0.0;
}

Mat3 nearest_rotation(const Mat3& R) {
  const Eigen::JacobiSVD<Mat3> svd(
      R, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Mat3 out = svd.matrixU() * svd.matrixV().transpose();
  if (out.determinant() < 0.0) {
    Mat3 flip = Mat3::Identity();
    flip(2, 2) = -1.0;
    out = svd.matrixU() * flip * svd.matrixV().transpose();
  }
  return out;
}

Vec3 rotate_to_fixed(const Mat3& R, const Vec3& r_mobile) {
  return R * r_mobile;
}

Mat4 compose(const Mat4& a, const Mat4& b) { return a * b; }

Mat4 dh_transform(double theta, double d, double a, double alpha) {
  const double ct = std::cos(theta);
  const double st = std::sin(theta);
  const double ca = std::cos(alpha);
  const double sa = std::sin(alpha);

  Mat4 T;
  T << ct, -st * ca,  st * sa, a * ct,
       st,  ct * ca, -ct * sa, a * st,
      0.0,       sa,       ca,      d,
      0.0,      0.0,      0.0,    1.0;
  return T;
}

Mat4 forward(const RobotModel& model, const JointVec& q) {
  Mat4 T = Mat4::Identity();
  for (int i = 0; i < 6; ++i) {
    const DhRow& row = model.dh[i];
    T = T * dh_transform(q[i] + row.theta_offset, row.d, row.a, row.alpha);
  }
  return T;
}

Vec3 tool_position(const RobotModel& model, const JointVec& q) {
  return forward(model, q).block<3, 1>(0, 3);
}

}  // namespace armtraj::kinematics
