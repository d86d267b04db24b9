#ifndef ARMTRAJ_TYPES_HPP_
#define ARMTRAJ_TYPES_HPP_

#include <Eigen/Dense>
#include <vector>

namespace armtraj {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Mat4 = Eigen::Matrix4d;
using JointVec = Eigen::Matrix<double, 6, 1>;

/// One Cartesian sample of a trajectory. Positions in mm, time in s.
struct PathSample {
  double t;
  Vec3 p;
};

/// Uniformly sampled Cartesian trajectory.
struct TimedPath {
  std::vector<PathSample> samples;
  double sample_period = 0.0;

  std::size_t size() const { return samples.size(); }
  bool empty() const { return samples.empty(); }
  double duration() const {
    return samples.empty() ? 0.0 : samples.back().t - samples.front().t;
  }
};

/// One joint-space sample: time plus the six joint angles (rad).
struct JointSample {
  double t;
  JointVec q;
};

/// Joint trajectory with the id of the model it was solved against.
struct JointTrajectory {
  std::string model_id;
  std::vector<JointSample> samples;

  std::size_t size() const { return samples.size(); }
};

}  // namespace armtraj

#endif  // ARMTRAJ_TYPES_HPP_
