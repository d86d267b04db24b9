#ifndef ARMTRAJ_IK_HPP_
#define ARMTRAJ_IK_HPP_

#include <cstddef>
#include <functional>
#include <vector>

#include "armtraj/kinematics.hpp"
#include "armtraj/types.hpp"

namespace armtraj::ik {

/// Position-only IK request: reach `target` with the wrist frozen at q46,
/// starting the search from `seed` (first three joints).
struct IKRequest {
  Vec3 target = Vec3::Zero();   // mm
  Vec3 q46 = Vec3::Zero();      // rad, held fixed
  Vec3 seed = Vec3::Zero();     // rad, q1..q3 start
  double tolerance = 1e-6;      // mm^2 (i.e. 1e-3 mm position error)
  int max_evals = 2000;
};

struct IKSolution {
  Vec3 q13 = Vec3::Zero();      // rad
  double residual = 0.0;        // mm^2 at q13
  int evals_used = 0;
  bool converged = false;       // residual <= tolerance
  bool budget_exhausted = false;

  /// Full joint vector [q13, q46].
  JointVec compose(const Vec3& q46) const;
};

/// Squared Cartesian distance (mm^2) between target and the tool position
/// at [q13, q46]. This is the raw objective; joint-limit penalties are
/// added by the solver, not here.
double position_error(const Vec3& q13, const Vec3& q46, const Vec3& target,
                      const kinematics::RobotModel& model);

struct SimplexResult {
  Vec3 x = Vec3::Zero();
  double f = 0.0;
  int evals = 0;
  bool converged = false;  // f-spread and diameter thresholds both met
};

/// Nelder-Mead downhill simplex in 3 variables. The initial simplex is the
/// seed plus 0.05 rad along each axis. Stops when the vertex f-spread
/// drops below f_tol AND the simplex diameter below x_tol, or when
/// max_evals function evaluations are spent (converged=false, best vertex
/// still returned). Never returns a point worse than the seed.
SimplexResult minimize_simplex(const std::function<double(const Vec3&)>& f,
                               const Vec3& seed, double f_tol = 1e-12,
                               double x_tol = 1e-8, int max_evals = 2000);

/// Solve one position-only IK problem. Joint limits of q1..q3 are enforced
/// through a quadratic penalty; q46 is validated against its limits up
/// front. Throws UnreachableError when the best residual stays above
/// 1 mm^2 (sample index 0 in the message).
IKSolution solve_position_ik(const kinematics::RobotModel& model,
                             const IKRequest& req);

struct PathIkOptions {
  Vec3 q46 = Vec3::Zero();
  Vec3 seed0 = Vec3::Zero();
  double tolerance = 1e-6;  // mm^2
  int max_evals = 2000;
  /// Consecutive-solution step cap (rad); larger jumps are recorded as
  /// configuration-branch discontinuities.
  double step_cap = 0.5;
};

/// Per-sample diagnostics of a path solve, for warm-start studies.
struct PathIkStats {
  std::vector<int> evals_per_sample;
  std::vector<std::size_t> discontinuities;  // indices where step_cap tripped
  long total_evals = 0;
};

/// Solve IK along a whole path, seeding each sample with the previous
/// solution. Throws UnreachableError(index) at the first failing sample.
JointTrajectory solve_path_ik(const kinematics::RobotModel& model,
                              const TimedPath& path, const PathIkOptions& opts,
                              PathIkStats* stats = nullptr);

}  // namespace armtraj::ik

#endif  // ARMTRAJ_IK_HPP_
