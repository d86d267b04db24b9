#ifndef ARMTRAJ_TRAJECTORY_HPP_
#define ARMTRAJ_TRAJECTORY_HPP_

#include <string>
#include <vector>

#include "armtraj/ik.hpp"
#include "armtraj/kinematics.hpp"
#include "armtraj/profiles.hpp"
#include "armtraj/types.hpp"

namespace armtraj::trajectory {

/// Polyline figure in Cartesian space. Edge timing comes either from an
/// explicit per-edge list or from total_duration split by edge length.
struct FigureSpec {
  std::string name;
  std::vector<Vec3> vertices;  // mm
  bool closed = false;
  std::vector<double> edge_durations;  // s, one per edge; empty = derive
  double total_duration = 0.0;         // s, used when edge_durations empty

  std::size_t edge_count() const {
    return vertices.size() < 2 ? 0 : vertices.size() - 1 + (closed ? 1 : 0);
  }
};

/// Check the FigureSpec invariants; throws ValidationError on violation.
void validate_figure(const FigureSpec& figure);

/// Resolve a figure into a stroke chain. Edge durations are quantized to
/// the nearest positive multiple of sample_period so that stroke
/// boundaries land exactly on samples (otherwise uniform sampling cuts
/// corners and the planned arc length falls short of the polyline's).
std::vector<profiles::SegmentSpec> figure_segments(
    const FigureSpec& figure, profiles::ProfileKind kind,
    double sample_period);

/// Plan a whole figure under one velocity law. For closed figures with
/// overlap 0 the final sample returns to vertex 0 (snap tolerance as in
/// superpose_strokes; correction reported via end_snap).
TimedPath plan_figure(const FigureSpec& figure, profiles::ProfileKind kind,
                      double overlap_fraction, double sample_period,
                      const profiles::ProfileOptions& opts = {},
                      double* end_snap = nullptr);

/// Execute a closed figure `repetitions` times with a hold of `pause_s`
/// at the start vertex between repetitions (pause quantized to the sample
/// grid like edge durations).
TimedPath plan_repetitions(const FigureSpec& figure,
                           profiles::ProfileKind kind, int repetitions,
                           double pause_s, double overlap_fraction,
                           double sample_period,
                           const profiles::ProfileOptions& opts = {});

/// IK over every sample of a planned path with frozen wrist; wraps
/// ik::solve_path_ik.
JointTrajectory path_to_joints(const kinematics::RobotModel& model,
                               const TimedPath& path, const Vec3& q46,
                               const Vec3& seed0,
                               ik::PathIkStats* stats = nullptr);

/// Speed magnitude per sample by central differences (one-sided at the
/// ends). Exact for straight constant-speed motion.
std::vector<double> numeric_speed(const TimedPath& path);

/// Polyline arc length of a sampled path (sum of inter-sample chords).
double arc_length(const TimedPath& path);

}  // namespace armtraj::trajectory

#endif  // ARMTRAJ_TRAJECTORY_HPP_
