#include "armtraj/trajectory.hpp"

#include <cmath>

#include "armtraj/errors.hpp"

namespace armtraj::trajectory {

namespace {

/// Snap a duration to the nearest positive multiple of the sample period.
double quantize(double duration, double sample_period) {
  const double m = std::max(1.0, std::round(duration / sample_period));
  return m * sample_period;
}

}  // namespace

void validate_figure(const FigureSpec& figure) {
  if (figure.vertices.size() < 2) {
    throw ValidationError("vertices", "figure needs at least 2 vertices");
  }
  for (std::size_t i = 0; i + 1 < figure.vertices.size(); ++i) {
    if ((figure.vertices[i + 1] - figure.vertices[i]).norm() <= 0.0) {
      throw ValidationError("vertices", "consecutive vertices must differ (" +
                                            std::to_string(i) + ", " +
                                            std::to_string(i + 1) + ")");
    }
  }
  if (figure.closed &&
      (figure.vertices.back() - figure.vertices.front()).norm() <= 0.0) {
    throw ValidationError(
        "vertices", "closed figure must not repeat vertex 0 at the end");
  }
  if (!figure.edge_durations.empty()) {
    if (figure.edge_durations.size() != figure.edge_count()) {
      throw ValidationError("edge_durations",
                            "expected " + std::to_string(figure.edge_count()) +
                                " entries, got " +
                                std::to_string(figure.edge_durations.size()));
    }
    for (double d : figure.edge_durations) {
      if (!(d > 0.0)) {
        throw ValidationError("edge_durations", "must all be positive");
      }
    }
  } else if (!(figure.total_duration > 0.0)) {
    throw ValidationError(
        "total_duration",
        "must be positive when edge_durations are not given");
  }
}

std::vector<profiles::SegmentSpec> figure_segments(const FigureSpec& figure,
                                                   profiles::ProfileKind kind,
                                                   double sample_period) {
  validate_figure(figure);
  if (!(sample_period > 0.0)) {
    throw ValidationError("sample_period", "must be positive");
  }

  std::vector<Vec3> pts = figure.vertices;
  if (figure.closed) pts.push_back(figure.vertices.front());

  std::vector<double> lengths;
  double total_len = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    lengths.push_back((pts[i + 1] - pts[i]).norm());
    total_len += lengths.back();
  }

  std::vector<profiles::SegmentSpec> segments;
  segments.reserve(lengths.size());
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    const double raw = figure.edge_durations.empty()
                           ? figure.total_duration * lengths[i] / total_len
                           : figure.edge_durations[i];
    profiles::SegmentSpec seg;
    seg.p_s = pts[i];
    seg.p_e = pts[i + 1];
    seg.t_e = quantize(raw, sample_period);
    seg.kind = kind;
    segments.push_back(seg);
  }
  return segments;
}

TimedPath plan_figure(const FigureSpec& figure, profiles::ProfileKind kind,
                      double overlap_fraction, double sample_period,
                      const profiles::ProfileOptions& opts, double* end_snap) {
  const auto segments = figure_segments(figure, kind, sample_period);
  return profiles::superpose_strokes(segments, overlap_fraction, sample_period,
                                     opts, end_snap);
}

TimedPath plan_repetitions(const FigureSpec& figure,
                           profiles::ProfileKind kind, int repetitions,
                           double pause_s, double overlap_fraction,
                           double sample_period,
                           const profiles::ProfileOptions& opts) {
  if (repetitions < 1) {
    throw ValidationError("repetitions", "must be >= 1");
  }
  if (pause_s < 0.0) {
    throw ValidationError("pause", "must be >= 0");
  }
  if (!figure.closed) {
    throw ValidationError(
        "figure", "repetition runner requires a closed figure (each pass "
                  "must return to the start vertex)");
  }

  auto segments = figure_segments(figure, kind, sample_period);
  const auto one_pass = segments;
  for (int rep = 1; rep < repetitions; ++rep) {
    if (pause_s > 0.0) {
      profiles::SegmentSpec hold;
      hold.p_s = figure.vertices.front();
      hold.p_e = figure.vertices.front();
      hold.t_e = quantize(pause_s, sample_period);
      hold.kind = kind;
      segments.push_back(hold);
    }
    segments.insert(segments.end(), one_pass.begin(), one_pass.end());
  }
  return profiles::superpose_strokes(segments, overlap_fraction, sample_period,
                                     opts);
}

JointTrajectory path_to_joints(const kinematics::RobotModel& model,
                               const TimedPath& path, const Vec3& q46,
                               const Vec3& seed0, ik::PathIkStats* stats) {
  ik::PathIkOptions opts;
  opts.q46 = q46;
  opts.seed0 = seed0;
  return ik::solve_path_ik(model, path, opts, stats);
}

std::vector<double> numeric_speed(const TimedPath& path) {
  const auto& s = path.samples;
  if (s.size() < 2) {
    throw ValidationError("path", "numeric_speed needs at least 2 samples");
  }
  std::vector<double> v(s.size());
  v.front() = (s[1].p - s[0].p).norm() / (s[1].t - s[0].t);
  for (std::size_t i = 1; i + 1 < s.size(); ++i) {
    v[i] = (s[i + 1].p - s[i - 1].p).norm() / (s[i + 1].t - s[i - 1].t);
  }
  v.back() = (s[s.size() - 1].p - s[s.size() - 2].p).norm() /
             (s[s.size() - 1].t - s[s.size() - 2].t);
  return v;
}

double arc_length(const TimedPath& path) {
  double len = 0.0;
  for (std::size_t i = 1; i < path.samples.size(); ++i) {
    len += (path.samples[i].p - path.samples[i - 1].p).norm();
  }
  return len;
}

}  // namespace armtraj::trajectory
