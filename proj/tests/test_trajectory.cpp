#include "armtraj/trajectory.hpp"

#include <cmath>

#include "armtraj/errors.hpp"
#include "doctest.h"
#include "oracles.hpp"
#include "test_model.hpp"

using namespace armtraj;
using namespace armtraj::trajectory;
using profiles::ProfileKind;
using profiles::ProfileOptions;

namespace {

FigureSpec unit_square() {
  FigureSpec fig;
  fig.name = "unit_square";
  fig.vertices = {Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(1, 1, 0), Vec3(0, 1, 0)};
  fig.closed = true;
  fig.total_duration = 8.0;
  return fig;
}

FigureSpec workspace_square() {
  FigureSpec fig;
  fig.name = "ws_square";
  fig.vertices = {Vec3(350, -50, 400), Vec3(350, 50, 400), Vec3(350, 50, 500),
                  Vec3(350, -50, 500)};
  fig.closed = true;
  fig.total_duration = 8.0;
  return fig;
}

}  // namespace

TEST_CASE("validate_figure rejects malformed figures") {
  FigureSpec fig;
  fig.name = "bad";
  fig.vertices = {Vec3(0, 0, 0)};
  CHECK_THROWS_AS(validate_figure(fig), ValidationError);

  fig.vertices = {Vec3(0, 0, 0), Vec3(0, 0, 0)};
  CHECK_THROWS_AS(validate_figure(fig), ValidationError);

  fig.vertices = {Vec3(0, 0, 0), Vec3(1, 0, 0)};
  CHECK_THROWS_AS(validate_figure(fig), ValidationError);  // no duration

  fig.total_duration = 2.0;
  CHECK_NOTHROW(validate_figure(fig));

  fig.edge_durations = {1.0, 1.0};  // open 2-vertex figure has 1 edge
  CHECK_THROWS_AS(validate_figure(fig), ValidationError);
}

TEST_CASE("figure_segments: proportional split and quantization") {
  FigureSpec fig;
  fig.name = "L";
  fig.vertices = {Vec3(0, 0, 0), Vec3(30, 0, 0), Vec3(30, 10, 0)};
  fig.total_duration = 4.0;
  const auto segs = figure_segments(fig, ProfileKind::kTrapezoidal, 0.024);
  REQUIRE(segs.size() == 2);
  // 3:1 arc-length split of 4 s = 3 s and 1 s, then snapped to the grid.
  CHECK(std::fabs(segs[0].t_e - 3.0) <= 0.012 + 1e-12);
  CHECK(std::fabs(segs[1].t_e - 1.0) <= 0.012 + 1e-12);
  for (const auto& s : segs) {
    const double m = s.t_e / 0.024;
    CHECK(std::fabs(m - std::round(m)) < 1e-9);
  }
  // Chain connectivity.
  CHECK((segs[0].p_e - segs[1].p_s).norm() == 0.0);
}

TEST_CASE("two-vertex figure equals the single-segment generator") {
  FigureSpec fig;
  fig.name = "line";
  fig.vertices = {Vec3(0, 0, 0), Vec3(60, 0, 0)};
  fig.edge_durations = {2.4};
  ProfileOptions opts;

  const TimedPath via_figure =
      plan_figure(fig, ProfileKind::kLognormal, 0.0, 0.024, opts);

  profiles::SegmentSpec seg;
  seg.p_s = fig.vertices[0];
  seg.p_e = fig.vertices[1];
  seg.t_e = 2.4;
  seg.kind = ProfileKind::kLognormal;
  const TimedPath direct = profiles::superpose_strokes({seg}, 0.0, 0.024, opts);

  REQUIRE(via_figure.size() == direct.size());
  for (std::size_t i = 0; i < direct.size(); ++i) {
    CHECK(via_figure.samples[i].t == direct.samples[i].t);
    CHECK((via_figure.samples[i].p - direct.samples[i].p).norm() == 0.0);
  }
}

TEST_CASE("closed trapezoidal square: arc length and closure") {
  const FigureSpec fig = unit_square();
  ProfileOptions opts;
  opts.accel = 10.0;  // plenty for 1 mm edges in 2 s
  const TimedPath path =
      plan_figure(fig, ProfileKind::kTrapezoidal, 0.0, 0.024, opts);

  // Perimeter 4 mm within 1e-6 relative; duration quantization puts every
  // vertex exactly on a sample, so uniform sampling cannot cut corners.
  CHECK(std::fabs(arc_length(path) - 4.0) / 4.0 < 1e-6);
  CHECK((path.samples.back().p - fig.vertices.front()).norm() < 1e-9);
  CHECK((path.samples.front().p - fig.vertices.front()).norm() == 0.0);
}

TEST_CASE("closed lognormal square: per-edge displacement bound and snap") {
  const FigureSpec fig = unit_square();
  ProfileOptions opts;
  double snap = -1.0;
  const TimedPath path =
      plan_figure(fig, ProfileKind::kLognormal, 0.0, 0.024, opts, &snap);

  CHECK((path.samples.back().p - fig.vertices.front()).norm() == 0.0);
  // Snap correction bounded by (1-r) * sum of stroke displacements.
  CHECK(snap <= (1.0 - opts.r_target) * 4.0 + 1e-9);

  // Each vertex is approached within (1-r) per finished 1 mm edge: the
  // strokes completed so far each still miss at most (1-r) of their
  // displacement at their commanded end.
  const auto segs = figure_segments(fig, ProfileKind::kLognormal, 0.024);
  const double edge_t = segs[0].t_e;  // equal edges, quantized
  for (int k = 1; k <= 3; ++k) {
    const double t_vertex = k * edge_t;
    for (const auto& s : path.samples) {
      if (std::fabs(s.t - t_vertex) < 1e-9) {
        const Vec3 ideal = fig.vertices[static_cast<std::size_t>(k)];
        CHECK((s.p - ideal).norm() <= k * (1.0 - opts.r_target) + 1e-9);
      }
    }
  }
}

TEST_CASE("plan_figure sample count determinism") {
  const FigureSpec fig = unit_square();
  ProfileOptions opts;
  opts.accel = 10.0;
  const TimedPath path =
      plan_figure(fig, ProfileKind::kTrapezoidal, 0.0, 0.024, opts);
  // All four edges quantize 2 s -> 2.016 s? No: 2/0.024 = 83.33 rounds to
  // 83 * 0.024 = 1.992 s. Four edges: 7.968 s -> 333 periods723... compute:
  double total = 0.0;
  for (const auto& seg : figure_segments(fig, ProfileKind::kTrapezoidal, 0.024)) {
    total += seg.t_e;
  }
  const auto expect =
      static_cast<std::size_t>(std::floor(total / 0.024 + 1e-9)) + 1;
  CHECK(path.size() == expect);
}

TEST_CASE("plan_repetitions structure") {
  const FigureSpec fig = unit_square();
  ProfileOptions opts;
  opts.accel = 10.0;

  const TimedPath once =
      plan_figure(fig, ProfileKind::kTrapezoidal, 0.0, 0.024, opts);
  const TimedPath three = plan_repetitions(fig, ProfileKind::kTrapezoidal, 3,
                                           1.0, 0.0, 0.024, opts);

  // Three passes plus two ~1 s pauses.
  const double pass = once.duration();
  const double pause = std::round(1.0 / 0.024) * 0.024;
  CHECK(three.duration() ==
        doctest::Approx(3 * pass + 2 * pause).epsilon(1e-9));

  // During the first pause the tool holds at vertex 0.
  for (const auto& s : three.samples) {
    if (s.t > pass + 1e-9 && s.t < pass + pause - 1e-9) {
      CHECK((s.p - fig.vertices.front()).norm() < 1e-6);
    }
  }

  CHECK_THROWS_AS(
      plan_repetitions(fig, ProfileKind::kTrapezoidal, 0, 1.0, 0.0, 0.024, opts),
      ValidationError);

  FigureSpec open_fig = fig;
  open_fig.closed = false;
  CHECK_THROWS_AS(plan_repetitions(open_fig, ProfileKind::kTrapezoidal, 2, 1.0,
                                   0.0, 0.024, opts),
                  ValidationError);
}

TEST_CASE("numeric_speed: constant and linear paths") {
  TimedPath constant;
  constant.sample_period = 0.1;
  for (int i = 0; i < 10; ++i) {
    constant.samples.push_back({0.1 * i, Vec3(5, 5, 5)});
  }
  for (double v : numeric_speed(constant)) CHECK(v == 0.0);

  TimedPath linear;
  linear.sample_period = 0.1;
  for (int i = 0; i < 50; ++i) {
    linear.samples.push_back({0.1 * i, Vec3(3.0 * 0.1 * i, 0, 0)});
  }
  for (double v : numeric_speed(linear)) {
    CHECK(v == doctest::Approx(3.0).epsilon(1e-9));
  }

  TimedPath tiny;
  tiny.samples.push_back({0.0, Vec3(0, 0, 0)});
  CHECK_THROWS_AS(numeric_speed(tiny), ValidationError);
}

TEST_CASE("numeric_speed reproduces the analytic lognormal profile") {
  profiles::SegmentSpec seg;
  seg.p_s = Vec3(0, 0, 0);
  seg.p_e = Vec3(100, 0, 0);
  seg.t_e = 2.4;
  ProfileOptions opts;
  const TimedPath path = profiles::superpose_strokes({seg}, 0.0, 0.012, opts);
  const auto v = numeric_speed(path);

  const double sigma = profiles::solve_sigma(2.4, opts.r_target, 0.0, 0.0);
  profiles::LognormalStroke pulse{0.0, 0.0, sigma, 100.0};
  for (std::size_t i = 1; i + 2 < path.size(); ++i) {
    const double t = path.samples[i].t;
    const double ref = profiles::lognormal_speed(t, pulse);
    // O(dt^2) central-difference error on a curved profile.
    CHECK(std::fabs(v[i] - ref) < 0.02 * (1.0 + ref));
  }
}

TEST_CASE("numeric_speed recovers trapezoid cruise speed") {
  profiles::SegmentSpec seg;
  seg.p_s = Vec3(0, 0, 0);
  seg.p_e = Vec3(100, 0, 0);
  seg.t_e = 2.4;  // 100 periods of 0.024
  seg.kind = ProfileKind::kTrapezoidal;
  ProfileOptions opts;
  opts.accel = 200.0;
  const TimedPath path = profiles::superpose_strokes({seg}, 0.0, 0.024, opts);
  const auto v = numeric_speed(path);

  const auto tz = profiles::trapezoid_times(100.0, 2.4, 200.0);
  for (std::size_t i = 0; i < path.size(); ++i) {
    const double t = path.samples[i].t;
    if (t > tz.t_acc + 0.05 && t < tz.t_acc + tz.t_const - 0.05) {
      CHECK(std::fabs(v[i] - tz.v_max) / tz.v_max < 0.005);
    }
  }
}

TEST_CASE("path_to_joints end to end on a workspace square") {
  const auto model = test_model();
  const FigureSpec fig = workspace_square();
  ProfileOptions opts;
  opts.accel = model.max_accel;
  const TimedPath path =
      plan_figure(fig, ProfileKind::kTrapezoidal, 0.0, 0.048, opts);

  const Vec3 q46(0.0, 0.6, 0.0);
  const Vec3 seed0(0.0, 0.4, 0.3);
  ik::PathIkStats stats;
  const JointTrajectory traj =
      path_to_joints(model, path, q46, seed0, &stats);

  REQUIRE(traj.size() == path.size());
  CHECK(traj.model_id == model.id);
  double worst = 0.0;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const Vec3 p = kinematics::tool_position(model, traj.samples[i].q);
    worst = std::max(worst, (p - path.samples[i].p).norm());
    CHECK(traj.samples[i].q[3] == q46[0]);
    CHECK(traj.samples[i].q[4] == q46[1]);
    CHECK(traj.samples[i].q[5] == q46[2]);
  }
  CHECK(worst < 1e-3);

  // A constant path solves to a constant joint trajectory.
  TimedPath still;
  still.sample_period = 0.024;
  for (int i = 0; i < 5; ++i) {
    still.samples.push_back({0.024 * i, path.samples.front().p});
  }
  const JointTrajectory still_traj =
      path_to_joints(model, still, q46, seed0, nullptr);
  for (std::size_t i = 1; i < still_traj.size(); ++i) {
    CHECK(still_traj.samples[i].q == still_traj.samples[0].q);
  }
}

TEST_CASE("arc_length of a sampled straight line") {
  TimedPath path;
  path.sample_period = 0.1;
  for (int i = 0; i <= 10; ++i) {
    path.samples.push_back({0.1 * i, Vec3(2.0 * i, 0, 0)});
  }
  CHECK(arc_length(path) == doctest::Approx(20.0).epsilon(1e-12));
}
