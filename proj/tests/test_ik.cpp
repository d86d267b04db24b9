#include "armtraj/ik.hpp"

#include <cmath>

#include "armtraj/errors.hpp"
#include "doctest.h"
#include "oracles.hpp"
#include "test_model.hpp"

using namespace armtraj;
using namespace armtraj::ik;

TEST_CASE("position_error: self-target is zero, unit offset is one") {
  const auto model = test_model();
  const Vec3 q13(0.3, -0.2, 0.4);
  const Vec3 q46(0.1, 0.5, -0.3);
  JointVec q;
  q << q13[0], q13[1], q13[2], q46[0], q46[1], q46[2];
  const Vec3 p = kinematics::tool_position(model, q);

  CHECK(position_error(q13, q46, p, model) < 1e-12);
  CHECK(position_error(q13, q46, p + Vec3(1, 0, 0), model) ==
        doctest::Approx(1.0).epsilon(1e-9));

  // Independent sum-of-squares oracle on random targets.
  oracles::Rng rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const Vec3 target(rng.uniform(-500, 500), rng.uniform(-500, 500),
                      rng.uniform(0, 700));
    const Vec3 ref_p = oracles::fk_affine(model, q);
    const double ref = (target - ref_p).squaredNorm();
    CHECK(position_error(q13, q46, target, model) ==
          doctest::Approx(ref).epsilon(1e-9));
  }
}

TEST_CASE("minimize_simplex solves a convex quadratic") {
  const Vec3 goal(0.1, 0.2, 0.3);
  const auto f = [&goal](const Vec3& x) { return (x - goal).squaredNorm(); };
  const SimplexResult res = minimize_simplex(f, Vec3::Zero());
  CHECK(res.converged);
  CHECK((res.x - goal).norm() < 1e-6);
  CHECK(res.f < 1e-12);
}

TEST_CASE("minimize_simplex on a constant function returns the seed") {
  const auto f = [](const Vec3&) { return 42.0; };
  const Vec3 seed(1.0, -2.0, 0.5);
  const SimplexResult res = minimize_simplex(f, seed);
  CHECK(res.f == 42.0);
  CHECK((res.x - seed).norm() < 0.2);  // shrunk simplex stays near the seed
}

TEST_CASE("minimize_simplex never returns worse than the seed") {
  oracles::Rng rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const Vec3 seed(rng.uniform(-2, 2), rng.uniform(-2, 2),
                    rng.uniform(-2, 2));
    // A rough multimodal function.
    const auto f = [](const Vec3& x) {
      return std::sin(3 * x[0]) + std::cos(2 * x[1]) * x[1] +
             0.1 * x.squaredNorm();
    };
    const SimplexResult res = minimize_simplex(f, seed, 1e-12, 1e-8, 300);
    CHECK(res.f <= f(seed) + 1e-15);
  }
}

TEST_CASE("minimize_simplex finds the Rosenbrock valley from nearby") {
  // 3-D Rosenbrock-style bowl; global minimum at (1,1,1).
  const auto f = [](const Vec3& x) {
    double s = 0.0;
    for (int i = 0; i < 2; ++i) {
      const double a = x[i + 1] - x[i] * x[i];
      const double b = 1.0 - x[i];
      s += 100.0 * a * a + b * b;
    }
    return s;
  };
  const SimplexResult res =
      minimize_simplex(f, Vec3(0.95, 0.95, 0.9), 1e-14, 1e-9, 2000);
  CHECK(res.f < 1e-8);
  // Grid oracle: no nearby lattice point beats the reported minimum.
  const double grid_best = oracles::grid_min(f, res.x, 0.05, 6);
  CHECK(res.f <= grid_best + 1e-10);
}

TEST_CASE("minimize_simplex respects the evaluation budget") {
  int count = 0;
  const auto f = [&count](const Vec3& x) {
    ++count;
    return x.squaredNorm();
  };
  const SimplexResult res = minimize_simplex(f, Vec3(5, 5, 5), 1e-18, 1e-16, 50);
  CHECK(count <= 50);
  CHECK(res.evals == count);
  CHECK_FALSE(res.converged);
}

TEST_CASE("solve_position_ik round trip on reachable targets") {
  const auto model = test_model();
  oracles::Rng rng(123);
  for (int trial = 0; trial < 40; ++trial) {
    JointVec q_true;
    q_true << rng.uniform(-1.0, 1.0), rng.uniform(-0.8, 0.8),
        rng.uniform(-0.8, 0.8), rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0),
        rng.uniform(-1.0, 1.0);
    const Vec3 target = kinematics::tool_position(model, q_true);

    IKRequest req;
    req.target = target;
    req.q46 = Vec3(q_true[3], q_true[4], q_true[5]);
    req.seed = Vec3(q_true[0] + rng.uniform(-0.05, 0.05),
                    q_true[1] + rng.uniform(-0.05, 0.05),
                    q_true[2] + rng.uniform(-0.05, 0.05));
    const IKSolution sol = solve_position_ik(model, req);
    CHECK(sol.converged);
    const Vec3 p = kinematics::tool_position(model, sol.compose(req.q46));
    CHECK((p - target).norm() < 1e-3);
  }
}

TEST_CASE("solve_position_ik from the exact solution converges cheaply") {
  const auto model = test_model();
  JointVec q_true;
  q_true << 0.4, -0.3, 0.5, 0.2, -0.1, 0.3;
  IKRequest req;
  req.target = kinematics::tool_position(model, q_true);
  req.q46 = Vec3(0.2, -0.1, 0.3);
  req.seed = Vec3(0.4, -0.3, 0.5);
  const IKSolution sol = solve_position_ik(model, req);
  CHECK(sol.converged);
  CHECK(sol.residual < req.tolerance);
  CHECK(sol.evals_used < 400);
}

TEST_CASE("solve_position_ik throws Unreachable outside the workspace") {
  const auto model = test_model();
  IKRequest req;
  req.target = Vec3(10040.0, 0.0, 0.0);  // ~10x the stretched arm
  req.q46 = Vec3::Zero();
  req.seed = Vec3::Zero();
  CHECK_THROWS_AS(solve_position_ik(model, req), UnreachableError);
}

TEST_CASE("solve_position_ik validates the frozen wrist against limits") {
  const auto model = test_model();
  IKRequest req;
  req.target = Vec3(300, 0, 400);
  req.q46 = Vec3(0.0, 3.0, 0.0);  // q5 limit is 2.09
  CHECK_THROWS_AS(solve_position_ik(model, req), ValidationError);
}

TEST_CASE("joint-limit penalty keeps solutions inside the limits") {
  auto model = test_model();
  // Tighten q3 so the unconstrained solution would violate it.
  model.limits[2] = {-0.05, 0.05};
  JointVec q_probe;
  q_probe << 0.2, 0.4, 0.0, 0.0, 0.0, 0.0;
  IKRequest req;
  req.target = kinematics::tool_position(model, q_probe);
  req.q46 = Vec3::Zero();
  req.seed = Vec3(0.1, 0.3, 0.2);  // seed outside the tight q3 band
  const IKSolution sol = solve_position_ik(model, req);
  CHECK(sol.q13[2] < 0.06);
  CHECK(sol.q13[2] > -0.06);
}

TEST_CASE("solve_path_ik warm start tracks a straight segment") {
  const auto model = test_model();
  JointVec q_start;
  q_start << 0.0, 0.3, 0.2, 0.0, 0.4, 0.0;
  const Vec3 p0 = kinematics::tool_position(model, q_start);

  TimedPath path;
  path.sample_period = 0.024;
  for (int i = 0; i < 100; ++i) {
    const double t = i * 0.024;
    path.samples.push_back({t, p0 + Vec3(0.0, 0.8 * i, 0.0)});
  }

  PathIkOptions opts;
  opts.q46 = Vec3(q_start[3], q_start[4], q_start[5]);
  opts.seed0 = Vec3(q_start[0], q_start[1], q_start[2]);
  PathIkStats stats;
  const JointTrajectory traj = ik::solve_path_ik(model, path, opts, &stats);

  REQUIRE(traj.size() == path.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    CHECK(traj.samples[i].t == path.samples[i].t);
    // Wrist bitwise frozen.
    CHECK(traj.samples[i].q[3] == opts.q46[0]);
    CHECK(traj.samples[i].q[4] == opts.q46[1]);
    CHECK(traj.samples[i].q[5] == opts.q46[2]);
    const Vec3 p = kinematics::tool_position(model, traj.samples[i].q);
    worst = std::max(worst, (p - path.samples[i].p).norm());
  }
  CHECK(worst < 1e-3);
  CHECK(stats.discontinuities.empty());

  // Determinism: same path, same result, bitwise.
  const JointTrajectory traj2 = ik::solve_path_ik(model, path, opts);
  for (std::size_t i = 0; i < traj.size(); ++i) {
    CHECK(traj.samples[i].q == traj2.samples[i].q);
  }
}

TEST_CASE("solve_path_ik reports the failing sample index") {
  const auto model = test_model();
  TimedPath path;
  path.sample_period = 0.1;
  path.samples.push_back({0.0, Vec3(350, 0, 400)});
  path.samples.push_back({0.1, Vec3(360, 0, 400)});
  path.samples.push_back({0.2, Vec3(5000, 0, 400)});  // far outside

  PathIkOptions opts;
  opts.seed0 = Vec3(0.0, 0.3, 0.2);
  try {
    ik::solve_path_ik(model, path, opts);
    FAIL("expected UnreachableError");
  } catch (const UnreachableError& e) {
    CHECK(e.sample_index() == 2);
  }
}

TEST_CASE("solve_path_ik rejects unsorted timestamps") {
  const auto model = test_model();
  TimedPath path;
  path.samples.push_back({0.0, Vec3(350, 0, 400)});
  path.samples.push_back({0.0, Vec3(351, 0, 400)});
  CHECK_THROWS_AS(ik::solve_path_ik(model, path, PathIkOptions{}),
                  ValidationError);
}
