#include "armtraj/ik.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "armtraj/errors.hpp"

namespace armtraj::ik {

namespace {

constexpr double kInitStep = 0.05;          // rad, initial simplex spread
constexpr double kReachableResidual = 1.0;  // mm^2, Unreachable threshold
constexpr double kLimitPenaltyWeight = 1e8; // mm^2 per rad^2 of violation

double limit_penalty(const Vec3& q13, const kinematics::RobotModel& model) {
  double pen = 0.0;
  for (int i = 0; i < 3; ++i) {
    const auto& lim = model.limits[i];
    if (q13[i] < lim.lower) {
      const double d = lim.lower - q13[i];
      pen += kLimitPenaltyWeight * d * d;
    } else if (q13[i] > lim.upper) {
      const double d = q13[i] - lim.upper;
      pen += kLimitPenaltyWeight * d * d;
    }
  }
  return pen;
}

}  // namespace

JointVec IKSolution::compose(const Vec3& q46) const {
  JointVec q;
  q << q13[0], q13[1], q13[2], q46[0], q46[1], q46[2];
  return q;
}

double position_error(const Vec3& q13, const Vec3& q46, const Vec3& target,
                      const kinematics::RobotModel& model) {
  JointVec q;
  q << q13[0], q13[1], q13[2], q46[0], q46[1], q46[2];
  return (target - kinematics::tool_position(model, q)).squaredNorm();
}

SimplexResult minimize_simplex(const std::function<double(const Vec3&)>& f,
                               const Vec3& seed, double f_tol, double x_tol,
                               int max_evals) {
  if (max_evals < 1) throw ValidationError("max_evals", "must be >= 1");

  // Standard Nelder-Mead coefficients.
  constexpr double kAlpha = 1.0;  // reflection
  constexpr double kGamma = 2.0;  // expansion
  constexpr double kRho = 0.5;    // contraction
  constexpr double kSigma = 0.5;  // shrink

  std::array<Vec3, 4> x;
  std::array<double, 4> fx;
  int evals = 0;

  auto eval = [&](const Vec3& p) {
    ++evals;
    return f(p);
  };

  x[0] = seed;
  fx[0] = eval(x[0]);
  for (int i = 0; i < 3; ++i) {
    x[i + 1] = seed;
    x[i + 1][i] += kInitStep;
    if (evals < max_evals) {
      fx[i + 1] = eval(x[i + 1]);
    } else {
      fx[i + 1] = fx[0];
      x[i + 1] = x[0];
    }
  }

  auto order = [&] {
    // 4 vertices: insertion sort by f.
    for (int i = 1; i < 4; ++i) {
      for (int j = i; j > 0 && fx[j] < fx[j - 1]; --j) {
        std::swap(fx[j], fx[j - 1]);
        std::swap(x[j], x[j - 1]);
      }
    }
  };
  auto diameter = [&] {
    double d = 0.0;
    for (int i = 1; i < 4; ++i) d = std::max(d, (x[i] - x[0]).norm());
    return d;
  };

  order();
  bool converged = false;
  while (evals < max_evals) {
    if (fx[3] - fx[0] < f_tol && diameter() < x_tol) {
      converged = true;
      break;
    }
    const Vec3 centroid = (x[0] + x[1] + x[2]) / 3.0;
    const Vec3 xr = centroid + kAlpha * (centroid - x[3]);
    const double fr = eval(xr);

    if (fr < fx[0]) {
      if (evals < max_evals) {
        const Vec3 xe = centroid + kGamma * (xr - centroid);
        const double fe = eval(xe);
        if (fe < fr) {
          x[3] = xe;
          fx[3] = fe;
        } else {
          x[3] = xr;
          fx[3] = fr;
        }
      } else {
        x[3] = xr;
        fx[3] = fr;
      }
    } else if (fr < fx[2]) {
      x[3] = xr;
      fx[3] = fr;
    } else if (evals < max_evals) {
      // Contract toward the better of (worst, reflected).
      const bool outside = fr < fx[3];
      const Vec3 xc = outside ? centroid + kRho * (xr - centroid)
                              : centroid + kRho * (x[3] - centroid);
      const double fc = eval(xc);
      if (fc < std::min(fr, fx[3])) {
        x[3] = xc;
        fx[3] = fc;
      } else {
        // Shrink toward the best vertex.
        for (int i = 1; i < 4 && evals < max_evals; ++i) {
          x[i] = x[0] + kSigma * (x[i] - x[0]);
          fx[i] = eval(x[i]);
        }
      }
    }
    order();
  }
  order();

  SimplexResult res;
  res.x = x[0];
  res.f = fx[0];
  res.evals = evals;
  res.converged = converged;
  return res;
}

IKSolution solve_position_ik(const kinematics::RobotModel& model,
                             const IKRequest& req) {
  if (!(req.tolerance > 0.0)) {
    throw ValidationError("tolerance", "must be positive");
  }
  if (!req.target.allFinite()) {
    throw ValidationError("target", "must be finite");
  }
  for (int i = 0; i < 3; ++i) {
    const auto& lim = model.limits[i + 3];
    if (req.q46[i] < lim.lower || req.q46[i] > lim.upper) {
      throw ValidationError("q46",
                            "frozen wrist angle q" + std::to_string(i + 4) +
                                " outside joint limits");
    }
  }

  const auto objective = [&](const Vec3& q13) {
    return position_error(q13, req.q46, req.target, model) +
           limit_penalty(q13, model);
  };
  const SimplexResult sr =
      minimize_simplex(objective, req.seed, 1e-12, 1e-8, req.max_evals);

  IKSolution sol;
  sol.q13 = sr.x;
  sol.residual = position_error(sr.x, req.q46, req.target, model);
  sol.evals_used = sr.evals;
  sol.converged = sol.residual <= req.tolerance;
  sol.budget_exhausted = !sr.converged;

  if (sol.residual > kReachableResidual) {
    throw UnreachableError(0, sol.residual);
  }
  return sol;
}

JointTrajectory solve_path_ik(const kinematics::RobotModel& model,
                              const TimedPath& path, const PathIkOptions& opts,
                              PathIkStats* stats) {
  if (path.empty()) throw ValidationError("path", "must be non-empty");
  for (std::size_t i = 1; i < path.size(); ++i) {
    if (path.samples[i].t <= path.samples[i - 1].t) {
      throw ValidationError("path", "timestamps must be strictly increasing");
    }
  }

  JointTrajectory traj;
  traj.model_id = model.id;
  traj.samples.reserve(path.size());
  if (stats != nullptr) {
    stats->evals_per_sample.clear();
    stats->discontinuities.clear();
    stats->total_evals = 0;
    stats->evals_per_sample.reserve(path.size());
  }

  Vec3 seed = opts.seed0;
  for (std::size_t i = 0; i < path.size(); ++i) {
    // Holds (exactly repeated targets) reuse the previous solution.
    if (i > 0 && path.samples[i].p == path.samples[i - 1].p) {
      if (stats != nullptr) stats->evals_per_sample.push_back(0);
      traj.samples.push_back({path.samples[i].t, traj.samples.back().q});
      continue;
    }
    IKRequest req;
    req.target = path.samples[i].p;
    req.q46 = opts.q46;
    req.seed = seed;
    req.tolerance = opts.tolerance;
    req.max_evals = opts.max_evals;

    IKSolution sol;
    try {
      sol = solve_position_ik(model, req);
    } catch (const UnreachableError& e) {
      throw UnreachableError(i, e.residual_mm2());
    }
    if (!sol.converged) {
      throw UnreachableError(i, sol.residual);
    }
    if (i > 0 && (sol.q13 - seed).norm() > opts.step_cap && stats != nullptr) {
      stats->discontinuities.push_back(i);
    }
    if (stats != nullptr) {
      stats->evals_per_sample.push_back(sol.evals_used);
      stats->total_evals += sol.evals_used;
    }
    traj.samples.push_back({path.samples[i].t, sol.compose(opts.q46)});
    seed = sol.q13;
  }
  return traj;
}

}  // namespace armtraj::ik
