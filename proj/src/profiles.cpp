#include "armtraj/profiles.hpp"

#include <cmath>
#include <cstddef>

#include "armtraj/errors.hpp"
#include "armtraj/special.hpp"

namespace armtraj::profiles {

namespace {
constexpr double kSqrt2 = 1.4142135623730951;
constexpr double kSqrt2Pi = 2.5066282746310002;
}  // namespace

const char* to_string(ProfileKind kind) {
  return kind == ProfileKind::kLognormal ? "lognormal" : "trapezoidal";
}

ProfileKind profile_from_string(const std::string& name) {
  if (name == "lognormal") return ProfileKind::kLognormal;
  if (name == "trapezoidal") return ProfileKind::kTrapezoidal;
  throw ValidationError("profile",
                        "unknown profile '" + name +
                            "' (expected lognormal or trapezoidal)");
}

double lognormal_speed(double t, const LognormalStroke& stroke) {
  if (t <= stroke.t0) return 0.0;
  const double dt = t - stroke.t0;
  const double z = (std::log(dt) - stroke.mu) / stroke.sigma;
  return stroke.D / (stroke.sigma * dt * kSqrt2Pi) * std::exp(-0.5 * z * z);
}

double lognormal_cdf(double t, double t0, double mu, double sigma) {
  if (sigma <= 0.0) {
    throw ValidationError("sigma", "must be positive");
  }
  if (t <= t0) return 0.0;
  const double z = (std::log(t - t0) - mu) / (sigma * kSqrt2);
  return 0.5 * (1.0 + special::erf_approx(z));
}

double solve_sigma(double t_e, double r_target, double t0, double mu) {
  if (!(r_target > 0.5 && r_target < 1.0)) {
    throw ValidationError("r_target", "must lie in (0.5, 1)");
  }
  if (!(t_e > t0)) {
    throw ValidationError("t_e", "must exceed t0");
  }
  const double log_span = std::log(t_e - t0) - mu;
  if (log_span <= 0.0) {
    throw DegenerateDurationError(
        "no positive sigma reaches r at t_e: ln(t_e - t0) - mu <= 0");
  }
  return log_span / (kSqrt2 * special::erf_inv(2.0 * r_target - 1.0));
}

Vec3 lognormal_position(double t, const SegmentSpec& seg, double t0, double mu,
                        double sigma) {
  return seg.p_s + (seg.p_e - seg.p_s) * lognormal_cdf(t, t0, mu, sigma);
}

TrapezoidSegment trapezoid_times(double distance, double total_time,
                                 double accel) {
  if (!(distance > 0.0)) throw ValidationError("distance", "must be positive");
  if (!(total_time > 0.0)) throw ValidationError("total_time", "must be positive");
  if (!(accel > 0.0)) throw ValidationError("accel", "must be positive");

  const double disc = total_time * total_time - 4.0 * distance / accel;
  if (disc < 0.0) {
    throw InfeasibleError(
        "trapezoid infeasible: accel below 4*distance/total_time^2");
  }
  TrapezoidSegment tz;
  tz.accel = accel;
  tz.t_acc = 0.5 * (total_time - std::sqrt(disc));
  tz.t_const = total_time - 2.0 * tz.t_acc;
  tz.v_max = accel * tz.t_acc;
  return tz;
}

double trapezoid_speed(double t, const TrapezoidSegment& tz) {
  const double T = tz.total_time();
  if (t <= 0.0 || t >= T) return 0.0;
  if (t < tz.t_acc) return tz.accel * t;
  if (t <= tz.t_acc + tz.t_const) return tz.v_max;
  return tz.accel * (T - t);
}

double trapezoid_distance(double t, const TrapezoidSegment& tz) {
  const double T = tz.total_time();
  const double total = tz.v_max * (tz.t_acc + tz.t_const);
  if (t <= 0.0) return 0.0;
  if (t >= T) return total;
  if (t < tz.t_acc) return 0.5 * tz.accel * t * t;
  if (t <= tz.t_acc + tz.t_const) {
    return 0.5 * tz.v_max * tz.t_acc + tz.v_max * (t - tz.t_acc);
  }
  const double tail = T - t;
  return total - 0.5 * tz.accel * tail * tail;
}

Vec3 trapezoid_position(double t, const SegmentSpec& seg,
                        const TrapezoidSegment& tz) {
  const double dist = seg.distance();
  if (dist == 0.0) return seg.p_s;
  const Vec3 dir = (seg.p_e - seg.p_s) / dist;
  return seg.p_s + dir * trapezoid_distance(t, tz);
}

// --- StrokeLaw --------------------------------------------------------------

StrokeLaw StrokeLaw::lognormal(double onset, double duration,
                               const ProfileOptions& opts) {
  if (!(duration > 0.0)) throw ValidationError("duration", "must be positive");
  StrokeLaw law;
  law.kind_ = ProfileKind::kLognormal;
  law.onset_ = onset;
  law.duration_ = duration;
  law.mu_ = opts.mu;

  // Durations <= e^mu admit no sigma; rescale local time by k so the
  // scaled duration is e^(mu+1), solve there, and evaluate at k*(t-onset).
  // Equivalent to lowering mu to ln(duration) - 1 in real time.
  const double log_span = std::log(duration) - opts.mu;
  if (log_span <= 0.0) {
    law.time_scale_ = std::exp(opts.mu + 1.0) / duration;
  }
  law.sigma_ = solve_sigma(duration * law.time_scale_, opts.r_target, 0.0,
                           opts.mu);
  return law;
}

StrokeLaw StrokeLaw::trapezoidal(double onset, double duration,
                                 double distance, const ProfileOptions& opts) {
  StrokeLaw law;
  law.kind_ = ProfileKind::kTrapezoidal;
  law.onset_ = onset;
  law.duration_ = duration;
  law.distance_ = distance;
  law.tz_ = trapezoid_times(distance, duration, opts.accel);
  return law;
}

double StrokeLaw::progress(double t) const {
  const double local = t - onset_;
  if (kind_ == ProfileKind::kLognormal) {
    return lognormal_cdf(local * time_scale_, 0.0, mu_, sigma_);
  }
  return trapezoid_distance(local, tz_) / distance_;
}

double StrokeLaw::progress_rate(double t) const {
  const double local = t - onset_;
  if (kind_ == ProfileKind::kLognormal) {
    LognormalStroke pulse{0.0, mu_, sigma_, 1.0};
    return lognormal_speed(local * time_scale_, pulse) * time_scale_;
  }
  return trapezoid_speed(local, tz_) / distance_;
}

double StrokeLaw::end_progress() const { return progress(onset_ + duration_); }

// --- superposition -----------------------------------------------------------

TimedPath superpose_strokes(const std::vector<SegmentSpec>& segments,
                            double overlap_fraction, double sample_period,
                            const ProfileOptions& opts, double* end_snap) {
  if (segments.empty()) {
    throw ValidationError("segments", "at least one segment required");
  }
  if (!(overlap_fraction >= 0.0 && overlap_fraction < 0.5)) {
    throw ValidationError("overlap_fraction", "must lie in [0, 0.5)");
  }
  if (!(sample_period > 0.0)) {
    throw ValidationError("sample_period", "must be positive");
  }
  for (std::size_t k = 0; k + 1 < segments.size(); ++k) {
    if ((segments[k].p_e - segments[k + 1].p_s).norm() > 1e-9) {
      throw ValidationError(
          "segments", "polyline disconnected between strokes " +
                          std::to_string(k) + " and " + std::to_string(k + 1));
    }
  }

  std::vector<StrokeLaw> laws;
  std::vector<Vec3> deltas;
  laws.reserve(segments.size());
  double onset = 0.0;
  for (const SegmentSpec& seg : segments) {
    if (!(seg.t_e > 0.0)) {
      throw ValidationError("t_e", "segment duration must be positive");
    }
    const double dist = seg.distance();
    // Zero-length segments are timed holds (used for pauses); their law
    // shape is irrelevant because the displacement they scale is zero.
    if (seg.kind == ProfileKind::kTrapezoidal && dist > 0.0) {
      laws.push_back(StrokeLaw::trapezoidal(onset, seg.t_e, dist, opts));
    } else {
      laws.push_back(StrokeLaw::lognormal(onset, seg.t_e, opts));
    }
    deltas.push_back(seg.p_e - seg.p_s);
    onset += (1.0 - overlap_fraction) * seg.t_e;
  }
  const double total =
      laws.back().onset() + laws.back().duration();

  TimedPath path;
  path.sample_period = sample_period;
  // The +1e-9 guards against total/sample_period landing one ulp below an
  // integer when durations are exact multiples of the sample period.
  const std::size_t n =
      static_cast<std::size_t>(std::floor(total / sample_period + 1e-9)) + 1;
  path.samples.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) * sample_period;
    Vec3 p = segments.front().p_s;
    for (std::size_t k = 0; k < laws.size(); ++k) {
      p += deltas[k] * laws[k].progress(t);
    }
    path.samples.push_back({t, p});
  }

  // The lognormal CDF never reaches 1 in finite time; pin the final sample
  // to the commanded endpoint and report the correction.
  const Vec3 target = segments.back().p_e;
  const double snap = (target - path.samples.back().p).norm();
  path.samples.back().p = target;
  if (end_snap != nullptr) *end_snap = snap;
  return path;
}

}  // namespace armtraj::profiles
