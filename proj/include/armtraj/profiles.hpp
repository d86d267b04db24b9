#ifndef ARMTRAJ_PROFILES_HPP_
#define ARMTRAJ_PROFILES_HPP_

#include <vector>

#include "armtraj/types.hpp"

namespace armtraj::profiles {

enum class ProfileKind { kLognormal, kTrapezoidal };

const char* to_string(ProfileKind kind);
ProfileKind profile_from_string(const std::string& name);

/// One lognormal pulse. t0 is the activation time; mu/sigma live in
/// log-time; D scales the unit-area pulse to a displacement in mm.
struct LognormalStroke {
  double t0 = 0.0;
  double mu = 0.0;
  double sigma = 1.0;
  double D = 1.0;
};

/// Timing of a trapezoidal speed law: ramp up for t_acc at accel, cruise
/// at v_max for t_const, ramp down for t_acc.
struct TrapezoidSegment {
  double t_acc = 0.0;
  double t_const = 0.0;
  double v_max = 0.0;
  double accel = 0.0;

  double total_time() const { return 2.0 * t_acc + t_const; }
};

/// A straight stroke between two Cartesian points over a commanded
/// duration, executed under one of the two velocity laws.
struct SegmentSpec {
  Vec3 p_s = Vec3::Zero();
  Vec3 p_e = Vec3::Zero();
  double t_e = 1.0;
  ProfileKind kind = ProfileKind::kLognormal;

  double distance() const { return (p_e - p_s).norm(); }
};

/// Tunables shared by the generators. accel is only read for trapezoidal
/// strokes, r_target/mu only for lognormal ones.
struct ProfileOptions {
  double r_target = 0.99;
  double mu = 0.0;
  double accel = 500.0;  // mm/s^2
};

// --- lognormal pulse ------------------------------------------------------

/// Speed of the pulse at time t (mm/s). Exactly 0 for t <= t0.
double lognormal_speed(double t, const LognormalStroke& stroke);

/// Normalized progress r(t) = fraction of D travelled by time t, in [0,1).
double lognormal_cdf(double t, double t0, double mu, double sigma);

/// Closed-form sigma such that lognormal_cdf(t_e) = r_target.
/// Requires r_target in (0.5, 1) and ln(t_e - t0) - mu > 0; throws
/// DegenerateDurationError when no positive sigma exists.
double solve_sigma(double t_e, double r_target, double t0 = 0.0,
                   double mu = 0.0);

/// Straight-line position under the lognormal law:
/// p(t) = p_s + (p_e - p_s) * lognormal_cdf(t).
Vec3 lognormal_position(double t, const SegmentSpec& seg, double t0, double mu,
                        double sigma);

// --- trapezoidal law ------------------------------------------------------

/// Solve ramp/cruise times for covering `distance` in `total_time` at ramp
/// acceleration `accel`. Throws InfeasibleError when accel < 4*d/T^2.
TrapezoidSegment trapezoid_times(double distance, double total_time,
                                 double accel);

/// Speed (mm/s) of the trapezoidal law at local time t; 0 outside [0, T].
double trapezoid_speed(double t, const TrapezoidSegment& tz);

/// Distance covered by local time t (mm), clamped to [0, distance].
double trapezoid_distance(double t, const TrapezoidSegment& tz);

/// Straight-line position under the trapezoidal law.
Vec3 trapezoid_position(double t, const SegmentSpec& seg,
                        const TrapezoidSegment& tz);

// --- stroke superposition -------------------------------------------------

/// A stroke's normalized progress law placed on the global clock.
/// For lognormal strokes the degenerate-duration rescale (durations
/// <= e^mu seconds) is applied here, so any positive duration works.
class StrokeLaw {
 public:
  static StrokeLaw lognormal(double onset, double duration,
                             const ProfileOptions& opts);
  static StrokeLaw trapezoidal(double onset, double duration, double distance,
                               const ProfileOptions& opts);

  /// Normalized progress in [0,1] at global time t.
  double progress(double t) const;
  /// d(progress)/dt at global time t (1/s).
  double progress_rate(double t) const;

  double onset() const { return onset_; }
  double duration() const { return duration_; }
  /// Progress reached at the stroke's commanded end time.
  double end_progress() const;

 private:
  StrokeLaw() = default;

  ProfileKind kind_ = ProfileKind::kLognormal;
  double onset_ = 0.0;
  double duration_ = 0.0;
  // lognormal parameters (in locally rescaled time)
  double mu_ = 0.0;
  double sigma_ = 1.0;
  double time_scale_ = 1.0;  // degenerate-duration rescale factor
  // trapezoid parameters
  TrapezoidSegment tz_;
  double distance_ = 1.0;
};

/// Superpose a chain of strokes (each p_e must equal the next p_s) into a
/// uniformly sampled path. Stroke k+1 activates at
/// t_end(k) - overlap_fraction * duration(k); per-axis displacements sum:
///   p(t) = p_s(0) + sum_k (p_e(k) - p_s(k)) * r_k(t).
/// The final sample is snapped to the last p_e; if end_snap is non-null it
/// receives the norm of that correction (mm).
TimedPath superpose_strokes(const std::vector<SegmentSpec>& segments,
                            double overlap_fraction, double sample_period,
                            const ProfileOptions& opts = {},
                            double* end_snap = nullptr);

}  // namespace armtraj::profiles

#endif  // ARMTRAJ_PROFILES_HPP_
