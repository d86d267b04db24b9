#include "armtraj/verification.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "armtraj/errors.hpp"
#include "armtraj/trajectory.hpp"

namespace armtraj::verification {

namespace {

/// Linear interpolation on a sampled path. Query times within 1e-9 of a
/// stored sample's time (relative to the local step) return that sample
/// verbatim, so identical clocks reproduce positions bit-for-bit.
Vec3 interpolate(const TimedPath& path, double t) {
  const auto& s = path.samples;
  if (t <= s.front().t) return s.front().p;
  if (t >= s.back().t) return s.back().p;
  auto it = std::upper_bound(
      s.begin(), s.end(), t,
      [](double value, const PathSample& smp) { return value < smp.t; });
  const auto& hi = *it;
  const auto& lo = *(it - 1);
  const double alpha = (t - lo.t) / (hi.t - lo.t);
  if (alpha < 1e-9) return lo.p;
  if (alpha > 1.0 - 1e-9) return hi.p;
  return lo.p + alpha * (hi.p - lo.p);
}

std::vector<double> smooth3(const std::vector<double>& v) {
  if (v.size() < 3) return v;
  std::vector<double> out(v.size());
  out.front() = (v[0] + v[1]) / 2.0;
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    out[i] = (v[i - 1] + v[i] + v[i + 1]) / 3.0;
  }
  out.back() = (v[v.size() - 2] + v[v.size() - 1]) / 2.0;
  return out;
}

void validate_sensor(const SensorModel& sensor) {
  if (!(sensor.rate > 0.0)) throw ValidationError("rate", "must be positive");
  if (sensor.position_noise_std < 0.0) {
    throw ValidationError("position_noise_std", "must be >= 0");
  }
  if (sensor.latency < 0.0) throw ValidationError("latency", "must be >= 0");
  if (sensor.quantization < 0.0) {
    throw ValidationError("quantization", "must be >= 0");
  }
}

}  // namespace

SensorModel identity_sensor(double rate) {
  SensorModel s;
  s.rate = rate;
  return s;
}

SensorModel default_noise_preset() {
  SensorModel s;
  s.rate = 200.0;
  // Calibrated against the shipped square figure so that both velocity
  // laws land in the 20-26 dB SNR band (see acceptance criterion 7).
  s.position_noise_std = 0.035;
  return s;
}

TimedPath record(const TimedPath& path, const SensorModel& sensor,
                 std::uint64_t rng_seed) {
  validate_sensor(sensor);
  if (path.size() < 2) {
    throw ValidationError("path", "record needs at least 2 samples");
  }

  double step = 1.0 / sensor.rate;
  // When the sensor runs at the path's own rate, use the path's exact
  // period so the identity sensor reproduces timestamps bit-for-bit.
  if (path.sample_period > 0.0 &&
      std::fabs(step - path.sample_period) < 1e-12 * path.sample_period) {
    step = path.sample_period;
  }

  const double t0 = path.samples.front().t;
  const double span = path.samples.back().t - t0;
  const std::size_t n =
      static_cast<std::size_t>(std::floor(span / step + 1e-9)) + 1;

  std::mt19937_64 rng(rng_seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  TimedPath out;
  out.sample_period = step;
  out.samples.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double t = t0 + static_cast<double>(k) * step;
    Vec3 p = interpolate(path, t - sensor.latency);
    if (sensor.position_noise_std > 0.0) {
      for (int axis = 0; axis < 3; ++axis) {
        p[axis] += sensor.position_noise_std * gauss(rng);
      }
    }
    if (sensor.quantization > 0.0) {
      for (int axis = 0; axis < 3; ++axis) {
        p[axis] = std::round(p[axis] / sensor.quantization) *
                  sensor.quantization;
      }
    }
    out.samples.push_back({t, p});
  }
  return out;
}

TimedPath record(const JointTrajectory& traj,
                 const kinematics::RobotModel& model,
                 const SensorModel& sensor, std::uint64_t rng_seed) {
  TimedPath path;
  path.samples.reserve(traj.size());
  for (const auto& s : traj.samples) {
    path.samples.push_back({s.t, kinematics::tool_position(model, s.q)});
  }
  if (path.size() >= 2) {
    path.sample_period = path.samples[1].t - path.samples[0].t;
  }
  return record(path, sensor, rng_seed);
}

double snr_db(const std::vector<double>& v_programmed,
              const std::vector<double>& v_recorded) {
  if (v_programmed.size() != v_recorded.size()) {
    throw ValidationError("series", "speed series lengths differ");
  }
  if (v_programmed.size() < 2) {
    throw ValidationError("series", "need at least 2 samples");
  }
  double signal = 0.0;
  double error = 0.0;
  for (std::size_t i = 0; i < v_programmed.size(); ++i) {
    signal += v_programmed[i] * v_programmed[i];
    const double e = v_programmed[i] - v_recorded[i];
    error += e * e;
  }
  if (signal == 0.0) {
    throw ZeroSignalError("programmed speed series has zero energy");
  }
  if (error == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(signal / error);
}

SNRReport compare(const TimedPath& programmed, const TimedPath& recorded,
                  const CompareOptions& opts) {
  if (programmed.size() < 2 || recorded.size() < 2) {
    throw ValidationError("paths", "need at least 2 samples each");
  }
  if (programmed.samples.back().t <= recorded.samples.front().t ||
      recorded.samples.back().t <= programmed.samples.front().t) {
    throw ValidationError("paths", "time ranges do not overlap");
  }

  const std::vector<double> v_rec = trajectory::numeric_speed(recorded);

  const double rec_step =
      (recorded.samples.back().t - recorded.samples.front().t) /
      static_cast<double>(recorded.size() - 1);

  // Programmed speed on the recorded clock, shifted by `offset`: resample
  // the programmed positions there (same interpolator the simulated
  // sensor uses, so an identity recording reproduces them bit-for-bit)
  // and differentiate on that clock.
  const auto resampled_speed = [&](double offset) {
    TimedPath shifted;
    shifted.sample_period = rec_step;
    shifted.samples.reserve(recorded.size());
    for (const auto& s : recorded.samples) {
      shifted.samples.push_back({s.t, interpolate(programmed, s.t - offset)});
    }
    return trajectory::numeric_speed(shifted);
  };

  // Cross-correlation search over whole recorded steps within
  // +/-max_alignment; ties prefer the smaller shift.
  const long k_max =
      std::lround(std::floor(opts.max_alignment / rec_step + 1e-9));
  double best_corr = -std::numeric_limits<double>::infinity();
  double best_offset = 0.0;
  for (long k = -k_max; k <= k_max; ++k) {
    const double offset = static_cast<double>(k) * rec_step;
    const std::vector<double> vp = resampled_speed(offset);
    double dot = 0.0;
    double pp = 0.0;
    double rr = 0.0;
    for (std::size_t i = 0; i < vp.size(); ++i) {
      dot += vp[i] * v_rec[i];
      pp += vp[i] * vp[i];
      rr += v_rec[i] * v_rec[i];
    }
    const double denom = std::sqrt(pp * rr);
    const double corr = denom > 0.0 ? dot / denom : 0.0;
    if (corr > best_corr + 1e-12 ||
        (corr > best_corr - 1e-12 &&
         std::fabs(offset) < std::fabs(best_offset))) {
      best_corr = corr;
      best_offset = offset;
    }
  }

  std::vector<double> vp_aligned = resampled_speed(best_offset);
  std::vector<double> vr = v_rec;
  if (opts.smooth) {
    vp_aligned = smooth3(vp_aligned);
    vr = smooth3(vr);
  }

  SNRReport report;
  report.snr_db = snr_db(vp_aligned, vr);
  report.n_samples = recorded.size();
  report.resampling_rate = 1.0 / rec_step;
  report.alignment_offset = best_offset;
  return report;
}

}  // namespace armtraj::verification
