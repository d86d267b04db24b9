#ifndef ARMTRAJ_VERIFICATION_HPP_
#define ARMTRAJ_VERIFICATION_HPP_

#include <cstdint>
#include <vector>

#include "armtraj/kinematics.hpp"
#include "armtraj/types.hpp"

namespace armtraj::verification {

/// Simulated position sensor watching the tool.
struct SensorModel {
  double rate = 200.0;             // samples/s
  double position_noise_std = 0.0; // mm, Gaussian per axis
  double latency = 0.0;            // s
  double quantization = 0.0;       // mm, 0 = off
};

/// Noise-free sensor at the given rate; record() through it at the path's
/// own rate returns a bit-equal copy.
SensorModel identity_sensor(double rate = 200.0);

/// The documented noise preset: a 200 Hz sensor whose position noise was
/// calibrated (tests/acceptance.cpp, criterion 7) to score both velocity
/// laws in the 20-26 dB SNR band on the shipped square figure.
SensorModel default_noise_preset();

/// Fidelity report: speed-domain SNR of a recording against the plan.
struct SNRReport {
  double snr_db = 0.0;          // +inf when the series match exactly
  std::size_t n_samples = 0;
  double resampling_rate = 0.0; // samples/s of the comparison clock
  double alignment_offset = 0.0;// s, shift applied to the recorded clock
};

/// Sample the path through the sensor: linear-interpolation resample at
/// sensor.rate over the path's time span, shifted by latency, then
/// Gaussian position noise and quantization. Deterministic per rng_seed.
TimedPath record(const TimedPath& path, const SensorModel& sensor,
                 std::uint64_t rng_seed);

/// Same, but the observed positions come from FK of a joint trajectory.
TimedPath record(const JointTrajectory& traj,
                 const kinematics::RobotModel& model,
                 const SensorModel& sensor, std::uint64_t rng_seed);

/// SNR = 10*log10(sum v_p^2 / sum (v_p - v_r)^2) dB over two equal-length
/// speed series. Throws ZeroSignalError when the programmed series has no
/// energy; returns +inf (perfect match) when the error sum is zero.
double snr_db(const std::vector<double>& v_programmed,
              const std::vector<double>& v_recorded);

struct CompareOptions {
  /// Half-width of the cross-correlation alignment search (s).
  double max_alignment = 0.25;
  /// Apply a symmetric 3-tap moving average to both speed series before
  /// scoring (differentiating noisy positions amplifies noise).
  bool smooth = true;
};

/// Score how faithfully `recorded` reproduces `programmed`: derive both
/// speed series, resample the programmed one onto the recorded clock,
/// align by cross-correlation within +/-max_alignment, and report SNR.
SNRReport compare(const TimedPath& programmed, const TimedPath& recorded,
                  const CompareOptions& opts = {});

}  // namespace armtraj::verification

#endif  // ARMTRAJ_VERIFICATION_HPP_
