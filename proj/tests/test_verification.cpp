#include "armtraj/verification.hpp"

#include <cmath>
#include <limits>

#include "armtraj/errors.hpp"
#include "armtraj/profiles.hpp"
#include "armtraj/trajectory.hpp"
#include "doctest.h"
#include "oracles.hpp"
#include "test_model.hpp"

using namespace armtraj;
using namespace armtraj::verification;

namespace {

TimedPath lognormal_line(double sample_period = 0.024) {
  profiles::SegmentSpec seg;
  seg.p_s = Vec3(0, 0, 0);
  seg.p_e = Vec3(120, 40, -30);
  seg.t_e = 2.4;
  return profiles::superpose_strokes({seg}, 0.0, sample_period, {});
}

}  // namespace

TEST_CASE("snr_db: frozen hand fixture") {
  // v_p = (1,1), v_r = (1,0.9): 10*log10(2/0.01) = 23.0102999566398...
  const double v = snr_db({1.0, 1.0}, {1.0, 0.9});
  CHECK(v == doctest::Approx(23.010299956639813).epsilon(1e-9));
}

TEST_CASE("snr_db: sentinel, zero signal, scale invariance") {
  CHECK(snr_db({1.0, 2.0}, {1.0, 2.0}) ==
        std::numeric_limits<double>::infinity());
  CHECK_THROWS_AS(snr_db({0.0, 0.0}, {1.0, 1.0}), ZeroSignalError);
  CHECK_THROWS_AS(snr_db({1.0}, {1.0}), ValidationError);
  CHECK_THROWS_AS(snr_db({1.0, 1.0}, {1.0}), ValidationError);

  const double base = snr_db({1.0, 2.0, 3.0}, {1.1, 1.9, 3.2});
  for (double c : {0.5, 2.0, 173.0}) {
    const double scaled = snr_db({c * 1.0, c * 2.0, c * 3.0},
                                 {c * 1.1, c * 1.9, c * 3.2});
    CHECK(std::fabs(scaled - base) < 1e-9);
  }
}

TEST_CASE("record: identity sensor returns a bit-equal copy") {
  const TimedPath path = lognormal_line();
  const SensorModel sensor = identity_sensor(1.0 / path.sample_period);
  const TimedPath rec = record(path, sensor, 42);

  REQUIRE(rec.size() == path.size());
  for (std::size_t i = 0; i < path.size(); ++i) {
    CHECK(rec.samples[i].t == path.samples[i].t);
    CHECK(rec.samples[i].p == path.samples[i].p);
  }
}

TEST_CASE("record: pure latency shifts a linear path by v * latency") {
  TimedPath line;
  line.sample_period = 0.01;
  for (int i = 0; i <= 300; ++i) {
    line.samples.push_back({0.01 * i, Vec3(5.0 * 0.01 * i, 0, 0)});
  }
  SensorModel sensor;
  sensor.rate = 100.0;
  sensor.latency = 0.1;
  const TimedPath rec = record(line, sensor, 1);
  for (const auto& s : rec.samples) {
    if (s.t < 0.1) continue;  // clamped head
    const double ideal = 5.0 * s.t - 5.0 * 0.1;
    CHECK(s.p[0] == doctest::Approx(ideal).epsilon(1e-9));
  }
}

TEST_CASE("record is deterministic per seed and differs across seeds") {
  const TimedPath path = lognormal_line();
  SensorModel sensor;
  sensor.position_noise_std = 0.1;
  const TimedPath a = record(path, sensor, 7);
  const TimedPath b = record(path, sensor, 7);
  const TimedPath c = record(path, sensor, 8);
  REQUIRE(a.size() == b.size());
  bool all_equal_ab = true;
  bool any_diff_ac = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    all_equal_ab = all_equal_ab && (a.samples[i].p == b.samples[i].p);
    any_diff_ac = any_diff_ac || (a.samples[i].p != c.samples[i].p);
  }
  CHECK(all_equal_ab);
  CHECK(any_diff_ac);
}

TEST_CASE("record: quantization rounds to the grid") {
  TimedPath line;
  line.sample_period = 0.1;
  for (int i = 0; i <= 10; ++i) {
    line.samples.push_back({0.1 * i, Vec3(1.234 * i, 0, 0)});
  }
  SensorModel sensor;
  sensor.rate = 10.0;
  sensor.quantization = 0.5;
  const TimedPath rec = record(line, sensor, 3);
  for (const auto& s : rec.samples) {
    const double q = s.p[0] / 0.5;
    CHECK(std::fabs(q - std::round(q)) < 1e-9);
  }
}

TEST_CASE("record from a joint trajectory goes through FK") {
  const auto model = test_model();
  JointVec q;
  q << 0.1, 0.25, 0.3, 0.0, 0.5, 0.0;
  JointTrajectory traj;
  traj.model_id = model.id;
  for (int i = 0; i < 10; ++i) {
    traj.samples.push_back({0.024 * i, q});
  }
  const TimedPath rec =
      record(traj, model, identity_sensor(1.0 / 0.024), 0);
  const Vec3 expected = kinematics::tool_position(model, q);
  for (const auto& s : rec.samples) {
    CHECK((s.p - expected).norm() < 1e-12);
  }
}

TEST_CASE("compare: identity recording scores the +inf sentinel") {
  const TimedPath path = lognormal_line();
  const TimedPath rec = record(path, identity_sensor(1.0 / path.sample_period), 0);
  const SNRReport rep = compare(path, rec);
  CHECK(std::isinf(rep.snr_db));
  CHECK(rep.alignment_offset == 0.0);
  CHECK(rep.n_samples == rec.size());
}

TEST_CASE("compare: lossless resampling to a faster clock stays >= 60 dB") {
  const TimedPath path = lognormal_line();
  const TimedPath rec = record(path, identity_sensor(200.0), 0);
  const SNRReport rep = compare(path, rec);
  CHECK(rep.snr_db >= 60.0);
  CHECK(rep.resampling_rate == doctest::Approx(200.0).epsilon(1e-6));
}

TEST_CASE("compare recovers a constructed delay") {
  const TimedPath path = lognormal_line(0.005);
  TimedPath delayed = path;
  for (auto& s : delayed.samples) s.t += 0.05;
  const SNRReport rep = compare(path, delayed);
  CHECK(rep.alignment_offset == doctest::Approx(0.05).epsilon(1e-6));
  CHECK(rep.snr_db > 60.0);
}

TEST_CASE("compare: SNR decreases monotonically with sensor noise") {
  const TimedPath path = lognormal_line();
  const double stds[] = {0.01, 0.03, 0.1, 0.3, 1.0};
  double mean_snr[5];
  for (int level = 0; level < 5; ++level) {
    double acc = 0.0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      SensorModel sensor;
      sensor.position_noise_std = stds[level];
      const TimedPath rec = record(path, sensor, seed);
      acc += compare(path, rec).snr_db;
    }
    mean_snr[level] = acc / 20.0;
  }
  for (int level = 1; level < 5; ++level) {
    CHECK(mean_snr[level] < mean_snr[level - 1]);
  }
}

TEST_CASE("compare rejects disjoint time ranges") {
  const TimedPath path = lognormal_line();
  TimedPath far = path;
  for (auto& s : far.samples) s.t += 100.0;
  CHECK_THROWS_AS(compare(path, far), ValidationError);
}

TEST_CASE("sensor validation") {
  const TimedPath path = lognormal_line();
  SensorModel bad;
  bad.rate = 0.0;
  CHECK_THROWS_AS(record(path, bad, 0), ValidationError);
  bad = SensorModel{};
  bad.position_noise_std = -1.0;
  CHECK_THROWS_AS(record(path, bad, 0), ValidationError);
}
