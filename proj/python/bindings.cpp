#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "armtraj/errors.hpp"
#include "armtraj/ik.hpp"
#include "armtraj/io.hpp"
#include "armtraj/kinematics.hpp"
#include "armtraj/profiles.hpp"
#include "armtraj/trajectory.hpp"
#include "armtraj/types.hpp"
#include "armtraj/verification.hpp"

namespace py = pybind11;
using namespace armtraj;

namespace {

using Arr3 = std::array<double, 3>;
using Arr6 = std::array<double, 6>;
using Mat4x4 = std::array<std::array<double, 4>, 4>;

Vec3 to_vec3(const Arr3& a) { return Vec3(a[0], a[1], a[2]); }
Arr3 from_vec3(const Vec3& v) { return {v[0], v[1], v[2]}; }

JointVec to_joints(const Arr6& a) {
  JointVec q;
  for (int i = 0; i < 6; ++i) q[i] = a[i];
  return q;
}

Arr6 from_joints(const JointVec& q) {
  return {q[0], q[1], q[2], q[3], q[4], q[5]};
}

/// Python-facing IK result with the composed joint vector precomputed.
struct IKResult {
  Arr3 q13{};
  Arr6 q{};
  double residual = 0.0;
  int evals_used = 0;
  bool converged = false;
  bool budget_exhausted = false;
};

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Straight-line arm trajectory synthesis: DH kinematics, position-only "
      "IK, lognormal/trapezoidal velocity laws, sensor simulation, and "
      "speed-domain SNR verification";
  m.attr("__version__") = "0.1.0";

  // Exception hierarchy (base first; later registrations are matched first,
  // so derived types resolve before their parents).
  auto err = py::register_exception<Error>(m, "ArmtrajError");
  py::register_exception<ValidationError>(m, "ValidationError", err.ptr());
  py::register_exception<ParseError>(m, "ParseError", err.ptr());
  py::register_exception<IoError>(m, "IoError", err.ptr());
  auto num = py::register_exception<NumericError>(m, "NumericError", err.ptr());
  py::register_exception<UnreachableError>(m, "UnreachableError", num.ptr());
  py::register_exception<InfeasibleError>(m, "InfeasibleError", num.ptr());
  py::register_exception<DegenerateDurationError>(m, "DegenerateDurationError",
                                                  num.ptr());
  py::register_exception<ZeroSignalError>(m, "ZeroSignalError", num.ptr());

  // --- domain types -------------------------------------------------------

  py::class_<kinematics::RobotModel>(m, "RobotModel")
      .def_readonly("id", &kinematics::RobotModel::id)
      .def_readonly("max_speed", &kinematics::RobotModel::max_speed)
      .def_readonly("max_accel", &kinematics::RobotModel::max_accel)
      .def(
          "within_limits",
          [](const kinematics::RobotModel& model, const Arr6& q) {
            return model.within_limits(to_joints(q));
          },
          py::arg("q"))
      .def("__repr__", [](const kinematics::RobotModel& model) {
        return "<RobotModel '" + model.id + "'>";
      });

  py::class_<trajectory::FigureSpec>(m, "Figure")
      .def_readonly("name", &trajectory::FigureSpec::name)
      .def_readonly("closed", &trajectory::FigureSpec::closed)
      .def_readonly("total_duration", &trajectory::FigureSpec::total_duration)
      .def_readonly("edge_durations", &trajectory::FigureSpec::edge_durations)
      .def_property_readonly("vertices",
                             [](const trajectory::FigureSpec& f) {
                               std::vector<Arr3> out;
                               out.reserve(f.vertices.size());
                               for (const Vec3& v : f.vertices) {
                                 out.push_back(from_vec3(v));
                               }
                               return out;
                             })
      .def("edge_count", &trajectory::FigureSpec::edge_count)
      .def("__repr__", [](const trajectory::FigureSpec& f) {
        return "<Figure '" + f.name + "', " +
               std::to_string(f.vertices.size()) + " vertices>";
      });

  py::class_<TimedPath>(m, "TimedPath")
      .def_readonly("sample_period", &TimedPath::sample_period)
      .def("__len__", [](const TimedPath& p) { return p.size(); })
      .def("duration", &TimedPath::duration)
      .def("times",
           [](const TimedPath& p) {
             std::vector<double> t;
             t.reserve(p.size());
             for (const auto& s : p.samples) t.push_back(s.t);
             return t;
           })
      .def("positions", [](const TimedPath& p) {
        std::vector<Arr3> out;
        out.reserve(p.size());
        for (const auto& s : p.samples) out.push_back(from_vec3(s.p));
        return out;
      });

  py::class_<JointTrajectory>(m, "JointTrajectory")
      .def_readonly("model_id", &JointTrajectory::model_id)
      .def("__len__", [](const JointTrajectory& j) { return j.samples.size(); })
      .def("times",
           [](const JointTrajectory& j) {
             std::vector<double> t;
             t.reserve(j.samples.size());
             for (const auto& s : j.samples) t.push_back(s.t);
             return t;
           })
      .def("joints", [](const JointTrajectory& j) {
        std::vector<Arr6> out;
        out.reserve(j.samples.size());
        for (const auto& s : j.samples) out.push_back(from_joints(s.q));
        return out;
      });

  py::class_<IKResult>(m, "IKSolution")
      .def_readonly("q13", &IKResult::q13)
      .def_readonly("q", &IKResult::q)
      .def_readonly("residual", &IKResult::residual)
      .def_readonly("evals_used", &IKResult::evals_used)
      .def_readonly("converged", &IKResult::converged)
      .def_readonly("budget_exhausted", &IKResult::budget_exhausted);

  py::class_<profiles::TrapezoidSegment>(m, "TrapezoidSegment")
      .def_readonly("t_acc", &profiles::TrapezoidSegment::t_acc)
      .def_readonly("t_const", &profiles::TrapezoidSegment::t_const)
      .def_readonly("v_max", &profiles::TrapezoidSegment::v_max)
      .def_readonly("accel", &profiles::TrapezoidSegment::accel)
      .def("total_time", &profiles::TrapezoidSegment::total_time);

  py::class_<verification::SNRReport>(m, "SNRReport")
      .def_readonly("snr_db", &verification::SNRReport::snr_db)
      .def_readonly("n_samples", &verification::SNRReport::n_samples)
      .def_readonly("resampling_rate",
                    &verification::SNRReport::resampling_rate)
      .def_readonly("alignment_offset",
                    &verification::SNRReport::alignment_offset);

  // --- loaders & constructors ----------------------------------------------

  m.def(
      "load_model",
      [](const std::string& path) { return io::load_model(path); },
      py::arg("path"), "Load a robot model config");
  m.def(
      "load_figure",
      [](const std::string& path) { return io::load_figure(path); },
      py::arg("path"), "Load a polyline figure config");
  m.def(
      "make_figure",
      [](const std::string& name, const std::vector<Arr3>& vertices,
         bool closed, double total_duration,
         const std::vector<double>& edge_durations) {
        trajectory::FigureSpec fig;
        fig.name = name;
        for (const Arr3& v : vertices) fig.vertices.push_back(to_vec3(v));
        fig.closed = closed;
        fig.total_duration = total_duration;
        fig.edge_durations = edge_durations;
        trajectory::validate_figure(fig);
        return fig;
      },
      py::arg("name"), py::arg("vertices"), py::arg("closed") = false,
      py::arg("total_duration") = 0.0,
      py::arg("edge_durations") = std::vector<double>{});
  m.def(
      "make_path",
      [](const std::vector<double>& times, const std::vector<Arr3>& positions,
         double sample_period) {
        if (times.size() != positions.size()) {
          throw ValidationError("path", "times/positions length mismatch");
        }
        TimedPath p;
        p.sample_period = sample_period;
        for (std::size_t i = 0; i < times.size(); ++i) {
          p.samples.push_back({times[i], to_vec3(positions[i])});
        }
        return p;
      },
      py::arg("times"), py::arg("positions"), py::arg("sample_period") = 0.0);

  // --- kinematics -------------------------------------------------------------

  m.def(
      "forward",
      [](const kinematics::RobotModel& model, const Arr6& q) {
        const Mat4 T = kinematics::forward(model, to_joints(q));
        Mat4x4 out;
        for (int r = 0; r < 4; ++r) {
          for (int c = 0; c < 4; ++c) out[r][c] = T(r, c);
        }
        return out;
      },
      py::arg("model"), py::arg("q"),
      "Tool pose at q as a 4x4 row-major matrix");
  m.def(
      "tool_position",
      [](const kinematics::RobotModel& model, const Arr6& q) {
        return from_vec3(kinematics::tool_position(model, to_joints(q)));
      },
      py::arg("model"), py::arg("q"));

  // --- IK --------------------------------------------------------------------

  m.def(
      "solve_ik",
      [](const kinematics::RobotModel& model, const Arr3& target,
         const Arr3& q46, const Arr3& seed, double tolerance, int max_evals) {
        ik::IKRequest req;
        req.target = to_vec3(target);
        req.q46 = to_vec3(q46);
        req.seed = to_vec3(seed);
        req.tolerance = tolerance;
        req.max_evals = max_evals;
        const ik::IKSolution sol = ik::solve_position_ik(model, req);
        IKResult out;
        out.q13 = from_vec3(sol.q13);
        out.q = from_joints(sol.compose(req.q46));
        out.residual = sol.residual;
        out.evals_used = sol.evals_used;
        out.converged = sol.converged;
        out.budget_exhausted = sol.budget_exhausted;
        return out;
      },
      py::arg("model"), py::arg("target"), py::arg("q46") = Arr3{0, 0, 0},
      py::arg("seed") = Arr3{0, 0, 0}, py::arg("tolerance") = 1e-6,
      py::arg("max_evals") = 2000,
      "Position-only IK with the wrist frozen at q46");

  // --- profiles ----------------------------------------------------------------

  m.def("solve_sigma", &profiles::solve_sigma, py::arg("t_e"),
        py::arg("r_target") = 0.99, py::arg("t0") = 0.0, py::arg("mu") = 0.0);
  m.def("lognormal_cdf", &profiles::lognormal_cdf, py::arg("t"),
        py::arg("t0"), py::arg("mu"), py::arg("sigma"));
  m.def(
      "lognormal_speed",
      [](double t, double t0, double mu, double sigma, double D) {
        profiles::LognormalStroke stroke{t0, mu, sigma, D};
        return profiles::lognormal_speed(t, stroke);
      },
      py::arg("t"), py::arg("t0") = 0.0, py::arg("mu") = 0.0,
      py::arg("sigma") = 1.0, py::arg("D") = 1.0);
  m.def("trapezoid_times", &profiles::trapezoid_times, py::arg("distance"),
        py::arg("total_time"), py::arg("accel"));

  // --- trajectory ---------------------------------------------------------------

  m.def(
      "plan_figure",
      [](const trajectory::FigureSpec& figure, const std::string& profile,
         double overlap, double sample_period, double r_target, double accel) {
        profiles::ProfileOptions opts;
        opts.r_target = r_target;
        opts.accel = accel;
        return trajectory::plan_figure(figure,
                                       profiles::profile_from_string(profile),
                                       overlap, sample_period, opts);
      },
      py::arg("figure"), py::arg("profile"), py::arg("overlap") = 0.0,
      py::arg("sample_period") = 0.024, py::arg("r_target") = 0.99,
      py::arg("accel") = 500.0,
      "Sample a polyline figure under the given velocity law");
  m.def(
      "plan_repetitions",
      [](const trajectory::FigureSpec& figure, const std::string& profile,
         int repetitions, double pause, double overlap, double sample_period,
         double r_target, double accel) {
        profiles::ProfileOptions opts;
        opts.r_target = r_target;
        opts.accel = accel;
        return trajectory::plan_repetitions(
            figure, profiles::profile_from_string(profile), repetitions,
            pause, overlap, sample_period, opts);
      },
      py::arg("figure"), py::arg("profile"), py::arg("repetitions"),
      py::arg("pause") = 1.0, py::arg("overlap") = 0.0,
      py::arg("sample_period") = 0.024, py::arg("r_target") = 0.99,
      py::arg("accel") = 500.0);
  m.def(
      "path_to_joints",
      [](const kinematics::RobotModel& model, const TimedPath& path,
         const Arr3& q46, const Arr3& seed0) {
        return trajectory::path_to_joints(model, path, to_vec3(q46),
                                          to_vec3(seed0));
      },
      py::arg("model"), py::arg("path"), py::arg("q46") = Arr3{0, 0, 0},
      py::arg("seed0") = Arr3{0, 0, 0},
      "Warm-started IK over every path sample");
  m.def("numeric_speed", &trajectory::numeric_speed, py::arg("path"));
  m.def("arc_length", &trajectory::arc_length, py::arg("path"));

  // --- verification ----------------------------------------------------------------

  m.def(
      "record",
      [](const TimedPath& path, double rate, double noise, double latency,
         double quantization, std::uint64_t seed) {
        verification::SensorModel sensor;
        sensor.rate = rate;
        sensor.position_noise_std = noise;
        sensor.latency = latency;
        sensor.quantization = quantization;
        return verification::record(path, sensor, seed);
      },
      py::arg("path"), py::arg("rate") = 200.0, py::arg("noise") = 0.0,
      py::arg("latency") = 0.0, py::arg("quantization") = 0.0,
      py::arg("seed") = 0,
      "Sample the path through a simulated position sensor");
  m.def(
      "compare",
      [](const TimedPath& programmed, const TimedPath& recorded,
         double max_alignment, bool smooth) {
        verification::CompareOptions opts;
        opts.max_alignment = max_alignment;
        opts.smooth = smooth;
        return verification::compare(programmed, recorded, opts);
      },
      py::arg("programmed"), py::arg("recorded"),
      py::arg("max_alignment") = 0.25, py::arg("smooth") = true,
      "Speed-domain SNR of a recording against the programmed path");
  m.def("snr_db", &verification::snr_db, py::arg("v_programmed"),
        py::arg("v_recorded"));
}
