#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "armtraj/errors.hpp"
#include "armtraj/ik.hpp"
#include "armtraj/io.hpp"
#include "armtraj/kinematics.hpp"
#include "armtraj/profiles.hpp"
#include "armtraj/trajectory.hpp"
#include "armtraj/types.hpp"
#include "armtraj/verification.hpp"

namespace fs = std::filesystem;
using namespace armtraj;

namespace {

// Numeric flags are carried as the user's literal strings all the way into
// the manifest, so a rerun parses exactly the bytes the original run did.

double parse_num(const std::string& text, const std::string& field) {
  const char* begin = text.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0') {
    throw ValidationError(field, "not a number: '" + text + "'");
  }
  return v;
}

int parse_int(const std::string& text, const std::string& field) {
  const double v = parse_num(text, field);
  const int i = static_cast<int>(v);
  if (static_cast<double>(i) != v) {
    throw ValidationError(field, "not an integer: '" + text + "'");
  }
  return i;
}

std::uint64_t parse_seed(const std::string& text) {
  try {
    std::size_t used = 0;
    const std::uint64_t v = std::stoull(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ValidationError("seed", "not an unsigned integer: '" + text + "'");
  }
}

Vec3 parse_triplet(const std::string& text, const std::string& field) {
  std::vector<double> vals;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) vals.push_back(parse_num(cell, field));
  if (vals.size() != 3) {
    throw ValidationError(field,
                          "expected three comma-separated numbers: '" + text +
                              "'");
  }
  return Vec3(vals[0], vals[1], vals[2]);
}

std::string join3(const std::vector<std::string>& v) {
  return v[0] + "," + v[1] + "," + v[2];
}

std::string req_param(const io::Manifest& m, const std::string& key) {
  const auto v = m.param(key);
  if (!v) throw ValidationError("params." + key, "missing from manifest");
  return *v;
}

fs::path prepare_out_dir(const std::string& dir) {
  const fs::path p = dir.empty() ? fs::path(".") : fs::path(dir);
  std::error_code ec;
  fs::create_directories(p, ec);
  if (ec || !fs::is_directory(p)) {
    throw IoError("cannot create output directory: " + p.string());
  }
  return p;
}

std::vector<double> sample_times(const TimedPath& path) {
  std::vector<double> t;
  t.reserve(path.size());
  for (const auto& s : path.samples) t.push_back(s.t);
  return t;
}

std::string fmt_db(double v) {
  if (std::isinf(v)) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

// --- fk / ik -----------------------------------------------------------------

int run_fk(const std::string& model_path, const std::vector<double>& qv) {
  const auto model = io::load_model(model_path);
  JointVec q;
  for (int i = 0; i < 6; ++i) q[i] = qv[i];

  const Mat4 T = kinematics::forward(model, q);
  std::cout << "pose (tool in base frame):\n";
  for (int r = 0; r < 4; ++r) {
    std::cout << " ";
    for (int c = 0; c < 4; ++c) std::cout << " " << io::format_double(T(r, c));
    std::cout << "\n";
  }
  std::cout << "tool position [mm]: " << io::format_double(T(0, 3)) << " "
            << io::format_double(T(1, 3)) << " " << io::format_double(T(2, 3))
            << "\n";
  if (!model.within_limits(q)) {
    std::cout << "note: joint vector violates the model's declared limits\n";
  }
  return 0;
}

int run_ik(const std::string& model_path, const std::vector<double>& target,
           const std::vector<double>& q46, const std::vector<double>& seed,
           const std::string& tolerance, int max_evals) {
  const auto model = io::load_model(model_path);

  ik::IKRequest req;
  req.target = Vec3(target[0], target[1], target[2]);
  req.q46 = Vec3(q46[0], q46[1], q46[2]);
  req.seed = Vec3(seed[0], seed[1], seed[2]);
  req.tolerance = parse_num(tolerance, "tolerance");
  req.max_evals = max_evals;

  const ik::IKSolution sol = ik::solve_position_ik(model, req);
  const JointVec q = sol.compose(req.q46);

  std::cout << "q [rad]:";
  for (int i = 0; i < 6; ++i) std::cout << " " << io::format_double(q[i]);
  std::cout << "\n";
  std::cout << "residual: " << io::format_double(sol.residual) << " mm^2 ("
            << io::format_double(std::sqrt(sol.residual)) << " mm), "
            << sol.evals_used << " evaluations\n";
  if (!sol.converged) {
    std::cerr << "NumericError: IK stopped above tolerance"
              << (sol.budget_exhausted ? " (evaluation budget exhausted)" : "")
              << "\n";
    return 3;
  }
  return 0;
}

// --- generate ------------------------------------------------------------------

// The run_* functions read every parameter back out of the manifest, so the
// original CLI invocation and `rerun` execute literally the same code path.

int run_generate(io::Manifest m, const fs::path& out_dir) {
  const std::string model_path = req_param(m, "model");
  const std::string figure_path = req_param(m, "figure");
  const std::string profile = req_param(m, "profile");
  const double r_target = parse_num(req_param(m, "r_target"), "r_target");
  const double overlap = parse_num(req_param(m, "overlap"), "overlap");
  const double sample_period =
      parse_num(req_param(m, "sample_period"), "sample_period");
  const Vec3 q46 = parse_triplet(req_param(m, "q46"), "q46");
  const Vec3 ik_seed = parse_triplet(req_param(m, "ik_seed"), "ik_seed");

  const auto model = io::load_model(model_path);
  const auto figure = io::load_figure(figure_path);
  const auto kind = profiles::profile_from_string(profile);

  profiles::ProfileOptions opts;
  opts.r_target = r_target;
  opts.accel = model.max_accel;

  double end_snap = 0.0;
  const TimedPath path =
      trajectory::plan_figure(figure, kind, overlap, sample_period, opts,
                              &end_snap);
  ik::PathIkStats stats;
  const JointTrajectory joints =
      trajectory::path_to_joints(model, path, q46, ik_seed, &stats);

  io::TrajectoryHeader header;
  header.model_id = model.id;
  header.profile = profile;
  header.sample_period = sample_period;
  header.params = {{"figure", figure.name},
                   {"r_target", req_param(m, "r_target")},
                   {"overlap", req_param(m, "overlap")}};
  header.has_joints = true;

  const std::string csv_name = figure.name + "_" + profile + ".csv";
  io::write_trajectory(out_dir / csv_name, header, path, &joints);

  m.inputs = {{"model", io::fnv1a_file_digest(model_path)},
              {"figure", io::fnv1a_file_digest(figure_path)}};
  m.outputs = {{"trajectory", csv_name}};
  io::write_manifest(out_dir / "manifest.toml", m);

  std::cout << "wrote " << (out_dir / csv_name).string() << "\n"
            << "  " << path.size() << " samples over "
            << io::format_double(path.duration()) << " s, arc length "
            << io::format_double(trajectory::arc_length(path)) << " mm\n"
            << "  end snap " << io::format_double(end_snap) << " mm, "
            << stats.total_evals << " IK evaluations, "
            << stats.discontinuities.size() << " discontinuities\n"
            << "wrote " << (out_dir / "manifest.toml").string() << "\n";
  return 0;
}

// --- verify ---------------------------------------------------------------------

int run_verify(io::Manifest m, const fs::path& out_dir) {
  const std::string programmed_path = req_param(m, "programmed");
  const bool simulate = req_param(m, "simulate") == "true";

  const io::TrajectoryData programmed = io::read_trajectory(programmed_path);

  TimedPath recorded;
  std::string recorded_path;
  if (simulate) {
    verification::SensorModel sensor;
    sensor.rate = parse_num(req_param(m, "sensor_rate"), "sensor_rate");
    sensor.position_noise_std = parse_num(req_param(m, "noise"), "noise");
    sensor.latency = parse_num(req_param(m, "latency"), "latency");
    sensor.quantization =
        parse_num(req_param(m, "quantization"), "quantization");
    recorded = verification::record(programmed.path, sensor, m.rng_seed);

    io::TrajectoryHeader rec_header;
    rec_header.model_id = programmed.header.model_id;
    rec_header.profile = programmed.header.profile;
    rec_header.sample_period = recorded.sample_period;
    rec_header.params = {{"sensor_rate", req_param(m, "sensor_rate")},
                         {"noise", req_param(m, "noise")},
                         {"latency", req_param(m, "latency")},
                         {"quantization", req_param(m, "quantization")}};
    io::write_trajectory(out_dir / "recorded.csv", rec_header, recorded);
  } else {
    recorded_path = req_param(m, "recorded");
    recorded = io::read_trajectory(recorded_path).path;
  }

  const verification::SNRReport rep =
      verification::compare(programmed.path, recorded);

  {
    std::ofstream out(out_dir / "report.toml");
    out << "# armtraj verification report\n";
    out << "format_version = \"1\"\n";
    out << "programmed = \"" << programmed_path << "\"\n";
    out << "snr_db = " << io::format_double(rep.snr_db) << "\n";
    out << "n_samples = " << rep.n_samples << "\n";
    out << "resampling_rate = " << io::format_double(rep.resampling_rate)
        << "\n";
    out << "alignment_offset_s = " << io::format_double(rep.alignment_offset)
        << "\n";
    if (!out) throw IoError("write failed: " + (out_dir / "report.toml").string());
  }

  const io::Series sp{"programmed", sample_times(programmed.path),
                      trajectory::numeric_speed(programmed.path)};
  const io::Series sr{"recorded", sample_times(recorded),
                      trajectory::numeric_speed(recorded)};
  io::write_plot_data(out_dir / "speed.dat", "t [s]", {sp, sr});
  io::write_plot_svg(out_dir / "speed.svg", "Programmed vs recorded speed",
                     "t [s]", "speed [mm/s]", {sp, sr});

  m.inputs = {{"programmed", io::fnv1a_file_digest(programmed_path)}};
  if (!simulate) {
    m.inputs.emplace_back("recorded", io::fnv1a_file_digest(recorded_path));
  }
  m.outputs.clear();
  if (simulate) m.outputs.emplace_back("recorded", "recorded.csv");
  m.outputs.emplace_back("report", "report.toml");
  m.outputs.emplace_back("speed_data", "speed.dat");
  m.outputs.emplace_back("speed_svg", "speed.svg");
  io::write_manifest(out_dir / "manifest.toml", m);

  std::cout << "SNR: " << fmt_db(rep.snr_db) << " dB (n=" << rep.n_samples
            << ", resampling " << rep.resampling_rate
            << " Hz, alignment offset " << rep.alignment_offset << " s)\n"
            << "wrote report + plots to " << out_dir.string() << "\n";
  return 0;
}

// --- demo-session ------------------------------------------------------------------

int run_demo(io::Manifest m, const fs::path& out_dir) {
  const std::string model_path = req_param(m, "model");
  std::vector<std::string> figure_paths;
  for (int i = 1;; ++i) {
    const auto v = m.param("figure_" + std::to_string(i));
    if (!v) break;
    figure_paths.push_back(*v);
  }
  if (figure_paths.empty()) {
    throw ValidationError("figure", "at least one figure is required");
  }
  const int repetitions = parse_int(req_param(m, "repetitions"), "repetitions");
  if (repetitions < 1) {
    throw ValidationError("repetitions", "must be >= 1");
  }
  const double pause_s = parse_num(req_param(m, "pause"), "pause");
  const double r_target = parse_num(req_param(m, "r_target"), "r_target");
  const double overlap = parse_num(req_param(m, "overlap"), "overlap");
  const double sample_period =
      parse_num(req_param(m, "sample_period"), "sample_period");
  const Vec3 q46 = parse_triplet(req_param(m, "q46"), "q46");
  const Vec3 ik_seed = parse_triplet(req_param(m, "ik_seed"), "ik_seed");

  const auto model = io::load_model(model_path);
  std::vector<trajectory::FigureSpec> figures;
  figures.reserve(figure_paths.size());
  for (const auto& p : figure_paths) figures.push_back(io::load_figure(p));

  profiles::ProfileOptions opts;
  opts.r_target = r_target;
  opts.accel = model.max_accel;

  // One stimulus per figure and velocity law, presented in seeded random
  // order.
  struct Stimulus {
    std::size_t fig;
    profiles::ProfileKind kind;
  };
  std::vector<Stimulus> order;
  for (std::size_t f = 0; f < figures.size(); ++f) {
    order.push_back({f, profiles::ProfileKind::kLognormal});
    order.push_back({f, profiles::ProfileKind::kTrapezoidal});
  }
  std::mt19937_64 rng(m.rng_seed);
  std::shuffle(order.begin(), order.end(), rng);

  m.outputs.clear();
  std::string order_text;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto& fig = figures[order[i].fig];
    const char* prof = profiles::to_string(order[i].kind);

    const TimedPath path =
        repetitions > 1
            ? trajectory::plan_repetitions(fig, order[i].kind, repetitions,
                                           pause_s, overlap, sample_period,
                                           opts)
            : trajectory::plan_figure(fig, order[i].kind, overlap,
                                      sample_period, opts);
    const JointTrajectory joints =
        trajectory::path_to_joints(model, path, q46, ik_seed);

    char prefix[8];
    std::snprintf(prefix, sizeof(prefix), "%02zu_", i + 1);
    const std::string csv_name = prefix + fig.name + "_" + prof + ".csv";

    io::TrajectoryHeader header;
    header.model_id = model.id;
    header.profile = prof;
    header.sample_period = sample_period;
    header.params = {{"figure", fig.name},
                     {"repetitions", req_param(m, "repetitions")},
                     {"pause", req_param(m, "pause")},
                     {"r_target", req_param(m, "r_target")},
                     {"overlap", req_param(m, "overlap")}};
    header.has_joints = true;
    io::write_trajectory(out_dir / csv_name, header, path, &joints);

    char key[16];
    std::snprintf(key, sizeof(key), "stimulus_%02zu", i + 1);
    m.outputs.emplace_back(key, csv_name);
    if (i) order_text += ";";
    order_text += fig.name + ":" + prof;
    std::cout << key << ": " << csv_name << "\n";
  }

  // Record the realized order explicitly; drop any copy parsed back from a
  // manifest so a rerun appends the identical entry in the same slot.
  std::erase_if(m.params, [](const std::pair<std::string, std::string>& kv) {
    return kv.first == "presentation_order";
  });
  m.params.emplace_back("presentation_order", order_text);

  m.inputs.clear();
  m.inputs.emplace_back("model", io::fnv1a_file_digest(model_path));
  for (std::size_t i = 0; i < figure_paths.size(); ++i) {
    m.inputs.emplace_back("figure_" + std::to_string(i + 1),
                          io::fnv1a_file_digest(figure_paths[i]));
  }
  io::write_manifest(out_dir / "manifest.toml", m);

  std::cout << "wrote " << order.size() << " stimulus files + manifest to "
            << out_dir.string() << "\n";
  return 0;
}

// --- rerun ----------------------------------------------------------------------

int run_rerun(const std::string& manifest_path, const std::string& out_flag) {
  const io::Manifest m = io::read_manifest(manifest_path);

  // Refuse to re-execute against inputs that changed since the original run.
  for (const auto& [name, digest] : m.inputs) {
    const auto path = m.param(name);
    if (!path) {
      throw ValidationError("inputs." + name,
                            "no matching path parameter in manifest");
    }
    const std::string now = io::fnv1a_file_digest(*path);
    if (now != digest) {
      throw ValidationError("inputs." + name,
                            "digest mismatch for '" + *path + "' (" + now +
                                " != " + digest +
                                "); input changed since the original run");
    }
  }

  const std::string fallback = fs::path(manifest_path).parent_path().string();
  const fs::path out_dir =
      prepare_out_dir(out_flag.empty() ? fallback : out_flag);

  if (m.subcommand == "generate") return run_generate(m, out_dir);
  if (m.subcommand == "verify") return run_verify(m, out_dir);
  if (m.subcommand == "demo-session") return run_demo(m, out_dir);
  throw ValidationError("subcommand",
                        "manifest names unknown subcommand '" + m.subcommand +
                            "'");
}

int fail(const char* name, const std::exception& e, int code) {
  std::cerr << name << ": " << e.what() << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "armtraj: straight-line arm trajectory synthesis, simulation, and "
      "verification"};
  app.require_subcommand(1);

  // fk
  std::string fk_model;
  std::vector<double> fk_q(6, 0.0);
  auto* fk = app.add_subcommand("fk", "Print the tool pose at a joint vector");
  fk->add_option("--model", fk_model, "robot model config")->required();
  fk->add_option("--q", fk_q, "six joint angles [rad]")->expected(6);

  // ik
  std::string ik_model, ik_tol = "1e-6";
  std::vector<double> ik_target;
  std::vector<double> ik_q46{0.0, 0.0, 0.0};
  std::vector<double> ik_seed{0.0, 0.0, 0.0};
  int ik_max_evals = 2000;
  auto* ikc = app.add_subcommand(
      "ik", "Solve position-only IK for one Cartesian target");
  ikc->add_option("--model", ik_model, "robot model config")->required();
  ikc->add_option("--target", ik_target, "target position [mm]")
      ->expected(3)
      ->required();
  ikc->add_option("--q46", ik_q46, "frozen wrist joints q4 q5 q6 [rad]")
      ->expected(3);
  ikc->add_option("--seed", ik_seed, "initial guess for q1 q2 q3 [rad]")
      ->expected(3);
  ikc->add_option("--tolerance", ik_tol, "convergence tolerance [mm^2]")
      ->check(CLI::Number);
  ikc->add_option("--max-evals", ik_max_evals, "function evaluation budget");

  // generate
  std::string gen_model, gen_figure, gen_profile, gen_out = ".";
  std::string gen_r = "0.99", gen_overlap = "0", gen_sp = "0.024",
              gen_seed = "0";
  std::vector<std::string> gen_q46{"0", "0.6", "0"};
  std::vector<std::string> gen_ikseed{"0", "0.4", "0.3"};
  auto* gen = app.add_subcommand(
      "generate", "Plan a figure under a velocity law and solve joint IK");
  gen->add_option("--model", gen_model, "robot model config")->required();
  gen->add_option("--figure", gen_figure, "figure config")->required();
  gen->add_option("--profile", gen_profile, "lognormal | trapezoidal")
      ->required();
  gen->add_option("--r-target", gen_r, "lognormal endpoint progress target")
      ->check(CLI::Number);
  gen->add_option("--overlap", gen_overlap, "stroke overlap fraction [0,0.5)")
      ->check(CLI::Number);
  gen->add_option("--sample-period", gen_sp, "output sample period [s]")
      ->check(CLI::Number);
  gen->add_option("--seed", gen_seed, "RNG seed recorded in the manifest")
      ->check(CLI::Number);
  gen->add_option("--q46", gen_q46, "frozen wrist joints [rad]")->expected(3);
  gen->add_option("--ik-seed", gen_ikseed,
                  "IK seed for the first sample [rad]")
      ->expected(3);
  gen->add_option("--out-dir", gen_out, "output directory");

  // verify
  std::string ver_prog, ver_rec, ver_out = ".";
  std::string ver_rate = "200",
              ver_noise = io::format_double(
                  verification::default_noise_preset().position_noise_std),
              ver_latency = "0", ver_quant = "0", ver_seed = "0";
  bool ver_sim = false;
  auto* ver = app.add_subcommand(
      "verify",
      "Score how faithfully a recording reproduces a programmed trajectory "
      "(speed-domain SNR)");
  ver->add_option("--programmed", ver_prog, "programmed trajectory CSV")
      ->required();
  ver->add_option("--recorded", ver_rec, "recorded trajectory CSV");
  ver->add_flag("--simulate", ver_sim,
                "record through the simulated sensor instead of reading "
                "--recorded");
  ver->add_option("--sensor-rate", ver_rate, "sensor sampling rate [Hz]")
      ->check(CLI::Number);
  ver->add_option("--noise", ver_noise,
                  "sensor position noise std [mm] (default: documented "
                  "noise preset)")
      ->check(CLI::Number);
  ver->add_option("--latency", ver_latency, "sensor latency [s]")
      ->check(CLI::Number);
  ver->add_option("--quantization", ver_quant,
                  "sensor position quantization [mm]")
      ->check(CLI::Number);
  ver->add_option("--seed", ver_seed, "noise RNG seed")->check(CLI::Number);
  ver->add_option("--out-dir", ver_out, "output directory");

  // demo-session
  std::string demo_model, demo_out = ".";
  std::vector<std::string> demo_figures;
  std::string demo_reps = "3", demo_pause = "1", demo_r = "0.99",
              demo_overlap = "0", demo_sp = "0.024", demo_seed = "0";
  std::vector<std::string> demo_q46{"0", "0.6", "0"};
  std::vector<std::string> demo_ikseed{"0", "0.4", "0.3"};
  auto* demo = app.add_subcommand(
      "demo-session",
      "Generate a session of paired lognormal/trapezoidal stimuli in "
      "seeded random presentation order");
  demo->add_option("--model", demo_model, "robot model config")->required();
  demo->add_option("--figure", demo_figures, "figure config (repeatable)")
      ->required();
  demo->add_option("--repetitions", demo_reps, "passes per stimulus")
      ->check(CLI::Number);
  demo->add_option("--pause", demo_pause, "hold between passes [s]")
      ->check(CLI::Number);
  demo->add_option("--r-target", demo_r, "lognormal endpoint progress target")
      ->check(CLI::Number);
  demo->add_option("--overlap", demo_overlap,
                   "stroke overlap fraction [0,0.5)")
      ->check(CLI::Number);
  demo->add_option("--sample-period", demo_sp, "output sample period [s]")
      ->check(CLI::Number);
  demo->add_option("--seed", demo_seed, "presentation-order RNG seed")
      ->check(CLI::Number);
  demo->add_option("--q46", demo_q46, "frozen wrist joints [rad]")
      ->expected(3);
  demo->add_option("--ik-seed", demo_ikseed,
                   "IK seed for the first sample [rad]")
      ->expected(3);
  demo->add_option("--out-dir", demo_out, "output directory");

  // rerun
  std::string rr_manifest, rr_out;
  auto* rr = app.add_subcommand(
      "rerun", "Re-execute a previous run from its manifest");
  rr->add_option("--manifest", rr_manifest, "manifest of the original run")
      ->required();
  rr->add_option("--out-dir", rr_out,
                 "output directory (default: the manifest's directory)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (fk->parsed()) return run_fk(fk_model, fk_q);
    if (ikc->parsed()) {
      return run_ik(ik_model, ik_target, ik_q46, ik_seed, ik_tol,
                    ik_max_evals);
    }
    if (gen->parsed()) {
      io::Manifest m;
      m.subcommand = "generate";
      m.rng_seed = parse_seed(gen_seed);
      m.params = {{"model", gen_model},
                  {"figure", gen_figure},
                  {"profile", gen_profile},
                  {"r_target", gen_r},
                  {"overlap", gen_overlap},
                  {"sample_period", gen_sp},
                  {"q46", join3(gen_q46)},
                  {"ik_seed", join3(gen_ikseed)}};
      return run_generate(std::move(m), prepare_out_dir(gen_out));
    }
    if (ver->parsed()) {
      if (ver_sim == !ver_rec.empty()) {
        throw ValidationError("verify",
                              "pass exactly one of --recorded or --simulate");
      }
      io::Manifest m;
      m.subcommand = "verify";
      m.rng_seed = parse_seed(ver_seed);
      m.params = {{"programmed", ver_prog}};
      if (ver_sim) {
        m.params.emplace_back("simulate", "true");
        m.params.emplace_back("sensor_rate", ver_rate);
        m.params.emplace_back("noise", ver_noise);
        m.params.emplace_back("latency", ver_latency);
        m.params.emplace_back("quantization", ver_quant);
      } else {
        m.params.emplace_back("recorded", ver_rec);
        m.params.emplace_back("simulate", "false");
      }
      return run_verify(std::move(m), prepare_out_dir(ver_out));
    }
    if (demo->parsed()) {
      io::Manifest m;
      m.subcommand = "demo-session";
      m.rng_seed = parse_seed(demo_seed);
      m.params = {{"model", demo_model}};
      for (std::size_t i = 0; i < demo_figures.size(); ++i) {
        m.params.emplace_back("figure_" + std::to_string(i + 1),
                              demo_figures[i]);
      }
      m.params.emplace_back("repetitions", demo_reps);
      m.params.emplace_back("pause", demo_pause);
      m.params.emplace_back("r_target", demo_r);
      m.params.emplace_back("overlap", demo_overlap);
      m.params.emplace_back("sample_period", demo_sp);
      m.params.emplace_back("q46", join3(demo_q46));
      m.params.emplace_back("ik_seed", join3(demo_ikseed));
      return run_demo(std::move(m), prepare_out_dir(demo_out));
    }
    if (rr->parsed()) return run_rerun(rr_manifest, rr_out);
  } catch (const ValidationError& e) {
    return fail("ValidationError", e, 2);
  } catch (const ParseError& e) {
    return fail("ParseError", e, 2);
  } catch (const IoError& e) {
    return fail("IoError", e, 4);
  } catch (const UnreachableError& e) {
    return fail("UnreachableError", e, 3);
  } catch (const InfeasibleError& e) {
    return fail("InfeasibleError", e, 3);
  } catch (const DegenerateDurationError& e) {
    return fail("DegenerateDurationError", e, 3);
  } catch (const ZeroSignalError& e) {
    return fail("ZeroSignalError", e, 3);
  } catch (const NumericError& e) {
    return fail("NumericError", e, 3);
  } catch (const Error& e) {
    return fail("Error", e, 3);
  } catch (const std::exception& e) {
    return fail("error", e, 1);
  }
  return 0;
}
