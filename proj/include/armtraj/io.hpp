#ifndef ARMTRAJ_IO_HPP_
#define ARMTRAJ_IO_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "armtraj/kinematics.hpp"
#include "armtraj/trajectory.hpp"
#include "armtraj/types.hpp"

namespace armtraj::io {

/// Render a double with 17 significant digits (lossless round trip).
std::string format_double(double v);

/// FNV-1a 64-bit digest of a file's bytes, as "fnv1a:<16 hex digits>".
std::string fnv1a_file_digest(const std::filesystem::path& path);

// --- model & figure configs -------------------------------------------------

kinematics::RobotModel load_model(const std::filesystem::path& path);
void save_model(const std::filesystem::path& path,
                const kinematics::RobotModel& model);

trajectory::FigureSpec load_figure(const std::filesystem::path& path);
void save_figure(const std::filesystem::path& path,
                 const trajectory::FigureSpec& figure);

// --- trajectory CSV -----------------------------------------------------------

/// Header metadata carried by a trajectory file (enough to regenerate the
/// trajectory deterministically together with the inputs).
struct TrajectoryHeader {
  std::string format_version = "1";
  std::string model_id;
  std::string profile;
  double sample_period = 0.0;
  /// Extra generation parameters, written as "# key = value" lines.
  std::vector<std::pair<std::string, std::string>> params;
  bool has_joints = false;
};

struct TrajectoryData {
  TrajectoryHeader header;
  TimedPath path;
  JointTrajectory joints;  // empty when header.has_joints is false
};

/// Column order: t, px, py, pz[, q1..q6]. Header lines start with '#'.
void write_trajectory(const std::filesystem::path& path,
                      const TrajectoryHeader& header, const TimedPath& cart,
                      const JointTrajectory* joints = nullptr);

TrajectoryData read_trajectory(const std::filesystem::path& path);

// --- plot emission -------------------------------------------------------------

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

/// Columnar data file, one block per series ("# series: <label>" then
/// "x y" rows, blank line between blocks) so series with different
/// clocks coexist. Refuses empty series.
void write_plot_data(const std::filesystem::path& path,
                     const std::string& xlabel,
                     const std::vector<Series>& series);

/// Self-contained SVG line plot with axes, tick labels, and a legend.
void write_plot_svg(const std::filesystem::path& path,
                    const std::string& title, const std::string& xlabel,
                    const std::string& ylabel,
                    const std::vector<Series>& series);

// --- run manifest ----------------------------------------------------------------

/// Everything needed to re-execute a CLI run. Paths in `outputs` are
/// relative to the manifest's own directory; values in `params` are
/// stored as config-literal text so a rerun writes back the identical
/// manifest.
struct Manifest {
  std::string format_version = "1";
  std::string subcommand;
  std::uint64_t rng_seed = 0;
  std::vector<std::pair<std::string, std::string>> params;
  std::vector<std::pair<std::string, std::string>> inputs;   // name -> digest
  std::vector<std::pair<std::string, std::string>> outputs;  // name -> path

  std::optional<std::string> param(const std::string& key) const;
};

void write_manifest(const std::filesystem::path& path, const Manifest& m);
Manifest read_manifest(const std::filesystem::path& path);

}  // namespace armtraj::io

#endif  // ARMTRAJ_IO_HPP_
