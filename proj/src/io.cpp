#include "armtraj/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "armtraj/config.hpp"
#include "armtraj/errors.hpp"

namespace armtraj::io {

namespace {

constexpr double kPi = 3.141592653589793;

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw IoError("cannot open for writing: " + path.string());
  }
  return out;
}

double to_radians(double value, bool degrees) {
  return degrees ? value * kPi / 180.0 : value;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fnv1a_file_digest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open for digest: " + path.string());
  }
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  char c;
  while (in.get(c)) {
    hash ^= static_cast<unsigned char>(c);
    hash *= 0x100000001b3ULL;
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "fnv1a:%016llx",
                static_cast<unsigned long long>(hash));
  return buf;
}

// --- model ------------------------------------------------------------------

kinematics::RobotModel load_model(const std::filesystem::path& path) {
  const config::Document doc = config::Document::parse_file(path);

  kinematics::RobotModel model;
  model.id = doc.get_string("id");
  if (model.id.empty()) {
    throw ValidationError("id", "must not be empty");
  }

  const std::string unit =
      doc.has("angle_unit") ? doc.get_string("angle_unit") : "rad";
  if (unit != "rad" && unit != "deg") {
    throw ValidationError("angle_unit", "must be \"rad\" or \"deg\"");
  }
  const bool deg = (unit == "deg");

  const auto& rows = doc.get_nested_array("geometry.dh");
  if (rows.size() != 6) {
    throw ValidationError("geometry.dh",
                          "expected 6 rows, got " + std::to_string(rows.size()));
  }
  for (std::size_t i = 0; i < 6; ++i) {
    if (rows[i].size() != 4) {
      throw ValidationError(
          "geometry.dh",
          "row " + std::to_string(i + 1) +
              ": expected 4 entries (theta_offset, d, a, alpha), got " +
              std::to_string(rows[i].size()));
    }
    model.dh[i].theta_offset = to_radians(rows[i][0], deg);
    model.dh[i].d = rows[i][1];
    model.dh[i].a = rows[i][2];
    model.dh[i].alpha = to_radians(rows[i][3], deg);
  }

  for (int j = 0; j < 6; ++j) {
    const std::string key = "limits.q" + std::to_string(j + 1);
    if (doc.has(key)) {
      const auto& pair = doc.get_number_array(key);
      if (pair.size() != 2) {
        throw ValidationError(key, "expected [lower, upper]");
      }
      model.limits[j].lower = to_radians(pair[0], deg);
      model.limits[j].upper = to_radians(pair[1], deg);
      if (!(model.limits[j].lower < model.limits[j].upper)) {
        throw ValidationError(key, "lower must be below upper");
      }
    } else {
      model.limits[j] = {-kPi, kPi};
    }
  }

  model.max_speed = doc.get_number_or("dynamics.max_speed", 0.0);
  model.max_accel = doc.get_number_or("dynamics.max_accel", 0.0);
  if (model.max_speed < 0.0) {
    throw ValidationError("dynamics.max_speed", "must be >= 0");
  }
  if (model.max_accel < 0.0) {
    throw ValidationError("dynamics.max_accel", "must be >= 0");
  }
  return model;
}

void save_model(const std::filesystem::path& path,
                const kinematics::RobotModel& model) {
  std::ofstream out = open_out(path);
  out << "format_version = \"1\"\n";
  out << "id = \"" << model.id << "\"\n";
  out << "angle_unit = \"rad\"\n\n";
  out << "[geometry]\n";
  out << "# rows: theta_offset, d, a, alpha (one per joint, base to tool)\n";
  out << "dh = [\n";
  for (const auto& row : model.dh) {
    out << "  [ " << format_double(row.theta_offset) << ", "
        << format_double(row.d) << ", " << format_double(row.a) << ", "
        << format_double(row.alpha) << " ],\n";
  }
  out << "]\n\n";
  out << "[limits]\n";
  for (int j = 0; j < 6; ++j) {
    out << "q" << (j + 1) << " = [ " << format_double(model.limits[j].lower)
        << ", " << format_double(model.limits[j].upper) << " ]\n";
  }
  out << "\n[dynamics]\n";
  out << "max_speed = " << format_double(model.max_speed) << "\n";
  out << "max_accel = " << format_double(model.max_accel) << "\n";
  if (!out) throw IoError("write failed: " + path.string());
}

// --- figure -----------------------------------------------------------------

trajectory::FigureSpec load_figure(const std::filesystem::path& path) {
  const config::Document doc = config::Document::parse_file(path);

  trajectory::FigureSpec fig;
  fig.name = doc.get_string("name");
  if (fig.name.empty()) {
    throw ValidationError("name", "must not be empty");
  }
  fig.closed = doc.get_bool_or("closed", false);

  const auto& rows = doc.get_nested_array("vertices");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != 3) {
      throw ValidationError("vertices", "vertex " + std::to_string(i) +
                                            ": expected 3 coordinates");
    }
    fig.vertices.emplace_back(rows[i][0], rows[i][1], rows[i][2]);
  }

  if (doc.has("timing.edge_durations")) {
    fig.edge_durations = doc.get_number_array("timing.edge_durations");
  }
  fig.total_duration = doc.get_number_or("timing.total_duration", 0.0);

  trajectory::validate_figure(fig);
  return fig;
}

void save_figure(const std::filesystem::path& path,
                 const trajectory::FigureSpec& figure) {
  std::ofstream out = open_out(path);
  out << "format_version = \"1\"\n";
  out << "name = \"" << figure.name << "\"\n";
  out << "closed = " << (figure.closed ? "true" : "false") << "\n";
  out << "# mm\n";
  out << "vertices = [\n";
  for (const Vec3& v : figure.vertices) {
    out << "  [ " << format_double(v[0]) << ", " << format_double(v[1])
        << ", " << format_double(v[2]) << " ],\n";
  }
  out << "]\n\n";
  out << "[timing]\n";
  if (!figure.edge_durations.empty()) {
    out << "edge_durations = [ ";
    for (std::size_t i = 0; i < figure.edge_durations.size(); ++i) {
      if (i) out << ", ";
      out << format_double(figure.edge_durations[i]);
    }
    out << " ]\n";
  } else {
    out << "total_duration = " << format_double(figure.total_duration) << "\n";
  }
  if (!out) throw IoError("write failed: " + path.string());
}

// --- trajectory CSV -----------------------------------------------------------

void write_trajectory(const std::filesystem::path& path,
                      const TrajectoryHeader& header, const TimedPath& cart,
                      const JointTrajectory* joints) {
  const bool with_joints = joints != nullptr && !joints->samples.empty();
  if (with_joints && joints->samples.size() != cart.samples.size()) {
    throw ValidationError("joints",
                          "joint trajectory length differs from path");
  }
  if (cart.samples.empty()) {
    throw ValidationError("path", "refusing to write an empty trajectory");
  }

  std::ofstream out = open_out(path);
  out << "# armtraj trajectory\n";
  out << "# format_version = " << header.format_version << "\n";
  out << "# model_id = " << header.model_id << "\n";
  out << "# profile = " << header.profile << "\n";
  out << "# sample_period = " << format_double(header.sample_period) << "\n";
  out << "# has_joints = " << (with_joints ? "true" : "false") << "\n";
  for (const auto& [key, value] : header.params) {
    out << "# " << key << " = " << value << "\n";
  }
  out << "# columns: t, px, py, pz"
      << (with_joints ? ", q1, q2, q3, q4, q5, q6" : "") << "\n";

  for (std::size_t i = 0; i < cart.samples.size(); ++i) {
    const auto& s = cart.samples[i];
    out << format_double(s.t) << ',' << format_double(s.p[0]) << ','
        << format_double(s.p[1]) << ',' << format_double(s.p[2]);
    if (with_joints) {
      const JointVec& q = joints->samples[i].q;
      for (int j = 0; j < 6; ++j) out << ',' << format_double(q[j]);
    }
    out << '\n';
  }
  if (!out) throw IoError("write failed: " + path.string());
}

TrajectoryData read_trajectory(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open trajectory: " + path.string());
  }

  TrajectoryData data;
  const std::set<std::string> known = {"format_version", "model_id", "profile",
                                       "sample_period", "has_joints",
                                       "columns"};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line[0] == '#') {
      // "# key = value" header lines; anything else is a banner comment.
      const auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r#");
        const auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
      };
      const std::string key = trim(line.substr(0, eq));
      const std::string value = trim(line.substr(eq + 1));
      if (key == "format_version") data.header.format_version = value;
      else if (key == "model_id") data.header.model_id = value;
      else if (key == "profile") data.header.profile = value;
      else if (key == "sample_period") {
        try {
          data.header.sample_period = std::stod(value);
        } catch (const std::exception&) {
          throw ParseError(line_no, "malformed sample_period '" + value + "'");
        }
      } else if (key == "has_joints") data.header.has_joints = (value == "true");
      else if (known.count(key) == 0) data.header.params.emplace_back(key, value);
      continue;
    }

    // Data row.
    std::vector<double> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      const char* begin = cell.c_str();
      char* end = nullptr;
      const double v = std::strtod(begin, &end);
      while (end != nullptr && (*end == ' ' || *end == '\t' || *end == '\r')) {
        ++end;
      }
      if (end == begin || *end != '\0') {
        throw ParseError(line_no, "malformed number '" + cell + "'");
      }
      cells.push_back(v);
    }
    const std::size_t expect = data.header.has_joints ? 10 : 4;
    if (cells.size() != expect) {
      throw ParseError(line_no, "expected " + std::to_string(expect) +
                                    " columns, got " +
                                    std::to_string(cells.size()));
    }
    data.path.samples.push_back({cells[0], Vec3(cells[1], cells[2], cells[3])});
    if (data.header.has_joints) {
      JointVec q;
      for (int j = 0; j < 6; ++j) q[j] = cells[4 + j];
      data.joints.samples.push_back({cells[0], q});
    }
  }

  if (data.path.samples.empty()) {
    throw ParseError(line_no == 0 ? 1 : line_no, "no data rows");
  }
  data.path.sample_period = data.header.sample_period;
  data.joints.model_id = data.header.model_id;
  return data;
}

// --- plots ------------------------------------------------------------------

namespace {

void validate_series(const std::vector<Series>& series) {
  if (series.empty()) {
    throw ValidationError("series", "nothing to plot");
  }
  for (const Series& s : series) {
    if (s.x.empty() || s.x.size() != s.y.size()) {
      throw ValidationError("series",
                            "'" + s.label + "' is empty or x/y lengths differ");
    }
  }
}

std::string svg_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

/// Round a tick step to 1/2/5 times a power of ten.
double nice_step(double span, int target_ticks) {
  const double raw = span / target_ticks;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double norm = raw / mag;
  double step;
  if (norm < 1.5) step = 1.0;
  else if (norm < 3.5) step = 2.0;
  else if (norm < 7.5) step = 5.0;
  else step = 10.0;
  return step * mag;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v == 0.0 ? 0.0 : v);
  return buf;
}

}  // namespace

void write_plot_data(const std::filesystem::path& path,
                     const std::string& xlabel,
                     const std::vector<Series>& series) {
  validate_series(series);
  std::ofstream out = open_out(path);
  out << "# x = " << xlabel << "\n";
  for (const Series& s : series) {
    out << "# series: " << s.label << "\n";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      out << format_double(s.x[i]) << ' ' << format_double(s.y[i]) << '\n';
    }
    out << "\n";
  }
  if (!out) throw IoError("write failed: " + path.string());
}

void write_plot_svg(const std::filesystem::path& path,
                    const std::string& title, const std::string& xlabel,
                    const std::string& ylabel,
                    const std::vector<Series>& series) {
  validate_series(series);

  constexpr int kWidth = 800;
  constexpr int kHeight = 500;
  constexpr int kLeft = 70;
  constexpr int kRight = 30;
  constexpr int kTop = 45;
  constexpr int kBottom = 55;
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;

  double xmin = series[0].x[0], xmax = xmin;
  double ymin = series[0].y[0], ymax = ymin;
  for (const Series& s : series) {
    for (double v : s.x) { xmin = std::min(xmin, v); xmax = std::max(xmax, v); }
    for (double v : s.y) { ymin = std::min(ymin, v); ymax = std::max(ymax, v); }
  }
  if (xmax - xmin <= 0.0) { xmin -= 1.0; xmax += 1.0; }
  if (ymax - ymin <= 0.0) { ymin -= 1.0; ymax += 1.0; }
  // 5% headroom on y so curves do not touch the frame.
  const double ypad = 0.05 * (ymax - ymin);
  ymin -= ypad;
  ymax += ypad;

  const auto to_px = [&](double x) {
    return kLeft + (x - xmin) / (xmax - xmin) * plot_w;
  };
  const auto to_py = [&](double y) {
    return kTop + (1.0 - (y - ymin) / (ymax - ymin)) * plot_h;
  };

  static const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                   "#ff7f0e", "#9467bd", "#8c564b"};
  constexpr int kPaletteSize = 6;

  std::ofstream out = open_out(path);
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " "
      << kHeight << "\">\n";
  out << "<rect width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" fill=\"white\"/>\n";
  out << "<text x=\"" << kWidth / 2 << "\" y=\"25\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"16\">"
      << svg_escape(title) << "</text>\n";

  // Frame.
  out << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << plot_w
      << "\" height=\"" << plot_h
      << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";

  // Ticks and grid.
  const double xstep = nice_step(xmax - xmin, 6);
  for (double x = std::ceil(xmin / xstep) * xstep; x <= xmax + 1e-12 * xstep;
       x += xstep) {
    const double px = to_px(x);
    out << "<line x1=\"" << px << "\" y1=\"" << kTop + plot_h << "\" x2=\""
        << px << "\" y2=\"" << kTop + plot_h + 5
        << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << px << "\" y1=\"" << kTop << "\" x2=\"" << px
        << "\" y2=\"" << kTop + plot_h
        << "\" stroke=\"#dddddd\" stroke-width=\"0.5\"/>\n";
    out << "<text x=\"" << px << "\" y=\"" << kTop + plot_h + 20
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"11\">"
        << tick_label(x) << "</text>\n";
  }
  const double ystep = nice_step(ymax - ymin, 5);
  for (double y = std::ceil(ymin / ystep) * ystep; y <= ymax + 1e-12 * ystep;
       y += ystep) {
    const double py = to_py(y);
    out << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << py << "\" x2=\""
        << kLeft << "\" y2=\"" << py << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << kLeft << "\" y1=\"" << py << "\" x2=\""
        << kLeft + plot_w << "\" y2=\"" << py
        << "\" stroke=\"#dddddd\" stroke-width=\"0.5\"/>\n";
    out << "<text x=\"" << kLeft - 9 << "\" y=\"" << py + 4
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
           "font-size=\"11\">"
        << tick_label(y) << "</text>\n";
  }

  // Axis labels.
  out << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 12
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\">"
      << svg_escape(xlabel) << "</text>\n";
  out << "<text x=\"18\" y=\"" << kTop + plot_h / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\" transform=\"rotate(-90 18 "
      << kTop + plot_h / 2 << ")\">" << svg_escape(ylabel) << "</text>\n";

  // Series.
  for (std::size_t si = 0; si < series.size(); ++si) {
    const Series& s = series[si];
    const char* color = kPalette[si % kPaletteSize];
    out << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (i) out << ' ';
      char buf[64];
      std::snprintf(buf, sizeof(buf), "%.2f,%.2f", to_px(s.x[i]),
                    to_py(s.y[i]));
      out << buf;
    }
    out << "\"/>\n";
  }

  // Legend, top-right inside the frame.
  const double lx = kLeft + plot_w - 190;
  double ly = kTop + 12;
  out << "<rect x=\"" << lx - 8 << "\" y=\"" << ly - 10 << "\" width=\"190\" "
      << "height=\"" << 18 * series.size() + 8
      << "\" fill=\"white\" fill-opacity=\"0.85\" stroke=\"#999999\"/>\n";
  for (std::size_t si = 0; si < series.size(); ++si) {
    const char* color = kPalette[si % kPaletteSize];
    out << "<line x1=\"" << lx << "\" y1=\"" << ly << "\" x2=\"" << lx + 24
        << "\" y2=\"" << ly << "\" stroke=\"" << color
        << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << lx + 30 << "\" y=\"" << ly + 4
        << "\" font-family=\"sans-serif\" font-size=\"12\">"
        << svg_escape(series[si].label) << "</text>\n";
    ly += 18;
  }
  out << "</svg>\n";
  if (!out) throw IoError("write failed: " + path.string());
}

// --- manifest ----------------------------------------------------------------

std::optional<std::string> Manifest::param(const std::string& key) const {
  for (const auto& [k, v] : params) {
    if (k == key) return v;
  }
  return std::nullopt;
}

void write_manifest(const std::filesystem::path& path, const Manifest& m) {
  std::ofstream out = open_out(path);
  out << "# armtraj run manifest\n";
  out << "format_version = \"" << m.format_version << "\"\n";
  out << "subcommand = \"" << m.subcommand << "\"\n";
  out << "rng_seed = \"" << m.rng_seed << "\"\n";
  out << "\n[params]\n";
  for (const auto& [k, v] : m.params) {
    out << k << " = \"" << v << "\"\n";
  }
  out << "\n[inputs]\n";
  for (const auto& [k, v] : m.inputs) {
    out << k << " = \"" << v << "\"\n";
  }
  out << "\n[outputs]\n";
  for (const auto& [k, v] : m.outputs) {
    out << k << " = \"" << v << "\"\n";
  }
  if (!out) throw IoError("write failed: " + path.string());
}

Manifest read_manifest(const std::filesystem::path& path) {
  const config::Document doc = config::Document::parse_file(path);

  Manifest m;
  m.format_version = doc.get_string("format_version");
  m.subcommand = doc.get_string("subcommand");
  const std::string seed = doc.get_string("rng_seed");
  try {
    m.rng_seed = std::stoull(seed);
  } catch (const std::exception&) {
    throw ValidationError("rng_seed", "not an unsigned integer: " + seed);
  }
  for (const std::string& key : doc.keys()) {
    const auto dot = key.find('.');
    if (dot == std::string::npos) continue;
    const std::string section = key.substr(0, dot);
    const std::string name = key.substr(dot + 1);
    if (section == "params") m.params.emplace_back(name, doc.get_string(key));
    else if (section == "inputs") m.inputs.emplace_back(name, doc.get_string(key));
    else if (section == "outputs") m.outputs.emplace_back(name, doc.get_string(key));
  }
  return m;
}

}  // namespace armtraj::io
