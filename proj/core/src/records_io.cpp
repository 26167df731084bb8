#include "swimlab/records_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "swimlab/diagnostics.hpp"
#include "swimlab/error.hpp"

#ifndef SWIMLAB_VERSION
#define SWIMLAB_VERSION "0.0.0"
#endif

namespace swimlab {
namespace {

std::string num(double v) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

struct Table {
  FileHeader header;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::size_t> line_numbers;

  std::ptrdiff_t find(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
      if (columns[i] == name) return static_cast<std::ptrdiff_t>(i);
    return -1;
  }
  std::vector<double> column(std::size_t c) const {
    std::vector<double> out(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) out[r] = rows[r][c];
    return out;
  }
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

Table parse_table(const std::string& text, const std::string& source) {
  Table t;
  std::stringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string s = trim(line);
    if (s.empty()) continue;
    if (s[0] == '#') {
      const std::string body = trim(s.substr(1));
      const auto colon = body.find(':');
      if (colon != std::string::npos) {
        const std::string key = trim(body.substr(0, colon));
        const std::string value = trim(body.substr(colon + 1));
        if (key == "config_hash") {
          t.header.config_hash = value;
        } else {
          t.header.fields.emplace_back(key, value);
        }
      }
      continue;
    }
    if (!have_header) {
      t.columns = split(s);
      have_header = true;
      continue;
    }
    const auto cells = split(s);
    if (cells.size() != t.columns.size()) {
      std::ostringstream os;
      os << source << ":" << line_no << ": expected " << t.columns.size() << " fields, found "
         << cells.size();
      throw ValidationError(os.str());
    }
    std::vector<double> row(cells.size());
    for (std::size_t c = 0; c < cells.size(); ++c) {
      const char* begin = cells[c].c_str();
      char* end = nullptr;
      const double v = std::strtod(begin, &end);
      if (cells[c].empty() || end != begin + cells[c].size() || !std::isfinite(v)) {
        std::ostringstream os;
        os << source << ":" << line_no << ": column " << t.columns[c] << ": '" << cells[c]
           << "' is not a finite number";
        throw ValidationError(os.str());
      }
      row[c] = v;
    }
    t.rows.push_back(std::move(row));
    t.line_numbers.push_back(line_no);
  }
  if (!have_header) throw ValidationError(source + ": missing header row");
  return t;
}

void check_times(const Table& t, std::size_t col, const std::string& source) {
  for (std::size_t r = 1; r < t.rows.size(); ++r) {
    if (!(t.rows[r][col] > t.rows[r - 1][col])) {
      std::ostringstream os;
      os << source << ":" << t.line_numbers[r] << ": time is not strictly increasing";
      throw ValidationError(os.str());
    }
  }
  const std::size_t n = t.rows.size();
  if (n < 3) return;
  const double dt = (t.rows[n - 1][col] - t.rows[0][col]) / static_cast<double>(n - 1);
  double worst = 0.0;
  std::size_t worst_line = 0;
  for (std::size_t r = 1; r < n; ++r) {
    const double dev = std::abs((t.rows[r][col] - t.rows[r - 1][col]) - dt);
    if (dev > worst) {
      worst = dev;
      worst_line = t.line_numbers[r];
    }
  }
  if (worst > 1e-6 * dt) {
    std::ostringstream os;
    os << source << ": non-uniform time base, worst step deviation " << worst / dt * 1e6
       << " ppm of dt at line " << worst_line;
    throw ValidationError(os.str());
  }
}

std::string header_block(const FileHeader& h) {
  std::string out = std::string("# swimlab ") + SWIMLAB_VERSION + "\n";
  out += "# config_hash: " + (h.config_hash.empty() ? std::string("none") : h.config_hash) + "\n";
  for (const auto& [k, v] : h.fields) out += "# " + k + ": " + v + "\n";
  return out;
}

std::string gauge_column(int id) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "sg%02d_ue", id);
  return buf;
}

constexpr const char* kForceColumns[6] = {"fx_N", "fy_N", "fz_N", "mx_Nm", "my_Nm", "mz_Nm"};

std::string station_column(double x) { return "x_" + num(x); }

std::vector<double> require_column(const Table& t, const std::string& name, const std::string& source) {
  const auto c = t.find(name);
  if (c < 0) throw ValidationError(source + ": missing column " + name);
  return t.column(static_cast<std::size_t>(c));
}

}  // namespace

const char* version() { return SWIMLAB_VERSION; }

std::string FileHeader::get(const std::string& key) const {
  if (key == "config_hash") return config_hash;
  for (const auto& [k, v] : fields)
    if (k == key) return v;
  return "";
}

ExperimentLog parse_log_text(const std::string& text, const GaugeLayout& layout,
                             const std::string& source) {
  if (layout.positions.size() != static_cast<std::size_t>(kUsableGaugeChannels))
    throw ValidationError("log layout must give positions for sg01..sg06");
  Table t = parse_table(text, source);

  std::map<std::string, bool> known;
  known["t_s"] = true;
  known["ldv_v_mms"] = true;
  for (auto* c : kForceColumns) known[c] = true;
  for (int g = 1; g <= kMaxGaugeChannels; ++g) known[gauge_column(g)] = true;
  for (const auto& c : t.columns) {
    if (!known.count(c)) throw ValidationError(source + ": unknown column '" + c + "'");
  }
  for (std::size_t i = 0; i < t.columns.size(); ++i)
    for (std::size_t j = i + 1; j < t.columns.size(); ++j)
      if (t.columns[i] == t.columns[j])
        throw ValidationError(source + ": duplicate column '" + t.columns[i] + "'");

  const auto tc = t.find("t_s");
  if (tc < 0) throw ValidationError(source + ": missing column t_s");
  check_times(t, static_cast<std::size_t>(tc), source);

  ExperimentLog log;
  log.header = t.header;
  const std::vector<double> times = t.column(static_cast<std::size_t>(tc));

  std::vector<std::string> dropped;
  for (int g = kUsableGaugeChannels + 1; g <= kMaxGaugeChannels; ++g)
    if (t.find(gauge_column(g)) >= 0) dropped.push_back(gauge_column(g));
  if (!dropped.empty()) {
    std::string list;
    for (const auto& d : dropped) list += (list.empty() ? "" : ", ") + d;
    warn(source + ": ignoring gauge channels " + list + " (only sg01..sg06 are used)");
  }

  std::vector<std::size_t> cols;
  GaugeLayout used;
  used.neutral_offset = layout.neutral_offset;
  for (int g = 1; g <= kUsableGaugeChannels; ++g) {
    const auto c = t.find(gauge_column(g));
    if (c < 0) continue;
    cols.push_back(static_cast<std::size_t>(c));
    const auto gi = static_cast<std::size_t>(g - 1);
    used.positions.push_back(layout.positions[gi]);
    used.left_side.push_back(gi < layout.left_side.size() ? layout.left_side[gi] : gi % 2 == 0);
  }
  log.strain.times = times;
  log.strain.layout = used;
  log.strain.strain.resize(static_cast<Eigen::Index>(t.rows.size()),
                           static_cast<Eigen::Index>(cols.size()));
  for (std::size_t r = 0; r < t.rows.size(); ++r)
    for (std::size_t k = 0; k < cols.size(); ++k)
      log.strain.strain(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(k)) =
          t.rows[r][cols[k]] * 1e-6;

  log.tail.times = times;
  log.tail.which = TailQuantity::velocity;
  log.tail.values = require_column(t, "ldv_v_mms", source);
  for (double& v : log.tail.values) v *= 1e-3;

  log.force.times = times;
  log.force.fx = require_column(t, "fx_N", source);
  log.force.fy = require_column(t, "fy_N", source);
  log.force.fz = require_column(t, "fz_N", source);
  log.force.mx = require_column(t, "mx_Nm", source);
  log.force.my = require_column(t, "my_Nm", source);
  log.force.mz = require_column(t, "mz_Nm", source);
  return log;
}

ExperimentLog parse_log(const std::string& path, const GaugeLayout& layout) {
  return parse_log_text(read_text(path), layout, path);
}

std::string format_log(const ExperimentLog& log, const FileHeader& header) {
  const auto& s = log.strain;
  const std::size_t n = s.times.size();
  if (log.tail.values.size() != n || log.force.fx.size() != n)
    throw ValidationError("log channels differ in length");
  if (log.tail.which != TailQuantity::velocity)
    throw ValidationError("experiment logs carry tail velocity, not displacement");
  // Gauge columns are named by their index in the default layout order.
  const std::size_t n_g = s.layout.positions.size();
  if (n_g > static_cast<std::size_t>(kUsableGaugeChannels))
    throw ValidationError("experiment logs carry at most six gauges");
  std::string out = header_block(header);
  out += "t_s";
  for (std::size_t g = 0; g < n_g; ++g) out += "," + gauge_column(static_cast<int>(g) + 1);
  out += ",ldv_v_mms";
  for (auto* c : kForceColumns) out += std::string(",") + c;
  out += "\n";
  const std::vector<double>* force[6] = {&log.force.fx, &log.force.fy, &log.force.fz,
                                         &log.force.mx, &log.force.my, &log.force.mz};
  for (std::size_t r = 0; r < n; ++r) {
    out += num(s.times[r]);
    for (std::size_t g = 0; g < n_g; ++g)
      out += "," + num(s.strain(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(g)) * 1e6);
    out += "," + num(log.tail.values[r] * 1e3);
    for (auto* ch : force) out += "," + num((*ch)[r]);
    out += "\n";
  }
  return out;
}

void write_log(const std::string& path, const ExperimentLog& log, const FileHeader& header) {
  write_text(path, format_log(log, header));
}

std::string format_kinematics(const KinematicsField& f, const FileHeader& header) {
  FileHeader h = header;
  h.fields.emplace_back("body_length_m", num(f.body_length));
  h.fields.emplace_back("source", f.source == FieldSource::simulated ? "simulated" : "reconstructed");
  std::string out = header_block(h) + "t_s";
  for (double x : f.stations) out += "," + station_column(x);
  out += "\n";
  for (std::size_t r = 0; r < f.times.size(); ++r) {
    out += num(f.times[r]);
    for (Eigen::Index j = 0; j < f.deflection.cols(); ++j)
      out += "," + num(f.deflection(static_cast<Eigen::Index>(r), j));
    out += "\n";
  }
  return out;
}

KinematicsField parse_kinematics_text(const std::string& text, const std::string& source) {
  const Table t = parse_table(text, source);
  if (t.columns.empty() || t.columns[0] != "t_s")
    throw ValidationError(source + ": first column must be t_s");
  check_times(t, 0, source);
  KinematicsField f;
  for (std::size_t c = 1; c < t.columns.size(); ++c) {
    const std::string& name = t.columns[c];
    if (name.rfind("x_", 0) != 0) throw ValidationError(source + ": bad station column '" + name + "'");
    f.stations.push_back(std::stod(name.substr(2)));
  }
  f.times = t.column(0);
  f.deflection.resize(static_cast<Eigen::Index>(t.rows.size()),
                      static_cast<Eigen::Index>(f.stations.size()));
  for (std::size_t r = 0; r < t.rows.size(); ++r)
    for (std::size_t c = 1; c < t.columns.size(); ++c)
      f.deflection(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c - 1)) = t.rows[r][c];
  const std::string bl = t.header.get("body_length_m");
  if (!bl.empty()) f.body_length = std::stod(bl);
  f.source = t.header.get("source") == "reconstructed" ? FieldSource::reconstructed
                                                        : FieldSource::simulated;
  return f;
}

std::string format_envelope(const Envelope& env, double body_length, const FileHeader& header) {
  std::string out = header_block(header) + "x_frac,x_m,max_m,min_m\n";
  for (std::size_t i = 0; i < env.stations.size(); ++i)
    out += num(env.stations[i]) + "," + num(env.stations[i] * body_length) + "," +
           num(env.max_profile[i]) + "," + num(env.min_profile[i]) + "\n";
  return out;
}

Envelope parse_envelope_text(const std::string& text, const std::string& source) {
  const Table t = parse_table(text, source);
  Envelope env;
  env.stations = require_column(t, "x_frac", source);
  env.max_profile = require_column(t, "max_m", source);
  env.min_profile = require_column(t, "min_m", source);
  return env;
}

std::string format_thrust(const ThrustSeries& s, const FileHeader& header) {
  FileHeader h = header;
  h.fields.emplace_back("frequency_hz", num(s.frequency_hz));
  std::string out = header_block(h) + "t_s,thrust_N,valid\n";
  for (std::size_t i = 0; i < s.times.size(); ++i)
    out += num(s.times[i]) + "," + num(s.thrust[i]) + "," + (s.valid[i] ? "1" : "0") + "\n";
  return out;
}

ThrustSeries parse_thrust_text(const std::string& text, const std::string& source) {
  const Table t = parse_table(text, source);
  ThrustSeries s;
  s.times = require_column(t, "t_s", source);
  s.thrust = require_column(t, "thrust_N", source);
  for (double v : require_column(t, "valid", source)) s.valid.push_back(v != 0.0 ? 1 : 0);
  const std::string f = t.header.get("frequency_hz");
  if (!f.empty()) s.frequency_hz = std::stod(f);
  return s;
}

std::string format_frf(const Frf& frf, const FileHeader& header) {
  FileHeader h = header;
  h.fields.emplace_back("group", to_string(frf.group));
  h.fields.emplace_back("bin_width_hz", num(frf.bin_width_hz));
  std::string out = header_block(h) + "frequency_hz,real,imag,magnitude,phase_deg\n";
  for (std::size_t i = 0; i < frf.frequency_hz.size(); ++i) {
    const auto c = frf.response[i];
    out += num(frf.frequency_hz[i]) + "," + num(c.real()) + "," + num(c.imag()) + "," +
           num(std::abs(c)) + "," + num(std::arg(c) * 180.0 / std::numbers::pi) + "\n";
  }
  return out;
}

Frf parse_frf_text(const std::string& text, const std::string& source) {
  const Table t = parse_table(text, source);
  Frf frf;
  frf.frequency_hz = require_column(t, "frequency_hz", source);
  const auto re = require_column(t, "real", source);
  const auto im = require_column(t, "imag", source);
  for (std::size_t i = 0; i < re.size(); ++i) frf.response.emplace_back(re[i], im[i]);
  const std::string g = t.header.get("group");
  if (!g.empty()) frf.group = parse_group(g);
  const std::string bw = t.header.get("bin_width_hz");
  if (!bw.empty()) frf.bin_width_hz = std::stod(bw);
  return frf;
}

std::string format_modes(const ModalResult& modes, const std::vector<double>& stations,
                         const FileHeader& header) {
  FileHeader h = header;
  for (std::size_t m = 0; m < modes.damped_frequencies_hz.size(); ++m) {
    h.fields.emplace_back("mode" + std::to_string(m + 1) + "_damped_hz",
                          num(modes.damped_frequencies_hz[m]));
    h.fields.emplace_back("mode" + std::to_string(m + 1) + "_damping_ratio",
                          num(modes.damping_ratios[m]));
  }
  std::string out = header_block(h) + "x_frac";
  for (std::size_t m = 0; m < modes.mode_shapes.size(); ++m) out += ",mode" + std::to_string(m + 1);
  out += "\n";
  for (std::size_t i = 0; i < stations.size(); ++i) {
    out += num(stations[i]);
    for (const auto& shape : modes.mode_shapes) out += "," + num(shape[static_cast<Eigen::Index>(i)]);
    out += "\n";
  }
  return out;
}

std::string format_strobes(const KinematicsField& f, double frequency_hz, int strobes,
                           const FileHeader& header) {
  if (strobes < 1) throw ValidationError("strobe count must be positive");
  const SampleWindow w = trailing_window(f.times.size(), f.dt(), frequency_hz, 1.0);
  FileHeader h = header;
  h.fields.emplace_back("strobe_spacing_s", num(1.0 / (frequency_hz * strobes)));
  std::string out = header_block(h) + "x_frac,x_m";
  std::vector<std::size_t> rows;
  for (int k = 0; k < strobes; ++k) {
    const double pos = static_cast<double>(k) * static_cast<double>(w.size()) / strobes;
    rows.push_back(w.begin + std::min(static_cast<std::size_t>(std::llround(pos)), w.size() - 1));
    out += ",w_" + std::to_string(k) + "_m";
  }
  out += "\n";
  for (std::size_t j = 0; j < f.stations.size(); ++j) {
    out += num(f.stations[j]) + "," + num(f.stations[j] * f.body_length);
    for (std::size_t r : rows)
      out += "," + num(f.deflection(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(j)));
    out += "\n";
  }
  return out;
}

std::string format_metrics_csv(const std::vector<SwimMetrics>& rows,
                               const std::vector<std::string>& phasing, const FileHeader& header) {
  std::string out = header_block(header) +
                    "actuation_mode,frequency_hz,muscle_phasing,thrust_mN,caudal_deflection_mm,"
                    "caudal_velocity_mm_s,ti,ti_full,free_swim_speed_bl_s,thrust_stationary\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& m = rows[i];
    out += m.mode_label + "," + num(m.frequency_hz) + "," + (i < phasing.size() ? phasing[i] : "") +
           "," + num(m.thrust * 1e3) + "," + num(m.caudal_deflection * 1e3) + "," +
           num(m.caudal_velocity * 1e3) + "," + num(m.traveling_index) + "," +
           num(m.traveling_index_full) + "," + num(m.free_swim_speed_bl) + "," +
           (m.thrust_stationary ? "1" : "0") + "\n";
  }
  return out;
}

std::string format_metrics_json(const SwimMetrics& m, const FileHeader& header) {
  nlohmann::json j = {{"tool_version", SWIMLAB_VERSION},
                      {"config_hash", header.config_hash},
                      {"mode_label", m.mode_label},
                      {"frequency_hz", m.frequency_hz},
                      {"traveling_index", m.traveling_index},
                      {"traveling_index_full", m.traveling_index_full},
                      {"caudal_deflection_m", m.caudal_deflection},
                      {"caudal_velocity_m_s", m.caudal_velocity},
                      {"thrust_N", m.thrust},
                      {"thrust_stationary", m.thrust_stationary},
                      {"free_swim_speed_m_s", m.free_swim_speed},
                      {"free_swim_speed_bl_s", m.free_swim_speed_bl}};
  for (const auto& [k, v] : header.fields) j["annotations"][k] = v;
  return j.dump(2) + "\n";
}

SwimMetrics parse_metrics_json(const std::string& text, const std::string& source) {
  try {
    const auto j = nlohmann::json::parse(text);
    SwimMetrics m;
    m.mode_label = j.at("mode_label").get<std::string>();
    m.frequency_hz = j.at("frequency_hz").get<double>();
    m.traveling_index = j.at("traveling_index").get<double>();
    m.traveling_index_full = j.at("traveling_index_full").get<double>();
    m.caudal_deflection = j.at("caudal_deflection_m").get<double>();
    m.caudal_velocity = j.at("caudal_velocity_m_s").get<double>();
    m.thrust = j.at("thrust_N").get<double>();
    m.thrust_stationary = j.at("thrust_stationary").get<bool>();
    m.free_swim_speed = j.at("free_swim_speed_m_s").get<double>();
    m.free_swim_speed_bl = j.at("free_swim_speed_bl_s").get<double>();
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(source + ": " + e.what());
  }
}

void write_text(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << contents;
  if (!out) throw IoError("write to '" + path + "' failed");
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace swimlab
