#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "swimlab/frf.hpp"
#include "swimlab/modal.hpp"
#include "swimlab/records.hpp"
#include "swimlab/sensing.hpp"
#include "swimlab/thrust.hpp"
#include "swimlab/wave.hpp"

namespace swimlab {

/// Library version string.
const char* version();

/// Provenance written as '#' comment lines at the top of every output file.
struct FileHeader {
  std::string config_hash;
  std::vector<std::pair<std::string, std::string>> fields;  // extra "key: value" lines

  /// Value of a field, or empty.
  std::string get(const std::string& key) const;
};

/// Strain, LDV and load-cell channels of one run.
struct ExperimentLog {
  StrainRecord strain;
  TailRecord tail;
  ForceRecord force;
  FileHeader header;
};

inline constexpr int kMaxGaugeChannels = 10;
inline constexpr int kUsableGaugeChannels = 6;

/// Reads the experiment CSV (t_s, sg01_ue..sg10_ue, ldv_v_mms, fx_N..mz_Nm).
/// Gauge columns may be missing; sg07..sg10 are dropped with a warning. Units
/// are converted to SI. `layout` gives the positions of sg01..sg06.
ExperimentLog parse_log(const std::string& path, const GaugeLayout& layout = default_gauge_layout());
ExperimentLog parse_log_text(const std::string& text,
                             const GaugeLayout& layout = default_gauge_layout(),
                             const std::string& source = "<log>");
std::string format_log(const ExperimentLog& log, const FileHeader& header);
void write_log(const std::string& path, const ExperimentLog& log, const FileHeader& header);

/// t_s followed by one column per station named x_<fraction>, meters.
std::string format_kinematics(const KinematicsField& field, const FileHeader& header);
KinematicsField parse_kinematics_text(const std::string& text, const std::string& source = "<kinematics>");

std::string format_envelope(const Envelope& env, double body_length, const FileHeader& header);
Envelope parse_envelope_text(const std::string& text, const std::string& source = "<envelope>");

std::string format_thrust(const ThrustSeries& series, const FileHeader& header);
ThrustSeries parse_thrust_text(const std::string& text, const std::string& source = "<thrust>");

std::string format_frf(const Frf& frf, const FileHeader& header);
Frf parse_frf_text(const std::string& text, const std::string& source = "<frf>");

/// Mode shapes, one column per mode, with frequencies in the header.
std::string format_modes(const ModalResult& modes, const std::vector<double>& stations,
                         const FileHeader& header);

/// `strobes` deflection snapshots evenly spaced over the last period.
std::string format_strobes(const KinematicsField& field, double frequency_hz, int strobes,
                           const FileHeader& header);

/// Table-style metrics row (with header line) and JSON object.
std::string format_metrics_csv(const std::vector<SwimMetrics>& rows,
                               const std::vector<std::string>& phasing, const FileHeader& header);
std::string format_metrics_json(const SwimMetrics& m, const FileHeader& header);
SwimMetrics parse_metrics_json(const std::string& text, const std::string& source = "<metrics>");

void write_text(const std::string& path, const std::string& contents);
std::string read_text(const std::string& path);

}  // namespace swimlab
