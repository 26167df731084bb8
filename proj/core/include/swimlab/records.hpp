#pragma once

#include <vector>

#include <Eigen/Dense>

namespace swimlab {

enum class FieldSource { simulated, reconstructed };

/// Transverse deflection w(x, t) on a uniform time grid.
struct KinematicsField {
  std::vector<double> times;     // s
  std::vector<double> stations;  // axial fractions, increasing
  Eigen::MatrixXd deflection;    // rows: time steps, cols: stations; meters
  FieldSource source = FieldSource::simulated;
  double body_length = 0.350;    // m, converts fractions to meters

  std::size_t time_count() const { return times.size(); }
  std::size_t station_count() const { return stations.size(); }
  double dt() const { return times.size() > 1 ? times[1] - times[0] : 0.0; }
};

/// Six-axis load-cell record. fx is the axial (thrust-aligned) channel, positive forward.
struct ForceRecord {
  std::vector<double> times;  // s
  std::vector<double> fx, fy, fz;
  std::vector<double> mx, my, mz;

  std::size_t size() const { return times.size(); }
  double dt() const { return times.size() > 1 ? times[1] - times[0] : 0.0; }
};

/// Half-open sample range [begin, end).
struct SampleWindow {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::size_t size() const { return end - begin; }
};

/// The last `periods` periods of an n-sample record, rounded to whole samples.
/// Throws ValidationError if that is longer than the record or under two samples.
SampleWindow trailing_window(std::size_t n, double dt, double frequency_hz, double periods);

/// Transient discard for steady-state analysis: drops the larger of 60% of the
/// record and 10 periods. Throws if less than one period remains.
SampleWindow steady_state_window(std::size_t n, double dt, double frequency_hz);

/// Throws ValidationError unless times are uniform (within 1 ppm of dt) and
/// all values finite.
void validate(const KinematicsField& field);
void validate(const ForceRecord& record);

}  // namespace swimlab
