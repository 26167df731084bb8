#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "swimlab/records.hpp"

namespace swimlab {

/// Per-station analytic signal of a deflection window.
struct ComplexField {
  std::vector<double> times;
  std::vector<double> stations;
  Eigen::MatrixXcd analytic;  // rows: time, cols: stations
};

/// Analytic signal of a real sequence: FFT, zero negative frequencies, double
/// positive ones (DC and Nyquist kept at unit weight), inverse FFT.
Eigen::VectorXcd analytic_signal(const Eigen::VectorXd& x);

/// Mean-removed analytic signal of the last `periods` periods of the field.
ComplexField analytic_field(const KinematicsField& field, double frequency_hz, double periods = 1.0);

/// Analytic signal of an explicit sample range (mean removed per station).
ComplexField analytic_field(const KinematicsField& field, const SampleWindow& window);

struct TravelingIndex {
  double ti = 0.0;               // 1 traveling, 0 standing
  double energy_fraction = 0.0;  // dominant mode share of total energy
  Eigen::VectorXcd mode;         // dominant complex mode, one entry per station
};

inline constexpr double kDominantEnergyFraction = 0.70;

/// Complex orthogonal decomposition: dominant eigenvector c of the station
/// correlation matrix Z^H Z, Ti = 1 / cond2([Re c, Im c]). Warns when the mode
/// holds under 70% of the energy; throws ValidationError for a zero field.
TravelingIndex traveling_index_detail(const ComplexField& field);
double traveling_index(const ComplexField& field);

/// Ti of a single complex mode shape.
double traveling_index_of_mode(const Eigen::VectorXcd& mode);

/// Keeps stations with x <= max_fraction plus the last (tail) station.
KinematicsField measurable_stations(const KinematicsField& field, double max_fraction = 0.75);

struct TailMetrics {
  double peak_deflection = 0.0;  // m
  double peak_velocity = 0.0;    // m/s
};

/// Peak |w(L,t)| and |dw/dt(L,t)| (central differences) over the trailing window.
TailMetrics tail_metrics(const KinematicsField& field, double frequency_hz, double periods = 1.0);
TailMetrics tail_metrics(const KinematicsField& field, const SampleWindow& window);

/// One row of the swimming performance table.
struct SwimMetrics {
  std::string mode_label;
  double frequency_hz = 0.0;
  double traveling_index = 0.0;       // measurable stations (gauge span + tail)
  double traveling_index_full = 0.0;  // every station of the field
  double caudal_deflection = 0.0;     // m
  double caudal_velocity = 0.0;       // m/s
  double thrust = 0.0;                // N
  bool thrust_stationary = true;
  double free_swim_speed = 0.0;       // m/s
  double free_swim_speed_bl = 0.0;    // body lengths / s
};

}  // namespace swimlab
