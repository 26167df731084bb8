#pragma once

#include <vector>

#include <Eigen/Dense>

#include "swimlab/records.hpp"

namespace swimlab {

/// Strain gauge centers along the spine midline.
struct GaugeLayout {
  std::vector<double> positions;  // axial fractions, strictly increasing, all < 0.75
  double neutral_offset = 0.0035; // m, z = t/2
  std::vector<bool> left_side;    // alternating L/R mounting
};

/// Six gauges used for kinematic sensing.
GaugeLayout default_gauge_layout();
void validate(const GaugeLayout& layout);

/// Gauge strain histories (dimensionless, not microstrain).
struct StrainRecord {
  std::vector<double> times;
  Eigen::MatrixXd strain;  // rows: time, cols: gauges
  GaugeLayout layout;
};

enum class TailQuantity { velocity, displacement };

/// Trailing-edge measurement (LDV velocity or a direct displacement).
struct TailRecord {
  std::vector<double> times;
  std::vector<double> values;  // m/s or m
  TailQuantity which = TailQuantity::velocity;
};

inline constexpr double kReconstructionSpliceFraction = 0.75;
inline constexpr double kMaxStrain = 0.05;

void validate(const StrainRecord& record);

/// eps = z * w_xx at each gauge, w_xx by central differences on the field's
/// grid (interpolated linearly between stations).
StrainRecord sample_strain(const KinematicsField& field, const GaugeLayout& layout);

struct ReconstructionOptions {
  int n_stations = 61;
  double body_length = 0.350;     // m
  /// Drive frequency; sets the tail-velocity high-pass corner at f/10. Required
  /// when the tail record is a velocity.
  double frequency_hz = 0.0;
  double time_tolerance = 1e-6;   // s, allowed strain/tail time-base mismatch
};

/// Curvature from the gauge spline, double-integrated from the clamped head on
/// [0, 0.75]; past 0.75 a cubic continues w and w' to the tail point with zero
/// curvature at the tip.
KinematicsField reconstruct_deflection(const StrainRecord& strain, const TailRecord& tail,
                                       const ReconstructionOptions& options);

/// Tail velocity to displacement: trapezoidal integration, mean removal, and a
/// first-order high-pass at f/10 run forward and backward (zero phase).
std::vector<double> integrate_tail_velocity(const std::vector<double>& times,
                                            const std::vector<double>& velocity,
                                            double frequency_hz);

struct Envelope {
  std::vector<double> stations;
  std::vector<double> max_profile;  // m
  std::vector<double> min_profile;  // m
};

/// Pointwise extrema over the last `periods` periods of the record.
Envelope envelope(const KinematicsField& field, double frequency_hz, double periods = 1.0);

}  // namespace swimlab
