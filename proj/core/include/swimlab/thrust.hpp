#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "swimlab/geometry.hpp"
#include "swimlab/records.hpp"

namespace swimlab {

/// Symmetric 4-term Blackman-Harris window of n samples, scaled to unit sum.
std::vector<double> blackman_harris(std::size_t n);

struct ThrustSeries {
  std::vector<double> times;
  std::vector<double> thrust;   // N
  std::vector<std::uint8_t> valid;  // 1 where the window lies fully inside the record
  double frequency_hz = 0.0;

  std::size_t valid_begin() const;
  std::size_t valid_end() const;
};

/// fx convolved with a four-period Blackman-Harris window (odd length, centered).
/// Needs at least six periods of record.
ThrustSeries thrust_timeseries(const ForceRecord& record, double frequency_hz);
ThrustSeries thrust_timeseries(const std::vector<double>& times, const std::vector<double>& fx,
                               double frequency_hz);

inline constexpr double kStationarySlopePerPeriod = 0.05;

struct SteadyThrust {
  double thrust = 0.0;        // N, mean over the window
  std::size_t begin = 0;      // sample range used
  std::size_t end = 0;
  double slope_per_period = 0.0;  // least-squares drift per period, relative to |mean|
  bool stationary = true;
};

/// Mean of the final `fraction` of the valid region; flags drift above 5% per period.
SteadyThrust steady_state_thrust(const ThrustSeries& series, double fraction = 0.25);

/// (v2 / v1)^2. Throws for non-positive velocities.
double laebt_thrust_ratio(double v1, double v2);

struct LaebtComparison {
  double predicted_ratio = 0.0;
  double measured_ratio = 0.0;
  bool exceeds_prediction = false;
  double surplus = 0.0;  // measured - predicted
};

LaebtComparison compare_with_laebt(double v1, double thrust1, double v2, double thrust2);

enum class FrictionLaw {
  /// 0.074 Re^-1/5: plate-averaged drag from the one-seventh-power velocity profile.
  seventh_power_averaged,
  /// 0.027 Re^-1/7: the local-coefficient fit of the same profile.
  seventh_power_local,
};

std::string to_string(FrictionLaw law);
FrictionLaw parse_friction_law(const std::string& name);

struct DragModel {
  double rho = 1000.0;              // kg/m^3
  double cd = 0.017;                // profile drag coefficient
  double wetted_area = 0.0;         // m^2
  double cross_section_area = 0.0;  // m^2
  double kinematic_viscosity = 1.0e-6;  // m^2/s
  FrictionLaw friction_law = FrictionLaw::seventh_power_averaged;
};

/// Drag model with areas derived from the body geometry.
DragModel drag_model_for(const BodyGeometry& geometry);
void validate(const DragModel& d);

double friction_coefficient(const DragModel& d, double speed, double body_length);
/// 1/2 rho v^2 (Cf A_wetted + Cd A_cross), N.
double drag_force(const DragModel& d, double speed, double body_length);

struct SwimSpeed {
  double speed = 0.0;     // m/s
  double speed_bl = 0.0;  // body lengths / s
  double residual = 0.0;  // thrust - drag at the root, N
};

/// Bisection on (0, 10] m/s until |thrust - drag| < 1e-9 N.
SwimSpeed free_swim_speed(double thrust, const DragModel& d, double body_length);

}  // namespace swimlab
