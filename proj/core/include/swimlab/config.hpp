#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "swimlab/actuation.hpp"
#include "swimlab/dynamics.hpp"
#include "swimlab/geometry.hpp"
#include "swimlab/sensing.hpp"
#include "swimlab/thrust.hpp"

namespace swimlab {

enum class GaitChoice { in_phase, sequential, custom };

std::string to_string(GaitChoice g);
GaitChoice parse_gait_choice(const std::string& name);

struct ActuationConfig {
  GaitChoice gait = GaitChoice::in_phase;
  double frequency_hz = 2.05;
  double amplitude_voltage = 6000.0;
  /// Used when gait is custom; ignored otherwise.
  std::array<double, kGroupCount> phases_deg = {0, 0, 0, 180, 180, 180};
  double gain_per_hasel = kDefaultGainPerHasel;
  /// Per-group multipliers on the HASEL-count gains (asymmetric muscles).
  std::array<double, kGroupCount> gain_scale = {1, 1, 1, 1, 1, 1};
  std::array<GroupExtent, 3> extents = default_group_extents();
};

struct ModelConfig {
  int n_stations = 41;
  double clamp_length_fraction = 0.0;
};

struct AnalysisConfig {
  double sampling_rate_hz = 1000.0;
  /// Simulated record length; 0 picks max(30 periods, 8 s).
  double duration_s = 0.0;
  /// Steady-state periods used for Ti, tail metrics and the envelope.
  double window_periods = 1.0;
  /// Share of the valid thrust region averaged for steady thrust.
  double steady_state_fraction = 0.25;
  int strobes_per_period = 16;
};

struct FrfConfig {
  int repetitions = 4;
  double record_length_s = 8.0;
  double impulse_moment = 1e-3;  // N m
  double max_frequency_hz = 25.0;
};

enum class Objective { tail_velocity, thrust, traveling_index };

std::string to_string(Objective o);
Objective parse_objective(const std::string& name);

struct SweepParameter {
  std::string name;  // dotted config path or alias
  std::vector<double> values;
};

struct SweepConfig {
  enum class Mode { grid, phase_search } mode = Mode::grid;
  Objective objective = Objective::tail_velocity;
  std::vector<SweepParameter> parameters;
  std::size_t budget = 10000;
  unsigned workers = 0;  // 0: hardware concurrency
  double phase_resolution_deg = 180.0;
  std::size_t top_k = 5;
  std::uint64_t seed = 1;
};

struct RunConfig {
  GeometryConfig geometry;
  MaterialSpec material;
  FluidLoads fluid;
  ModelConfig model;
  ActuationConfig actuation;
  GaugeLayout gauges = default_gauge_layout();
  AnalysisConfig analysis;
  DragModel drag;  // areas of 0 are derived from the geometry
  FrfConfig frf;
  std::optional<SweepConfig> sweep;
  std::string output_dir = "swimlab-out";
};

/// Parses a JSON run configuration. Every omitted field keeps its default;
/// unknown keys are rejected with their full dotted path. Geometry lengths may
/// be numbers in meters or strings with an explicit "mm" or "m" suffix.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);

/// Canonical JSON (sorted keys, every field present).
std::string to_json(const RunConfig& config, int indent = 2);

/// FNV-1a 64 of the canonical compact JSON, as 16 hex digits.
std::string config_hash(const RunConfig& config);

/// Sets one numeric field by dotted path (e.g. "geometry.body_length",
/// "actuation.phases.L1") or alias (see config_aliases). Setting a phase
/// switches the gait to custom.
void set_parameter(RunConfig& config, const std::string& path, double value);

/// Reads one numeric field by the same paths set_parameter accepts.
double get_parameter(const RunConfig& config, const std::string& path);

/// Aliases accepted by set_parameter and their targets.
std::vector<std::pair<std::string, std::string>> config_aliases();

/// Program derived from the actuation section.
ActuationProgram make_program(const ActuationConfig& a);

/// Full validation of every section (geometry, material, program, gauges...).
void validate(const RunConfig& config);

}  // namespace swimlab
