#pragma once

#include <string>
#include <vector>

#include "swimlab/beam.hpp"
#include "swimlab/config.hpp"
#include "swimlab/dynamics.hpp"
#include "swimlab/modal.hpp"
#include "swimlab/records_io.hpp"
#include "swimlab/sensing.hpp"
#include "swimlab/thrust.hpp"
#include "swimlab/wave.hpp"

namespace swimlab {

/// Everything derived from a RunConfig before time integration.
struct Model {
  RunConfig config;
  BodyGeometry geometry;
  DiscreteBeam beam;
  ActuationProgram program;
  DragModel drag;  // areas filled in from the geometry when the config leaves them 0
};

Model build_model(const RunConfig& config);

/// max(30 periods, 8 s).
double default_duration(double frequency_hz);

/// "In-phase f1", "Sequential f2", "Custom f3", ...: gait name plus the nearest
/// damped natural frequency.
std::string mode_label(const ActuationProgram& program, const std::vector<double>& damped_hz);

/// "L1=0 L2=0 L3=0 R1=180 R2=180 R3=180".
std::string phasing_string(const ActuationProgram& program);

/// Shared metric extraction for simulated and reconstructed runs.
struct RunAnalysis {
  SampleWindow window;  // metric window (trailing periods of the steady record)
  ThrustSeries thrust;
  SteadyThrust steady;
  Envelope envelope;
  SwimMetrics metrics;
};

RunAnalysis analyze_run(const KinematicsField& field, const ForceRecord& force, double frequency_hz,
                        const AnalysisConfig& analysis, const DragModel& drag,
                        const std::string& label);

struct RunOutputs {
  SimulationResult sim;
  ModalResult modes;
  RunAnalysis analysis;
};

RunOutputs run_simulation(const Model& model);
RunOutputs run_simulation(const RunConfig& config);

/// Strain at the configured gauges, LDV tail velocity and mount forces of a run.
ExperimentLog synthesize_log(const SimulationResult& sim, const GaugeLayout& layout);

struct LogAnalysis {
  KinematicsField field;  // reconstructed
  RunAnalysis analysis;
};

/// Reconstruction and metrics for a recorded (or synthesized) run.
LogAnalysis analyze_log(const ExperimentLog& log, double frequency_hz, const RunConfig& config,
                        const std::string& label);

}  // namespace swimlab
