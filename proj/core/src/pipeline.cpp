#include "swimlab/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "swimlab/error.hpp"

namespace swimlab {

Model build_model(const RunConfig& config) {
  validate(config);
  Model m;
  m.config = config;
  m.geometry = build_geometry(config.geometry);
  AssemblyOptions opts;
  opts.clamp_length_fraction = config.model.clamp_length_fraction;
  m.beam = assemble(m.geometry, config.material, config.model.n_stations, opts);
  m.program = make_program(config.actuation);
  m.drag = config.drag;
  if (m.drag.wetted_area == 0.0 || m.drag.cross_section_area == 0.0) {
    const HydroAreas a = hydro_areas(m.geometry);
    if (m.drag.wetted_area == 0.0) m.drag.wetted_area = a.wetted_area;
    if (m.drag.cross_section_area == 0.0) m.drag.cross_section_area = a.cross_section_area;
  }
  return m;
}

double default_duration(double frequency_hz) { return std::max(30.0 / frequency_hz, 8.0); }

std::string phasing_string(const ActuationProgram& p) {
  std::ostringstream os;
  for (std::size_t i = 0; i < kGroupCount; ++i) {
    if (i) os << ' ';
    os << to_string(kAllGroups[i]) << '=' << p.phase_deg[i];
  }
  return os.str();
}

std::string mode_label(const ActuationProgram& p, const std::vector<double>& damped_hz) {
  std::string gait_name = "Custom";
  const auto same = [&](GaitMode mode) {
    const ActuationProgram ref = gait(mode, p.frequency);
    for (std::size_t i = 0; i < kGroupCount; ++i) {
      const double d = std::fmod(std::abs(ref.phase_deg[i] - p.phase_deg[i]), 360.0);
      if (std::min(d, 360.0 - d) > 1e-9) return false;
    }
    return true;
  };
  if (same(GaitMode::in_phase)) {
    gait_name = "In-phase";
  } else if (same(GaitMode::sequential)) {
    gait_name = "Sequential";
  }
  if (damped_hz.empty()) return gait_name;
  std::size_t best = 0;
  for (std::size_t i = 1; i < damped_hz.size(); ++i)
    if (std::abs(damped_hz[i] - p.frequency) < std::abs(damped_hz[best] - p.frequency)) best = i;
  return gait_name + " f" + std::to_string(best + 1);
}

RunAnalysis analyze_run(const KinematicsField& field, const ForceRecord& force, double f,
                        const AnalysisConfig& analysis, const DragModel& drag,
                        const std::string& label) {
  validate(field);
  const std::size_t n = field.times.size();
  const SampleWindow steady = steady_state_window(n, field.dt(), f);
  RunAnalysis out;
  out.window = trailing_window(n, field.dt(), f, analysis.window_periods);
  if (out.window.begin < steady.begin)
    throw ValidationError("metric window reaches into the start-up transient; lengthen the record");

  out.thrust = thrust_timeseries(force, f);
  out.steady = steady_state_thrust(out.thrust, analysis.steady_state_fraction);
  out.envelope = envelope(field, f, analysis.window_periods);

  SwimMetrics& m = out.metrics;
  m.mode_label = label;
  m.frequency_hz = f;
  const KinematicsField visible = measurable_stations(field, kReconstructionSpliceFraction);
  m.traveling_index = traveling_index(analytic_field(visible, out.window));
  m.traveling_index_full = traveling_index(analytic_field(field, out.window));
  const TailMetrics tail = tail_metrics(field, out.window);
  m.caudal_deflection = tail.peak_deflection;
  m.caudal_velocity = tail.peak_velocity;
  m.thrust = out.steady.thrust;
  m.thrust_stationary = out.steady.stationary;
  if (m.thrust > 0.0) {
    const SwimSpeed v = free_swim_speed(m.thrust, drag, field.body_length);
    m.free_swim_speed = v.speed;
    m.free_swim_speed_bl = v.speed_bl;
  }
  return out;
}

RunOutputs run_simulation(const Model& model) {
  const RunConfig& c = model.config;
  const double f = model.program.frequency;
  SimulationOptions opts;
  opts.dt = 1.0 / c.analysis.sampling_rate_hz;
  opts.duration = c.analysis.duration_s > 0.0 ? c.analysis.duration_s : default_duration(f);
  opts.fluid = c.fluid;

  RunOutputs out;
  out.modes = modal_analysis(model.beam, 3);
  out.sim = simulate(model.beam, model.program, opts);
  const std::string label = mode_label(model.program, out.modes.damped_frequencies_hz);
  out.analysis = analyze_run(out.sim.kinematics, out.sim.mount, f, c.analysis, model.drag, label);
  return out;
}

RunOutputs run_simulation(const RunConfig& config) { return run_simulation(build_model(config)); }

ExperimentLog synthesize_log(const SimulationResult& sim, const GaugeLayout& layout) {
  ExperimentLog log;
  log.strain = sample_strain(sim.kinematics, layout);
  log.tail.times = sim.kinematics.times;
  log.tail.which = TailQuantity::velocity;
  log.tail.values.assign(sim.tail_velocity.data(), sim.tail_velocity.data() + sim.tail_velocity.size());
  log.force = sim.mount;
  return log;
}

LogAnalysis analyze_log(const ExperimentLog& log, double frequency_hz, const RunConfig& config,
                        const std::string& label) {
  validate(config);
  ReconstructionOptions ro;
  ro.n_stations = config.model.n_stations;
  ro.body_length = config.geometry.body_length;
  ro.frequency_hz = frequency_hz;
  LogAnalysis out;
  out.field = reconstruct_deflection(log.strain, log.tail, ro);
  DragModel drag = config.drag;
  if (drag.wetted_area == 0.0 || drag.cross_section_area == 0.0) {
    const HydroAreas a = hydro_areas(build_geometry(config.geometry));
    if (drag.wetted_area == 0.0) drag.wetted_area = a.wetted_area;
    if (drag.cross_section_area == 0.0) drag.cross_section_area = a.cross_section_area;
  }
  out.analysis = analyze_run(out.field, log.force, frequency_hz, config.analysis, drag, label);
  return out;
}

}  // namespace swimlab
