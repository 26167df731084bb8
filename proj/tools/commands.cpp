#include "commands.hpp"

#include <algorithm>
#include <filesystem>
#include <iomanip>
#include <iostream>

#include <json.hpp>

#include "swimlab/calibration.hpp"
#include "swimlab/error.hpp"
#include "swimlab/frf.hpp"
#include "swimlab/pipeline.hpp"
#include "swimlab/sweep.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace swimlab::cli {
namespace {

RunConfig load(const std::string& path) { return path.empty() ? RunConfig{} : load_config(path); }

fs::path output_dir(const Common& c, const RunConfig& cfg) {
  const fs::path dir = c.output_dir.empty() ? fs::path(cfg.output_dir) : fs::path(c.output_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory '" + dir.string() + "': " + ec.message());
  return dir;
}

FileHeader header_for(const RunConfig& cfg) {
  FileHeader h;
  h.config_hash = config_hash(cfg);
  return h;
}

void put(const fs::path& dir, const std::string& name, const std::string& text) {
  write_text((dir / name).string(), text);
}

json metrics_json(const SwimMetrics& m) {
  return {{"mode_label", m.mode_label},
          {"frequency_hz", m.frequency_hz},
          {"thrust_mN", m.thrust * 1e3},
          {"caudal_deflection_mm", m.caudal_deflection * 1e3},
          {"caudal_velocity_mm_s", m.caudal_velocity * 1e3},
          {"ti", m.traveling_index},
          {"ti_full", m.traveling_index_full},
          {"free_swim_speed_bl_s", m.free_swim_speed_bl},
          {"thrust_stationary", m.thrust_stationary}};
}

void print_row(const SwimMetrics& m, const std::string& phasing) {
  std::cout << std::fixed << std::setprecision(3) << m.mode_label << " | " << m.frequency_hz
            << " Hz | " << phasing << " | thrust " << m.thrust * 1e3 << " mN | deflection "
            << m.caudal_deflection * 1e3 << " mm | velocity " << m.caudal_velocity * 1e3
            << " mm/s | Ti " << m.traveling_index << " (full " << m.traveling_index_full << ")"
            << " | speed " << m.free_swim_speed_bl << " bL/s\n";
  if (!m.thrust_stationary) std::cout << "note: thrust had not settled in the averaging window\n";
  std::cout.unsetf(std::ios::floatfield);
}

}  // namespace

int run_modal(const Common& c, const ModalArgs& a) {
  const RunConfig cfg = load(a.config);
  const Model model = build_model(cfg);
  const ModalResult modes = modal_analysis(model.beam, a.modes);
  const fs::path dir = output_dir(c, cfg);
  const FileHeader h = header_for(cfg);
  put(dir, "modes.csv", format_modes(modes, model.beam.stations, h));
  json j = {{"config_hash", h.config_hash},
            {"damped_frequencies_hz", modes.damped_frequencies_hz},
            {"undamped_frequencies_hz", modes.undamped_frequencies_hz},
            {"damping_ratios", modes.damping_ratios},
            {"max_residual", modes.max_residual}};
  put(dir, "modal.json", j.dump(2) + "\n");
  for (std::size_t i = 0; i < modes.damped_frequencies_hz.size(); ++i)
    std::cout << "mode " << i + 1 << ": " << modes.damped_frequencies_hz[i] << " Hz (zeta "
              << modes.damping_ratios[i] << ")\n";
  return 0;
}

int run_frf(const Common& c, const FrfArgs& a) {
  const RunConfig cfg = load(a.config);
  const MuscleGroupId group = parse_group(a.group);
  const Model model = build_model(cfg);
  FrfOptions o;
  o.repetitions = a.repetitions > 0 ? a.repetitions : cfg.frf.repetitions;
  o.dt = 1.0 / cfg.analysis.sampling_rate_hz;
  o.record_length = cfg.frf.record_length_s;
  o.impulse_moment = cfg.frf.impulse_moment;
  o.max_frequency = cfg.frf.max_frequency_hz;
  o.extents = cfg.actuation.extents;
  const Frf frf = impulse_frf(model.beam, group, o);
  const fs::path dir = output_dir(c, cfg);
  put(dir, "frf_" + to_string(group) + ".csv", format_frf(frf, header_for(cfg)));
  std::cout << "frf " << to_string(group) << ": " << frf.frequency_hz.size() << " bins of "
            << frf.bin_width_hz << " Hz; peaks at";
  for (double f : peak_frequencies(frf, 3)) std::cout << ' ' << f;
  std::cout << " Hz\n";
  return 0;
}

int run_simulate(const Common& c, const SimulateArgs& a) {
  RunConfig cfg = load(a.config);
  if (!a.gait.empty()) cfg.actuation.gait = parse_gait_choice(a.gait);
  if (a.freq != 0.0) cfg.actuation.frequency_hz = a.freq;
  if (!a.phases.empty()) {
    cfg.actuation.phases_deg = parse_phase_map(a.phases);
    if (a.gait.empty()) cfg.actuation.gait = GaitChoice::custom;
  }
  const Model model = build_model(cfg);
  const RunOutputs run = run_simulation(model);
  const auto& m = run.analysis.metrics;
  const double f = model.program.frequency;

  const fs::path dir = output_dir(c, cfg);
  FileHeader h = header_for(cfg);
  h.fields.emplace_back("phasing", phasing_string(model.program));
  put(dir, "config.json", to_json(cfg) + "\n");
  put(dir, "kinematics.csv", format_kinematics(run.sim.kinematics, h));
  put(dir, "envelope.csv", format_envelope(run.analysis.envelope, cfg.geometry.body_length, h));
  put(dir, "thrust.csv", format_thrust(run.analysis.thrust, h));
  put(dir, "strobes.csv",
      format_strobes(run.sim.kinematics, f, cfg.analysis.strobes_per_period, h));
  put(dir, "metrics.json", format_metrics_json(m, h));
  put(dir, "metrics.csv", format_metrics_csv({m}, {phasing_string(model.program)}, h));
  put(dir, "log.csv", format_log(synthesize_log(run.sim, cfg.gauges), h));
  print_row(m, phasing_string(model.program));
  return 0;
}

int run_analyze(const Common& c, const AnalyzeArgs& a) {
  const RunConfig cfg = load(a.config);
  const ExperimentLog log = parse_log(a.log, cfg.gauges);
  std::string label = "Measured";
  std::string phasing;
  if (!a.gait.empty()) {
    ActuationConfig ac = cfg.actuation;
    ac.gait = parse_gait_choice(a.gait);
    ac.frequency_hz = a.freq;
    const ActuationProgram p = make_program(ac);
    const ModalResult modes = modal_analysis(build_model(cfg).beam, 3);
    label = mode_label(p, modes.damped_frequencies_hz);
    phasing = phasing_string(p);
  }
  const LogAnalysis res = analyze_log(log, a.freq, cfg, label);
  const auto& m = res.analysis.metrics;
  const fs::path dir = output_dir(c, cfg);
  FileHeader h = header_for(cfg);
  h.fields.emplace_back("source_log", fs::path(a.log).filename().string());
  if (!phasing.empty()) h.fields.emplace_back("phasing", phasing);
  put(dir, "kinematics.csv", format_kinematics(res.field, h));
  put(dir, "envelope.csv", format_envelope(res.analysis.envelope, cfg.geometry.body_length, h));
  put(dir, "thrust.csv", format_thrust(res.analysis.thrust, h));
  put(dir, "strobes.csv", format_strobes(res.field, a.freq, cfg.analysis.strobes_per_period, h));
  put(dir, "metrics.json", format_metrics_json(m, h));
  put(dir, "metrics.csv", format_metrics_csv({m}, {phasing}, h));
  print_row(m, phasing);
  return 0;
}

int run_sweep(const Common& c, const SweepArgs& a) {
  const RunConfig cfg = load(a.config);
  if (!cfg.sweep) throw ValidationError("config has no sweep section");
  const SweepConfig& s = *cfg.sweep;
  SweepOptions opts;
  opts.budget = s.budget;
  opts.workers = a.workers >= 0 ? static_cast<unsigned>(a.workers) : s.workers;

  SweepResult result;
  json summary;
  if (s.mode == SweepConfig::Mode::phase_search) {
    const PhaseSearchResult ps =
        phase_search(cfg, cfg.actuation.frequency_hz, s.phase_resolution_deg, s.top_k, opts);
    result = ps.sweep;
    summary["best_phasing"] = phasing_string(ps.best);
  } else {
    ParameterSpace space;
    space.parameters = s.parameters;
    std::cout << "grid size " << space.size() << '\n';
    result = grid_sweep(cfg, space, s.objective, opts);
  }

  const fs::path dir = output_dir(c, cfg);
  FileHeader h = header_for(cfg);
  h.fields.emplace_back("strategy", result.strategy);
  h.fields.emplace_back("grid_hash", result.grid_hash);
  std::ostringstream csv;
  csv << std::setprecision(17) << "# swimlab " << version() << "\n# config_hash: " << h.config_hash
      << "\n# strategy: " << result.strategy << "\n# grid_hash: " << result.grid_hash << "\nindex";
  for (const auto& n : result.parameter_names) csv << ',' << n;
  csv << ",failed,objective,mode_label,thrust_N,caudal_deflection_m,caudal_velocity_m_s,ti,ti_full\n";
  for (const auto& p : result.points) {
    csv << p.index;
    for (double v : p.values) csv << ',' << v;
    const auto& m = p.metrics;
    csv << ',' << (p.failed ? 1 : 0) << ',' << p.objective << ',' << m.mode_label << ',' << m.thrust
        << ',' << m.caudal_deflection << ',' << m.caudal_velocity << ',' << m.traveling_index << ','
        << m.traveling_index_full << '\n';
  }
  put(dir, "sweep.csv", csv.str());

  summary["tool_version"] = version();
  summary["config_hash"] = h.config_hash;
  summary["grid_hash"] = result.grid_hash;
  summary["grid_size"] = result.grid_size;
  summary["evaluated"] = result.points.size();
  summary["failures"] = result.failures;
  summary["strategy"] = result.strategy;
  summary["objective"] = s.mode == SweepConfig::Mode::phase_search ? "thrust" : to_string(s.objective);
  summary["seed"] = result.seed;
  summary["top"] = json::array();
  for (std::size_t i = 0; i < std::min(s.top_k, result.ranking.size()); ++i) {
    const auto& p = result.points[result.ranking[i]];
    json row = {{"index", p.index}, {"objective", p.objective}, {"metrics", metrics_json(p.metrics)}};
    for (std::size_t k = 0; k < p.values.size(); ++k) row["parameters"][result.parameter_names[k]] = p.values[k];
    summary["top"].push_back(row);
  }
  put(dir, "sweep_summary.json", summary.dump(2) + "\n");
  std::cout << result.points.size() << " points evaluated (" << result.failures << " failed)\n";
  if (!result.ranking.empty()) {
    const auto& best = result.points[result.ranking.front()];
    std::cout << "best:";
    for (std::size_t k = 0; k < best.values.size(); ++k)
      std::cout << ' ' << result.parameter_names[k] << '=' << best.values[k];
    std::cout << " objective " << best.objective << '\n';
  }
  return 0;
}

int run_report(const Common& c, const ReportArgs& a) {
  if (!fs::is_directory(a.dir)) throw IoError("'" + a.dir + "' is not a directory");
  std::vector<fs::path> runs;
  for (const auto& e : fs::directory_iterator(a.dir))
    if (e.is_directory() && fs::exists(e.path() / "metrics.json")) runs.push_back(e.path());
  if (fs::exists(fs::path(a.dir) / "metrics.json")) runs.emplace_back(a.dir);
  std::sort(runs.begin(), runs.end());
  if (runs.empty()) throw ValidationError("no run directories with metrics.json under '" + a.dir + "'");

  const RunConfig defaults;
  const fs::path dir = output_dir(c, defaults);
  std::vector<SwimMetrics> rows;
  std::vector<std::string> phasing, names;
  for (const auto& r : runs) {
    const std::string text = read_text((r / "metrics.json").string());
    rows.push_back(parse_metrics_json(text, (r / "metrics.json").string()));
    const json j = json::parse(text);
    phasing.push_back(j.contains("annotations") && j["annotations"].contains("phasing")
                          ? j["annotations"]["phasing"].get<std::string>()
                          : "");
    const std::string name = r.filename().string().empty() ? "run" : r.filename().string();
    names.push_back(name);
    if (fs::exists(r / "kinematics.csv")) {
      const KinematicsField field = parse_kinematics_text(read_text((r / "kinematics.csv").string()),
                                                          (r / "kinematics.csv").string());
      FileHeader h;
      h.config_hash = j.value("config_hash", "");
      h.fields.emplace_back("run", name);
      put(dir, "strobes_" + name + ".csv",
          format_strobes(field, rows.back().frequency_hz, defaults.analysis.strobes_per_period, h));
    }
  }
  FileHeader h;
  h.config_hash = "aggregate";
  put(dir, "comparison.csv", format_metrics_csv(rows, phasing, h));

  json rep = {{"tool_version", version()}, {"runs", json::array()}, {"laebt", json::array()}};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    json row = metrics_json(rows[i]);
    row["run"] = names[i];
    rep["runs"].push_back(row);
  }
  // Every run against the in-phase run at the same frequency.
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].mode_label.rfind("In-phase", 0) != 0) continue;
    for (std::size_t k = 0; k < rows.size(); ++k) {
      if (k == i || std::abs(rows[k].frequency_hz - rows[i].frequency_hz) > 1e-9) continue;
      if (!(rows[i].caudal_velocity > 0.0 && rows[k].caudal_velocity > 0.0 && rows[i].thrust > 0.0 &&
            rows[k].thrust > 0.0))
        continue;
      const LaebtComparison cmp = compare_with_laebt(rows[i].caudal_velocity, rows[i].thrust,
                                                     rows[k].caudal_velocity, rows[k].thrust);
      rep["laebt"].push_back({{"baseline", names[i]},
                              {"run", names[k]},
                              {"predicted_ratio", cmp.predicted_ratio},
                              {"measured_ratio", cmp.measured_ratio},
                              {"exceeds_prediction", cmp.exceeds_prediction}});
    }
  }
  put(dir, "report.json", rep.dump(2) + "\n");
  for (std::size_t i = 0; i < rows.size(); ++i) print_row(rows[i], phasing[i]);
  return 0;
}

int run_calibrate(const Common& c, const CalibrateArgs& a) {
  const RunConfig cfg = load(a.config);
  const BodyGeometry g = build_geometry(cfg.geometry);
  const CalibrationResult r = calibrate(g, cfg.material, cfg.fluid, cfg.model.n_stations);
  json j = {{"spine_modulus", r.material.spine_modulus},
            {"actuated_stiffness_factor", r.material.actuated_stiffness_factor},
            {"gain_per_hasel", r.gain_per_hasel},
            {"reactive_thrust_coefficient", r.reactive_thrust_coefficient},
            {"f1_hz", r.f1_hz},
            {"f2_hz", r.f2_hz}};
  const fs::path dir = output_dir(c, cfg);
  put(dir, "calibration.json", j.dump(2) + "\n");
  std::cout << std::setprecision(10) << j.dump(2) << '\n';
  return 0;
}

int run_laebt(const Common&, const LaebtArgs& a) {
  json j = {{"predicted_ratio", laebt_thrust_ratio(a.v1_mms, a.v2_mms)}};
  if (a.t1_mn > 0.0 || a.t2_mn > 0.0) {
    const LaebtComparison cmp = compare_with_laebt(a.v1_mms, a.t1_mn, a.v2_mms, a.t2_mn);
    j["measured_ratio"] = cmp.measured_ratio;
    j["exceeds_prediction"] = cmp.exceeds_prediction;
    j["surplus"] = cmp.surplus;
  }
  std::cout << j.dump(2) << '\n';
  return 0;
}

int run_speed(const Common&, const SpeedArgs& a) {
  const RunConfig cfg = load(a.config);
  const Model model = build_model(cfg);
  const SwimSpeed v = free_swim_speed(a.thrust_mn * 1e-3, model.drag, cfg.geometry.body_length);
  json j = {{"thrust_mN", a.thrust_mn},
            {"speed_m_s", v.speed},
            {"speed_bl_s", v.speed_bl},
            {"wetted_area_m2", model.drag.wetted_area},
            {"cross_section_area_m2", model.drag.cross_section_area},
            {"friction_law", to_string(model.drag.friction_law)}};
  std::cout << j.dump(2) << '\n';
  return 0;
}

}  // namespace swimlab::cli
