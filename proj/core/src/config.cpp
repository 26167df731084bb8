#include "swimlab/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "swimlab/error.hpp"

namespace swimlab {

using nlohmann::json;

namespace {

constexpr const char* kGroupNames[kGroupCount] = {"L1", "L2", "L3", "R1", "R2", "R3"};

double as_number(const json& j, const std::string& path) {
  if (!j.is_number()) throw ValidationError(path + " must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ValidationError(path + " must be finite");
  return v;
}

// Meters from a number or a string such as "350mm" / "0.35 m".
double as_length(const json& j, const std::string& path) {
  if (j.is_number()) return as_number(j, path);
  if (!j.is_string()) throw ValidationError(path + " must be a length in meters or a string with a unit");
  const std::string s = j.get<std::string>();
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ValidationError(path + ": cannot parse length '" + s + "'");
  }
  std::string unit = s.substr(used);
  unit.erase(0, unit.find_first_not_of(' '));
  if (unit == "mm") return v * 1e-3;
  if (unit == "m") return v;
  throw ValidationError(path + ": length '" + s + "' needs a unit suffix of mm or m");
}

int as_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ValidationError(path + " must be an integer");
  return j.get<int>();
}

bool as_bool(const json& j, const std::string& path) {
  if (!j.is_boolean()) throw ValidationError(path + " must be true or false");
  return j.get<bool>();
}

std::string as_string(const json& j, const std::string& path) {
  if (!j.is_string()) throw ValidationError(path + " must be a string");
  return j.get<std::string>();
}

json sweep_to_json(const SweepConfig& s) {
  json params = json::array();
  for (const auto& p : s.parameters) params.push_back({{"name", p.name}, {"values", p.values}});
  return {{"mode", s.mode == SweepConfig::Mode::grid ? "grid" : "phase_search"},
          {"objective", to_string(s.objective)},
          {"parameters", params},
          {"budget", s.budget},
          {"workers", s.workers},
          {"phase_resolution_deg", s.phase_resolution_deg},
          {"top_k", s.top_k},
          {"seed", s.seed}};
}

json to_tree(const RunConfig& c) {
  const auto& g = c.geometry;
  const auto& m = c.material;
  const auto& a = c.actuation;
  json phases, scale;
  for (std::size_t i = 0; i < kGroupCount; ++i) {
    phases[kGroupNames[i]] = a.phases_deg[i];
    scale[kGroupNames[i]] = a.gain_scale[i];
  }
  json extents = json::array();
  for (const auto& e : a.extents) extents.push_back({e.start, e.end});
  json t = {
      {"geometry",
       {{"body_length", g.body_length},
        {"spine_thickness", g.spine_thickness},
        {"spine_tip_thickness", g.spine_tip_thickness},
        {"spine_width", g.spine_width},
        {"spine_peduncle_width", g.spine_peduncle_width},
        {"spine_tip_width", g.spine_tip_width},
        {"silicone_head_width", g.silicone_head_width},
        {"silicone_peduncle_width", g.silicone_peduncle_width},
        {"silicone_tail_width", g.silicone_tail_width},
        {"silicone_head_thickness", g.silicone_head_thickness},
        {"silicone_tail_thickness", g.silicone_tail_thickness},
        {"peduncle_fraction", g.peduncle_fraction},
        {"caudal_fin_start_fraction", g.caudal_fin_start_fraction},
        {"gauge_offset_z", g.gauge_offset_z}}},
      {"material",
       {{"spine_modulus", m.spine_modulus},
        {"spine_density", m.spine_density},
        {"silicone_density", m.silicone_density},
        {"fluid_density", m.fluid_density},
        {"added_mass_coefficient", m.added_mass_coefficient},
        {"structural_damping_ratio", m.structural_damping_ratio},
        {"actuated_stiffness_factor", m.actuated_stiffness_factor}}},
      {"fluid",
       {{"quadratic_drag", c.fluid.quadratic_drag},
        {"drag_coefficient", c.fluid.drag_coefficient},
        {"reactive_thrust_coefficient", c.fluid.reactive_thrust_coefficient}}},
      {"model",
       {{"n_stations", c.model.n_stations},
        {"clamp_length_fraction", c.model.clamp_length_fraction}}},
      {"actuation",
       {{"gait", to_string(a.gait)},
        {"frequency_hz", a.frequency_hz},
        {"amplitude_voltage", a.amplitude_voltage},
        {"phases", phases},
        {"gain_per_hasel", a.gain_per_hasel},
        {"gain_scale", scale},
        {"extents", extents}}},
      {"gauges",
       {{"positions", c.gauges.positions}, {"neutral_offset", c.gauges.neutral_offset}}},
      {"analysis",
       {{"sampling_rate_hz", c.analysis.sampling_rate_hz},
        {"duration_s", c.analysis.duration_s},
        {"window_periods", c.analysis.window_periods},
        {"steady_state_fraction", c.analysis.steady_state_fraction},
        {"strobes_per_period", c.analysis.strobes_per_period}}},
      {"drag",
       {{"rho", c.drag.rho},
        {"cd", c.drag.cd},
        {"wetted_area", c.drag.wetted_area},
        {"cross_section_area", c.drag.cross_section_area},
        {"kinematic_viscosity", c.drag.kinematic_viscosity},
        {"friction_law", to_string(c.drag.friction_law)}}},
      {"frf",
       {{"repetitions", c.frf.repetitions},
        {"record_length_s", c.frf.record_length_s},
        {"impulse_moment", c.frf.impulse_moment},
        {"max_frequency_hz", c.frf.max_frequency_hz}}},
      {"sweep", c.sweep ? sweep_to_json(*c.sweep) : json(nullptr)},
      {"output_dir", c.output_dir},
  };
  return t;
}

// Overlays `user` onto the defaults tree, rejecting keys the schema lacks.
void merge(json& base, const json& user, const std::string& path) {
  if (!user.is_object()) throw ValidationError((path.empty() ? "config" : path) + " must be an object");
  for (auto it = user.begin(); it != user.end(); ++it) {
    const std::string key = path.empty() ? it.key() : path + "." + it.key();
    if (!base.contains(it.key())) throw ValidationError("unknown config key '" + key + "'");
    json& slot = base[it.key()];
    if (slot.is_object()) {
      merge(slot, it.value(), key);
    } else if (key == "sweep" && slot.is_null()) {
      if (it.value().is_null()) continue;
      slot = sweep_to_json(SweepConfig{});
      merge(slot, it.value(), key);
    } else {
      slot = it.value();
    }
  }
}

std::array<double, kGroupCount> group_table(const json& j, const std::string& path) {
  std::array<double, kGroupCount> out{};
  for (std::size_t i = 0; i < kGroupCount; ++i) {
    if (!j.contains(kGroupNames[i])) throw ValidationError(path + " is missing " + kGroupNames[i]);
    out[i] = as_number(j.at(kGroupNames[i]), path + "." + kGroupNames[i]);
  }
  return out;
}

SweepConfig sweep_from_tree(const json& s) {
  SweepConfig out;
  const std::string mode = as_string(s.at("mode"), "sweep.mode");
  if (mode == "grid") {
    out.mode = SweepConfig::Mode::grid;
  } else if (mode == "phase_search") {
    out.mode = SweepConfig::Mode::phase_search;
  } else {
    throw ValidationError("sweep.mode must be grid or phase_search");
  }
  out.objective = parse_objective(as_string(s.at("objective"), "sweep.objective"));
  const json& params = s.at("parameters");
  if (!params.is_array()) throw ValidationError("sweep.parameters must be an array");
  for (std::size_t i = 0; i < params.size(); ++i) {
    const std::string p = "sweep.parameters[" + std::to_string(i) + "]";
    const json& e = params[i];
    if (!e.is_object()) throw ValidationError(p + " must be an object");
    for (auto it = e.begin(); it != e.end(); ++it)
      if (it.key() != "name" && it.key() != "values" && it.key() != "min" && it.key() != "max" &&
          it.key() != "steps")
        throw ValidationError("unknown config key '" + p + "." + it.key() + "'");
    SweepParameter sp;
    if (!e.contains("name")) throw ValidationError(p + ".name is required");
    sp.name = as_string(e.at("name"), p + ".name");
    if (e.contains("values")) {
      if (!e.at("values").is_array() || e.at("values").empty())
        throw ValidationError(p + ".values must be a non-empty array");
      for (const auto& v : e.at("values")) sp.values.push_back(as_number(v, p + ".values"));
    } else {
      if (!e.contains("min") || !e.contains("max") || !e.contains("steps"))
        throw ValidationError(p + " needs either values or min, max and steps");
      const double lo = as_number(e.at("min"), p + ".min");
      const double hi = as_number(e.at("max"), p + ".max");
      const int steps = as_int(e.at("steps"), p + ".steps");
      if (!(lo < hi)) throw ValidationError(p + ": min must be below max");
      if (steps < 2) throw ValidationError(p + ": steps must be at least 2");
      for (int k = 0; k < steps; ++k)
        sp.values.push_back(lo + (hi - lo) * static_cast<double>(k) / (steps - 1));
    }
    out.parameters.push_back(std::move(sp));
  }
  const int budget = as_int(s.at("budget"), "sweep.budget");
  if (budget < 1) throw ValidationError("sweep.budget must be positive");
  out.budget = static_cast<std::size_t>(budget);
  const int workers = as_int(s.at("workers"), "sweep.workers");
  if (workers < 0) throw ValidationError("sweep.workers must be non-negative");
  out.workers = static_cast<unsigned>(workers);
  out.phase_resolution_deg = as_number(s.at("phase_resolution_deg"), "sweep.phase_resolution_deg");
  const int top_k = as_int(s.at("top_k"), "sweep.top_k");
  if (top_k < 1) throw ValidationError("sweep.top_k must be positive");
  out.top_k = static_cast<std::size_t>(top_k);
  if (!s.at("seed").is_number_unsigned() && !s.at("seed").is_number_integer())
    throw ValidationError("sweep.seed must be an integer");
  out.seed = s.at("seed").get<std::uint64_t>();
  return out;
}

RunConfig from_tree(const json& t) {
  RunConfig c;
  const json& g = t.at("geometry");
  auto len = [&](const char* k) { return as_length(g.at(k), std::string("geometry.") + k); };
  auto num = [](const json& sec, const std::string& s, const char* k) {
    return as_number(sec.at(k), s + "." + k);
  };
  c.geometry.body_length = len("body_length");
  c.geometry.spine_thickness = len("spine_thickness");
  c.geometry.spine_tip_thickness = len("spine_tip_thickness");
  c.geometry.spine_width = len("spine_width");
  c.geometry.spine_peduncle_width = len("spine_peduncle_width");
  c.geometry.spine_tip_width = len("spine_tip_width");
  c.geometry.silicone_head_width = len("silicone_head_width");
  c.geometry.silicone_peduncle_width = len("silicone_peduncle_width");
  c.geometry.silicone_tail_width = len("silicone_tail_width");
  c.geometry.silicone_head_thickness = len("silicone_head_thickness");
  c.geometry.silicone_tail_thickness = len("silicone_tail_thickness");
  c.geometry.peduncle_fraction = num(g, "geometry", "peduncle_fraction");
  c.geometry.caudal_fin_start_fraction = num(g, "geometry", "caudal_fin_start_fraction");
  c.geometry.gauge_offset_z = len("gauge_offset_z");

  const json& m = t.at("material");
  c.material.spine_modulus = num(m, "material", "spine_modulus");
  c.material.spine_density = num(m, "material", "spine_density");
  c.material.silicone_density = num(m, "material", "silicone_density");
  c.material.fluid_density = num(m, "material", "fluid_density");
  c.material.added_mass_coefficient = num(m, "material", "added_mass_coefficient");
  c.material.structural_damping_ratio = num(m, "material", "structural_damping_ratio");
  c.material.actuated_stiffness_factor = num(m, "material", "actuated_stiffness_factor");

  const json& f = t.at("fluid");
  c.fluid.quadratic_drag = as_bool(f.at("quadratic_drag"), "fluid.quadratic_drag");
  c.fluid.drag_coefficient = num(f, "fluid", "drag_coefficient");
  c.fluid.reactive_thrust_coefficient = num(f, "fluid", "reactive_thrust_coefficient");

  const json& md = t.at("model");
  c.model.n_stations = as_int(md.at("n_stations"), "model.n_stations");
  c.model.clamp_length_fraction = num(md, "model", "clamp_length_fraction");

  const json& a = t.at("actuation");
  c.actuation.gait = parse_gait_choice(as_string(a.at("gait"), "actuation.gait"));
  c.actuation.frequency_hz = num(a, "actuation", "frequency_hz");
  c.actuation.amplitude_voltage = num(a, "actuation", "amplitude_voltage");
  c.actuation.phases_deg = group_table(a.at("phases"), "actuation.phases");
  c.actuation.gain_per_hasel = num(a, "actuation", "gain_per_hasel");
  c.actuation.gain_scale = group_table(a.at("gain_scale"), "actuation.gain_scale");
  const json& ex = a.at("extents");
  if (!ex.is_array() || ex.size() != 3)
    throw ValidationError("actuation.extents must list three [start, end] pairs");
  for (std::size_t i = 0; i < 3; ++i) {
    const std::string p = "actuation.extents[" + std::to_string(i) + "]";
    if (!ex[i].is_array() || ex[i].size() != 2) throw ValidationError(p + " must be [start, end]");
    c.actuation.extents[i] = {as_number(ex[i][0], p), as_number(ex[i][1], p)};
  }

  const json& gs = t.at("gauges");
  if (!gs.at("positions").is_array()) throw ValidationError("gauges.positions must be an array");
  c.gauges.positions.clear();
  for (const auto& v : gs.at("positions")) c.gauges.positions.push_back(as_number(v, "gauges.positions"));
  c.gauges.neutral_offset = as_length(gs.at("neutral_offset"), "gauges.neutral_offset");
  c.gauges.left_side.clear();
  for (std::size_t i = 0; i < c.gauges.positions.size(); ++i) c.gauges.left_side.push_back(i % 2 == 0);

  const json& an = t.at("analysis");
  c.analysis.sampling_rate_hz = num(an, "analysis", "sampling_rate_hz");
  c.analysis.duration_s = num(an, "analysis", "duration_s");
  c.analysis.window_periods = num(an, "analysis", "window_periods");
  c.analysis.steady_state_fraction = num(an, "analysis", "steady_state_fraction");
  c.analysis.strobes_per_period = as_int(an.at("strobes_per_period"), "analysis.strobes_per_period");

  const json& d = t.at("drag");
  c.drag.rho = num(d, "drag", "rho");
  c.drag.cd = num(d, "drag", "cd");
  c.drag.wetted_area = num(d, "drag", "wetted_area");
  c.drag.cross_section_area = num(d, "drag", "cross_section_area");
  c.drag.kinematic_viscosity = num(d, "drag", "kinematic_viscosity");
  c.drag.friction_law = parse_friction_law(as_string(d.at("friction_law"), "drag.friction_law"));

  const json& fr = t.at("frf");
  c.frf.repetitions = as_int(fr.at("repetitions"), "frf.repetitions");
  c.frf.record_length_s = num(fr, "frf", "record_length_s");
  c.frf.impulse_moment = num(fr, "frf", "impulse_moment");
  c.frf.max_frequency_hz = num(fr, "frf", "max_frequency_hz");

  if (!t.at("sweep").is_null()) c.sweep = sweep_from_tree(t.at("sweep"));
  c.output_dir = as_string(t.at("output_dir"), "output_dir");
  return c;
}

json::json_pointer pointer_for(const std::string& dotted) {
  std::string p;
  std::stringstream ss(dotted);
  std::string part;
  while (std::getline(ss, part, '.')) {
    if (part.empty()) throw ValidationError("malformed parameter path '" + dotted + "'");
    p += "/" + part;
  }
  return json::json_pointer(p);
}

}  // namespace

std::string to_string(GaitChoice g) {
  switch (g) {
    case GaitChoice::in_phase: return "in_phase";
    case GaitChoice::sequential: return "sequential";
    case GaitChoice::custom: return "custom";
  }
  return "custom";
}

GaitChoice parse_gait_choice(const std::string& name) {
  if (name == "in_phase") return GaitChoice::in_phase;
  if (name == "sequential") return GaitChoice::sequential;
  if (name == "custom") return GaitChoice::custom;
  throw ValidationError("unknown gait '" + name + "' (expected in_phase, sequential or custom)");
}

std::string to_string(Objective o) {
  switch (o) {
    case Objective::tail_velocity: return "tail_velocity";
    case Objective::thrust: return "thrust";
    case Objective::traveling_index: return "traveling_index";
  }
  return "thrust";
}

Objective parse_objective(const std::string& name) {
  if (name == "tail_velocity") return Objective::tail_velocity;
  if (name == "thrust") return Objective::thrust;
  if (name == "traveling_index" || name == "Ti") return Objective::traveling_index;
  throw ValidationError("unknown objective '" + name +
                        "' (expected tail_velocity, thrust or traveling_index)");
}

RunConfig parse_config(const std::string& text) {
  json user;
  try {
    user = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("config is not valid JSON: ") + e.what());
  }
  json tree = to_tree(RunConfig{});
  merge(tree, user, "");
  RunConfig c;
  try {
    c = from_tree(tree);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("config: ") + e.what());
  }
  validate(c);
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string to_json(const RunConfig& config, int indent) { return to_tree(config).dump(indent); }

std::string config_hash(const RunConfig& config) {
  const std::string s = to_tree(config).dump();
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::vector<std::pair<std::string, std::string>> config_aliases() {
  return {{"body_length", "geometry.body_length"},
          {"fin_span", "geometry.silicone_tail_width"},
          {"fin_start", "geometry.caudal_fin_start_fraction"},
          {"peduncle_location", "geometry.peduncle_fraction"},
          {"peduncle_width", "geometry.spine_peduncle_width"},
          {"head_width", "geometry.silicone_head_width"},
          {"head_thickness", "geometry.silicone_head_thickness"},
          {"frequency", "actuation.frequency_hz"},
          {"phase.L1", "actuation.phases.L1 (R1 follows at +180)"},
          {"phase.L2", "actuation.phases.L2 (R2 follows at +180)"},
          {"phase.L3", "actuation.phases.L3 (R3 follows at +180)"}};
}

namespace {

std::string resolve_alias(const std::string& path) {
  if (path.rfind("phase.L", 0) == 0 && path.size() == 8)
    return "actuation.phases." + to_string(parse_group(path.substr(6)));
  for (const auto& [alias, full] : config_aliases())
    if (alias == path) return full;
  return path;
}

}  // namespace

double get_parameter(const RunConfig& config, const std::string& path) {
  const json tree = to_tree(config);
  const json::json_pointer ptr = pointer_for(resolve_alias(path));
  if (!tree.contains(ptr) || !tree.at(ptr).is_number())
    throw ValidationError("unknown numeric parameter '" + path + "'");
  return tree.at(ptr).get<double>();
}

void set_parameter(RunConfig& config, const std::string& path, double value) {
  if (!std::isfinite(value)) throw ValidationError("parameter " + path + " must be finite");
  if (path.rfind("phase.L", 0) == 0 && path.size() == 8) {
    const MuscleGroupId g = parse_group(path.substr(6));
    set_parameter(config, "actuation.phases." + to_string(g), value);
    set_parameter(config, "actuation.phases." + to_string(antagonist(g)),
                  std::fmod(value + 180.0, 360.0));
    return;
  }
  const std::string target = resolve_alias(path);
  json tree = to_tree(config);
  const json::json_pointer ptr = pointer_for(target);
  if (!tree.contains(ptr) || !tree.at(ptr).is_number())
    throw ValidationError("unknown numeric parameter '" + path + "'");
  if (tree.at(ptr).is_number_integer()) {
    if (value != std::floor(value)) throw ValidationError("parameter " + path + " must be an integer");
    tree[ptr] = static_cast<long long>(value);
  } else {
    tree[ptr] = value;
  }
  if (target.rfind("actuation.phases.", 0) == 0) tree["actuation"]["gait"] = "custom";
  RunConfig next = from_tree(tree);
  config = std::move(next);
}

ActuationProgram make_program(const ActuationConfig& a) {
  ActuationProgram p;
  switch (a.gait) {
    case GaitChoice::in_phase: p = gait(GaitMode::in_phase, a.frequency_hz); break;
    case GaitChoice::sequential: p = gait(GaitMode::sequential, a.frequency_hz); break;
    case GaitChoice::custom:
      p = gait(GaitMode::in_phase, a.frequency_hz);
      p.phase_deg = a.phases_deg;
      break;
  }
  p.amplitude_voltage = a.amplitude_voltage;
  p.gain = default_group_gains(a.gain_per_hasel);
  for (std::size_t i = 0; i < kGroupCount; ++i) {
    p.gain[i] *= a.gain_scale[i];
    p.extents[i] = a.extents[i % 3];
  }
  return p;
}

void validate(const RunConfig& c) {
  build_geometry(c.geometry);
  validate(c.material);
  if (c.model.n_stations < kMinStations)
    throw ValidationError("model.n_stations must be at least " + std::to_string(kMinStations));
  if (c.model.clamp_length_fraction < 0.0 || c.model.clamp_length_fraction >= 0.5)
    throw ValidationError("model.clamp_length_fraction must lie in [0, 0.5)");
  if (!(c.fluid.drag_coefficient >= 0.0)) throw ValidationError("fluid.drag_coefficient must be non-negative");
  if (!(c.fluid.reactive_thrust_coefficient >= 0.0))
    throw ValidationError("fluid.reactive_thrust_coefficient must be non-negative");
  validate(make_program(c.actuation));
  validate(c.gauges);
  if (!(c.analysis.sampling_rate_hz > 0.0)) throw ValidationError("analysis.sampling_rate_hz must be positive");
  if (c.analysis.duration_s < 0.0) throw ValidationError("analysis.duration_s must be non-negative");
  if (!(c.analysis.window_periods >= 1.0)) throw ValidationError("analysis.window_periods must be at least 1");
  if (!(c.analysis.steady_state_fraction > 0.0 && c.analysis.steady_state_fraction <= 1.0))
    throw ValidationError("analysis.steady_state_fraction must lie in (0, 1]");
  if (c.analysis.strobes_per_period < 1) throw ValidationError("analysis.strobes_per_period must be positive");
  if (!(c.drag.rho > 0.0) || !(c.drag.cd > 0.0 && c.drag.cd < 1.0) || !(c.drag.kinematic_viscosity > 0.0))
    throw ValidationError("drag: rho and kinematic_viscosity must be positive and cd in (0, 1)");
  if (c.drag.wetted_area < 0.0 || c.drag.cross_section_area < 0.0)
    throw ValidationError("drag areas must be non-negative (0 derives them from the geometry)");
  if (c.frf.repetitions < 1) throw ValidationError("frf.repetitions must be at least 1");
  if (c.sweep && c.sweep->mode == SweepConfig::Mode::phase_search) {
    const double r = c.sweep->phase_resolution_deg;
    if (!(r > 0.0) || std::abs(360.0 / r - std::round(360.0 / r)) > 1e-9)
      throw ValidationError("sweep.phase_resolution_deg must divide 360");
  }
  if (c.output_dir.empty()) throw ValidationError("output_dir must not be empty");
}

}  // namespace swimlab
