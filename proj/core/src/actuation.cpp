#include "swimlab/actuation.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <sstream>

#include "swimlab/diagnostics.hpp"
#include "swimlab/error.hpp"

namespace swimlab {

std::string to_string(MuscleGroupId g) {
  static constexpr const char* names[] = {"L1", "L2", "L3", "R1", "R2", "R3"};
  return names[index_of(g)];
}

MuscleGroupId parse_group(std::string_view name) {
  if (name.size() == 2) {
    const char side = static_cast<char>(std::toupper(static_cast<unsigned char>(name[0])));
    const char pos = name[1];
    if ((side == 'L' || side == 'R') && pos >= '1' && pos <= '3') {
      const std::size_t idx = (side == 'L' ? 0 : 3) + static_cast<std::size_t>(pos - '1');
      return static_cast<MuscleGroupId>(idx);
    }
  }
  throw ValidationError("unknown muscle group '" + std::string(name) +
                        "' (expected one of L1, L2, L3, R1, R2, R3)");
}

std::string to_string(GaitMode mode) {
  return mode == GaitMode::in_phase ? "in_phase" : "sequential";
}

GaitMode parse_gait(std::string_view name) {
  if (name == "in_phase" || name == "in-phase") return GaitMode::in_phase;
  if (name == "sequential") return GaitMode::sequential;
  throw ValidationError("unknown gait '" + std::string(name) +
                        "' (expected in_phase or sequential)");
}

std::array<GroupExtent, 3> default_group_extents() {
  return {GroupExtent{0.02, 0.14}, GroupExtent{0.28, 0.34}, GroupExtent{0.36, 0.42}};
}

std::array<double, kGroupCount> default_group_gains(double per_hasel) {
  // Three HASELs per side at position 1, two at positions 2 and 3.
  return {3 * per_hasel, 2 * per_hasel, 2 * per_hasel,
          3 * per_hasel, 2 * per_hasel, 2 * per_hasel};
}

void validate(const ActuationProgram& p) {
  if (!(p.frequency > 0.0) || !std::isfinite(p.frequency))
    throw ValidationError("actuation.frequency must be positive");
  if (p.frequency > 9.0) {
    std::ostringstream os;
    os << "actuation frequency " << p.frequency << " Hz is above the 9 Hz tested range";
    warn(os.str());
  }
  if (!(p.amplitude_voltage >= 0.0))
    throw ValidationError("actuation.amplitude_voltage must be non-negative");
  for (auto g : kAllGroups) {
    const double ph = p.phase(g);
    if (!(ph >= 0.0 && ph < 360.0))
      throw ValidationError("phase of " + to_string(g) + " must lie in [0, 360)");
    const auto& e = p.extent(g);
    if (!(e.start >= 0.0 && e.end <= 1.0 && e.start < e.end))
      throw ValidationError("extent of " + to_string(g) + " must satisfy 0 <= start < end <= 1");
    if (!(p.group_gain(g) >= 0.0))
      throw ValidationError("gain of " + to_string(g) + " must be non-negative");
  }
}

double voltage_waveform(const ActuationProgram& p, MuscleGroupId group, double t) {
  const double phase = p.phase(group) * std::numbers::pi / 180.0;
  return 0.5 * p.amplitude_voltage *
         (1.0 + std::sin(2.0 * std::numbers::pi * p.frequency * t + phase));
}

double moment_from_voltage(double v, double group_gain, double v_max, Side side) {
  if (v < 0.0) throw ValidationError("voltage must be non-negative (unipolar drive)");
  if (v_max <= 0.0) return 0.0;
  const double r = v / v_max;
  const double m = group_gain * r * r;
  return side == Side::left ? m : -m;
}

double group_moment(const ActuationProgram& p, MuscleGroupId group, double t) {
  // Rounding in the sine can push V a hair below zero for amplitude 0 edge cases.
  const double v = std::max(0.0, voltage_waveform(p, group, t));
  return moment_from_voltage(v, p.group_gain(group), p.amplitude_voltage, side_of(group));
}

ActuationProgram gait(GaitMode mode, double frequency) {
  ActuationProgram p;
  p.frequency = frequency;
  p.amplitude_voltage = 6000.0;
  const auto ext = default_group_extents();
  for (auto g : kAllGroups) p.extents[index_of(g)] = ext[position_of(g)];
  p.gain = default_group_gains();
  if (mode == GaitMode::in_phase) {
    p.phase_deg = {0.0, 0.0, 0.0, 180.0, 180.0, 180.0};
  } else {
    p.phase_deg = {180.0, 0.0, 0.0, 0.0, 180.0, 180.0};
  }
  return p;
}

std::array<double, kGroupCount> parse_phase_map(std::string_view text) {
  std::array<double, kGroupCount> out{};
  std::array<bool, kGroupCount> seen{};
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    std::string_view item = text.substr(pos, comma - pos);
    while (!item.empty() && std::isspace(static_cast<unsigned char>(item.front())))
      item.remove_prefix(1);
    while (!item.empty() && std::isspace(static_cast<unsigned char>(item.back())))
      item.remove_suffix(1);
    if (!item.empty()) {
      const std::size_t eq = item.find('=');
      if (eq == std::string_view::npos)
        throw ValidationError("phase entry '" + std::string(item) + "' is not name=degrees");
      const auto g = parse_group(item.substr(0, eq));
      const std::string value(item.substr(eq + 1));
      std::size_t used = 0;
      double deg = 0.0;
      try {
        deg = std::stod(value, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != value.size())
        throw ValidationError("phase for " + to_string(g) + " is not a number: '" + value + "'");
      deg = std::fmod(deg, 360.0);
      if (deg < 0.0) deg += 360.0;
      out[index_of(g)] = deg;
      seen[index_of(g)] = true;
    }
    pos = comma + 1;
  }
  for (auto g : kAllGroups) {
    if (!seen[index_of(g)]) throw ValidationError("phase map is missing " + to_string(g));
  }
  return out;
}

}  // namespace swimlab
