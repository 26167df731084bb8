#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace swimlab {

enum class MuscleGroupId { L1 = 0, L2, L3, R1, R2, R3 };
enum class Side { left, right };
enum class GaitMode { in_phase, sequential };

inline constexpr std::size_t kGroupCount = 6;
inline constexpr std::array<MuscleGroupId, kGroupCount> kAllGroups = {
    MuscleGroupId::L1, MuscleGroupId::L2, MuscleGroupId::L3,
    MuscleGroupId::R1, MuscleGroupId::R2, MuscleGroupId::R3};

constexpr std::size_t index_of(MuscleGroupId g) { return static_cast<std::size_t>(g); }
/// Axial position 0, 1, 2 (head to tail).
constexpr std::size_t position_of(MuscleGroupId g) { return index_of(g) % 3; }
constexpr Side side_of(MuscleGroupId g) { return index_of(g) < 3 ? Side::left : Side::right; }
/// The antagonist on the opposite side at the same axial position.
constexpr MuscleGroupId antagonist(MuscleGroupId g) {
  return static_cast<MuscleGroupId>((index_of(g) + 3) % kGroupCount);
}

std::string to_string(MuscleGroupId g);
/// Accepts "L1".."R3" (case-insensitive); throws ValidationError otherwise.
MuscleGroupId parse_group(std::string_view name);

std::string to_string(GaitMode mode);
GaitMode parse_gait(std::string_view name);

struct GroupExtent {
  double start = 0.0;  // axial fraction
  double end = 0.0;
};

/// Per-group unipolar sinusoid drive and the voltage-to-moment map.
///
/// V(t) = (A/2) (1 + sin(2 pi f t + phase)). The moment a group puts on the
/// spine is gain (V/A)^2, positive-y bending for left groups and negative for
/// right groups, applied as a couple across the group's extent.
struct ActuationProgram {
  double frequency = 2.05;             // Hz
  double amplitude_voltage = 6000.0;   // V
  std::array<double, kGroupCount> phase_deg{};
  std::array<GroupExtent, kGroupCount> extents{};
  std::array<double, kGroupCount> gain{};  // N m at full voltage

  double phase(MuscleGroupId g) const { return phase_deg[index_of(g)]; }
  const GroupExtent& extent(MuscleGroupId g) const { return extents[index_of(g)]; }
  double group_gain(MuscleGroupId g) const { return gain[index_of(g)]; }
};

/// Default HASEL slot extents for positions 1..3.
std::array<GroupExtent, 3> default_group_extents();

/// Moment at full voltage per HASEL; group gains default to this times the
/// HASEL count per side (3, 2, 2).
inline constexpr double kDefaultGainPerHasel = 0.1596755643;  // N m
std::array<double, kGroupCount> default_group_gains(double per_hasel = kDefaultGainPerHasel);

/// Throws ValidationError on bad fields; warns above 9 Hz.
void validate(const ActuationProgram& p);

double voltage_waveform(const ActuationProgram& p, MuscleGroupId group, double t);

/// M = group_gain (v / v_max)^2, signed by side. Throws on v < 0.
double moment_from_voltage(double v, double group_gain, double v_max, Side side);

/// Signed moment of one group at time t.
double group_moment(const ActuationProgram& p, MuscleGroupId group, double t);

/// Table I phasing. in_phase: L=0, R=180. sequential: L1=180, L2=L3=0 and R antagonistic.
ActuationProgram gait(GaitMode mode, double frequency);

/// Parses "L1=180,L2=0,..." (all six required) into a phase table.
std::array<double, kGroupCount> parse_phase_map(std::string_view text);

}  // namespace swimlab
