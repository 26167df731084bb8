#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "swimlab/actuation.hpp"
#include "swimlab/beam.hpp"

namespace swimlab {

struct FrfOptions {
  int repetitions = 4;
  double dt = 1e-3;             // s
  double record_length = 8.0;   // s per repetition; sets the bin width 1/record_length
  double impulse_moment = 1e-3; // N m, single-sample moment pulse of the group couple
  double max_frequency = 25.0;  // Hz, highest bin reported
  /// Gaussian noise added to the measured tail velocity (m/s); 0 keeps runs identical.
  double noise_std = 0.0;
  std::uint64_t seed = 1;
  std::array<GroupExtent, 3> extents = default_group_extents();
};

/// Tail-tip velocity per unit input moment, H1-averaged over repetitions.
struct Frf {
  MuscleGroupId group = MuscleGroupId::L1;
  std::vector<double> frequency_hz;
  std::vector<std::complex<double>> response;  // (m/s) / (N m)
  double bin_width_hz = 0.0;
};

Frf impulse_frf(const DiscreteBeam& beam, MuscleGroupId group, const FrfOptions& options = {});
/// Name-based overload; throws ValidationError for names outside L1..R3.
Frf impulse_frf(const DiscreteBeam& beam, std::string_view group, const FrfOptions& options = {});

/// Frequencies of the `count` lowest local maxima of |H| (excluding the DC bin).
std::vector<double> peak_frequencies(const Frf& frf, int count);

/// Frequency-domain transfer from a unit couple across `input` to the relative
/// slope (theta(end) - theta(start)) across `output`, in rad / (N m).
std::vector<std::complex<double>> couple_transfer(const DiscreteBeam& beam,
                                                  const GroupExtent& input,
                                                  const GroupExtent& output,
                                                  const std::vector<double>& frequency_hz);

}  // namespace swimlab
