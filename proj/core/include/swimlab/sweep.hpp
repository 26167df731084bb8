#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "swimlab/config.hpp"
#include "swimlab/wave.hpp"

namespace swimlab {

struct ParameterSpace {
  std::vector<SweepParameter> parameters;

  /// Product of the value counts (1 for an empty space).
  std::size_t size() const;
  /// Parameter values of grid point `index` (last parameter varies fastest).
  std::vector<double> point(std::size_t index) const;
  /// Throws ValidationError for empty value lists or duplicate names.
  void validate() const;
};

struct PointResult {
  std::size_t index = 0;
  std::vector<double> values;
  bool failed = false;
  std::string error;
  double objective = 0.0;
  SwimMetrics metrics;
};

struct SweepResult {
  std::vector<std::string> parameter_names;
  std::vector<PointResult> points;  // ordered by grid index
  std::vector<std::size_t> ranking; // positions in `points`, best first, failures excluded
  std::size_t grid_size = 0;
  std::size_t failures = 0;
  std::string strategy;            // "exhaustive" or "coordinate_descent"
  std::string grid_hash;
  std::string config_hash;
  std::uint64_t seed = 0;
  std::string model_version;
};

/// Objective value of a metrics row (larger is better).
double objective_value(Objective objective, const SwimMetrics& m);

/// Simulates one parameter assignment on top of `base`. Failures (divergence,
/// invalid geometry) are captured in the result, never thrown.
PointResult evaluate_point(const RunConfig& base, const std::vector<SweepParameter>& parameters,
                           const std::vector<double>& values, Objective objective);

using PointEvaluator = std::function<PointResult(const std::vector<double>& values)>;

struct SweepOptions {
  std::size_t budget = 10000;  // maximum evaluations
  unsigned workers = 1;        // 0: hardware concurrency
  /// Coordinate-descent start, one value index per parameter (default all 0).
  std::vector<std::size_t> start;
};

inline constexpr std::size_t kExhaustiveLimit = 10000;

/// Exhaustive grid evaluation for up to 1e4 points (refused when over budget),
/// coordinate descent from the first grid values otherwise. Results are merged
/// by grid index, so the outcome does not depend on the worker count.
SweepResult grid_sweep(const ParameterSpace& space, const PointEvaluator& evaluate,
                       const SweepOptions& options);
SweepResult grid_sweep(const RunConfig& base, const ParameterSpace& space, Objective objective,
                       const SweepOptions& options);

struct PhaseSearchResult {
  SweepResult sweep;          // parameters phase.L1, phase.L3 (L2 fixed at 0)
  ActuationProgram best;
  std::vector<PointResult> top;  // best first, at most top_k
};

/// Left-side phases on a `resolution` grid with L2 held at 0 (a common shift is
/// only a time shift); right groups locked antagonistic. Ranked by steady thrust.
PhaseSearchResult phase_search(const RunConfig& base, double frequency_hz, double resolution_deg,
                               std::size_t top_k, const SweepOptions& options);

}  // namespace swimlab
