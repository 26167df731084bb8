// Calibrated-model runs compared with the published prototype measurements.
#include <gtest/gtest.h>

#include <map>

#include "swimlab/pipeline.hpp"

using namespace swimlab;

namespace {

const SwimMetrics& run(GaitChoice gait, double f) {
  static std::map<std::pair<int, double>, SwimMetrics> cache;
  const auto key = std::make_pair(static_cast<int>(gait), f);
  auto it = cache.find(key);
  if (it == cache.end()) {
    RunConfig c;
    c.actuation.gait = gait;
    c.actuation.frequency_hz = f;
    it = cache.emplace(key, run_simulation(c).analysis.metrics).first;
  }
  return it->second;
}

}  // namespace

TEST(PrototypeTargets, InPhaseFirstResonanceTailEnvelope) {
  EXPECT_NEAR(run(GaitChoice::in_phase, 2.05).caudal_deflection, 13.2e-3, 0.25 * 13.2e-3);
}

TEST(PrototypeTargets, InPhaseSecondResonanceTail) {
  const SwimMetrics& m = run(GaitChoice::in_phase, 8.05);
  EXPECT_NEAR(m.caudal_deflection, 3.25e-3, 0.25 * 3.25e-3);
  EXPECT_NEAR(m.caudal_velocity, 0.148, 0.25 * 0.148);
  EXPECT_EQ(m.mode_label, "In-phase f2");
}

TEST(PrototypeTargets, TailAmplitudeRatioBetweenResonances) {
  const double r = run(GaitChoice::in_phase, 2.05).caudal_deflection /
                   run(GaitChoice::in_phase, 8.05).caudal_deflection;
  EXPECT_NEAR(r, 13.2 / 3.25, 0.25 * 13.2 / 3.25);
}

TEST(PrototypeTargets, SequentialSecondResonanceThrust) {
  const SwimMetrics& m = run(GaitChoice::sequential, 8.05);
  EXPECT_NEAR(m.thrust, 7.2e-3, 0.30 * 7.2e-3);
  EXPECT_EQ(m.mode_label, "Sequential f2");
}

TEST(PrototypeTargets, FirstResonanceThrustAboveSecond) {
  EXPECT_GT(run(GaitChoice::in_phase, 2.05).thrust, run(GaitChoice::in_phase, 8.05).thrust);
}

TEST(PrototypeTargets, SequentialGaitDirections) {
  const SwimMetrics& a = run(GaitChoice::in_phase, 8.05);
  const SwimMetrics& s = run(GaitChoice::sequential, 8.05);
  EXPECT_GT(s.thrust, a.thrust);
  EXPECT_GE(s.traveling_index, 2.0 * a.traveling_index);
  EXPECT_GT(s.caudal_velocity, a.caudal_velocity);
}
