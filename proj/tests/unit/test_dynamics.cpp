#include <gtest/gtest.h>

#include <cmath>
#include <complex>

#include <Eigen/Eigenvalues>

#include "oracles.hpp"
#include "swimlab/dynamics.hpp"
#include "swimlab/error.hpp"
#include "swimlab/modal.hpp"

using namespace swimlab;

namespace {

DiscreteBeam default_beam() {
  return assemble(build_geometry(default_geometry_config()), default_material(), 41);
}

/// Peak-to-peak / 2 of the tip deflection over the last `periods` periods.
double tail_amplitude(const SimulationResult& r, double f, double periods = 2.0) {
  const auto& k = r.kinematics;
  const auto n = static_cast<Eigen::Index>(k.times.size());
  const auto m = static_cast<Eigen::Index>(std::lround(periods / (f * k.dt())));
  const Eigen::VectorXd tip = k.deflection.col(k.deflection.cols() - 1).tail(m);
  (void)n;
  return 0.5 * (tip.maxCoeff() - tip.minCoeff());
}

}  // namespace

TEST(Simulate, ZeroActuationStaysAtRest) {
  const DiscreteBeam b = default_beam();
  ActuationProgram p = gait(GaitMode::in_phase, 2.05);
  p.gain.fill(0.0);
  SimulationOptions o;
  o.duration = 5.0;
  const SimulationResult r = simulate(b, p, o);
  EXPECT_EQ(r.kinematics.deflection.cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ(r.kinematics.source, FieldSource::simulated);
}

TEST(Simulate, ClampDeflectionIdenticallyZero) {
  const DiscreteBeam b = default_beam();
  SimulationOptions o;
  o.duration = 6.0;
  const SimulationResult r = simulate(b, gait(GaitMode::sequential, 8.05), o);
  for (Eigen::Index i = 0; i < r.kinematics.deflection.rows(); ++i)
    ASSERT_EQ(r.kinematics.deflection(i, 0), 0.0) << "step " << i;
  EXPECT_TRUE(r.kinematics.deflection.allFinite());
}

TEST(Simulate, FreeVibrationConservesEnergy) {
  const auto u = oracle::uniform_beam();
  const DiscreteBeam b = assemble(u.geometry, u.material, 30);
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(b.stiffness, b.mass);
  const double w1 = std::sqrt(es.eigenvalues()[0]);
  const double period = 2.0 * oracle::kPi / w1;

  BeamState s0;
  s0.displacement = es.eigenvectors().col(0);
  s0.displacement *= 1e-3 / s0.displacement.cwiseAbs().maxCoeff();
  s0.velocity = Eigen::VectorXd::Zero(b.dof_count());
  auto energy = [&](const Eigen::VectorXd& x, const Eigen::VectorXd& v) {
    return 0.5 * v.dot(b.mass * v) + 0.5 * x.dot(b.stiffness * x);
  };
  const double e0 = energy(s0.displacement, s0.velocity);
  EXPECT_NEAR(mechanical_energy(b, s0), e0, 1e-12 * e0);

  double worst = 0.0;
  FluidLoads fluid;
  fluid.reactive_thrust_coefficient = 0.0;
  integrate(
      b, [](double, Eigen::Ref<Eigen::VectorXd>) {}, 10.0 * period, period / 200.0, fluid,
      [&](long, double, const Eigen::VectorXd& x, const Eigen::VectorXd& v, const Eigen::VectorXd&) {
        worst = std::max(worst, std::abs(energy(x, v) - e0) / e0);
      },
      s0);
  EXPECT_LT(worst, 1e-3);
}

TEST(Simulate, ResonantForcingBeatsHalfFrequency) {
  const DiscreteBeam b = default_beam();
  const double f1 = modal_analysis(b, 1).damped_frequencies_hz[0];
  SimulationOptions o;
  o.duration = 12.0 / (0.5 * f1);
  const double at_f1 = tail_amplitude(simulate(b, gait(GaitMode::in_phase, f1), o), f1);
  const double at_half = tail_amplitude(simulate(b, gait(GaitMode::in_phase, 0.5 * f1), o), 0.5 * f1);
  EXPECT_GT(at_f1, at_half);
}

TEST(Simulate, SteadyResponsePowerAtDriveFrequency) {
  const DiscreteBeam b = default_beam();
  const double f = 2.05;
  SimulationOptions o;
  o.duration = 20.0;
  const SimulationResult r = simulate(b, gait(GaitMode::in_phase, f), o);
  const auto& k = r.kinematics;
  // 20 whole periods at the end of the record (steady by then)
  const std::size_t m = static_cast<std::size_t>(std::lround(20.0 / (f * k.dt())));
  const std::size_t n = k.times.size();
  std::vector<double> x(m);
  double mean = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    x[i] = k.deflection(static_cast<Eigen::Index>(n - m + i), k.deflection.cols() - 1);
    mean += x[i] / static_cast<double>(m);
  }
  double total = 0.0;
  for (double& v : x) total += (v -= mean) * v;
  // Parseval: bin 20 and its mirror hold |X|^2 * 2 / m of the power
  std::complex<double> X = 0.0;
  for (std::size_t i = 0; i < m; ++i)
    X += x[i] * std::polar(1.0, -2.0 * oracle::kPi * 20.0 * static_cast<double>(i) / static_cast<double>(m));
  const double at_f = 2.0 * std::norm(X) / static_cast<double>(m);
  EXPECT_GE(at_f / total, 0.99);
}

TEST(Simulate, HarmonicSolutionMatchesSteadyTimeResponse) {
  const DiscreteBeam b = default_beam();
  const ActuationProgram p = gait(GaitMode::sequential, 8.05);
  SimulationOptions o;
  o.duration = 6.0;
  const double sim = tail_amplitude(simulate(b, p, o), p.frequency);
  const Eigen::VectorXcd W = harmonic_response(b, p);
  EXPECT_NEAR(sim, std::abs(W[W.size() - 1]), 0.01 * sim);
}

TEST(Simulate, SamplingRulesEnforced) {
  const DiscreteBeam b = default_beam();
  SimulationOptions o;
  o.dt = 1.0 / (50.0 * 8.05) * 1.5;
  o.duration = 5.0;
  EXPECT_THROW(simulate(b, gait(GaitMode::in_phase, 8.05), o), ValidationError);
  o.dt = 1e-3;
  o.duration = 9.0 / 2.05;
  EXPECT_THROW(simulate(b, gait(GaitMode::in_phase, 2.05), o), ValidationError);
}

TEST(Simulate, NonFiniteStateReportsFirstBadStep) {
  const DiscreteBeam b = default_beam();
  FluidLoads fluid;
  try {
    integrate(
        b,
        [&](double t, Eigen::Ref<Eigen::VectorXd> f) {
          if (t > 0.0495) f[0] = std::nan("");
        },
        1.0, 1e-3, fluid, [](long, double, const auto&, const auto&, const auto&) {});
    FAIL() << "expected DivergenceError";
  } catch (const DivergenceError& e) {
    EXPECT_EQ(e.step(), 50);
  }
}

TEST(ActuationLoads, GroupCoupleBendsUniformBeamExactly) {
  // Static couple M over [a, b]: curvature M/EI on the span, so
  // w(L) = M/EI ((b - a) L - (b^2 - a^2) / 2).
  const auto u = oracle::uniform_beam();
  const DiscreteBeam beam = assemble(u.geometry, u.material, 41);
  ActuationProgram p = gait(GaitMode::in_phase, 2.0);
  p.gain = {0.2, 0, 0, 0, 0, 0};
  p.extents[0] = {0.13, 0.41};
  Eigen::VectorXd f = Eigen::VectorXd::Zero(beam.dof_count());
  add_actuation_loads(beam, p, 1.0 / (4.0 * p.frequency), f);  // V = A, M = gain
  const Eigen::VectorXd x = beam.stiffness.ldlt().solve(f);
  const double L = u.geometry.body_length, a = 0.13 * L, bb = 0.41 * L;
  const double expected = 0.2 / u.EI * ((bb - a) * L - 0.5 * (bb * bb - a * a));
  EXPECT_NEAR(beam.station_deflection(x).tail(1)[0], expected, 1e-9 * std::abs(expected));
  EXPECT_GT(expected, 0.0);
}

TEST(ActuationLoads, AntagonistsCancelStatically) {
  const DiscreteBeam beam = default_beam();
  ActuationProgram p = gait(GaitMode::in_phase, 2.0);
  p.phase_deg = {0, 0, 0, 0, 0, 0};
  Eigen::VectorXd f = Eigen::VectorXd::Zero(beam.dof_count());
  add_actuation_loads(beam, p, 0.123, f);
  EXPECT_LT(f.cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Simulate, MountRecordAlignedWithKinematics) {
  const DiscreteBeam b = default_beam();
  SimulationOptions o;
  o.duration = 5.0;
  const SimulationResult r = simulate(b, gait(GaitMode::in_phase, 2.05), o);
  EXPECT_EQ(r.mount.times, r.kinematics.times);
  EXPECT_EQ(r.mount.fx.size(), r.mount.times.size());
  EXPECT_EQ(static_cast<std::size_t>(r.tail_velocity.size()), r.mount.times.size());
  for (double v : r.mount.fx) EXPECT_TRUE(std::isfinite(v));
}
