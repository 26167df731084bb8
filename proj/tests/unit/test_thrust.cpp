#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "oracles.hpp"
#include "swimlab/error.hpp"
#include "swimlab/thrust.hpp"

using namespace swimlab;

namespace {

constexpr double kDt = 1e-3;

std::vector<double> record(double f, double periods, const std::function<double(double)>& fx,
                           std::vector<double>* times) {
  *times = oracle::sample_times(static_cast<std::size_t>(std::lround(periods / f / kDt)), kDt);
  std::vector<double> v;
  for (double t : *times) v.push_back(fx(t));
  return v;
}

double valid_max_abs(const ThrustSeries& s, double offset = 0.0) {
  double m = 0.0;
  for (std::size_t i = s.valid_begin(); i < s.valid_end(); ++i)
    m = std::max(m, std::abs(s.thrust[i] - offset));
  return m;
}

double bisect_speed(double thrust, const DragModel& d, double L) {
  double lo = 1e-9, hi = 10.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (oracle::drag_newton(mid, d.wetted_area, d.cross_section_area, d.cd, L) < thrust ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST(Window, BlackmanHarrisCoefficients) {
  const std::size_t n = 101;
  const auto w = blackman_harris(n);
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += oracle::blackman_harris(i, n);
  for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(w[i], oracle::blackman_harris(i, n) / sum, 1e-15);
  EXPECT_NEAR(std::accumulate(w.begin(), w.end(), 0.0), 1.0, 1e-14);
  EXPECT_NEAR(oracle::blackman_harris(0, n), 6e-5, 1e-12);  // a0 - a1 + a2 - a3
  EXPECT_NEAR(oracle::blackman_harris(50, n), 1.0, 1e-12);
}

TEST(Filter, ConstantPassesExactly) {
  std::vector<double> t;
  const auto fx = record(2.0, 10, [](double) { return 5e-3; }, &t);
  const ThrustSeries s = thrust_timeseries(t, fx, 2.0);
  EXPECT_LT(valid_max_abs(s, 5e-3), 1e-9 * 5e-3);
  EXPECT_NEAR(steady_state_thrust(s).thrust, 5e-3, 1e-12);
}

TEST(Filter, AllOnesExact) {
  std::vector<double> t;
  const auto fx = record(8.05, 12, [](double) { return 1.0; }, &t);
  const ThrustSeries s = thrust_timeseries(t, fx, 8.05);
  EXPECT_LT(valid_max_abs(s, 1.0), 1e-13);
}

TEST(Filter, SuppressesDriveOscillation) {
  const double f = 2.05, A = 0.02;
  std::vector<double> t;
  const auto fx = record(f, 12, [&](double x) { return A * std::sin(2 * oracle::kPi * f * x); }, &t);
  EXPECT_LT(valid_max_abs(thrust_timeseries(t, fx, f)), 1e-3 * A);
  // harmonics too
  const auto fx2 =
      record(f, 12, [&](double x) { return A * std::cos(2 * oracle::kPi * 2 * f * x + 0.4); }, &t);
  EXPECT_LT(valid_max_abs(thrust_timeseries(t, fx2, f)), 1e-3 * A);
}

TEST(Filter, Superposition) {
  const double f = 8.05;
  std::vector<double> t;
  const auto a = record(f, 10, [](double x) { return std::sin(3 * x) + 0.2; }, &t);
  const auto b = record(f, 10, [](double x) { return std::cos(17 * x * x); }, &t);
  std::vector<double> ab(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) ab[i] = 2 * a[i] - 0.5 * b[i];
  const ThrustSeries sa = thrust_timeseries(t, a, f), sb = thrust_timeseries(t, b, f),
                     sab = thrust_timeseries(t, ab, f);
  for (std::size_t i = 0; i < t.size(); ++i)
    EXPECT_NEAR(sab.thrust[i], 2 * sa.thrust[i] - 0.5 * sb.thrust[i], 1e-12);
}

TEST(Filter, ValidRegionExcludesHalfWindow) {
  const double f = 2.0;
  std::vector<double> t;
  const auto fx = record(f, 8, [](double) { return 1.0; }, &t);
  const ThrustSeries s = thrust_timeseries(t, fx, f);
  const std::size_t half = 1000;  // four 500-sample periods, 2001 taps
  EXPECT_EQ(s.valid_begin(), half);
  EXPECT_EQ(s.valid_end(), t.size() - half);
}

TEST(Filter, RejectsShortRecords) {
  std::vector<double> t;
  const auto fx = record(2.0, 5.5, [](double) { return 1.0; }, &t);
  EXPECT_THROW(thrust_timeseries(t, fx, 2.0), ValidationError);
  EXPECT_THROW(thrust_timeseries(t, fx, 0.0), ValidationError);
}

TEST(Steady, MeanOfOscillatingThrust) {
  const double f = 8.05;
  std::vector<double> t;
  const auto fx = record(f, 30, [&](double x) {
    return 7.9e-3 + 0.03 * std::sin(2 * oracle::kPi * 2 * f * x) + 0.01 * std::sin(2 * oracle::kPi * f * x);
  }, &t);
  const SteadyThrust s = steady_state_thrust(thrust_timeseries(t, fx, f));
  EXPECT_NEAR(s.thrust, 7.9e-3, 1e-6);
  EXPECT_TRUE(s.stationary);
}

TEST(Steady, RampIsNotStationary) {
  const double f = 2.0;
  std::vector<double> t;
  const auto fx = record(f, 30, [](double x) { return 1e-3 * std::exp(0.3 * x); }, &t);  // 15% growth per period
  const SteadyThrust s = steady_state_thrust(thrust_timeseries(t, fx, f));
  EXPECT_FALSE(s.stationary);
  EXPECT_GT(s.slope_per_period, kStationarySlopePerPeriod);
}

TEST(Steady, FractionValidated) {
  std::vector<double> t;
  const auto fx = record(2.0, 10, [](double) { return 1.0; }, &t);
  const ThrustSeries s = thrust_timeseries(t, fx, 2.0);
  EXPECT_THROW(steady_state_thrust(s, 0.0), ValidationError);
  EXPECT_THROW(steady_state_thrust(s, 1.5), ValidationError);
}

TEST(Laebt, SquareOfVelocityRatio) {
  EXPECT_DOUBLE_EQ(laebt_thrust_ratio(148e-3, 296e-3), 4.0);
  EXPECT_THROW(laebt_thrust_ratio(0.0, 1.0), ValidationError);
  EXPECT_THROW(laebt_thrust_ratio(1.0, -1.0), ValidationError);
}

TEST(Laebt, ComparisonFlagsSurplus) {
  const LaebtComparison c = compare_with_laebt(0.1, 1e-3, 0.2, 6e-3);
  EXPECT_DOUBLE_EQ(c.predicted_ratio, 4.0);
  EXPECT_NEAR(c.measured_ratio, 6.0, 1e-12);
  EXPECT_TRUE(c.exceeds_prediction);
  EXPECT_NEAR(c.surplus, 2.0, 1e-12);
  const LaebtComparison d = compare_with_laebt(0.1, 1e-3, 0.2, 3e-3);
  EXPECT_FALSE(d.exceeds_prediction);
  EXPECT_THROW(compare_with_laebt(0.1, 0.0, 0.2, 1e-3), ValidationError);
}

TEST(Drag, FrictionLaws) {
  DragModel d = drag_model_for(build_geometry(default_geometry_config()));
  const double re = 0.2 * 0.35 / d.kinematic_viscosity;
  EXPECT_NEAR(friction_coefficient(d, 0.2, 0.35), 0.074 * std::pow(re, -0.2), 1e-15);
  d.friction_law = FrictionLaw::seventh_power_local;
  EXPECT_NEAR(friction_coefficient(d, 0.2, 0.35), 0.027 * std::pow(re, -1.0 / 7.0), 1e-15);
  EXPECT_EQ(parse_friction_law(to_string(FrictionLaw::seventh_power_local)),
            FrictionLaw::seventh_power_local);
  EXPECT_THROW(parse_friction_law("blasius"), ValidationError);
}

TEST(Drag, ForceMatchesOracle) {
  const DragModel d = drag_model_for(build_geometry(default_geometry_config()));
  for (double v : {0.05, 0.16, 0.4})
    EXPECT_NEAR(drag_force(d, v, 0.35), oracle::drag_newton(v, d.wetted_area, d.cross_section_area, d.cd, 0.35),
                1e-15);
}

TEST(Speed, SolvesDragBalance) {
  const DragModel d = drag_model_for(build_geometry(default_geometry_config()));
  const SwimSpeed s = free_swim_speed(7.2e-3, d, 0.35);
  EXPECT_NEAR(s.speed, bisect_speed(7.2e-3, d, 0.35), 1e-6);
  EXPECT_LT(std::abs(s.residual), 1e-9);
  EXPECT_NEAR(s.speed_bl, s.speed / 0.35, 1e-12);
}

TEST(Speed, SequentialThrustGivesReportedSpeed) {
  const DragModel d = drag_model_for(build_geometry(default_geometry_config()));
  EXPECT_NEAR(free_swim_speed(7.2e-3, d, 0.35).speed_bl, 0.39, 0.2 * 0.39);
}

TEST(Speed, MonotoneAndSubQuadratic) {
  const DragModel d = drag_model_for(build_geometry(default_geometry_config()));
  double prev = 0.0;
  for (double T : {1e-3, 2e-3, 5e-3, 1e-2, 5e-2}) {
    const double v = free_swim_speed(T, d, 0.35).speed;
    EXPECT_GT(v, prev);
    prev = v;
  }
  // drag ~ v^1.8 (friction) .. v^2 (form): quadrupled thrust gives 2 .. 2.3x speed
  const double r = free_swim_speed(2.8e-2, d, 0.35).speed / free_swim_speed(7e-3, d, 0.35).speed;
  EXPECT_GT(r, 2.0);
  EXPECT_LT(r, 2.3);
}

TEST(Speed, RejectsUnreachableThrust) {
  const DragModel d = drag_model_for(build_geometry(default_geometry_config()));
  EXPECT_THROW(free_swim_speed(0.0, d, 0.35), ValidationError);
  EXPECT_THROW(free_swim_speed(1e6, d, 0.35), ConvergenceError);
}
