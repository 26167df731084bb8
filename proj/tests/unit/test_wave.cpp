#include <gtest/gtest.h>

#include <cmath>
#include <complex>

#include "oracles.hpp"
#include "swimlab/diagnostics.hpp"
#include "swimlab/error.hpp"
#include "swimlab/wave.hpp"

using namespace swimlab;
using cd = std::complex<double>;

namespace {

constexpr double kTwoPi = 2.0 * oracle::kPi;

// 16 stations x = j/16, 128 samples over one period of a 1 Hz wave.
KinematicsField wave_field(const std::function<double(double, double)>& fn) {
  std::vector<double> x(16);
  for (std::size_t j = 0; j < 16; ++j) x[j] = static_cast<double>(j) / 16.0;
  return oracle::make_field(x, oracle::sample_times(128, 1.0 / 128.0), fn);
}

double ti(const KinematicsField& f) { return traveling_index(analytic_field(f, 1.0, 1.0)); }

}  // namespace

TEST(Analytic, CosineBecomesExponential) {
  const int n = 256;
  Eigen::VectorXd x(n);
  for (int i = 0; i < n; ++i) x[i] = std::cos(kTwoPi * 5.0 * i / n);
  const Eigen::VectorXcd z = analytic_signal(x);
  for (int i = 0; i < n; ++i) {
    EXPECT_NEAR(z[i].real(), x[i], 1e-15);
    EXPECT_NEAR(z[i].imag(), std::sin(kTwoPi * 5.0 * i / n), 1e-12);
  }
}

TEST(Analytic, ConstantHasNoQuadrature) {
  const Eigen::VectorXd x = Eigen::VectorXd::Constant(100, 2.5);
  const Eigen::VectorXcd z = analytic_signal(x);
  EXPECT_LT(z.imag().cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Analytic, ChirpEnvelopeNearUnity) {
  // slow chirp 20 -> 40 cycles per record; interior envelope stays near 1
  const int n = 4096;
  Eigen::VectorXd x(n);
  for (int i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / n;
    x[i] = std::cos(kTwoPi * (20.0 * t + 10.0 * t * t));
  }
  const Eigen::VectorXcd z = analytic_signal(x);
  for (int i = n / 8; i < 7 * n / 8; ++i) EXPECT_NEAR(std::abs(z[i]), 1.0, 0.05) << i;
}

TEST(TravelingIndex, PureTravelingWave) {
  const double k = kTwoPi;
  EXPECT_NEAR(ti(wave_field([&](double x, double t) { return std::cos(k * x - kTwoPi * t); })), 1.0,
              1e-3);
}

TEST(TravelingIndex, PureStandingWave) {
  const double k = kTwoPi;
  EXPECT_NEAR(ti(wave_field([&](double x, double t) {
                return std::sin(k * x + 0.3) * std::cos(kTwoPi * t);
              })),
              0.0, 1e-3);
}

class MixedWave : public ::testing::TestWithParam<double> {};

TEST_P(MixedWave, MatchesModeOracle) {
  // (1 + a) sin(kx) cos(wt) + cos(kx) sin(wt) has complex mode (1 + a) sin kx + i cos kx
  // up to a global phase.
  const double a = GetParam(), k = kTwoPi;
  const auto f = wave_field([&](double x, double t) {
    return (1 + a) * std::sin(k * x) * std::cos(kTwoPi * t) + std::cos(k * x) * std::sin(kTwoPi * t);
  });
  std::vector<cd> c;
  for (double x : f.stations) c.emplace_back((1 + a) * std::sin(k * x), std::cos(k * x));
  EXPECT_NEAR(ti(f), oracle::ti_of_mode(c), 1e-3);
}

INSTANTIATE_TEST_SUITE_P(Ratios, MixedWave, ::testing::Values(0.25, 1.0, 4.0));

TEST(TravelingIndex, InvariantUnderScaleShiftAndReversal) {
  const auto f = wave_field([](double x, double t) {
    return 1.5 * std::sin(kTwoPi * x) * std::cos(kTwoPi * t) + std::cos(kTwoPi * x) * std::sin(kTwoPi * t);
  });
  const double base = ti(f);

  KinematicsField scaled = f;
  scaled.deflection *= 1e-4;
  EXPECT_NEAR(ti(scaled), base, 1e-9);

  // quarter-period time shift: same field started later
  KinematicsField shifted = f;
  for (Eigen::Index i = 0; i < 128; ++i) shifted.deflection.row(i) = f.deflection.row((i + 32) % 128);
  EXPECT_NEAR(ti(shifted), base, 1e-9);

  KinematicsField reversed = f;
  reversed.deflection = f.deflection.rowwise().reverse().eval();
  EXPECT_NEAR(ti(reversed), base, 1e-9);
}

TEST(TravelingIndex, ModeOracleAgreesWithLibrary) {
  Eigen::VectorXcd m(10);
  std::vector<cd> c;
  for (int j = 0; j < 10; ++j) {
    m[j] = cd(std::sin(0.4 * j) + 0.1 * j, 0.3 * std::cos(0.9 * j));
    c.push_back(m[j]);
  }
  EXPECT_NEAR(traveling_index_of_mode(m), oracle::ti_of_mode(c), 1e-12);
  EXPECT_NEAR(traveling_index_of_mode(m * cd(0.0, 1.0)), oracle::ti_of_mode(c), 1e-12);
}

TEST(TravelingIndex, ZeroFieldRejected) {
  const auto f = wave_field([](double, double) { return 0.0; });
  EXPECT_THROW(ti(f), ValidationError);
}

TEST(TravelingIndex, WarnsForMultiModeField) {
  ScopedWarningCapture cap;
  // two unrelated waves of equal energy at different frequencies
  const auto f = wave_field([](double x, double t) {
    return std::sin(kTwoPi * x) * std::cos(kTwoPi * t) + std::cos(3 * kTwoPi * x) * std::sin(3 * kTwoPi * t);
  });
  const TravelingIndex d = traveling_index_detail(analytic_field(f, 1.0, 1.0));
  EXPECT_LT(d.energy_fraction, kDominantEnergyFraction);
  EXPECT_FALSE(cap.messages().empty());
}

TEST(Measurable, KeepsGaugeSpanAndTail) {
  const auto f = oracle::make_field(oracle::linspace(0, 1, 41), oracle::sample_times(4, 0.1),
                                    [](double x, double) { return x; });
  const KinematicsField m = measurable_stations(f);
  EXPECT_EQ(m.stations.size(), 32u);  // 0 .. 0.75 in 0.025 steps plus the tail
  EXPECT_DOUBLE_EQ(m.stations.back(), 1.0);
  EXPECT_DOUBLE_EQ(m.stations[30], 0.75);
  EXPECT_EQ(m.deflection(0, 31), 1.0);
}

TEST(TailMetrics, SinusoidPeaks) {
  const double f = 2.0, A = 0.03, dt = 1e-4;
  const auto fld = oracle::make_field({0.0, 1.0}, oracle::sample_times(20000, dt),
                                      [&](double x, double t) { return x * A * std::sin(kTwoPi * f * t); });
  const TailMetrics m = tail_metrics(fld, f, 1.0);
  EXPECT_NEAR(m.peak_deflection, A, 1e-9);
  EXPECT_NEAR(m.peak_velocity, A * kTwoPi * f, 1e-4 * A * kTwoPi * f);
}
