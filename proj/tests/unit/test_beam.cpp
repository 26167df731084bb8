#include <gtest/gtest.h>

#include <cmath>

#include <Eigen/Eigenvalues>

#include "oracles.hpp"
#include "swimlab/beam.hpp"
#include "swimlab/error.hpp"
#include "swimlab/modal.hpp"

using namespace swimlab;

namespace {

DiscreteBeam default_beam(int n = 41) {
  return assemble(build_geometry(default_geometry_config()), default_material(), n);
}

bool is_spd(const Eigen::MatrixXd& A) {
  if ((A - A.transpose()).norm() > 1e-12 * A.norm()) return false;
  Eigen::LLT<Eigen::MatrixXd> llt(A);
  return llt.info() == Eigen::Success;
}

}  // namespace

TEST(Assemble, OperatorsSymmetricPositiveDefinite) {
  const auto u = oracle::uniform_beam();
  const DiscreteBeam b = assemble(u.geometry, u.material, 40);
  EXPECT_TRUE(is_spd(b.stiffness));
  EXPECT_TRUE(is_spd(b.mass));
  const DiscreteBeam d = default_beam();
  EXPECT_TRUE(is_spd(d.stiffness));
  EXPECT_TRUE(is_spd(d.mass));
}

TEST(Assemble, ClampRemovesHeadDofs) {
  const DiscreteBeam b = default_beam(41);
  EXPECT_EQ(b.w_dof(0), -1);
  EXPECT_EQ(b.slope_dof(0), -1);
  EXPECT_EQ(b.dof_count(), 2 * 40);
}

TEST(Assemble, DryAndSubmergedMassEqualWithoutAddedMass) {
  const BodyGeometry g = build_geometry(default_geometry_config());
  MaterialSpec m = default_material();
  m.added_mass_coefficient = 0.0;
  const DiscreteBeam b = assemble(g, m, 41);
  EXPECT_EQ((b.mass - b.structural_mass).cwiseAbs().maxCoeff(), 0.0);
}

TEST(Assemble, TooFewStationsRefused) {
  const BodyGeometry g = build_geometry(default_geometry_config());
  EXPECT_THROW(assemble(g, default_material(), 19), ValidationError);
  EXPECT_NO_THROW(assemble(g, default_material(), 20));
}

TEST(Assemble, RayleighDampingHitsTargetAtFirstTwoModes) {
  const DiscreteBeam b = default_beam();
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(b.stiffness, b.mass);
  const double w1 = std::sqrt(es.eigenvalues()[0]), w2 = std::sqrt(es.eigenvalues()[1]);
  const double zeta = b.material.structural_damping_ratio;
  EXPECT_NEAR(b.rayleigh_alpha / (2 * w1) + b.rayleigh_beta * w1 / 2, zeta, 1e-9);
  EXPECT_NEAR(b.rayleigh_alpha / (2 * w2) + b.rayleigh_beta * w2 / 2, zeta, 1e-9);
  EXPECT_NEAR((b.damping - b.rayleigh_alpha * b.mass - b.rayleigh_beta * b.stiffness).norm(), 0.0,
              1e-12 * b.damping.norm());
}

TEST(Assemble, StaticTipLoadMatchesCantileverDeflection) {
  // P L^3 / (3 EI) for a uniform clamped-free beam (exact for Hermite elements).
  const auto u = oracle::uniform_beam();
  const DiscreteBeam b = assemble(u.geometry, u.material, 21);
  Eigen::VectorXd f = Eigen::VectorXd::Zero(b.dof_count());
  f[b.w_dof(20)] = 1e-3;
  const Eigen::VectorXd x = b.stiffness.ldlt().solve(f);
  const double L = u.geometry.body_length;
  EXPECT_NEAR(x[b.w_dof(20)], 1e-3 * L * L * L / (3.0 * u.EI), 1e-9 * 1e-3 * L * L * L / u.EI);
}

TEST(Modal, UniformCantileverMatchesAnalytic) {
  const auto u = oracle::uniform_beam();
  const DiscreteBeam b = assemble(u.geometry, u.material, 41);
  const ModalResult r = modal_analysis(b, 5);
  for (int n = 1; n <= 3; ++n) {
    const double f = oracle::cantilever_hz(n, u.EI, u.mu, u.geometry.body_length);
    EXPECT_NEAR(r.undamped_frequencies_hz[n - 1], f, 0.005 * f) << "mode " << n;
  }
}

TEST(Modal, DampedFrequencyRelation) {
  const ModalResult r = modal_analysis(default_beam(), 5);
  ASSERT_GE(r.damped_frequencies_hz.size(), 5u);
  for (std::size_t i = 0; i < r.damped_frequencies_hz.size(); ++i) {
    const double z = r.damping_ratios[i];
    EXPECT_NEAR(r.damped_frequencies_hz[i], r.undamped_frequencies_hz[i] * std::sqrt(1 - z * z),
                1e-9 * r.undamped_frequencies_hz[i]);
  }
}

TEST(Modal, AscendingUnitNormalizedShapes) {
  const DiscreteBeam b = default_beam();
  const ModalResult r = modal_analysis(b, 5);
  for (std::size_t i = 1; i < r.damped_frequencies_hz.size(); ++i)
    EXPECT_GT(r.damped_frequencies_hz[i], r.damped_frequencies_hz[i - 1]);
  for (const auto& s : r.mode_shapes) {
    EXPECT_NEAR(s.cwiseAbs().maxCoeff(), 1.0, 1e-12);
    EXPECT_EQ(s[0], 0.0);
    EXPECT_EQ(s.size(), static_cast<Eigen::Index>(b.station_count()));
  }
  EXPECT_LT(r.max_residual, 1e-6);
}

TEST(Modal, AddedMassLowersEveryFrequency) {
  const BodyGeometry g = build_geometry(default_geometry_config());
  MaterialSpec dry = default_material();
  dry.added_mass_coefficient = 0.0;
  const ModalResult a = modal_analysis(assemble(g, dry, 41), 5);
  const ModalResult w = modal_analysis(assemble(g, default_material(), 41), 5);
  for (std::size_t i = 0; i < 5; ++i)
    EXPECT_LT(w.undamped_frequencies_hz[i], a.undamped_frequencies_hz[i]) << i;
}

TEST(Modal, GridRefinementChangesF1ByUnderOnePercent) {
  const double f40 = modal_analysis(default_beam(41), 2).damped_frequencies_hz[0];
  const double f80 = modal_analysis(default_beam(81), 2).damped_frequencies_hz[0];
  EXPECT_LT(std::abs(f80 - f40) / f80, 0.01);
}

TEST(Modal, CalibratedSwimmerFrequencies) {
  const ModalResult r = modal_analysis(default_beam(), 2);
  EXPECT_NEAR(r.damped_frequencies_hz[0], 1.9, 0.15 * 1.9);
  EXPECT_NEAR(r.damped_frequencies_hz[1], 7.0, 0.15 * 7.0);
}
