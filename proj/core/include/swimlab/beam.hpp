#pragma once

#include <vector>

#include <Eigen/Dense>

#include "swimlab/geometry.hpp"

namespace swimlab {

struct AssemblyOptions {
  /// Stations with x <= clamp_length_fraction are rigidly held (x = 0 always is).
  double clamp_length_fraction = 0.0;
};

/// Clamped-free Euler-Bernoulli beam on a uniform axial grid, discretized with
/// Hermite cubic elements. Each station carries a deflection and a slope DOF;
/// the operators below act on the free DOFs only, ordered [w, theta] per station.
struct DiscreteBeam {
  BodyGeometry geometry;
  MaterialSpec material;
  std::vector<double> stations;  // axial fractions
  double element_length = 0.0;   // m
  double clamp_length_fraction = 0.0;

  Eigen::MatrixXd mass;             // structural + added mass, kg
  Eigen::MatrixXd structural_mass;  // dry, kg
  Eigen::MatrixXd stiffness;        // N/m
  Eigen::MatrixXd damping;          // N s/m, Rayleigh alpha M + beta K
  double rayleigh_alpha = 0.0;
  double rayleigh_beta = 0.0;

  /// Global DOF index (2 * station + {0: w, 1: theta}) -> free index, or -1.
  std::vector<int> free_index;
  /// Mass and stiffness rows of the constrained DOFs (for mount reactions),
  /// columns over the free DOFs.
  Eigen::MatrixXd clamp_mass_rows;
  Eigen::MatrixXd clamp_stiffness_rows;
  std::vector<int> clamp_dofs;  // global indices of constrained DOFs

  std::size_t station_count() const { return stations.size(); }
  Eigen::Index dof_count() const { return stiffness.rows(); }
  int w_dof(std::size_t station) const { return free_index[2 * station]; }
  int slope_dof(std::size_t station) const { return free_index[2 * station + 1]; }

  /// Deflection at every station (clamped stations read zero).
  Eigen::VectorXd station_deflection(const Eigen::Ref<const Eigen::VectorXd>& u) const;
  /// Slope at every station.
  Eigen::VectorXd station_slope(const Eigen::Ref<const Eigen::VectorXd>& u) const;

  /// Generalized load of an external point moment at axial fraction x (consistent
  /// Hermite load, exact for any x). Accumulates into `load`.
  void add_point_moment(double x, double moment, Eigen::Ref<Eigen::VectorXd> load) const;
};

inline constexpr int kMinStations = 20;

/// Throws ValidationError if n_stations < 20 and Error(internal) if the
/// operators are not positive definite.
DiscreteBeam assemble(const BodyGeometry& g, const MaterialSpec& m, int n_stations,
                      const AssemblyOptions& options = {});

/// Lowest undamped circular frequencies, rad/s (generalized symmetric eigensolve).
Eigen::VectorXd undamped_omegas(const Eigen::MatrixXd& stiffness, const Eigen::MatrixXd& mass,
                                int count);

}  // namespace swimlab
