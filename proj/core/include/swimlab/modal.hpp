#pragma once

#include <vector>

#include <Eigen/Dense>

#include "swimlab/beam.hpp"

namespace swimlab {

struct ModalResult {
  std::vector<double> damped_frequencies_hz;    // ascending
  std::vector<double> undamped_frequencies_hz;
  std::vector<double> damping_ratios;
  /// Deflection shape at every station, max |value| = 1, tip value non-negative.
  std::vector<Eigen::VectorXd> mode_shapes;
  double max_residual = 0.0;  // relative residual of the quadratic eigenproblem
};

/// Solves the damped eigenproblem of the beam (classical modes of the Rayleigh-
/// damped operators) and returns the
/// lowest `count` underdamped modes. Throws ConvergenceError if the solver fails
/// or the residual exceeds 1e-6.
ModalResult modal_analysis(const DiscreteBeam& beam, int count = 5);

}  // namespace swimlab
