#pragma once

#include "swimlab/beam.hpp"
#include "swimlab/dynamics.hpp"
#include "swimlab/geometry.hpp"

namespace swimlab {

/// Measured anchors the simulator is tuned against.
struct CalibrationTargets {
  double f1_hz = 1.9;                // lowest damped natural frequency
  double f2_hz = 7.0;                // second damped natural frequency
  double drive_hz = 8.05;            // in-phase operating point used for amplitude/thrust
  double tail_amplitude_m = 3.25e-3; // in-phase tail deflection at drive_hz
  double thrust_n = 5.0e-3;          // in-phase steady thrust at drive_hz
};

struct CalibrationResult {
  MaterialSpec material;
  double gain_per_hasel = 0.0;
  double reactive_thrust_coefficient = 0.0;
  double f1_hz = 0.0;
  double f2_hz = 0.0;
};

/// Fits spine_modulus and actuated_stiffness_factor so the two lowest damped
/// frequencies equal f1 and f2. The frequency ratio depends only on the
/// stiffening factor (bisection); the modulus then scales both frequencies.
/// Throws ValidationError if the ratio is outside what the factor can reach.
MaterialSpec calibrate_frequencies(const BodyGeometry& geometry, MaterialSpec material,
                                   int n_stations, double f1_hz, double f2_hz);

/// Frequencies, then muscle gain (in-phase tail amplitude at drive_hz), then the
/// reactive thrust coefficient (in-phase mean thrust at drive_hz).
CalibrationResult calibrate(const BodyGeometry& geometry, const MaterialSpec& material,
                            const FluidLoads& fluid, int n_stations,
                            const CalibrationTargets& targets = {});

/// Period-averaged axial fluid force for the harmonic free-DOF response
/// u(t) = Re(U e^{i omega t}).
double mean_axial_force(const DiscreteBeam& beam, const FluidLoads& fluid,
                        const Eigen::VectorXcd& response, double omega, int samples = 256);

}  // namespace swimlab
