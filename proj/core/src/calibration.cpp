#include "swimlab/calibration.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "swimlab/error.hpp"
#include "swimlab/modal.hpp"

namespace swimlab {
namespace {

double frequency_ratio(const BodyGeometry& g, MaterialSpec m, int n, double factor) {
  m.actuated_stiffness_factor = factor;
  const DiscreteBeam b = assemble(g, m, n);
  const Eigen::VectorXd w = undamped_omegas(b.stiffness, b.mass, 2);
  return w[1] / w[0];
}

}  // namespace

MaterialSpec calibrate_frequencies(const BodyGeometry& geometry, MaterialSpec material,
                                   int n_stations, double f1_hz, double f2_hz) {
  if (!(f1_hz > 0.0) || !(f2_hz > f1_hz))
    throw ValidationError("calibration needs 0 < f1 < f2");
  const double target = f2_hz / f1_hz;
  // Rayleigh damping is fit to equal ratios on the two modes, so the damped
  // ratio equals the undamped one.
  double lo = 0.2, hi = 20.0;
  double r_lo = frequency_ratio(geometry, material, n_stations, lo);
  double r_hi = frequency_ratio(geometry, material, n_stations, hi);
  if ((target - r_lo) * (target - r_hi) > 0.0) {
    std::ostringstream os;
    os << "frequency ratio " << target << " outside the reachable range [" << std::min(r_lo, r_hi)
       << ", " << std::max(r_lo, r_hi) << "]";
    throw ValidationError(os.str());
  }
  for (int it = 0; it < 80 && hi - lo > 1e-10 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double r_mid = frequency_ratio(geometry, material, n_stations, mid);
    if ((target - r_lo) * (target - r_mid) <= 0.0) {
      hi = mid;
    } else {
      lo = mid;
      r_lo = r_mid;
    }
  }
  material.actuated_stiffness_factor = 0.5 * (lo + hi);
  for (int pass = 0; pass < 2; ++pass) {
    const ModalResult modes = modal_analysis(assemble(geometry, material, n_stations), 2);
    material.spine_modulus *= std::pow(f1_hz / modes.damped_frequencies_hz[0], 2);
  }
  return material;
}

double mean_axial_force(const DiscreteBeam& beam, const FluidLoads& fluid,
                        const Eigen::VectorXcd& response, double omega, int samples) {
  double sum = 0.0;
  for (int k = 0; k < samples; ++k) {
    const std::complex<double> e =
        std::polar(1.0, 2.0 * std::numbers::pi * k / static_cast<double>(samples));
    const Eigen::VectorXd u = (response * e).real();
    const Eigen::VectorXd v = (response * (std::complex<double>(0.0, omega) * e)).real();
    sum += axial_fluid_force(beam, fluid, u, v);
  }
  return sum / samples;
}

CalibrationResult calibrate(const BodyGeometry& geometry, const MaterialSpec& material,
                            const FluidLoads& fluid, int n_stations,
                            const CalibrationTargets& targets) {
  if (!(targets.tail_amplitude_m > 0.0) || !(targets.thrust_n > 0.0) || !(targets.drive_hz > 0.0))
    throw ValidationError("calibration targets must be positive");
  CalibrationResult out;
  out.material =
      calibrate_frequencies(geometry, material, n_stations, targets.f1_hz, targets.f2_hz);
  const DiscreteBeam beam = assemble(geometry, out.material, n_stations);
  const ModalResult modes = modal_analysis(beam, 2);
  out.f1_hz = modes.damped_frequencies_hz[0];
  out.f2_hz = modes.damped_frequencies_hz[1];

  constexpr double probe = 1e-3;
  ActuationProgram program = gait(GaitMode::in_phase, targets.drive_hz);
  program.gain = default_group_gains(probe);
  const Eigen::VectorXcd w = harmonic_response(beam, program);
  out.gain_per_hasel = probe * targets.tail_amplitude_m / std::abs(w[w.size() - 1]);

  program.gain = default_group_gains(out.gain_per_hasel);
  const double omega = 2.0 * std::numbers::pi * targets.drive_hz;
  const Eigen::VectorXcd u = harmonic_solve(beam, harmonic_load(beam, program), omega);
  FluidLoads probe_fluid = fluid;
  probe_fluid.reactive_thrust_coefficient = 0.0;
  const double resistive = mean_axial_force(beam, probe_fluid, u, omega);
  probe_fluid.reactive_thrust_coefficient = 1.0;
  const double reactive = mean_axial_force(beam, probe_fluid, u, omega) - resistive;
  if (!(reactive > 0.0) || resistive >= targets.thrust_n) {
    std::ostringstream os;
    os << "thrust target " << targets.thrust_n << " N unreachable: resistive part alone gives "
       << resistive << " N";
    throw ValidationError(os.str());
  }
  out.reactive_thrust_coefficient = (targets.thrust_n - resistive) / reactive;
  return out;
}

}  // namespace swimlab
