#pragma once

#include <complex>
#include <functional>
#include <optional>

#include <Eigen/Dense>

#include "swimlab/actuation.hpp"
#include "swimlab/beam.hpp"
#include "swimlab/records.hpp"

namespace swimlab {

/// Fluid loads beyond the added mass already in the mass operator.
struct FluidLoads {
  /// Quadratic transverse drag -1/2 rho Cd width |w_t| w_t (nonlinear, off by default).
  bool quadratic_drag = false;
  /// Normal drag coefficient, used by the quadratic drag term and by the
  /// resistive (axial projection) part of the thrust model.
  double drag_coefficient = 1.0;
  /// Scale on the trailing-edge reactive thrust 1/2 m_a(L) w_t(L)^2.
  double reactive_thrust_coefficient = 0.06187535695;
};

struct SimulationOptions {
  double duration = 10.0;  // s
  double dt = 1e-3;        // s
  FluidLoads fluid;
  /// Reject dt > 1/(50 f) and records shorter than 10 periods (simulate only).
  bool enforce_sampling_rules = true;
};

/// Newmark state on the free DOFs.
struct BeamState {
  Eigen::VectorXd displacement;
  Eigen::VectorXd velocity;
};

struct SimulationResult {
  KinematicsField kinematics;
  ForceRecord mount;  // reaction forces on the head mount
  Eigen::VectorXd tail_velocity;  // w_t at the tip, m/s, one per time sample
};

/// Fills `load` (free DOFs, zeroed by the caller) with external loads at time t.
using LoadFunction = std::function<void(double t, Eigen::Ref<Eigen::VectorXd> load)>;

/// Called once per time sample (including t = 0) with the current state.
using StepObserver = std::function<void(long step, double t, const Eigen::VectorXd& u,
                                        const Eigen::VectorXd& v, const Eigen::VectorXd& a)>;

/// Constant-average-acceleration Newmark integration (beta = 1/4, gamma = 1/2):
/// unconditionally stable and, without damping, energy conserving for the linear
/// model. With quadratic drag each step is solved by Newton iteration.
/// Throws DivergenceError naming the first non-finite step.
void integrate(const DiscreteBeam& beam, const LoadFunction& loads, double duration, double dt,
               const FluidLoads& fluid, const StepObserver& observer,
               const std::optional<BeamState>& initial = std::nullopt);

/// Muscle couples of every group: -M at the extent start, +M at its end
/// (positive M gives positive curvature across the span).
void add_actuation_loads(const DiscreteBeam& beam, const ActuationProgram& program, double t,
                         Eigen::Ref<Eigen::VectorXd> load);

/// Drives the beam with the program from rest and records w(x,t) at every
/// station and the mount reaction forces.
SimulationResult simulate(const DiscreteBeam& beam, const ActuationProgram& program,
                          const SimulationOptions& options);

/// Kinetic + strain energy of a state (undamped audit).
double mechanical_energy(const DiscreteBeam& beam, const BeamState& state);

/// Complex steady-state amplitude W(x) of the fundamental response to the
/// program, w(x,t) = Re(W(x) e^{i 2 pi f t}), linear model only.
Eigen::VectorXcd harmonic_response(const DiscreteBeam& beam, const ActuationProgram& program);

/// Complex free-DOF load of the fundamental muscle moments of a program.
Eigen::VectorXcd harmonic_load(const DiscreteBeam& beam, const ActuationProgram& program);

/// Complex amplitude of the free-DOF response to a harmonic load Re(F e^{i w t}).
Eigen::VectorXcd harmonic_solve(const DiscreteBeam& beam, const Eigen::VectorXcd& load,
                                double omega);

/// Axial fluid force on the body from a deflection/velocity state, N, positive forward:
/// reactive trailing-edge term plus the axial projection of lateral drag.
double axial_fluid_force(const DiscreteBeam& beam, const FluidLoads& fluid,
                         const Eigen::VectorXd& u, const Eigen::VectorXd& v);

}  // namespace swimlab
