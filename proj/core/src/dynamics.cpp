#include "swimlab/dynamics.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Cholesky>
#include <Eigen/LU>

#include "swimlab/error.hpp"

namespace swimlab {
namespace {

constexpr std::array<double, 4> kGaussX = {0.0694318442029737, 0.3300094782075719,
                                           0.6699905217924281, 0.9305681557970263};
constexpr std::array<double, 4> kGaussW = {0.1739274225687269, 0.3260725774312731,
                                           0.3260725774312731, 0.1739274225687269};

Eigen::Vector4d shape(double s, double h) {
  return {1 - 3 * s * s + 2 * s * s * s, h * (s - 2 * s * s + s * s * s), 3 * s * s - 2 * s * s * s,
          h * (-s * s + s * s * s)};
}

Eigen::Vector4d shape_dx(double s, double h) {
  return Eigen::Vector4d{-6 * s + 6 * s * s, h * (1 - 4 * s + 3 * s * s), 6 * s - 6 * s * s,
                         h * (-2 * s + 3 * s * s)} /
         h;
}

// Element DOF values gathered from a free-DOF vector (constrained DOFs read 0).
Eigen::Vector4d gather(const DiscreteBeam& b, std::size_t e, const Eigen::VectorXd& x) {
  Eigen::Vector4d out;
  for (std::size_t k = 0; k < 4; ++k) {
    const int f = b.free_index[2 * e + k];
    out[static_cast<Eigen::Index>(k)] = f >= 0 ? x[f] : 0.0;
  }
  return out;
}

void scatter_add(const DiscreteBeam& b, std::size_t e, const Eigen::Vector4d& v,
                 Eigen::Ref<Eigen::VectorXd> out) {
  for (std::size_t k = 0; k < 4; ++k) {
    const int f = b.free_index[2 * e + k];
    if (f >= 0) out[f] += v[static_cast<Eigen::Index>(k)];
  }
}

double drag_per_length(const DiscreteBeam& b, const FluidLoads& fluid, double x) {
  return 0.5 * b.material.fluid_density * fluid.drag_coefficient * b.geometry.silicone_width(x);
}

// Quadratic drag load -int N c |w_t| w_t dx and, optionally, its velocity Jacobian.
void quadratic_drag(const DiscreteBeam& b, const FluidLoads& fluid, const Eigen::VectorXd& v,
                    Eigen::Ref<Eigen::VectorXd> load, Eigen::MatrixXd* jacobian) {
  const std::size_t n_el = b.station_count() - 1;
  const double h = b.element_length;
  for (std::size_t e = 0; e < n_el; ++e) {
    const Eigen::Vector4d ve = gather(b, e, v);
    Eigen::Vector4d fe = Eigen::Vector4d::Zero();
    Eigen::Matrix4d je = Eigen::Matrix4d::Zero();
    for (std::size_t q = 0; q < kGaussX.size(); ++q) {
      const double s = kGaussX[q];
      const double x = (static_cast<double>(e) + s) / static_cast<double>(n_el);
      const Eigen::Vector4d nf = shape(s, h);
      const double wt = nf.dot(ve);
      const double c = drag_per_length(b, fluid, x) * kGaussW[q] * h;
      fe -= c * std::abs(wt) * wt * nf;
      if (jacobian) je += 2.0 * c * std::abs(wt) * nf * nf.transpose();
    }
    scatter_add(b, e, fe, load);
    if (jacobian) {
      for (std::size_t r = 0; r < 4; ++r) {
        const int fr = b.free_index[2 * e + r];
        if (fr < 0) continue;
        for (std::size_t c = 0; c < 4; ++c) {
          const int fc = b.free_index[2 * e + c];
          if (fc >= 0)
            (*jacobian)(fr, fc) += je(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
        }
      }
    }
  }
}

bool finite(const Eigen::VectorXd& x) { return x.allFinite(); }

}  // namespace

void add_actuation_loads(const DiscreteBeam& beam, const ActuationProgram& program, double t,
                         Eigen::Ref<Eigen::VectorXd> load) {
  for (auto g : kAllGroups) {
    const double m = group_moment(program, g, t);
    if (m == 0.0) continue;
    const auto& ext = program.extent(g);
    beam.add_point_moment(ext.start, -m, load);
    beam.add_point_moment(ext.end, m, load);
  }
}

double axial_fluid_force(const DiscreteBeam& b, const FluidLoads& fluid, const Eigen::VectorXd& u,
                         const Eigen::VectorXd& v) {
  const std::size_t n_el = b.station_count() - 1;
  const double h = b.element_length;
  double resistive = 0.0;
  for (std::size_t e = 0; e < n_el; ++e) {
    const Eigen::Vector4d ue = gather(b, e, u);
    const Eigen::Vector4d ve = gather(b, e, v);
    for (std::size_t q = 0; q < kGaussX.size(); ++q) {
      const double s = kGaussX[q];
      const double x = (static_cast<double>(e) + s) / static_cast<double>(n_el);
      const double wt = shape(s, h).dot(ve);
      const double wx = shape_dx(s, h).dot(ue);
      resistive -= drag_per_length(b, fluid, x) * std::abs(wt) * wt * wx * kGaussW[q] * h;
    }
  }
  const int tip = b.w_dof(b.station_count() - 1);
  const double tip_velocity = tip >= 0 ? v[tip] : 0.0;
  const double reactive = fluid.reactive_thrust_coefficient * 0.5 *
                          added_mass_per_length(b.geometry, b.material, 1.0) * tip_velocity *
                          tip_velocity;
  return reactive + resistive;
}

void integrate(const DiscreteBeam& beam, const LoadFunction& loads, double duration, double dt,
               const FluidLoads& fluid, const StepObserver& observer,
               const std::optional<BeamState>& initial) {
  if (!(dt > 0.0)) throw ValidationError("time step must be positive");
  if (!(duration > 0.0)) throw ValidationError("duration must be positive");
  const Eigen::Index n = beam.dof_count();
  const long steps = std::lround(duration / dt);

  Eigen::VectorXd u = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
  if (initial) {
    if (initial->displacement.size() != n || initial->velocity.size() != n)
      throw ValidationError("initial state size does not match the beam");
    u = initial->displacement;
    v = initial->velocity;
  }

  Eigen::VectorXd f = Eigen::VectorXd::Zero(n);
  loads(0.0, f);
  if (fluid.quadratic_drag) quadratic_drag(beam, fluid, v, f, nullptr);
  Eigen::LLT<Eigen::MatrixXd> mass_llt(beam.mass);
  Eigen::VectorXd a = mass_llt.solve(f - beam.damping * v - beam.stiffness * u);
  observer(0, 0.0, u, v, a);

  const double a0 = 4.0 / (dt * dt);
  const double a1 = 2.0 / dt;
  const Eigen::MatrixXd k_eff = beam.stiffness + a0 * beam.mass + a1 * beam.damping;
  Eigen::LDLT<Eigen::MatrixXd> k_eff_ldlt(k_eff);
  if (k_eff_ldlt.info() != Eigen::Success)
    throw Error(ErrorKind::internal, "effective stiffness factorization failed");

  Eigen::VectorXd rhs(n), u_next(n), v_next(n), a_next(n), drag(n);
  Eigen::MatrixXd jac;
  for (long k = 1; k <= steps; ++k) {
    const double t = static_cast<double>(k) * dt;
    f.setZero();
    loads(t, f);
    rhs = f + beam.mass * (a0 * u + (4.0 / dt) * v + a) + beam.damping * (a1 * u + v);
    u_next = k_eff_ldlt.solve(rhs);

    if (fluid.quadratic_drag) {
      // Newton on u_{k}: K_eff u - rhs - F_drag(v(u)) = 0 with v(u) = a1 (u - u_prev) - v_prev.
      for (int it = 0; it < 30; ++it) {
        v_next = a1 * (u_next - u) - v;
        drag.setZero();
        jac = Eigen::MatrixXd::Zero(n, n);
        quadratic_drag(beam, fluid, v_next, drag, &jac);
        const Eigen::VectorXd residual = k_eff * u_next - rhs - drag;
        const Eigen::VectorXd du = (k_eff + a1 * jac).ldlt().solve(-residual);
        u_next += du;
        if (!finite(u_next)) break;
        if (du.norm() <= 1e-12 * (1.0 + u_next.norm())) break;
      }
    }

    a_next = a0 * (u_next - u) - (4.0 / dt) * v - a;
    v_next = v + 0.5 * dt * (a + a_next);
    if (!finite(u_next) || !finite(v_next)) {
      std::ostringstream os;
      os << "time integration diverged at step " << k << " (t = " << t << " s)";
      throw DivergenceError(os.str(), k);
    }
    u.swap(u_next);
    v.swap(v_next);
    a.swap(a_next);
    observer(k, t, u, v, a);
  }
}

SimulationResult simulate(const DiscreteBeam& beam, const ActuationProgram& program,
                          const SimulationOptions& options) {
  validate(program);
  if (options.enforce_sampling_rules) {
    const double f = program.frequency;
    if (options.dt > 1.0 / (50.0 * f) * (1.0 + 1e-12))
      throw ValidationError("dt must be at most 1/(50 f) for the program frequency");
    if (options.duration < 10.0 / f * (1.0 - 1e-12))
      throw ValidationError("duration must cover at least 10 periods of the program");
  }
  const long steps = std::lround(options.duration / options.dt);
  const auto samples = static_cast<Eigen::Index>(steps + 1);
  const auto n_st = static_cast<Eigen::Index>(beam.station_count());

  SimulationResult out;
  auto& kin = out.kinematics;
  kin.stations = beam.stations;
  kin.body_length = beam.geometry.body_length;
  kin.source = FieldSource::simulated;
  kin.times.resize(static_cast<std::size_t>(samples));
  kin.deflection.resize(samples, n_st);
  out.tail_velocity.resize(samples);
  auto& mount = out.mount;
  for (auto* ch : {&mount.times, &mount.fx, &mount.fy, &mount.fz, &mount.mx, &mount.my, &mount.mz})
    ch->assign(static_cast<std::size_t>(samples), 0.0);

  const Eigen::MatrixXd clamp_damping =
      beam.rayleigh_alpha * beam.clamp_mass_rows + beam.rayleigh_beta * beam.clamp_stiffness_rows;
  const int tip = beam.w_dof(beam.station_count() - 1);

  auto loads = [&](double t, Eigen::Ref<Eigen::VectorXd> f) {
    add_actuation_loads(beam, program, t, f);
  };
  auto observe = [&](long k, double t, const Eigen::VectorXd& u, const Eigen::VectorXd& v,
                     const Eigen::VectorXd& a) {
    const auto row = static_cast<Eigen::Index>(k);
    const auto idx = static_cast<std::size_t>(k);
    kin.times[idx] = t;
    kin.deflection.row(row) = beam.station_deflection(u).transpose();
    out.tail_velocity[row] = v[tip];
    mount.times[idx] = t;
    mount.fx[idx] = axial_fluid_force(beam, options.fluid, u, v);
    const Eigen::VectorXd reaction =
        beam.clamp_mass_rows * a + clamp_damping * v + beam.clamp_stiffness_rows * u;
    double fy = 0.0, mz = 0.0;
    for (std::size_t c = 0; c < beam.clamp_dofs.size(); ++c) {
      const int gdof = beam.clamp_dofs[c];
      const double r = reaction[static_cast<Eigen::Index>(c)];
      const double x = beam.stations[static_cast<std::size_t>(gdof / 2)] * beam.geometry.body_length;
      if (gdof % 2 == 0) {
        fy += r;
        mz += x * r;
      } else {
        mz += r;
      }
    }
    mount.fy[idx] = fy;
    mount.mz[idx] = mz;
  };
  integrate(beam, loads, options.duration, options.dt, options.fluid, observe);
  return out;
}

double mechanical_energy(const DiscreteBeam& beam, const BeamState& s) {
  return 0.5 * s.velocity.dot(beam.mass * s.velocity) +
         0.5 * s.displacement.dot(beam.stiffness * s.displacement);
}

Eigen::VectorXcd harmonic_solve(const DiscreteBeam& beam, const Eigen::VectorXcd& load,
                                double omega) {
  using C = std::complex<double>;
  const Eigen::MatrixXcd dyn = beam.stiffness.cast<C>() - omega * omega * beam.mass.cast<C>() +
                               C(0.0, omega) * beam.damping.cast<C>();
  return dyn.partialPivLu().solve(load);
}

Eigen::VectorXcd harmonic_load(const DiscreteBeam& beam, const ActuationProgram& program) {
  // Fundamental of a group moment gain (V/A)^2 with V = (A/2)(1 + sin(th)) is
  // (gain/2) sin(th) = Re((gain/2) (-i) e^{i phase} e^{i w t}).
  const Eigen::Index n = beam.dof_count();
  Eigen::VectorXd re = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd im = Eigen::VectorXd::Zero(n);
  for (auto g : kAllGroups) {
    const double sign = side_of(g) == Side::left ? 1.0 : -1.0;
    const double amp = sign * 0.5 * program.group_gain(g);
    const double ph = program.phase(g) * std::numbers::pi / 180.0;
    const std::complex<double> c = amp * std::complex<double>(0.0, -1.0) * std::polar(1.0, ph);
    const auto& ext = program.extent(g);
    beam.add_point_moment(ext.start, -c.real(), re);
    beam.add_point_moment(ext.end, c.real(), re);
    beam.add_point_moment(ext.start, -c.imag(), im);
    beam.add_point_moment(ext.end, c.imag(), im);
  }
  Eigen::VectorXcd load(n);
  load.real() = re;
  load.imag() = im;
  return load;
}

Eigen::VectorXcd harmonic_response(const DiscreteBeam& beam, const ActuationProgram& program) {
  const Eigen::VectorXcd u = harmonic_solve(beam, harmonic_load(beam, program),
                                            2.0 * std::numbers::pi * program.frequency);
  Eigen::VectorXcd w = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(beam.station_count()));
  for (std::size_t s = 0; s < beam.station_count(); ++s) {
    const int d = beam.w_dof(s);
    if (d >= 0) w[static_cast<Eigen::Index>(s)] = u[d];
  }
  return w;
}

}  // namespace swimlab
