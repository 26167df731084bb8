#include "swimlab/modal.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "swimlab/diagnostics.hpp"
#include "swimlab/error.hpp"

namespace swimlab {

ModalResult modal_analysis(const DiscreteBeam& beam, int count) {
  if (count < 1) throw ValidationError("modal_analysis needs count >= 1");
  using C = std::complex<double>;

  // Rayleigh damping is proportional, so the damped modes share the undamped
  // shapes: lambda = -zeta w +/- i w sqrt(1 - zeta^2), zeta = a / (2 w) + b w / 2.
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(beam.stiffness, beam.mass);
  if (es.info() != Eigen::Success)
    throw ConvergenceError("generalized eigensolve did not converge", NAN);

  struct Candidate {
    double omega;
    double zeta;
    Eigen::Index column;
  };
  std::vector<Candidate> modes;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double w = std::sqrt(std::max(es.eigenvalues()[i], 0.0));
    if (!(w > 0.0)) continue;
    const double zeta = beam.rayleigh_alpha / (2.0 * w) + beam.rayleigh_beta * w / 2.0;
    if (zeta < 1.0) modes.push_back({w, zeta, i});
  }
  std::sort(modes.begin(), modes.end(), [](const Candidate& l, const Candidate& r) {
    return l.omega * std::sqrt(1.0 - l.zeta * l.zeta) < r.omega * std::sqrt(1.0 - r.zeta * r.zeta);
  });

  if (static_cast<int>(modes.size()) < count) {
    std::ostringstream os;
    os << "only " << modes.size() << " underdamped modes exist; returning those";
    warn(os.str());
  }

  ModalResult out;
  const std::size_t take = std::min<std::size_t>(modes.size(), static_cast<std::size_t>(count));
  for (std::size_t k = 0; k < take; ++k) {
    const auto& m = modes[k];
    const double wd = m.omega * std::sqrt(1.0 - m.zeta * m.zeta);
    const C lam(-m.zeta * m.omega, wd);
    const Eigen::VectorXd phi = es.eigenvectors().col(m.column);
    const Eigen::VectorXd mp = beam.mass * phi;
    const Eigen::VectorXd cp = beam.damping * phi;
    const Eigen::VectorXd kp = beam.stiffness * phi;
    const Eigen::VectorXcd r = lam * lam * mp.cast<C>() + lam * cp.cast<C>() + kp.cast<C>();
    const double scale = std::norm(lam) * mp.norm() + std::abs(lam) * cp.norm() + kp.norm();
    out.max_residual = std::max(out.max_residual, r.norm() / scale);

    out.undamped_frequencies_hz.push_back(m.omega / (2.0 * std::numbers::pi));
    out.damped_frequencies_hz.push_back(wd / (2.0 * std::numbers::pi));
    out.damping_ratios.push_back(m.zeta);

    Eigen::VectorXd shape = beam.station_deflection(phi);
    shape /= shape.cwiseAbs().maxCoeff();
    if (shape[shape.size() - 1] < 0.0) shape = -shape;
    out.mode_shapes.push_back(std::move(shape));
  }
  if (out.max_residual > 1e-6) {
    std::ostringstream os;
    os << "damped eigenproblem residual " << out.max_residual << " exceeds 1e-6";
    throw ConvergenceError(os.str(), out.max_residual);
  }
  return out;
}

}  // namespace swimlab
