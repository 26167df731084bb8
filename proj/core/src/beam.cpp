#include "swimlab/beam.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "swimlab/error.hpp"

namespace swimlab {
namespace {

// 4-point Gauss-Legendre on [0, 1].
constexpr std::array<double, 4> kGaussX = {0.0694318442029737, 0.3300094782075719,
                                           0.6699905217924281, 0.9305681557970263};
constexpr std::array<double, 4> kGaussW = {0.1739274225687269, 0.3260725774312731,
                                           0.3260725774312731, 0.1739274225687269};

// Hermite cubic shape functions on an element of length h, local coordinate s in [0, 1].
Eigen::Vector4d shape(double s, double h) {
  return {1 - 3 * s * s + 2 * s * s * s, h * (s - 2 * s * s + s * s * s), 3 * s * s - 2 * s * s * s,
          h * (-s * s + s * s * s)};
}

Eigen::Vector4d shape_dx(double s, double h) {
  return Eigen::Vector4d{-6 * s + 6 * s * s, h * (1 - 4 * s + 3 * s * s), 6 * s - 6 * s * s,
                         h * (-2 * s + 3 * s * s)} /
         h;
}

Eigen::Vector4d shape_dxx(double s, double h) {
  return Eigen::Vector4d{-6 + 12 * s, h * (-4 + 6 * s), 6 - 12 * s, h * (-2 + 6 * s)} / (h * h);
}

}  // namespace

Eigen::VectorXd DiscreteBeam::station_deflection(const Eigen::Ref<const Eigen::VectorXd>& u) const {
  Eigen::VectorXd w = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(stations.size()));
  for (std::size_t i = 0; i < stations.size(); ++i) {
    const int d = w_dof(i);
    if (d >= 0) w[static_cast<Eigen::Index>(i)] = u[d];
  }
  return w;
}

Eigen::VectorXd DiscreteBeam::station_slope(const Eigen::Ref<const Eigen::VectorXd>& u) const {
  Eigen::VectorXd th = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(stations.size()));
  for (std::size_t i = 0; i < stations.size(); ++i) {
    const int d = slope_dof(i);
    if (d >= 0) th[static_cast<Eigen::Index>(i)] = u[d];
  }
  return th;
}

void DiscreteBeam::add_point_moment(double x, double moment,
                                    Eigen::Ref<Eigen::VectorXd> load) const {
  const std::size_t n_el = stations.size() - 1;
  const double xi = std::clamp(x, 0.0, 1.0) * static_cast<double>(n_el);
  std::size_t e = static_cast<std::size_t>(xi);
  if (e >= n_el) e = n_el - 1;
  const double s = xi - static_cast<double>(e);
  const Eigen::Vector4d dn = shape_dx(s, element_length);
  const std::array<std::size_t, 4> global = {2 * e, 2 * e + 1, 2 * e + 2, 2 * e + 3};
  for (int k = 0; k < 4; ++k) {
    const int f = free_index[global[static_cast<std::size_t>(k)]];
    if (f >= 0) load[f] += moment * dn[k];
  }
}

Eigen::VectorXd undamped_omegas(const Eigen::MatrixXd& stiffness, const Eigen::MatrixXd& mass,
                                int count) {
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(stiffness, mass,
                                                              Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw ConvergenceError("generalized eigensolve of the beam operators failed", NAN);
  const Eigen::Index n = std::min<Eigen::Index>(count, es.eigenvalues().size());
  return es.eigenvalues().head(n).cwiseMax(0.0).cwiseSqrt();
}

DiscreteBeam assemble(const BodyGeometry& g, const MaterialSpec& m, int n_stations,
                      const AssemblyOptions& options) {
  if (n_stations < kMinStations)
    throw ValidationError("n_stations must be at least " + std::to_string(kMinStations) +
                          ", got " + std::to_string(n_stations));
  validate(m);
  if (!(options.clamp_length_fraction >= 0.0 && options.clamp_length_fraction < 0.5))
    throw ValidationError("clamp_length_fraction must lie in [0, 0.5)");

  DiscreteBeam b;
  b.geometry = g;
  b.material = m;
  b.clamp_length_fraction = options.clamp_length_fraction;
  const auto n = static_cast<std::size_t>(n_stations);
  const std::size_t n_el = n - 1;
  b.stations.resize(n);
  for (std::size_t i = 0; i < n; ++i) b.stations[i] = static_cast<double>(i) / n_el;
  const double h = g.body_length / static_cast<double>(n_el);
  b.element_length = h;

  const Eigen::Index n_global = static_cast<Eigen::Index>(2 * n);
  Eigen::MatrixXd k_full = Eigen::MatrixXd::Zero(n_global, n_global);
  Eigen::MatrixXd m_full = Eigen::MatrixXd::Zero(n_global, n_global);
  Eigen::MatrixXd m_dry = Eigen::MatrixXd::Zero(n_global, n_global);

  for (std::size_t e = 0; e < n_el; ++e) {
    Eigen::Matrix4d ke = Eigen::Matrix4d::Zero();
    Eigen::Matrix4d me = Eigen::Matrix4d::Zero();
    Eigen::Matrix4d md = Eigen::Matrix4d::Zero();
    for (std::size_t q = 0; q < kGaussX.size(); ++q) {
      const double s = kGaussX[q];
      const double x = (static_cast<double>(e) + s) / static_cast<double>(n_el);
      const double wq = kGaussW[q] * h;
      const Eigen::Vector4d nf = shape(s, h);
      const Eigen::Vector4d bf = shape_dxx(s, h);
      const double ei = effective_stiffness(g, m, x);
      const double mu_dry = structural_mass_per_length(g, m, x);
      const double mu = mu_dry + added_mass_per_length(g, m, x);
      ke += ei * wq * bf * bf.transpose();
      me += mu * wq * nf * nf.transpose();
      md += mu_dry * wq * nf * nf.transpose();
    }
    const auto o = static_cast<Eigen::Index>(2 * e);
    k_full.block<4, 4>(o, o) += ke;
    m_full.block<4, 4>(o, o) += me;
    m_dry.block<4, 4>(o, o) += md;
  }

  b.free_index.assign(2 * n, -1);
  std::vector<Eigen::Index> free;
  for (std::size_t i = 0; i < n; ++i) {
    const bool clamped = i == 0 || b.stations[i] <= options.clamp_length_fraction;
    for (std::size_t d = 0; d < 2; ++d) {
      const std::size_t gi = 2 * i + d;
      if (clamped) {
        b.clamp_dofs.push_back(static_cast<int>(gi));
      } else {
        b.free_index[gi] = static_cast<int>(free.size());
        free.push_back(static_cast<Eigen::Index>(gi));
      }
    }
  }
  const auto nf = static_cast<Eigen::Index>(free.size());
  const auto nc = static_cast<Eigen::Index>(b.clamp_dofs.size());
  b.stiffness.resize(nf, nf);
  b.mass.resize(nf, nf);
  b.structural_mass.resize(nf, nf);
  for (Eigen::Index r = 0; r < nf; ++r) {
    for (Eigen::Index c = 0; c < nf; ++c) {
      b.stiffness(r, c) = k_full(free[r], free[c]);
      b.mass(r, c) = m_full(free[r], free[c]);
      b.structural_mass(r, c) = m_dry(free[r], free[c]);
    }
  }
  b.clamp_mass_rows.resize(nc, nf);
  b.clamp_stiffness_rows.resize(nc, nf);
  for (Eigen::Index r = 0; r < nc; ++r) {
    for (Eigen::Index c = 0; c < nf; ++c) {
      b.clamp_mass_rows(r, c) = m_full(b.clamp_dofs[static_cast<std::size_t>(r)], free[c]);
      b.clamp_stiffness_rows(r, c) = k_full(b.clamp_dofs[static_cast<std::size_t>(r)], free[c]);
    }
  }

  if (Eigen::LLT<Eigen::MatrixXd>(b.mass).info() != Eigen::Success ||
      Eigen::LLT<Eigen::MatrixXd>(b.stiffness).info() != Eigen::Success)
    throw Error(ErrorKind::internal, "assembled beam operators are not positive definite");

  const Eigen::VectorXd w = undamped_omegas(b.stiffness, b.mass, 2);
  const double zeta = m.structural_damping_ratio;
  b.rayleigh_alpha = 2.0 * zeta * w[0] * w[1] / (w[0] + w[1]);
  b.rayleigh_beta = 2.0 * zeta / (w[0] + w[1]);
  b.damping = b.rayleigh_alpha * b.mass + b.rayleigh_beta * b.stiffness;
  return b;
}

}  // namespace swimlab
