#include "swimlab/wave.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <unsupported/Eigen/FFT>

#include "swimlab/diagnostics.hpp"
#include "swimlab/error.hpp"

namespace swimlab {

Eigen::VectorXcd analytic_signal(const Eigen::VectorXd& x) {
  const auto n = static_cast<std::size_t>(x.size());
  if (n == 0) return {};
  Eigen::FFT<double> fft;
  std::vector<double> in(x.data(), x.data() + x.size());
  std::vector<std::complex<double>> spec;
  fft.fwd(spec, in);
  for (std::size_t k = 1; k < n; ++k) {
    if (2 * k < n) {
      spec[k] *= 2.0;
    } else if (2 * k > n) {
      spec[k] = 0.0;
    }
  }
  std::vector<std::complex<double>> out;
  fft.inv(out, spec);
  Eigen::VectorXcd z(x.size());
  for (std::size_t k = 0; k < n; ++k) z[static_cast<Eigen::Index>(k)] = out[k];
  // The real part is the input by construction; keep it bit-exact.
  z.real() = x;
  return z;
}

ComplexField analytic_field(const KinematicsField& field, const SampleWindow& w) {
  if (w.end > field.times.size() || w.size() < 2)
    throw ValidationError("analysis window outside the record");
  ComplexField out;
  out.stations = field.stations;
  out.times.assign(field.times.begin() + static_cast<std::ptrdiff_t>(w.begin),
                   field.times.begin() + static_cast<std::ptrdiff_t>(w.end));
  const auto rows = static_cast<Eigen::Index>(w.size());
  out.analytic.resize(rows, field.deflection.cols());
  for (Eigen::Index j = 0; j < field.deflection.cols(); ++j) {
    Eigen::VectorXd col = field.deflection.col(j).segment(static_cast<Eigen::Index>(w.begin), rows);
    col.array() -= col.mean();
    out.analytic.col(j) = analytic_signal(col);
  }
  return out;
}

ComplexField analytic_field(const KinematicsField& field, double frequency_hz, double periods) {
  if (periods < 1.0 - 1e-12) throw ValidationError("analysis window must cover at least one period");
  return analytic_field(field, trailing_window(field.times.size(), field.dt(), frequency_hz, periods));
}

double traveling_index_of_mode(const Eigen::VectorXcd& c) {
  Eigen::MatrixXd m(c.size(), 2);
  m.col(0) = c.real();
  m.col(1) = c.imag();
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& s = svd.singularValues();
  if (!(s[0] > 0.0)) throw ValidationError("traveling index of a zero mode is undefined");
  return std::clamp(s[1] / s[0], 0.0, 1.0);
}

TravelingIndex traveling_index_detail(const ComplexField& field) {
  if (field.analytic.cols() < 2) throw ValidationError("traveling index needs at least two stations");
  if (field.analytic.rows() < 2) throw ValidationError("traveling index needs at least two samples");
  const Eigen::MatrixXcd r = field.analytic.adjoint() * field.analytic;
  const double total = r.trace().real();
  if (!(total > 0.0) || !std::isfinite(total))
    throw ValidationError("traveling index of a zero-energy field is undefined");
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(r);
  if (es.info() != Eigen::Success)
    throw ConvergenceError("correlation eigensolve failed", NAN);
  const Eigen::Index top = r.rows() - 1;
  TravelingIndex out;
  out.mode = es.eigenvectors().col(top);
  out.energy_fraction = es.eigenvalues()[top] / total;
  out.ti = traveling_index_of_mode(out.mode);
  if (out.energy_fraction < kDominantEnergyFraction) {
    std::ostringstream os;
    os << "dominant complex mode holds only " << out.energy_fraction * 100.0
       << "% of the field energy; the traveling index may not describe a single wave";
    warn(os.str());
  }
  return out;
}

double traveling_index(const ComplexField& field) { return traveling_index_detail(field).ti; }

KinematicsField measurable_stations(const KinematicsField& field, double max_fraction) {
  std::vector<Eigen::Index> keep;
  for (std::size_t j = 0; j < field.stations.size(); ++j)
    if (field.stations[j] <= max_fraction + 1e-12 || j + 1 == field.stations.size())
      keep.push_back(static_cast<Eigen::Index>(j));
  KinematicsField out;
  out.times = field.times;
  out.source = field.source;
  out.body_length = field.body_length;
  out.deflection.resize(field.deflection.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t k = 0; k < keep.size(); ++k) {
    out.stations.push_back(field.stations[static_cast<std::size_t>(keep[k])]);
    out.deflection.col(static_cast<Eigen::Index>(k)) = field.deflection.col(keep[k]);
  }
  return out;
}

TailMetrics tail_metrics(const KinematicsField& field, const SampleWindow& w) {
  const std::size_t n = field.times.size();
  if (w.end > n || w.size() < 2) throw ValidationError("analysis window outside the record");
  const Eigen::Index tip = field.deflection.cols() - 1;
  if (tip < 0) throw ValidationError("field has no stations");
  const double dt = field.dt();
  TailMetrics m;
  for (std::size_t i = w.begin; i < w.end; ++i) {
    const auto r = static_cast<Eigen::Index>(i);
    m.peak_deflection = std::max(m.peak_deflection, std::abs(field.deflection(r, tip)));
    const std::size_t lo = i > 0 ? i - 1 : i;
    const std::size_t hi = i + 1 < n ? i + 1 : i;
    const double v = (field.deflection(static_cast<Eigen::Index>(hi), tip) -
                      field.deflection(static_cast<Eigen::Index>(lo), tip)) /
                     (static_cast<double>(hi - lo) * dt);
    m.peak_velocity = std::max(m.peak_velocity, std::abs(v));
  }
  return m;
}

TailMetrics tail_metrics(const KinematicsField& field, double frequency_hz, double periods) {
  if (periods < 1.0 - 1e-12) throw ValidationError("analysis window must cover at least one period");
  return tail_metrics(field, trailing_window(field.times.size(), field.dt(), frequency_hz, periods));
}

}  // namespace swimlab
