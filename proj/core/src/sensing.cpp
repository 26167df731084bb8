#include "swimlab/sensing.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "swimlab/error.hpp"
#include "swimlab/spline.hpp"

namespace swimlab {
namespace {

// Curvature at every station, 1/m, from the three-point second difference
// (one-sided stencils at the ends).
Eigen::MatrixXd station_curvature(const KinematicsField& f) {
  const auto n = static_cast<Eigen::Index>(f.stations.size());
  const double L = f.body_length;
  Eigen::MatrixXd k(f.deflection.rows(), n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const Eigen::Index c = std::clamp<Eigen::Index>(j, 1, n - 2);
    const double x0 = f.stations[static_cast<std::size_t>(c - 1)] * L;
    const double x1 = f.stations[static_cast<std::size_t>(c)] * L;
    const double x2 = f.stations[static_cast<std::size_t>(c + 1)] * L;
    const double h0 = x1 - x0, h1 = x2 - x1;
    k.col(j) = 2.0 * (f.deflection.col(c - 1) / (h0 * (h0 + h1)) -
                      f.deflection.col(c) / (h0 * h1) +
                      f.deflection.col(c + 1) / (h1 * (h0 + h1)));
  }
  return k;
}

}  // namespace

GaugeLayout default_gauge_layout() {
  GaugeLayout g;
  g.positions = {0.05, 0.18, 0.33, 0.46, 0.58, 0.73};
  g.neutral_offset = 0.0035;
  g.left_side = {true, false, true, false, true, false};
  return g;
}

void validate(const GaugeLayout& g) {
  if (g.positions.empty()) throw ValidationError("gauge layout has no gauges");
  if (!(g.neutral_offset > 0.0)) throw ValidationError("gauge neutral_offset must be positive");
  if (!g.left_side.empty() && g.left_side.size() != g.positions.size())
    throw ValidationError("gauge side flags must match the gauge count");
  for (std::size_t i = 0; i < g.positions.size(); ++i) {
    const double x = g.positions[i];
    if (!(x >= 0.0) || !(x < kReconstructionSpliceFraction))
      throw ValidationError("gauge positions must lie in [0, 0.75)");
    if (i > 0 && !(x > g.positions[i - 1]))
      throw ValidationError("gauge positions must be strictly increasing");
  }
}

void validate(const StrainRecord& r) {
  validate(r.layout);
  if (r.strain.cols() != static_cast<Eigen::Index>(r.layout.positions.size()))
    throw ValidationError("strain record: channel count does not match the gauge layout");
  if (r.strain.rows() != static_cast<Eigen::Index>(r.times.size()))
    throw ValidationError("strain record: sample count does not match times");
  if (!r.strain.allFinite()) throw ValidationError("strain record: non-finite strain");
  if (r.strain.size() > 0 && r.strain.cwiseAbs().maxCoeff() >= kMaxStrain)
    throw ValidationError("strain record: |strain| exceeds the 0.05 sanity bound");
}

StrainRecord sample_strain(const KinematicsField& field, const GaugeLayout& layout) {
  validate(layout);
  if (field.stations.size() < 3) throw ValidationError("field needs at least three stations");
  for (double x : layout.positions)
    if (x < field.stations.front() || x > field.stations.back())
      throw ValidationError("gauge position outside the field's station range");

  const Eigen::MatrixXd kappa = station_curvature(field);
  StrainRecord out;
  out.times = field.times;
  out.layout = layout;
  out.strain.resize(field.deflection.rows(), static_cast<Eigen::Index>(layout.positions.size()));
  for (std::size_t g = 0; g < layout.positions.size(); ++g) {
    const double x = layout.positions[g];
    auto it = std::upper_bound(field.stations.begin(), field.stations.end(), x);
    auto j = static_cast<std::size_t>(std::distance(field.stations.begin(), it));
    j = std::clamp<std::size_t>(j, 1, field.stations.size() - 1);
    const double x0 = field.stations[j - 1], x1 = field.stations[j];
    const double s = (x - x0) / (x1 - x0);
    out.strain.col(static_cast<Eigen::Index>(g)) =
        layout.neutral_offset * ((1.0 - s) * kappa.col(static_cast<Eigen::Index>(j - 1)) +
                                 s * kappa.col(static_cast<Eigen::Index>(j)));
  }
  return out;
}

std::vector<double> integrate_tail_velocity(const std::vector<double>& t,
                                            const std::vector<double>& v, double frequency_hz) {
  if (t.size() != v.size()) throw ValidationError("tail record: times and values differ in length");
  if (!(frequency_hz > 0.0))
    throw ValidationError("tail velocity integration needs a positive drive frequency");
  const std::size_t n = v.size();
  std::vector<double> w(n, 0.0);
  for (std::size_t i = 1; i < n; ++i) w[i] = w[i - 1] + 0.5 * (v[i] + v[i - 1]) * (t[i] - t[i - 1]);
  if (n < 2) return w;
  double mean = 0.0;
  for (double x : w) mean += x;
  mean /= static_cast<double>(n);
  for (double& x : w) x -= mean;

  const double dt = (t.back() - t.front()) / static_cast<double>(n - 1);
  const double rc = 1.0 / (2.0 * std::numbers::pi * frequency_hz / 10.0);
  const double a = rc / (rc + dt);
  // Padding lets the start-up transients of both passes decay (six time
  // constants) before real samples: point-reflected at the start, and one
  // drive period repeated at the end, where the record is steady.
  const std::size_t pad = std::min(n - 1, static_cast<std::size_t>(std::ceil(6.0 * rc / dt)));
  const double period = 1.0 / frequency_hz;
  std::vector<double> x;
  x.reserve(n + 2 * pad);
  for (std::size_t k = pad; k >= 1; --k) x.push_back(2.0 * w[0] - w[k]);
  x.insert(x.end(), w.begin(), w.end());
  const double t_end = t.back();
  for (std::size_t k = 1; k <= pad; ++k) {
    if (t_end - t.front() < period) {
      x.push_back(w[n - 1 - std::min(k, n - 1)]);
      continue;
    }
    const double ahead = static_cast<double>(k) * dt;
    const double src = t_end + ahead - std::ceil(ahead / period) * period;
    auto it = std::upper_bound(t.begin(), t.end(), src);
    auto j = static_cast<std::size_t>(std::distance(t.begin(), it));
    j = std::clamp<std::size_t>(j, 1, n - 1);
    const double s = (src - t[j - 1]) / (t[j] - t[j - 1]);
    x.push_back((1.0 - s) * w[j - 1] + s * w[j]);
  }

  auto pass = [a](std::vector<double>& y) {
    double prev_in = y[0], prev_out = 0.0;
    y[0] = 0.0;
    for (std::size_t i = 1; i < y.size(); ++i) {
      const double in = y[i];
      y[i] = a * (prev_out + in - prev_in);
      prev_in = in;
      prev_out = y[i];
    }
  };
  pass(x);
  std::reverse(x.begin(), x.end());
  pass(x);
  std::reverse(x.begin(), x.end());
  std::copy(x.begin() + static_cast<std::ptrdiff_t>(pad),
            x.begin() + static_cast<std::ptrdiff_t>(pad + n), w.begin());
  return w;
}

KinematicsField reconstruct_deflection(const StrainRecord& strain, const TailRecord& tail,
                                       const ReconstructionOptions& o) {
  validate(strain);
  const std::size_t n_g = strain.layout.positions.size();
  if (n_g < 3) throw ValidationError("reconstruction needs at least three gauges");
  if (o.n_stations < 3) throw ValidationError("reconstruction needs at least three stations");
  if (!(o.body_length > 0.0)) throw ValidationError("body_length must be positive");
  if (tail.times.size() != strain.times.size() || tail.values.size() != tail.times.size()) {
    std::ostringstream os;
    os << "tail record: " << tail.times.size() << " samples against " << strain.times.size()
       << " in the strain record";
    throw ValidationError(os.str());
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < tail.times.size(); ++i)
    worst = std::max(worst, std::abs(tail.times[i] - strain.times[i]));
  if (worst > o.time_tolerance) {
    std::ostringstream os;
    os << "tail record: time base differs from the strain record by up to " << worst << " s";
    throw ValidationError(os.str());
  }

  const std::vector<double> tail_w = tail.which == TailQuantity::velocity
                                         ? integrate_tail_velocity(tail.times, tail.values,
                                                                   o.frequency_hz)
                                         : tail.values;

  const double L = o.body_length;
  const double a = kReconstructionSpliceFraction * L;
  const double z = strain.layout.neutral_offset;
  std::vector<double> gx(n_g);
  for (std::size_t g = 0; g < n_g; ++g) gx[g] = strain.layout.positions[g] * L;

  const auto n_st = static_cast<std::size_t>(o.n_stations);
  std::vector<double> stations(n_st);
  for (std::size_t j = 0; j < n_st; ++j)
    stations[j] = static_cast<double>(j) / static_cast<double>(n_st - 1);

  // Deflection at each station, and w, w' at the splice, per unit strain of each
  // gauge. The map strain -> deflection is linear, so a time step is a product.
  constexpr int kFine = 6000;
  const double h = a / kFine;
  Eigen::MatrixXd basis = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n_st),
                                                static_cast<Eigen::Index>(n_g));
  Eigen::RowVectorXd w_a(static_cast<Eigen::Index>(n_g)), dw_a(static_cast<Eigen::Index>(n_g));
  for (std::size_t g = 0; g < n_g; ++g) {
    std::vector<double> unit(n_g, 0.0);
    unit[g] = 1.0 / z;
    const NaturalCubicSpline kappa(gx, unit);
    std::vector<double> w(kFine + 1, 0.0), dw(kFine + 1, 0.0);
    double k_prev = kappa(0.0);
    for (int i = 1; i <= kFine; ++i) {
      const double k_next = kappa(i * h);
      dw[i] = dw[i - 1] + 0.5 * h * (k_prev + k_next);
      w[i] = w[i - 1] + 0.5 * h * (dw[i - 1] + dw[i]) - h * h * (k_next - k_prev) / 12.0;
      k_prev = k_next;
    }
    const auto gi = static_cast<Eigen::Index>(g);
    w_a[gi] = w[kFine];
    dw_a[gi] = dw[kFine];
    for (std::size_t j = 0; j < n_st; ++j) {
      const double x = stations[j] * L;
      if (x > a + 1e-12 * L) continue;
      const double p = std::min(x / h, static_cast<double>(kFine));
      const auto i0 = std::min(static_cast<int>(p), kFine - 1);
      const double s = p - i0;
      const double h00 = (1 + 2 * s) * (1 - s) * (1 - s), h10 = s * (1 - s) * (1 - s);
      const double h01 = s * s * (3 - 2 * s), h11 = s * s * (s - 1);
      basis(static_cast<Eigen::Index>(j), gi) =
          h00 * w[i0] + h10 * h * dw[i0] + h01 * w[i0 + 1] + h11 * h * dw[i0 + 1];
    }
  }

  KinematicsField out;
  out.times = strain.times;
  out.stations = stations;
  out.source = FieldSource::reconstructed;
  out.body_length = L;
  out.deflection.resize(strain.strain.rows(), static_cast<Eigen::Index>(n_st));

  const double D = L - a;
  for (Eigen::Index r = 0; r < strain.strain.rows(); ++r) {
    const Eigen::VectorXd e = strain.strain.row(r).transpose();
    out.deflection.row(r) = (basis * e).transpose();
    // w(a) + w'(a) s + c2 s^2 + c3 s^3 through the tail point with w''(L) = 0.
    const double wa = w_a * e;
    const double da = dw_a * e;
    const double tip = tail_w[static_cast<std::size_t>(r)];
    const double c3 = (wa + da * D - tip) / (2.0 * D * D * D);
    const double c2 = -3.0 * c3 * D;
    for (std::size_t j = 0; j < n_st; ++j) {
      const double x = stations[j] * L;
      if (x <= a + 1e-12 * L) continue;
      const double s = x - a;
      out.deflection(r, static_cast<Eigen::Index>(j)) = wa + da * s + c2 * s * s + c3 * s * s * s;
    }
  }
  return out;
}

Envelope envelope(const KinematicsField& field, double frequency_hz, double periods) {
  if (periods < 1.0 - 1e-12) throw ValidationError("envelope window must cover at least one period");
  const SampleWindow win = trailing_window(field.times.size(), field.dt(), frequency_hz, periods);
  Envelope env;
  env.stations = field.stations;
  const auto block = field.deflection.middleRows(static_cast<Eigen::Index>(win.begin),
                                                 static_cast<Eigen::Index>(win.size()));
  env.max_profile.resize(field.stations.size());
  env.min_profile.resize(field.stations.size());
  for (std::size_t j = 0; j < field.stations.size(); ++j) {
    env.max_profile[j] = block.col(static_cast<Eigen::Index>(j)).maxCoeff();
    env.min_profile[j] = block.col(static_cast<Eigen::Index>(j)).minCoeff();
  }
  return env;
}

}  // namespace swimlab
