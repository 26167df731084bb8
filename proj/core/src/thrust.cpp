#include "swimlab/thrust.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <sstream>

#include <unsupported/Eigen/FFT>

#include "swimlab/error.hpp"

namespace swimlab {

std::vector<double> blackman_harris(std::size_t n) {
  if (n == 0) return {};
  if (n == 1) return {1.0};
  constexpr double a0 = 0.35875, a1 = 0.48829, a2 = 0.14128, a3 = 0.01168;
  std::vector<double> w(n);
  const double d = static_cast<double>(n - 1);
  for (std::size_t k = 0; k < n; ++k) {
    const double p = 2.0 * std::numbers::pi * static_cast<double>(k) / d;
    w[k] = a0 - a1 * std::cos(p) + a2 * std::cos(2 * p) - a3 * std::cos(3 * p);
  }
  // Mirror so the window is exactly symmetric.
  for (std::size_t k = 0; k < n / 2; ++k) w[n - 1 - k] = w[k];
  const double sum = std::accumulate(w.begin(), w.end(), 0.0);
  for (double& v : w) v /= sum;
  return w;
}

std::size_t ThrustSeries::valid_begin() const {
  for (std::size_t i = 0; i < valid.size(); ++i)
    if (valid[i]) return i;
  return valid.size();
}

std::size_t ThrustSeries::valid_end() const {
  for (std::size_t i = valid.size(); i > 0; --i)
    if (valid[i - 1]) return i;
  return 0;
}

namespace {
constexpr std::size_t kDirectConvolutionMax = 1024;
}  // namespace

ThrustSeries thrust_timeseries(const std::vector<double>& times, const std::vector<double>& fx,
                               double frequency_hz) {
  if (!(frequency_hz > 0.0)) throw ValidationError("thrust filter needs a positive frequency");
  if (times.size() != fx.size()) throw ValidationError("thrust filter: times and fx differ in length");
  const std::size_t n = fx.size();
  if (n < 2) throw ValidationError("thrust filter: record too short");
  const double dt = (times.back() - times.front()) / static_cast<double>(n - 1);
  const double period_samples = 1.0 / (frequency_hz * dt);
  if (static_cast<double>(n) < 6.0 * period_samples) {
    std::ostringstream os;
    os << "thrust filter: record of " << n << " samples is shorter than six periods ("
       << 6.0 * period_samples << " samples)";
    throw ValidationError(os.str());
  }
  auto len = static_cast<std::size_t>(std::llround(4.0 * period_samples));
  if (len % 2 == 0) ++len;
  const std::vector<double> w = blackman_harris(len);
  const std::size_t half = len / 2;

  ThrustSeries out;
  out.times = times;
  out.frequency_hz = frequency_hz;
  out.thrust.assign(n, 0.0);
  out.valid.assign(n, 0);
  if (len <= kDirectConvolutionMax) {
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t k0 = i < half ? half - i : 0;
      const std::size_t k1 = std::min(len, n + half - i);
      double acc = 0.0;
      for (std::size_t k = k0; k < k1; ++k) acc += w[k] * fx[i + k - half];
      out.thrust[i] = acc;
    }
  } else {
    // Linear convolution through a zero-padded FFT.
    std::size_t m = 1;
    while (m < n + len - 1) m <<= 1;
    std::vector<double> a(m, 0.0), b(m, 0.0);
    std::copy(fx.begin(), fx.end(), a.begin());
    std::copy(w.begin(), w.end(), b.begin());
    Eigen::FFT<double> fft;
    std::vector<std::complex<double>> fa, fb;
    fft.fwd(fa, a);
    fft.fwd(fb, b);
    for (std::size_t k = 0; k < fa.size(); ++k) fa[k] *= fb[k];
    fft.inv(a, fa);
    for (std::size_t i = 0; i < n; ++i) out.thrust[i] = a[i + half];
  }
  for (std::size_t i = 0; i < n; ++i) out.valid[i] = (i >= half && i + half < n) ? 1 : 0;
  return out;
}

ThrustSeries thrust_timeseries(const ForceRecord& record, double frequency_hz) {
  validate(record);
  return thrust_timeseries(record.times, record.fx, frequency_hz);
}

SteadyThrust steady_state_thrust(const ThrustSeries& s, double fraction) {
  if (!(fraction > 0.0 && fraction <= 1.0))
    throw ValidationError("steady-state fraction must lie in (0, 1]");
  const std::size_t vb = s.valid_begin(), ve = s.valid_end();
  if (ve <= vb) throw ValidationError("thrust series has no valid region");
  SteadyThrust out;
  const std::size_t len = ve - vb;
  const std::size_t take = std::clamp<std::size_t>(
      static_cast<std::size_t>(std::llround(fraction * static_cast<double>(len))), 1, len);
  out.begin = ve - take;
  out.end = ve;
  double mean = 0.0;
  for (std::size_t i = out.begin; i < out.end; ++i) mean += s.thrust[i];
  mean /= static_cast<double>(take);
  out.thrust = mean;
  if (take < 2 || s.times.size() < 2 || !(s.frequency_hz > 0.0)) return out;

  double tm = 0.0;
  for (std::size_t i = out.begin; i < out.end; ++i) tm += s.times[i];
  tm /= static_cast<double>(take);
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = out.begin; i < out.end; ++i) {
    sxy += (s.times[i] - tm) * (s.thrust[i] - mean);
    sxx += (s.times[i] - tm) * (s.times[i] - tm);
  }
  const double drift = sxx > 0.0 ? sxy / sxx / s.frequency_hz : 0.0;  // N per period
  if (mean != 0.0) {
    out.slope_per_period = std::abs(drift / mean);
    out.stationary = out.slope_per_period <= kStationarySlopePerPeriod;
  } else {
    out.slope_per_period = drift == 0.0 ? 0.0 : INFINITY;
    out.stationary = drift == 0.0;
  }
  return out;
}

double laebt_thrust_ratio(double v1, double v2) {
  if (!(v1 > 0.0) || !(v2 > 0.0)) throw ValidationError("LAEBT ratio needs positive velocities");
  const double r = v2 / v1;
  return r * r;
}

LaebtComparison compare_with_laebt(double v1, double thrust1, double v2, double thrust2) {
  if (!(thrust1 > 0.0) || !(thrust2 > 0.0))
    throw ValidationError("LAEBT comparison needs positive thrusts");
  LaebtComparison c;
  c.predicted_ratio = laebt_thrust_ratio(v1, v2);
  c.measured_ratio = thrust2 / thrust1;
  c.surplus = c.measured_ratio - c.predicted_ratio;
  c.exceeds_prediction = c.surplus > 0.0;
  return c;
}

std::string to_string(FrictionLaw law) {
  return law == FrictionLaw::seventh_power_averaged ? "seventh_power_averaged"
                                                    : "seventh_power_local";
}

FrictionLaw parse_friction_law(const std::string& name) {
  if (name == "seventh_power_averaged") return FrictionLaw::seventh_power_averaged;
  if (name == "seventh_power_local") return FrictionLaw::seventh_power_local;
  throw ValidationError("unknown friction law '" + name +
                        "' (expected seventh_power_averaged or seventh_power_local)");
}

DragModel drag_model_for(const BodyGeometry& geometry) {
  const HydroAreas a = hydro_areas(geometry);
  DragModel d;
  d.wetted_area = a.wetted_area;
  d.cross_section_area = a.cross_section_area;
  return d;
}

void validate(const DragModel& d) {
  if (!(d.rho > 0.0)) throw ValidationError("drag model: rho must be positive");
  if (!(d.cd > 0.0) || !(d.cd < 1.0)) throw ValidationError("drag model: cd must be in (0, 1)");
  if (!(d.wetted_area > 0.0)) throw ValidationError("drag model: wetted_area must be positive");
  if (!(d.cross_section_area > 0.0))
    throw ValidationError("drag model: cross_section_area must be positive");
  if (!(d.kinematic_viscosity > 0.0))
    throw ValidationError("drag model: kinematic_viscosity must be positive");
}

double friction_coefficient(const DragModel& d, double speed, double body_length) {
  const double re = speed * body_length / d.kinematic_viscosity;
  if (!(re > 0.0)) return 0.0;
  return d.friction_law == FrictionLaw::seventh_power_averaged ? 0.074 * std::pow(re, -0.2)
                                                               : 0.027 * std::pow(re, -1.0 / 7.0);
}

double drag_force(const DragModel& d, double v, double body_length) {
  if (!(v > 0.0)) return 0.0;
  const double cf = friction_coefficient(d, v, body_length);
  return 0.5 * d.rho * v * v * (cf * d.wetted_area + d.cd * d.cross_section_area);
}

SwimSpeed free_swim_speed(double thrust, const DragModel& d, double body_length) {
  validate(d);
  if (!(thrust > 0.0)) throw ValidationError("free-swim speed needs positive thrust");
  if (!(body_length > 0.0)) throw ValidationError("body_length must be positive");
  constexpr double v_max = 10.0;
  const double r_hi = thrust - drag_force(d, v_max, body_length);
  if (r_hi > 0.0) {
    std::ostringstream os;
    os << "no drag balance in (0, 10] m/s: residual " << thrust << " N at 0, " << r_hi
       << " N at 10 m/s";
    throw ConvergenceError(os.str(), r_hi);
  }
  double lo = 0.0, hi = v_max, r = INFINITY, mid = 0.0;
  for (int it = 0; it < 400; ++it) {
    mid = 0.5 * (lo + hi);
    r = thrust - drag_force(d, mid, body_length);
    if (std::abs(r) < 1e-9 && hi - lo < 1e-12 * v_max) break;
    if (r > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= 0.0) break;
  }
  if (!(std::abs(r) < 1e-9)) throw ConvergenceError("drag balance did not converge", r);
  return {mid, mid / body_length, r};
}

}  // namespace swimlab
