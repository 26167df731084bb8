#include "swimlab/frf.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <unsupported/Eigen/FFT>

#include "swimlab/dynamics.hpp"
#include "swimlab/error.hpp"

namespace swimlab {

Frf impulse_frf(const DiscreteBeam& beam, MuscleGroupId group, const FrfOptions& o) {
  if (o.repetitions < 1) throw ValidationError("frf repetitions must be at least 1");
  if (!(o.dt > 0.0) || !(o.record_length > 10.0 * o.dt))
    throw ValidationError("frf record must span more than ten samples");
  if (!(o.impulse_moment != 0.0) || !std::isfinite(o.impulse_moment))
    throw ValidationError("frf impulse moment must be finite and non-zero");
  if (o.noise_std < 0.0) throw ValidationError("frf noise_std must be non-negative");

  const long steps = std::lround(o.record_length / o.dt);
  const auto n = static_cast<std::size_t>(steps);
  const GroupExtent ext = o.extents[position_of(group)];
  const double sign = side_of(group) == Side::left ? 1.0 : -1.0;
  const int tip = beam.w_dof(beam.station_count() - 1);

  std::mt19937_64 rng(o.seed);
  std::normal_distribution<double> noise(0.0, o.noise_std);
  Eigen::FFT<double> fft;

  const std::size_t bins = n / 2 + 1;
  std::vector<std::complex<double>> cross(bins, 0.0);
  std::vector<double> auto_in(bins, 0.0);

  for (int r = 0; r < o.repetitions; ++r) {
    const double m0 = sign * o.impulse_moment;
    std::vector<double> input(n, 0.0), output(n, 0.0);
    input[0] = m0;
    auto loads = [&](double t, Eigen::Ref<Eigen::VectorXd> f) {
      if (t == 0.0) {
        beam.add_point_moment(ext.start, -m0, f);
        beam.add_point_moment(ext.end, m0, f);
      }
    };
    auto observe = [&](long k, double, const Eigen::VectorXd&, const Eigen::VectorXd& v,
                       const Eigen::VectorXd&) {
      if (k < steps) output[static_cast<std::size_t>(k)] = v[tip];
    };
    integrate(beam, loads, static_cast<double>(steps - 1) * o.dt, o.dt, FluidLoads{}, observe);
    if (o.noise_std > 0.0)
      for (auto& y : output) y += noise(rng);

    std::vector<std::complex<double>> x_spec, y_spec;
    fft.fwd(x_spec, input);
    fft.fwd(y_spec, output);
    for (std::size_t b = 0; b < bins; ++b) {
      cross[b] += y_spec[b] * std::conj(x_spec[b]);
      auto_in[b] += std::norm(x_spec[b]);
    }
  }

  Frf out;
  out.group = group;
  out.bin_width_hz = 1.0 / (static_cast<double>(n) * o.dt);
  for (std::size_t b = 0; b < bins; ++b) {
    const double f = static_cast<double>(b) * out.bin_width_hz;
    if (f > o.max_frequency) break;
    out.frequency_hz.push_back(f);
    out.response.push_back(cross[b] / auto_in[b]);
  }
  return out;
}

Frf impulse_frf(const DiscreteBeam& beam, std::string_view group, const FrfOptions& options) {
  return impulse_frf(beam, parse_group(group), options);
}

std::vector<double> peak_frequencies(const Frf& frf, int count) {
  std::vector<double> peaks;
  const auto& h = frf.response;
  for (std::size_t i = 2; i + 1 < h.size() && static_cast<int>(peaks.size()) < count; ++i) {
    const double m = std::abs(h[i]);
    if (m > std::abs(h[i - 1]) && m >= std::abs(h[i + 1])) peaks.push_back(frf.frequency_hz[i]);
  }
  return peaks;
}

std::vector<std::complex<double>> couple_transfer(const DiscreteBeam& beam,
                                                  const GroupExtent& input,
                                                  const GroupExtent& output,
                                                  const std::vector<double>& frequency_hz) {
  const Eigen::Index n = beam.dof_count();
  Eigen::VectorXd b_in = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd b_out = Eigen::VectorXd::Zero(n);
  beam.add_point_moment(input.start, -1.0, b_in);
  beam.add_point_moment(input.end, 1.0, b_in);
  // The consistent moment load is also the slope-readout functional.
  beam.add_point_moment(output.start, -1.0, b_out);
  beam.add_point_moment(output.end, 1.0, b_out);

  std::vector<std::complex<double>> out;
  out.reserve(frequency_hz.size());
  for (double f : frequency_hz) {
    const Eigen::VectorXcd u =
        harmonic_solve(beam, b_in.cast<std::complex<double>>(), 2.0 * std::numbers::pi * f);
    out.push_back(b_out.cast<std::complex<double>>().dot(u));
  }
  return out;
}

}  // namespace swimlab
