#include "swimlab/records.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "swimlab/error.hpp"

namespace swimlab {
namespace {

void check_time_base(const std::vector<double>& t, const char* what) {
  for (double v : t)
    if (!std::isfinite(v)) throw ValidationError(std::string(what) + ": non-finite time");
  if (t.size() < 2) return;
  const double dt = (t.back() - t.front()) / static_cast<double>(t.size() - 1);
  double worst = 0.0;
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (!(t[i] > t[i - 1]))
      throw ValidationError(std::string(what) + ": times must be strictly increasing");
    worst = std::max(worst, std::abs((t[i] - t[i - 1]) - dt));
  }
  if (worst > 1e-6 * dt) {
    std::ostringstream os;
    os << what << ": non-uniform time base (worst step deviation " << worst / dt * 1e6
       << " ppm of dt)";
    throw ValidationError(os.str());
  }
}

}  // namespace

SampleWindow trailing_window(std::size_t n, double dt, double frequency_hz, double periods) {
  if (!(frequency_hz > 0.0) || !(dt > 0.0) || !(periods > 0.0))
    throw ValidationError("window needs positive frequency, dt and period count");
  const auto len = static_cast<std::size_t>(std::llround(periods / (frequency_hz * dt)));
  if (len < 2 || len > n) {
    std::ostringstream os;
    os << "window of " << periods << " periods (" << len << " samples) does not fit a record of "
       << n << " samples";
    throw ValidationError(os.str());
  }
  return {n - len, n};
}

SampleWindow steady_state_window(std::size_t n, double dt, double frequency_hz) {
  if (!(frequency_hz > 0.0) || !(dt > 0.0))
    throw ValidationError("steady-state window needs positive frequency and dt");
  const double period_samples = 1.0 / (frequency_hz * dt);
  const auto discard = static_cast<std::size_t>(
      std::ceil(std::max(0.6 * static_cast<double>(n), 10.0 * period_samples)));
  if (discard >= n || static_cast<double>(n - discard) < period_samples - 0.5) {
    std::ostringstream os;
    os << "record of " << n << " samples leaves less than one period after transient discard";
    throw ValidationError(os.str());
  }
  // Keep whole periods so phase-sensitive metrics see complete cycles.
  const double periods = std::floor(static_cast<double>(n - discard) / period_samples + 1e-9);
  const auto len = static_cast<std::size_t>(std::llround(periods * period_samples));
  return {n - len, n};
}

void validate(const KinematicsField& f) {
  check_time_base(f.times, "kinematics field");
  if (f.deflection.rows() != static_cast<Eigen::Index>(f.times.size()) ||
      f.deflection.cols() != static_cast<Eigen::Index>(f.stations.size()))
    throw ValidationError("kinematics field: deflection shape does not match times x stations");
  if (!f.deflection.allFinite()) throw ValidationError("kinematics field: non-finite deflection");
  for (std::size_t i = 1; i < f.stations.size(); ++i)
    if (!(f.stations[i] > f.stations[i - 1]))
      throw ValidationError("kinematics field: stations must be strictly increasing");
  if (!(f.body_length > 0.0)) throw ValidationError("kinematics field: body_length must be positive");
}

void validate(const ForceRecord& r) {
  check_time_base(r.times, "force record");
  for (const auto* ch : {&r.fx, &r.fy, &r.fz, &r.mx, &r.my, &r.mz}) {
    if (ch->size() != r.times.size())
      throw ValidationError("force record: channel length does not match times");
    for (double v : *ch)
      if (!std::isfinite(v)) throw ValidationError("force record: non-finite value");
  }
}

}  // namespace swimlab
