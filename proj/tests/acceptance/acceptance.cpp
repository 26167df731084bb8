// Acceptance runner: one line per criterion, exit status 1 if any fails.
#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "swimlab/frf.hpp"
#include "swimlab/modal.hpp"
#include "swimlab/pipeline.hpp"
#include "swimlab/thrust.hpp"
#include "swimlab/wave.hpp"

namespace fs = std::filesystem;
using namespace swimlab;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

int failures = 0;

void criterion(const char* id, const char* title, double budget_s,
               const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.check(false, std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (budget_s > 0.0) o.check(secs < budget_s, "runtime over " + std::to_string(budget_s) + " s");
  if (!o.pass) ++failures;
  std::cout << id << ' ' << (o.pass ? "PASS" : "FAIL") << "  " << title << " |" << o.detail.str()
            << " (" << std::fixed << std::setprecision(2) << secs << " s)" << std::endl;
  std::cout.unsetf(std::ios::floatfield);
}

std::string g(double v) {
  std::ostringstream os;
  os << std::setprecision(6) << v;
  return os.str();
}

// ---------------------------------------------------------------- AC1

KinematicsField ti_field(const std::function<double(double, double)>& fn) {
  std::vector<double> x(16);
  for (std::size_t j = 0; j < 16; ++j) x[j] = static_cast<double>(j) / 16.0;
  return oracle::make_field(x, oracle::sample_times(128, 1.0 / 128.0), fn);
}

void ac1(Outcome& o) {
  const double w = 2.0 * oracle::kPi;
  const double trav = traveling_index(
      analytic_field(ti_field([&](double x, double t) { return std::cos(w * x - w * t); }), 1.0, 1.0));
  const double stand = traveling_index(analytic_field(
      ti_field([&](double x, double t) { return std::sin(w * x + 0.3) * std::cos(w * t); }), 1.0, 1.0));
  o.detail << " traveling " << g(trav) << ", standing " << g(stand);
  o.check(std::abs(trav - 1.0) <= 1e-3, "traveling Ti");
  o.check(std::abs(stand) <= 1e-3, "standing Ti");
  for (double a : {0.25, 1.0, 4.0}) {
    const auto f = ti_field([&](double x, double t) {
      return (1 + a) * std::sin(w * x) * std::cos(w * t) + std::cos(w * x) * std::sin(w * t);
    });
    std::vector<std::complex<double>> c;
    for (double x : f.stations) c.emplace_back((1 + a) * std::sin(w * x), std::cos(w * x));
    const double got = traveling_index(analytic_field(f, 1.0, 1.0));
    const double want = oracle::ti_of_mode(c);
    o.detail << ", mixed " << a << ": " << g(got) << " vs " << g(want);
    o.check(std::abs(got - want) <= 0.01, "mixed Ti at ratio " + g(a));
  }
}

// ---------------------------------------------------------------- AC2, AC9

RunConfig first_resonance_config(double* f1) {
  RunConfig c;
  const Model m = build_model(c);
  *f1 = modal_analysis(m.beam, 2).damped_frequencies_hz[0];
  c.actuation.gait = GaitChoice::in_phase;
  c.actuation.frequency_hz = *f1;
  return c;
}

void ac2(Outcome& o) {
  double f1 = 0.0;
  const RunConfig c = first_resonance_config(&f1);
  const RunOutputs run = run_simulation(c);
  const KinematicsField& truth = run.sim.kinematics;
  const ExperimentLog log = synthesize_log(run.sim, c.gauges);
  ReconstructionOptions ro;
  ro.n_stations = static_cast<int>(truth.station_count());
  ro.body_length = truth.body_length;
  ro.frequency_hz = f1;
  const KinematicsField rec = reconstruct_deflection(log.strain, log.tail, ro);

  const SampleWindow win = steady_state_window(truth.time_count(), truth.dt(), f1);
  double err = 0.0, ref = 0.0, tail_err = 0.0, tail_ref = 0.0;
  const Eigen::Index tip = truth.deflection.cols() - 1;
  for (std::size_t i = win.begin; i < win.end; ++i) {
    const auto r = static_cast<Eigen::Index>(i);
    for (std::size_t j = 0; j < truth.station_count(); ++j) {
      if (truth.stations[j] > kReconstructionSpliceFraction + 1e-12) continue;
      const auto k = static_cast<Eigen::Index>(j);
      err += std::pow(rec.deflection(r, k) - truth.deflection(r, k), 2);
      ref += std::pow(truth.deflection(r, k), 2);
    }
    tail_err += std::pow(rec.deflection(r, tip) - truth.deflection(r, tip), 2);
    tail_ref += std::pow(truth.deflection(r, tip), 2);
  }
  const double l2 = std::sqrt(err / ref), tail = std::sqrt(tail_err / tail_ref);
  o.detail << " f1 " << g(f1) << " Hz, L2 over [0, 0.75] " << g(100 * l2) << "%, tail point "
           << g(100 * tail) << "%";
  o.check(l2 < 0.05, "L2 error");
  o.check(tail < 0.02, "tail-point error");
}

void ac9(Outcome& o) {
  double f1 = 0.0;
  const RunConfig c = first_resonance_config(&f1);
  const RunOutputs run = run_simulation(c);
  const SwimMetrics& sim = run.analysis.metrics;
  // through the CSV interchange format, as the CLI does
  const FileHeader h{config_hash(c), {}};
  const ExperimentLog log = parse_log_text(format_log(synthesize_log(run.sim, c.gauges), h), c.gauges);
  const SwimMetrics an = analyze_log(log, f1, c, sim.mode_label).analysis.metrics;
  const double d_ti = std::abs(an.traveling_index - sim.traveling_index);
  const double d_def = std::abs(an.caudal_deflection / sim.caudal_deflection - 1.0);
  const double d_vel = std::abs(an.caudal_velocity / sim.caudal_velocity - 1.0);
  const double d_thr = std::abs(an.thrust / sim.thrust - 1.0);
  o.detail << " Ti " << g(an.traveling_index) << " vs " << g(sim.traveling_index) << ", deflection "
           << g(100 * d_def) << "%, velocity " << g(100 * d_vel) << "%, thrust " << g(d_thr);
  o.check(d_ti <= 0.01, "Ti");
  o.check(d_def < 0.02, "caudal deflection");
  o.check(d_vel < 0.02, "caudal velocity");
  o.check(d_thr <= 1e-9, "thrust");
}

// ---------------------------------------------------------------- AC3

void ac3(Outcome& o) {
  const double f = 2.05, dt = 1e-3;
  const auto t = oracle::sample_times(static_cast<std::size_t>(12.0 / f / dt), dt);
  std::vector<double> c(t.size(), 5e-3), s(t.size()), m(t.size()), u(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    s[i] = 0.02 * std::sin(2 * oracle::kPi * f * t[i]);
    u[i] = std::cos(3.7 * t[i]) + 0.1;
    m[i] = 2.0 * s[i] - 0.5 * u[i];
  }
  const ThrustSeries tc = thrust_timeseries(t, c, f), ts = thrust_timeseries(t, s, f),
                     tu = thrust_timeseries(t, u, f), tm = thrust_timeseries(t, m, f);
  double e_const = 0.0, e_sin = 0.0, e_sup = 0.0;
  for (std::size_t i = tc.valid_begin(); i < tc.valid_end(); ++i) {
    e_const = std::max(e_const, std::abs(tc.thrust[i] / 5e-3 - 1.0));
    e_sin = std::max(e_sin, std::abs(ts.thrust[i]) / 0.02);
  }
  double scale = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    e_sup = std::max(e_sup, std::abs(tm.thrust[i] - (2.0 * ts.thrust[i] - 0.5 * tu.thrust[i])));
    scale = std::max(scale, std::abs(tm.thrust[i]));
  }
  e_sup /= scale;
  o.detail << " constant " << g(e_const) << " rel, sinusoid " << g(e_sin) << " of amplitude, superposition "
           << g(e_sup);
  o.check(e_const <= 1e-9, "constant");
  o.check(e_sin < 1e-3, "sinusoid rejection");
  o.check(e_sup <= 1e-9, "superposition");
}

// ---------------------------------------------------------------- AC4

void ac4(Outcome& o) {
  const auto u = oracle::uniform_beam();
  const ModalResult r = modal_analysis(assemble(u.geometry, u.material, 41), 3);
  for (int n = 1; n <= 3; ++n) {
    const double want = oracle::cantilever_hz(n, u.EI, u.mu, u.geometry.body_length);
    const double err = std::abs(r.undamped_frequencies_hz[n - 1] / want - 1.0);
    o.detail << " mode " << n << " " << g(100 * err) << "%,";
    o.check(err < 0.005, "uniform mode " + std::to_string(n));
  }
  const ModalResult s = modal_analysis(build_model(RunConfig{}).beam, 2);
  const double f1 = s.damped_frequencies_hz[0], f2 = s.damped_frequencies_hz[1];
  o.detail << " swimmer f1 " << g(f1) << " Hz, f2 " << g(f2) << " Hz";
  o.check(std::abs(f1 / 1.9 - 1.0) <= 0.15, "f1");
  o.check(std::abs(f2 / 7.0 - 1.0) <= 0.15, "f2");
}

// ---------------------------------------------------------------- AC5

void ac5(Outcome& o) {
  const double r = laebt_thrust_ratio(148.0, 169.0);
  const LaebtComparison c = compare_with_laebt(148.0, 5.0, 169.0, 7.2);
  o.detail << " predicted " << g(r) << ", measured " << g(c.measured_ratio)
           << (c.exceeds_prediction ? " exceeds" : " within");
  o.check(std::abs(r - 1.30) <= 0.005, "predicted ratio");
  o.check(c.exceeds_prediction, "surplus flag");
}

// ---------------------------------------------------------------- AC6

void ac6(Outcome& o) {
  const Model m = build_model(RunConfig{});
  const SwimSpeed v = free_swim_speed(7.2e-3, m.drag, m.geometry.body_length);
  o.detail << " " << g(v.speed_bl) << " bL/s (wetted " << g(m.drag.wetted_area) << " m^2, section "
           << g(m.drag.cross_section_area) << " m^2, Cd " << m.drag.cd << ")";
  o.check(std::abs(v.speed_bl / 0.39 - 1.0) <= 0.20, "speed");
}

// ---------------------------------------------------------------- AC7

void ac7(Outcome& o) {
  auto metrics = [](GaitChoice gait) {
    RunConfig c;
    c.actuation.gait = gait;
    c.actuation.frequency_hz = 8.05;
    return run_simulation(c).analysis.metrics;
  };
  const SwimMetrics a = metrics(GaitChoice::in_phase), s = metrics(GaitChoice::sequential);
  o.detail << " thrust " << g(a.thrust * 1e3) << " -> " << g(s.thrust * 1e3) << " mN, Ti "
           << g(a.traveling_index) << " -> " << g(s.traveling_index) << ", tail velocity "
           << g(a.caudal_velocity * 1e3) << " -> " << g(s.caudal_velocity * 1e3) << " mm/s";
  o.check(s.thrust > a.thrust, "thrust");
  o.check(s.traveling_index >= 2.0 * a.traveling_index, "Ti factor");
  o.check(s.caudal_velocity > a.caudal_velocity, "tail velocity");
}

// ---------------------------------------------------------------- AC8

int shell(const std::string& args) {
  const std::string cmd = std::string(SWIMLAB_CLI) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Names of files that differ (or exist on one side only).
std::vector<std::string> diff_dirs(const fs::path& a, const fs::path& b) {
  std::vector<std::string> out;
  std::size_t n = 0;
  for (const auto& e : fs::directory_iterator(a)) {
    ++n;
    const fs::path other = b / e.path().filename();
    if (!fs::exists(other) || slurp(e.path()) != slurp(other)) out.push_back(e.path().filename().string());
  }
  std::size_t m = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(b)) ++m;
  if (n != m) out.emplace_back("<file count>");
  if (n == 0) out.emplace_back("<no output>");
  return out;
}

void ac8(Outcome& o) {
  const fs::path root = oracle::temp_dir("acceptance");
  const fs::path cfg = root / "sweep.json";
  std::ofstream(cfg) << R"({"actuation": {"frequency_hz": 8.05},
    "sweep": {"mode": "phase_search", "phase_resolution_deg": 180, "top_k": 4}})";

  int bad_exit = 0;
  bad_exit += shell("-o " + (root / "sim_a").string() + " simulate --gait sequential --freq 8.05") != 0;
  bad_exit += shell("-o " + (root / "sim_b").string() + " simulate --gait sequential --freq 8.05") != 0;
  bad_exit += shell("-o " + (root / "sweep_1").string() + " sweep " + cfg.string() + " --workers 1") != 0;
  bad_exit += shell("-o " + (root / "sweep_4").string() + " sweep " + cfg.string() + " --workers 4") != 0;
  o.check(bad_exit == 0, "cli exit status");
  if (bad_exit) return;

  const auto sim = diff_dirs(root / "sim_a", root / "sim_b");
  const auto sweep = diff_dirs(root / "sweep_1", root / "sweep_4");
  o.detail << " simulate x2: " << (sim.empty() ? "identical" : "differs") << ", sweep workers 1 vs 4: "
           << (sweep.empty() ? "identical" : "differs");
  for (const auto& f : sim) o.check(false, "simulate " + f);
  for (const auto& f : sweep) o.check(false, "sweep " + f);
  fs::remove_all(root);
}

}  // namespace

int main() {
  std::cout << "swimlab " << version() << " acceptance" << std::endl;
  criterion("AC1", "traveling-index oracle", 1.0, ac1);
  criterion("AC2", "reconstruction round trip at first resonance", 30.0, ac2);
  criterion("AC3", "thrust filter", 0.0, ac3);
  criterion("AC4", "modal oracle and calibrated frequencies", 10.0, ac4);
  criterion("AC5", "LAEBT arithmetic", 0.0, ac5);
  criterion("AC6", "free-swim estimate", 1.0, ac6);
  criterion("AC7", "sequential vs in-phase gait at f2", 120.0, ac7);
  criterion("AC8", "determinism across runs and worker counts", 0.0, ac8);
  criterion("AC9", "analyze reproduces simulate metrics", 0.0, ac9);
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
