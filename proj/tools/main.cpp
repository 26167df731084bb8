#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "commands.hpp"
#include "swimlab/error.hpp"

namespace {

void print_error(const std::string& kind, const std::string& message) {
  std::cerr << nlohmann::json{{"error", kind}, {"message", message}}.dump() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  using namespace swimlab::cli;
  CLI::App app{"swimlab: soft undulatory swimmer simulation and analysis"};
  app.require_subcommand(1);

  Common common;
  std::string output_dir;
  app.add_option("-o,--output-dir", output_dir,
                 "directory for every file written (default: $SWIMLAB_OUTPUT_DIR or ./swimlab-out)");

  ModalArgs modal;
  auto* c_modal = app.add_subcommand("modal", "damped natural frequencies and mode shapes");
  c_modal->add_option("config", modal.config, "run configuration (JSON)");
  c_modal->add_option("--modes", modal.modes, "number of modes")->check(CLI::Range(1, 50));

  FrfArgs frf;
  auto* c_frf = app.add_subcommand("frf", "impulse frequency response of one muscle group");
  c_frf->add_option("config", frf.config, "run configuration (JSON)");
  c_frf->add_option("--group", frf.group, "L1, L2, L3, R1, R2 or R3");
  c_frf->add_option("--repetitions", frf.repetitions, "averaged impulse repetitions");

  SimulateArgs sim;
  auto* c_sim = app.add_subcommand("simulate", "simulate a gait and export kinematics and metrics");
  c_sim->add_option("config", sim.config, "run configuration (JSON)");
  c_sim->add_option("--gait", sim.gait, "in_phase, sequential or custom");
  c_sim->add_option("--freq", sim.freq, "drive frequency, Hz");
  c_sim->add_option("--phases", sim.phases, "custom phases, e.g. L1=180,L2=0,L3=0,R1=0,R2=180,R3=180");

  AnalyzeArgs an;
  auto* c_an = app.add_subcommand("analyze", "reconstruct and score an experiment log");
  c_an->add_option("log", an.log, "experiment CSV log")->required();
  c_an->add_option("--freq", an.freq, "drive frequency, Hz")->required();
  c_an->add_option("--config", an.config, "run configuration for geometry and analysis settings");
  c_an->add_option("--gait", an.gait, "gait used for the run (labels the row)");

  SweepArgs sw;
  auto* c_sw = app.add_subcommand("sweep", "grid sweep or phase search from the config's sweep section");
  c_sw->add_option("config", sw.config, "run configuration (JSON) with a sweep section")->required();
  c_sw->add_option("--workers", sw.workers, "worker threads (0: all cores)");

  ReportArgs rep;
  auto* c_rep = app.add_subcommand("report", "aggregate run directories into comparison tables");
  c_rep->add_option("dir", rep.dir, "directory holding run subdirectories")->required();

  CalibrateArgs cal;
  auto* c_cal = app.add_subcommand("calibrate", "fit stiffness, muscle gain and thrust scale");
  c_cal->add_option("config", cal.config, "run configuration (JSON)");

  LaebtArgs la;
  auto* c_la = app.add_subcommand("laebt", "compare a thrust ratio with the squared-velocity law");
  c_la->add_option("--v1", la.v1_mms, "baseline tail velocity, mm/s")->required();
  c_la->add_option("--v2", la.v2_mms, "new tail velocity, mm/s")->required();
  c_la->add_option("--t1", la.t1_mn, "baseline thrust, mN");
  c_la->add_option("--t2", la.t2_mn, "new thrust, mN");

  SpeedArgs sp;
  auto* c_sp = app.add_subcommand("speed", "free-swimming speed from a thrust by drag balance");
  c_sp->add_option("--thrust", sp.thrust_mn, "thrust, mN")->required();
  c_sp->add_option("--config", sp.config, "run configuration for geometry and drag settings");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << app.help() << '\n';
    std::string message = e.what();
    if (const auto extras = app.remaining(); !extras.empty() && app.get_subcommands().empty())
      message = "unknown subcommand '" + extras.front() + "'";
    print_error("usage", message);
    return 2;
  }

  if (!output_dir.empty()) {
    common.output_dir = output_dir;
  } else if (const char* env = std::getenv("SWIMLAB_OUTPUT_DIR"); env && *env) {
    common.output_dir = env;
  }

  try {
    if (*c_modal) return run_modal(common, modal);
    if (*c_frf) return run_frf(common, frf);
    if (*c_sim) return run_simulate(common, sim);
    if (*c_an) return run_analyze(common, an);
    if (*c_sw) return run_sweep(common, sw);
    if (*c_rep) return run_report(common, rep);
    if (*c_cal) return run_calibrate(common, cal);
    if (*c_la) return run_laebt(common, la);
    if (*c_sp) return run_speed(common, sp);
  } catch (const swimlab::Error& e) {
    print_error(swimlab::to_string(e.kind()), e.what());
    return 1;
  } catch (const std::exception& e) {
    print_error("internal", e.what());
    return 1;
  }
  return 2;
}
